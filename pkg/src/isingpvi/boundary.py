"""Solutions of the Okamoto sigma equation analytic at t = 0.

h = sum c_n t^n.  The constant term fixes c_0 on one of four branches and
c_1 follows linearly; from then on the t^n coefficient of the equation is
a_n c_n = b_n.  At a resonance (a_n = 0) the obstruction b_n must vanish
and c_n becomes a free boundary constant.
"""

from dataclasses import dataclass, field

from gmpy2 import mpq

from .series import T, Q, SeriesK, SeriesError, qstr
from .correlations import LOW, HIGH, corr_fw
from .hypergeom import Hyp2F1Spec, hyp2f1_series
from .series import one_minus_t_pow
from .painleve import okamoto_poly, okamoto_params, h_from_corr, h_shift, _tlog

BRANCHES = ("B1", "B2", "B3", "B4")

# sign flips taking branch 4 to the others
_FLIPS = {"B1": (1, 1, -1, -1), "B2": (-1, 1, 1, -1), "B3": (1, -1, 1, -1), "B4": (1, 1, 1, 1)}


class DegenerateBranch(SeriesError):
    """A seed denominator vanishes; the recursion needs a free constant there."""


class NoAnalyticSolution(SeriesError):
    """Resonance with a nonzero obstruction."""


def _q4(n):
    n = tuple(Q(x) for x in n)
    if len(n) != 4:
        raise ValueError("need four Okamoto parameters")
    return n


def branch_sum(n, branch):
    """The linear form whose shifts by +-n give the resonance denominators."""
    n1, n2, n3, n4 = _q4(n)
    return {"B1": n1 + n2 - n3 - n4, "B2": n1 - n2 - n3 + n4,
            "B3": n1 - n2 + n3 - n4, "B4": n1 + n2 + n3 + n4}[branch]


def _c0(n1, n2, n3, n4):
    return (-n1 * n2 - n3 * n4 - (n1 + n2) * (n3 + n4)) / 2


def _c1(n1, n2, n3, n4):
    d = n1 + n2 + n3 + n4
    if d == 0:
        raise DegenerateBranch("c_1 denominator vanishes")
    return ((n1 + n2) * n3 * n4 + n1 * n2 * (n3 + n4)) / d


def _c2(n1, n2, n3, n4):
    s = n1 + n2 + n3 + n4
    den = s * s * (s + 1) * (s - 1)
    if den == 0:
        raise DegenerateBranch("c_2 denominator vanishes")
    return (n1 + n2) * (n1 + n3) * (n1 + n4) * (n2 + n3) * (n2 + n4) * (n3 + n4) / den


def _c3(n1, n2, n3, n4):
    s = n1 + n2 + n3 + n4
    den = s * (s + 2) * (s - 2)
    if den == 0:
        raise DegenerateBranch("c_3 denominator vanishes")
    num = (n1 * n1 * (n2 + n3 + n4) + n2 * n2 * (n1 + n3 + n4) + n3 * n3 * (n1 + n2 + n4)
           + n4 * n4 * (n1 + n2 + n3)
           + n1 * n2 * n3 + n1 * n2 * n4 + n1 * n3 * n4 + n2 * n3 * n4 - s)
    return 2 * num * _c2(n1, n2, n3, n4) / den


def branch_seed(n, branch, strict=True):
    """(c0, c1, c2, c3) in closed form.  Branch 4 is symmetric in the n_i; the others
    are branch 4 after the sign flips of the branch.

    A vanishing denominator raises DegenerateBranch, or gives None with strict=False.
    """
    if branch not in BRANCHES:
        raise ValueError("unknown branch %r" % (branch,))
    f = _FLIPS[branch]
    m = tuple(a * b for a, b in zip(f, _q4(n)))
    out = [_c0(*m)]
    for g in (_c1, _c2, _c3):
        try:
            out.append(g(*m))
        except DegenerateBranch:
            if strict:
                raise
            out.append(None)
    return tuple(out)


def _h(cs, order_t):
    return SeriesK.from_t_coeffs(cs, order_t)


def _coef(n, cs, j):
    """Coefficient of t^j in the Okamoto residual of h = sum cs[i] t^i (higher terms 0)."""
    o = j + 2
    h = _h(cs, o)
    h1 = h.deriv_t()
    h2 = h1.deriv_t()
    t = SeriesK.t_poly([0, 1], h2.order, T)
    r = okamoto_poly(n, t, h.truncate(h2.order), h1.truncate(h2.order), h2)
    return r.t_coeff(j)


_PROBES = ((mpq(3, 7), mpq(-5, 11), mpq(2, 13), mpq(7, 3)),
           (mpq(-1, 5), mpq(4, 9), mpq(-3, 2), mpq(1, 17)))


def _interp(vals):
    """Ascending coefficients of the polynomial taking vals[i] at x = i (exact)."""
    n = len(vals)
    coeffs = [mpq(0)] * n
    # Lagrange basis on 0..n-1
    for i, v in enumerate(vals):
        if v == 0:
            continue
        basis = [mpq(1)]
        den = mpq(1)
        for k in range(n):
            if k == i:
                continue
            basis = [mpq(0)] + basis
            for m in range(len(basis) - 1):
                basis[m] -= k * basis[m + 1]
            den *= (i - k)
        for m in range(len(basis)):
            coeffs[m] += v * basis[m] / den
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def balance(n, cs, j, J, probe=None):
    """The t^J residual coefficient as a polynomial in x = c_j (ascending list), with
    c_0..c_(j-1) = cs and c_(j+1).. set to `probe` values (zero by default)."""
    tail = list(probe or ())[:max(J + 1 - j, 0)]
    vals = [_coef(n, list(cs[:j]) + [mpq(x)] + tail, J) for x in range(5)]
    return _interp(vals)


def _depends_on_tail(n, cs, j, J, poly):
    for pr in _PROBES:
        ext = list(pr)
        while len(ext) < J + 1 - j:
            ext = ext + list(pr)
        if balance(n, cs, j, J, ext) != poly:
            return True
    return False


def _single_root(poly):
    """r if poly = a (x - r)^d, else None."""
    d = len(poly) - 1
    if d < 1:
        return None
    r = -poly[d - 1] / (d * poly[d])
    # expand a (x - r)^d and compare
    expect = [mpq(0)] * (d + 1)
    binom = 1
    for i in range(d + 1):
        expect[i] = poly[d] * binom * (-r) ** (d - i)
        binom = binom * (d - i) // (i + 1)
    return r if expect == poly else None


@dataclass
class Step:
    """How c_j was fixed: at the t^J coefficient, by solving `poly` (ascending in c_j)
    or, at a resonance, by the schedule."""
    j: int
    J: int
    poly: list
    free: bool = False
    dropped_zero: bool = False      # the root c_j = 0 was set aside

    def reduced(self):
        p = self.poly
        if self.dropped_zero:
            k = next(i for i, x in enumerate(p) if x != 0)
            p = p[k:]
        return p

    @property
    def linear(self):
        return len(self.reduced()) == 2

    def a_b(self):
        """(a, b) with a c_j = b for a linear step."""
        p = self.reduced()
        if len(p) != 2:
            raise ValueError("step at t^%d is not linear in c_%d" % (self.J, self.j))
        return p[1], -p[0]

    def to_json(self):
        return {"j": self.j, "J": self.J, "poly": [qstr(x) for x in self.poly], "free": self.free,
                "dropped_zero": self.dropped_zero}


@dataclass
class BranchSolution:
    branch: str
    n: tuple
    coeffs: list
    resonances: list = field(default_factory=list)   # [(order, value)]
    order: int = 0
    steps: list = field(default_factory=list)
    verified: int = 0                                 # residual zero through t^verified

    def series(self):
        return _h(self.coeffs, self.order)

    def to_json(self):
        return {"branch": self.branch, "n": [qstr(x) for x in self.n],
                "resonances": [{"order": o, "value": qstr(v)} for o, v in self.resonances],
                "coeffs": [qstr(c) for c in self.coeffs], "order": self.order,
                "verified": self.verified}


def solve_analytic(n, branch, free=None, order=12, max_lag=None):
    """Coefficients c_0..c_order of the analytic solution on `branch`.

    Each c_j is fixed at the lowest residual order where it enters.  When the
    higher coefficients enter there too, the equation leaves c_j undetermined:
    that is a resonance, and the value comes from `free` (order -> value).
    Every residual coefficient below the deciding order must vanish on its own
    (the obstruction check).
    """
    n = _q4(n)
    free = dict(free or {})
    m = tuple(a * b for a, b in zip(_FLIPS[branch], n))
    c0 = _c0(*m)
    # c_1 from the bracket of the t^1 equation: c1 (8 c0 - 2 sum n^2) = -4 c0^2 + e2(n^2) - 2 prod n
    sq = [x * x for x in n]
    e2 = sum(sq[i] * sq[j] for i in range(4) for j in range(i + 1, 4))
    prod = n[0] * n[1] * n[2] * n[3]
    a1 = 8 * c0 - 2 * sum(sq)
    b1 = -4 * c0 * c0 + e2 - 2 * prod
    res = []
    steps = []
    if a1 != 0:
        c1 = b1 / a1
    else:
        if 1 not in free:
            raise DegenerateBranch("c_1 is free on this branch; schedule a value for order 1")
        c1 = Q(free[1])
        res.append((1, c1))
    cs = [c0, c1]
    if _coef(n, cs, 0) != 0:
        raise NoAnalyticSolution("constant term does not vanish (c0=%s, c1=%s)" % (qstr(c0), qstr(c1)))
    verified = 0
    if max_lag is None:
        max_lag = order + 4
    for j in range(2, order + 1):
        J = verified + 1
        while True:
            if J > j + max_lag:
                raise SeriesError("c_%d not reached within lag %d" % (j, max_lag))
            poly = balance(n, cs, j, J)
            if _depends_on_tail(n, cs, j, J, poly):
                if j not in free:
                    raise SeriesError("resonance at t^%d on %s needs a scheduled constant" % (j, branch))
                v = Q(free[j])
                res.append((j, v))
                steps.append(Step(j, J, poly, True))
                cs.append(v)
                break
            if len(poly) == 1:
                if poly[0] != 0:
                    raise NoAnalyticSolution("obstruction %s at t^%d while solving for c_%d on %s"
                                             % (qstr(poly[0]), J, j, branch))
                verified = J
                J += 1
                continue
            root, trivial = _single_root(poly), False
            if root is None and poly[0] == 0:
                # c_j = 0 continues the exact polynomial solution; take the other factor
                k = next(i for i, x in enumerate(poly) if x != 0)
                reduced = poly[k:]
                if len(reduced) > 1:
                    root, trivial = _single_root(reduced), True
            if root is None:
                raise SeriesError("c_%d not uniquely fixed at t^%d (polynomial %s)"
                                  % (j, J, [qstr(x) for x in poly]))
            cs.append(root)
            steps.append(Step(j, J, poly, dropped_zero=trivial))
            verified = J
            break
    return BranchSolution(branch, n, cs, res, order, steps, verified)


def resonances(n, branch, order=12, probe=0):
    """Orders where the linear solve degenerates, filling free constants with `probe`."""
    found = []
    schedule = {}
    while True:
        try:
            sol = solve_analytic(n, branch, schedule, order)
            return [o for o, _ in sol.resonances]
        except DegenerateBranch:
            schedule[1] = probe
        except NoAnalyticSolution:
            raise
        except SeriesError as e:
            msg = str(e)
            if "needs a scheduled constant" not in msg:
                raise
            j = int(msg.split("t^")[1].split()[0])
            schedule[j] = probe
        found.append(1)
        if len(found) > order + 2:
            raise SeriesError("resonance search did not settle")


# ----- matching against correlations -----

def correlation_branch(c):
    """Branch and Okamoto parameters dictated for the correlation's family."""
    n = okamoto_params(c.M, c.N, c.regime.which, c.tilde)
    return ("B1" if c.regime.which == LOW else "B2"), n


@dataclass
class LambdaMatch:
    branch: str
    free: dict            # resonance order -> value read off the correlation
    lambda_coeff: object  # lambda^2 coefficient in the boundary-form normalization (None if not defined)
    agrees_to: int

    def to_json(self):
        return {"branch": self.branch, "free": {str(k): qstr(v) for k, v in self.free.items()},
                "lambda_coeff": None if self.lambda_coeff is None else qstr(self.lambda_coeff),
                "agrees_to": self.agrees_to}


def lambda_zero_h(M, N, regime, order):
    """h of the lambda = 0 member: (1-t)^(1/4) at low T, (1-t)^(1/4) t^(N/2) 2F1 at high T."""
    ko = 2 * order + 8 + N
    if regime == LOW:
        C = one_minus_t_pow(mpq(1, 4), ko)
    elif (M + N) % 2 == 0:
        F = hyp2f1_series(Hyp2F1Spec(mpq(N - M + 1, 2), mpq(N + M + 1, 2), N + 1), ko // 2).as_k()
        C = (one_minus_t_pow(mpq(1, 4), ko) * F).shift(N)
    else:
        F = hyp2f1_series(Hyp2F1Spec(mpq(N - M, 2), mpq(N + M, 2), N + 1), ko // 2).as_k()
        C = (one_minus_t_pow(mpq(-1, 4), ko) * F).shift(N)
    s = _tlog(C)
    a, b = h_shift(M, N, regime)
    return s + SeriesK.t_poly([b, a], s.order, T)


def match_lambda(c, sol=None, order=None):
    """Read the free constant(s) off the correlation's h-series and convert the main
    one into the lambda^2 coefficient of the displayed boundary forms.

    At low T: C = (1-t)^(1/4) [1 + L t^(N+1) + ...] and c_(N+1) = c0_(N+1) - (N+1) L.
    At high T: C = (lambda = 0 member) [1 + L t^(N+2)/... ] and c_(N+2) = c0_(N+2) - (N+2) L,
    with L the coefficient of t^(N+2) relative to the 2F1 bracket.
    """
    h, n = h_from_corr(c)
    if order is None:
        order = min(h.t_order, 3 * c.N + 6)
    branch, n_exp = correlation_branch(c)
    if sol is not None:
        branch = sol.branch
        if tuple(Q(x) for x in sol.n) != tuple(Q(x) for x in n):
            raise ValueError("branch solution and correlation use different n")
    free = {}
    # walk the recursion, taking each free constant from the correlation
    for _ in range(order + 2):
        try:
            s = solve_analytic(n, branch, free, order)
            break
        except DegenerateBranch:
            free[1] = h.t_coeff(1)
        except NoAnalyticSolution:
            raise
        except SeriesError as e:
            msg = str(e)
            if "needs a scheduled constant" not in msg:
                raise
            j = int(msg.split("t^")[1].split()[0])
            free[j] = h.t_coeff(j)
    else:
        raise SeriesError("could not settle the free constants")
    got = s.series()
    diff = (got - h).truncate(2 * order)
    if not diff.is_zero():
        bad = diff.valuation // 2
        raise SeriesError("correlation leaves branch %s at t^%d (wrong branch)" % (branch, bad))
    M, N = c.M, c.N
    regime = c.regime.which
    r = N + 1 if regime == LOW else N + 2
    L = None
    if r in free:
        h0 = lambda_zero_h(M, N, regime, r + 2)
        L = (h0.t_coeff(r) - free[r]) / r
    return LambdaMatch(branch, free, L, order)

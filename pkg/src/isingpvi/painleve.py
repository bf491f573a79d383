"""Sigma forms of Painleve VI for the correlations: residuals, Cosgrove fits,
Okamoto reduction and the Kramers-Wannier checks.

sigma and h are series in t (even k-support); every order in this module
is an order in t unless a name says otherwise.
"""

import random
from dataclasses import dataclass, field

from gmpy2 import mpq

from .series import T, Q, SeriesK, SeriesError, one_minus_t_pow, qstr
from .correlations import (LOW, HIGH, Correlation, EllipticPoly, corr_fw,
                           elliptic_poly_eval)
from .determinants import toeplitz_det
from .hypergeom import fw_low_element

VARIANTS = ("DiagLow", "DiagHigh", "Low", "HighEven", "HighOdd")
FAMILIES = ("JMDiag", "LowMN", "HighEvenMN", "HighOddMN")


def _sq(x):
    return x * x


def _parity(M, N):
    return 1 if (M + N) % 2 == 0 else 0


@dataclass(frozen=True)
class SigmaSeries:
    series: SeriesK
    variant: str
    M: int = 0
    N: int = 0

    def to_json(self):
        return {"variant": self.variant, "M": self.M, "N": self.N, "series": self.series.to_json()}


def _tlog(c_series):
    """t(t-1) d/dt ln C as a t-series."""
    d = c_series.dlog_dt()
    if d.var != T:
        raise SeriesError("logarithmic derivative has odd k-support")
    t = SeriesK.t_poly([0, -1, 1], d.order, T)
    return (d * t).truncate(d.order)


def _tpoly(coeffs, like):
    return SeriesK.t_poly(coeffs, like.order, T)


def sigma_from_corr(c, variant=None):
    """sigma = t(t-1) dlnC/dt - t/4 at low T, - 1/4 at high T (also for C~)."""
    if c.series.is_zero():
        raise SeriesError("sigma of a vanishing correlation; use the tilde limit")
    if variant is None:
        if c.regime.which == LOW:
            variant = "DiagLow" if c.M == c.N else "Low"
        elif c.tilde:
            variant = "HighOdd"
        else:
            variant = "DiagHigh" if c.M == c.N else "HighEven"
    if variant not in VARIANTS:
        raise ValueError("unknown sigma variant %r" % variant)
    low = variant in ("DiagLow", "Low")
    if low != (c.regime.which == LOW):
        raise ValueError("variant %s does not match regime %s" % (variant, c.regime.which))
    if variant == "HighOdd" and not c.tilde:
        raise ValueError("HighOdd sigma is built on the tilde correlation")
    if variant.startswith("Diag") and c.M != c.N:
        raise ValueError("diagonal variant needs M = N")
    s = _tlog(c.series)
    s = s - _tpoly([0, mpq(1, 4)] if low else [mpq(1, 4)], s)
    return SigmaSeries(s, variant, c.M, c.N)


# ----- Cosgrove form -----

@dataclass(frozen=True)
class CosgroveParams:
    c5: object
    c6: object
    c7: object
    c8: object
    c9: object
    c10: object

    def __post_init__(self):
        for f in ("c5", "c6", "c7", "c8", "c9", "c10"):
            object.__setattr__(self, f, Q(getattr(self, f)))

    def as_tuple(self):
        return (self.c5, self.c6, self.c7, self.c8, self.c9, self.c10)

    def to_json(self):
        return {"c%d" % (i + 5): qstr(c) for i, c in enumerate(self.as_tuple())}


def cosgrove_poly(p, t, y, y1, y2):
    """(t(t-1)y'')^2 + 4{y'u^2 - y'^2 u + c5 u^2 + c6 y'u + c7 y'^2 + c8 u + c9 y' + c10}, u = ty'-y.

    Works for rational scalars and for series alike.
    """
    u = t * y1 - y
    w = t * (t - 1) * y2
    inner = (y1 * u * u - y1 * y1 * u + u * u * p.c5 + y1 * u * p.c6 + y1 * y1 * p.c7
             + u * p.c8 + y1 * p.c9 + p.c10)
    return w * w + inner * 4


def family_params(family, M, N):
    """Cosgrove parameters read off the family's equation."""
    M2, N2 = mpq(M * M), mpq(N * N)
    if family == "JMDiag":
        return CosgroveParams(-N2 / 4, (2 * N2 - 1) / 4, -N2 / 4, 0, 0, 0)
    if family == "LowMN":
        s = _parity(M, N)
        return CosgroveParams(-M2 / 4, (M2 + N2 - s) / 4, -N2 / 4, 0, 0, 0)
    if family == "HighEvenMN":
        d = N2 - M2
        return CosgroveParams(-M2 / 4, (N2 + M2 - 1) / 4, -N2 / 4, -d / 16, -d / 16, -d * d / 64)
    if family == "HighOddMN":
        d = N2 - M2
        return CosgroveParams(-M2 / 4, (N2 + M2 - 2) / 4, -N2 / 4, -(d - 1) / 16, -(d + 1) / 16,
                              -d * d / 64 + (M2 + N2 - 1) / 32)
    raise ValueError("unknown ODE family %r" % family)


def family_poly(family, M, N, t, s, s1, s2):
    """Left-minus-right of the family's equation, written out term by term."""
    M2, N2 = mpq(M * M), mpq(N * N)
    w = t * (t - 1) * s2
    u = t * s1 - s
    if family == "JMDiag":
        v = (t - 1) * s1 - s
        return w * w - (v * v) * N2 + s1 * (v - mpq(1, 4)) * u * 4
    core = w * w + s1 * u * ((t - 1) * s1 - s) * 4 - (u * u) * M2 - (s1 * s1) * N2
    if family == "LowMN":
        return core + s1 * u * (M2 + N2 - _parity(M, N))
    d = N2 - M2
    if family == "HighEvenMN":
        return (core + s1 * u * (N2 + M2 - 1) - u * (d / 4) - s1 * (d / 4)
                - (s * 0 + 1) * (d * d / 16))
    if family == "HighOddMN":
        return (core + s1 * u * (N2 + M2 - 2) - u * ((d - 1) / 4) - s1 * ((d + 1) / 4)
                + (s * 0 + 1) * (-d * d / 16 + (M2 + N2 - 1) / 8))
    raise ValueError("unknown ODE family %r" % family)


def _derivs(y):
    y1 = y.deriv_t()
    return y1, y1.deriv_t()


def _finish(r, order):
    if order is not None:
        if r.t_order < order:
            raise SeriesError("residual only exact through t^%d < t^%d" % (r.t_order, order))
        r = r.truncate(2 * order)
    return r


def ode_residual(s, family, M=None, N=None, order=None):
    """Residual series of one of the sigma equations; zero certifies it through t^order."""
    y = s.series if isinstance(s, SigmaSeries) else s
    if M is None:
        M = s.M
    if N is None:
        N = s.N
    if family == "JMDiag" and M != N:
        raise ValueError("the diagonal equation needs M = N")
    y1, y2 = _derivs(y)
    t = _tpoly([0, 1], y2)
    return _finish(family_poly(family, M, N, t, y.truncate(y2.order), y1.truncate(y2.order), y2),
                   order)


def cosgrove_residual(y, p, order=None):
    y1, y2 = _derivs(y)
    t = _tpoly([0, 1], y2)
    return _finish(cosgrove_poly(p, t, y.truncate(y2.order), y1.truncate(y2.order), y2), order)


def default_family(variant, M, N):
    return {"DiagLow": "JMDiag", "DiagHigh": "JMDiag", "Low": "LowMN",
            "HighEven": "HighEvenMN", "HighOdd": "HighOddMN"}[variant]


# ----- exact linear algebra for the fit -----

def _rref(rows, ncols):
    """Row-reduce an augmented matrix in place; returns pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


@dataclass
class FitReport:
    params: object            # CosgroveParams or None
    rank: int
    nullity: int
    equations: int
    determined_at: object     # t-order at which the rank was reached
    margin: int               # later orders that were checked and satisfied
    consistent: bool
    nullspace: list = field(default_factory=list)

    def to_json(self):
        return {"params": self.params.to_json() if self.params else None, "rank": self.rank,
                "nullity": self.nullity, "equations": self.equations,
                "determined_at": self.determined_at, "margin": self.margin,
                "consistent": self.consistent,
                "nullspace": [[qstr(x) for x in v] for v in self.nullspace]}


def cosgrove_system(y, budget):
    """Coefficient rows [b5..b10 | rhs] for t^0..t^budget; the residual is linear in c5..c10."""
    y1, y2 = _derivs(y)
    if y2.t_order < budget:
        raise SeriesError("series too short for budget t^%d" % budget)
    y, y1 = y.truncate(y2.order), y1.truncate(y2.order)
    t = _tpoly([0, 1], y2)
    u = t * y1 - y
    w = t * (t - 1) * y2
    base = w * w + (y1 * u * u - y1 * y1 * u) * 4
    one = _tpoly([1], y2)
    basis = [u * u, y1 * u, y1 * y1, u, y1, one]
    rows = []
    for j in range(budget + 1):
        rows.append([4 * b.t_coeff(j) for b in basis] + [-base.t_coeff(j)])
    return rows


def cosgrove_fit(y, budget=None):
    """Solve exactly for (c5..c10) making y satisfy the Cosgrove form through t^budget."""
    y = y.series if isinstance(y, SigmaSeries) else y
    if y.valuation < 0:
        raise SeriesError("cosgrove_fit needs a series analytic at 0")
    if budget is None:
        budget = y.t_order - 2
    rows = cosgrove_system(y, budget)
    # order at which the coefficient matrix first reaches its final rank
    full = [list(r) for r in rows]
    rank = len(_rref([r[:6] for r in full], 6))
    determined = None
    if rank:
        for j in range(budget + 1):
            if len(_rref([list(r[:6]) for r in rows[:j + 1]], 6)) == rank:
                determined = j
                break
    aug = [list(r) for r in rows]
    piv = _rref(aug, 7)
    consistent = 6 not in piv
    if not consistent:
        return FitReport(None, rank, 6 - rank, len(rows), determined, 0, False)
    sol = [mpq(0)] * 6
    for i, c in enumerate(piv):
        sol[c] = aug[i][6]
    free = [c for c in range(6) if c not in piv]
    null = []
    for f in free:
        v = [mpq(0)] * 6
        v[f] = mpq(1)
        for i, c in enumerate(piv):
            v[c] = -aug[i][f]
        null.append(v)
    margin = budget - determined if determined is not None else budget + 1
    return FitReport(CosgroveParams(*sol), rank, 6 - rank, len(rows), determined, margin, True, null)


# ----- Okamoto form -----

def _shift_params(p, A, B):
    """Cosgrove parameters after y = ybar + A t + B."""
    c5, c6, c7, c8, c9, c10 = p.as_tuple()
    return CosgroveParams(
        c5 + A,
        c6 - 2 * B - 2 * A,
        c7 + B,
        c8 - 2 * A * B - A * A - 2 * B * c5 + A * c6,
        c9 + B * B + 2 * A * B - B * c6 + 2 * A * c7,
        c10 + A * B * B + A * A * B + B * B * c5 - A * B * c6 + A * A * c7 - B * c8 + A * c9)


def okamoto_quartic(p):
    """(A, B, shifted params, [e1, e2, e3, e4]) for the quartic with roots n_i^2."""
    A = -p.c5
    B = p.c6 / 2 + p.c5
    q = _shift_params(p, A, B)
    e = [-4 * q.c7, -4 * q.c9 - 2 * q.c8, -4 * q.c10, q.c8 * q.c8]
    return A, B, q, e


def _divisors(n):
    n = abs(int(n))
    out = set()
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.add(i)
            out.add(n // i)
        i += 1
    return sorted(out)


def _poly_eval(c, x):
    acc = mpq(0)
    for a in reversed(c):
        acc = acc * x + a
    return acc


def _deflate(c, r):
    """Divide the ascending coefficient list c by (x - r)."""
    n = len(c) - 1
    out = [mpq(0)] * n
    acc = mpq(0)
    for i in range(n, 0, -1):
        acc = acc * r + c[i]
        out[i - 1] = acc
    return out


def rational_roots(c):
    """All rational roots with multiplicity of the ascending coefficient list c, or None
    if some root is irrational."""
    from math import lcm
    c = [Q(x) for x in c]
    while c and c[-1] == 0:
        c.pop()
    roots = []
    while len(c) > 1 and c[0] == 0:
        roots.append(mpq(0))
        c = c[1:]
    while len(c) > 1:
        m = lcm(*[int(x.denominator) for x in c])
        ints = [int(x * m) for x in c]
        found = None
        for p in _divisors(ints[0]):
            for q in _divisors(ints[-1]):
                for r in (mpq(p, q), mpq(-p, q)):
                    if _poly_eval(c, r) == 0:
                        found = r
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            return None
        roots.append(found)
        c = _deflate(c, found)
    return sorted(roots)


def _rational_sqrt(x):
    from math import isqrt
    if x < 0:
        return None
    a, b = int(x.numerator), int(x.denominator)
    ra, rb = isqrt(a), isqrt(b)
    if ra * ra != a or rb * rb != b:
        return None
    return mpq(ra, rb)


def okamoto_canonical(n):
    """Canonical representative up to permutations and even sign changes:
    absolute values in descending order, the last one negated if the product is negative."""
    n = [Q(x) for x in n]
    prod = n[0] * n[1] * n[2] * n[3]
    a = sorted((abs(x) for x in n), reverse=True)
    if prod < 0:
        a[3] = -a[3]
    return tuple(a)


@dataclass(frozen=True)
class OkamotoForm:
    n: tuple
    shiftA: object
    shiftB: object
    hSeries: object = None

    def to_json(self):
        d = {"n": [qstr(x) for x in self.n], "shiftA": qstr(self.shiftA), "shiftB": qstr(self.shiftB)}
        if self.hSeries is not None:
            d["h"] = self.hSeries.to_json()
        return d


def cosgrove_to_okamoto(p, sigma=None):
    """Okamoto forms h = sigma + shiftA t + shiftB equivalent to the Cosgrove equation.

    Returns an empty list when the quartic in n_i^2 has an irrational root.
    """
    A, B, q, e = okamoto_quartic(p)
    roots = rational_roots([e[3], -e[2], e[1], -e[0], 1])
    if roots is None:
        return []
    n = [_rational_sqrt(r) for r in roots]
    if any(x is None for x in n):
        return []
    target = -q.c8
    if n[0] * n[1] * n[2] * n[3] != target:
        n[0] = -n[0]
    if n[0] * n[1] * n[2] * n[3] != target:
        return []
    h = None
    if sigma is not None:
        y = sigma.series if isinstance(sigma, SigmaSeries) else sigma
        h = y - _tpoly([B, A], y)
    return [OkamotoForm(okamoto_canonical(n), -A, -B, h)]


def okamoto_poly(n, t, h, h1, h2):
    n1, n2, n3, n4 = [Q(x) for x in n]
    w = t * (t - 1) * h2
    v = h1 * (h * 2 - (t * 2 - 1) * h1) + n1 * n2 * n3 * n4
    return h1 * w * w + v * v - (h1 + n1 * n1) * (h1 + n2 * n2) * (h1 + n3 * n3) * (h1 + n4 * n4)


def okamoto_residual(h, n, order=None):
    h1, h2 = _derivs(h)
    t = _tpoly([0, 1], h2)
    return _finish(okamoto_poly(n, t, h.truncate(h2.order), h1.truncate(h2.order), h2), order)


def okamoto_params(M, N, regime, tilde=False):
    """The Okamoto parameters attached to C(M,N) in each regime."""
    h = mpq(1, 2)
    if regime == LOW:
        s = _parity(M, N)
        return ((N - s) * h, (N + s) * h, M * h, -M * h)
    if (M + N) % 2 == 0:
        return ((M - 1) * h, (M + 1) * h, N * h, -N * h)
    return ((M - 1) * h, (M + 1) * h, (N + 1) * h, -(N - 1) * h)


def h_shift(M, N, regime):
    """(a, b) with h = t(t-1) dlnC/dt + a t + b."""
    M2, N2 = mpq(M * M), mpq(N * N)
    if regime == LOW:
        return -(M2 + 1) / 4, -(N2 - M2 - _parity(M, N)) / 8
    if (M + N) % 2 == 0:
        return -M2 / 4, -(N2 - M2 + 1) / 8
    return -M2 / 4, -(N2 - M2) / 8


def h_from_corr(c):
    """(h series, expected n) for a correlation in one of the three families."""
    if c.M > c.N or c.M < 0:
        raise ValueError("h_from_corr covers 0 <= M <= N")
    regime = c.regime.which
    if regime == HIGH and (c.M + c.N) % 2 and not c.tilde:
        raise ValueError("HighT with M+N odd uses the tilde correlation")
    s = _tlog(c.series)
    a, b = h_shift(c.M, c.N, regime)
    return s + _tpoly([b, a], s), okamoto_params(c.M, c.N, regime, c.tilde)


# ----- the four factors of C(0,N), N odd -----

def factor_shift(i, N):
    """(a, b) with h_i = t(t-1) dln f_i/dt + a t + b."""
    N2 = mpq(N * N)
    return {1: (-(N2 + 3) / 16, (N2 + 3) / 32),
            2: (-(N2 - 1) / 16, (N2 + 3) / 32),
            3: (-(N2 - 1) / 16, (N2 - 5) / 32),
            4: (-(N2 - 5) / 16, (N2 - 5) / 32)}[i]


def factor_params(N):
    return (mpq(N - 1, 4), mpq(N + 1, 4), mpq(-1, 2), mpq(0))


C05_FACTORS = {
    1: [([-1, 2], 1, 0), ([1, -1], 0, 1)],
    2: [([1, 1], 1, 0), ([-1, 1], 0, 1)],
    3: [([-2, 1], 1, 0), ([2, -2], 0, 1)],
    4: [([3], 2, 0), ([-4, 2], 1, 1), ([1, -1], 0, 2)],
}
C05_CONST = mpq(256, 81)


def c05_factor(i):
    return EllipticPoly(C05_FACTORS[i])


def c05_factorized():
    """const (1-t)^(1/2) t^(-6) f1 f2 f3 f4."""
    p = EllipticPoly([(1, 0, 0)], C05_CONST, -6, mpq(1, 2))
    for i in (1, 2, 3, 4):
        p = p * c05_factor(i)
    return p


def factor_h(i, N=5, order=20):
    """h_i from the factor f_i of C(0,5), exact through t^order."""
    if N != 5:
        raise ValueError("factors are tabulated for C(0,5)")
    f = elliptic_poly_eval(c05_factor(i), 2 * order + 16)
    s = _tlog(f)
    a, b = factor_shift(i, N)
    return s + _tpoly([b, a], s)


# ----- Forrester-Witte tau function -----

def fw_theta(M, N):
    """(p, p', eta) and (theta_0, theta_t, theta_1, theta_inf) for C(M,N) at low T."""
    if (M + N) % 2 == 0:
        p, pp = mpq(M - N + 1, 2), mpq(M - N - 1, 2)
    else:
        p = pp = mpq(M - N, 2)
    eta = mpq(0)
    h = mpq(1, 2)
    theta = (eta * h, N * h, (-N - p - pp) * h, (p - pp + eta) * h)
    return (p, pp, eta), theta


def fw_nparam(M, N):
    (p, pp, eta), _ = fw_theta(M, N)
    return ((N - p + pp - eta) / 2, (N + p - pp + eta) / 2, (eta + N + p + pp) / 2,
            (eta - N - p - pp) / 2)


def fw_tau(M, N, order_k):
    """tau_N = (1-t)^(-MN/2) D_N with D_N the Forrester-Witte Toeplitz determinant."""
    D = toeplitz_det(lambda m, o: fw_low_element(M, N, m, o), N, order_k)
    return (one_minus_t_pow(mpq(-M * N, 2), order_k) * D).truncate(order_k)


def h_from_tau(M, N, order):
    """h = t(t-1) d/dt ln( t^((n1n2+n3n4)/2) (1-t)^((n1n2-n3n4)/2) tau_N )."""
    n1, n2, n3, n4 = fw_nparam(M, N)
    tau = fw_tau(M, N, 2 * order + 8)
    s = _tlog(tau)
    a = (n1 * n2 + n3 * n4) / 2
    b = (n1 * n2 - n3 * n4) / 2
    # t(t-1) d/dt ln t^a = a(t-1);  t(t-1) d/dt ln (1-t)^b = b t
    return (s + _tpoly([-a, a + b], s)).truncate(2 * order), (n1, n2, n3, n4)


# ----- Kramers-Wannier checks -----

def invol(sigma, M, N):
    """sigma + (N^2 - M^2)/4 (t - 1); maps low-T (M,N) onto high-T (N,M) for M+N even."""
    d = mpq(N * N - M * M, 4)
    y = sigma.series if isinstance(sigma, SigmaSeries) else sigma
    return y + _tpoly([-d, d], y)


def dual_point(t, s, s1, s2):
    return 1 / t, s / t, s - t * s1, t ** 3 * s2


def _power_of(r, t):
    """e with r = t^e (|e| <= 12), else None."""
    for e in range(-12, 13):
        if r == t ** e:
            return e
    return None


def dual_check(family, M, N, points=20, seed=0):
    """Evaluate the family polynomial at random rational points and at their duals
    (with M and N swapped); report the exponent e with P_swapped(dual) = t^e P(point)."""
    rng = random.Random(seed)
    swapped = "JMDiag" if family == "JMDiag" else family
    exps = []
    bad = []
    for _ in range(points):
        pt = [mpq(rng.randint(-40, 40) or 1, rng.randint(1, 17)) for _ in range(4)]
        if pt[0] in (0, 1):
            pt[0] = mpq(3, 7)
        P = family_poly(family, M, N, *pt)
        Pd = family_poly(swapped, N, M, *dual_point(*pt))
        if P == 0:
            if Pd != 0:
                bad.append([qstr(x) for x in pt])
            continue
        e = _power_of(Pd / P, pt[0])
        if e is None:
            bad.append([qstr(x) for x in pt])
        exps.append(e)
    known = {e for e in exps if e is not None}
    ok = not bad and len(known) == 1
    return {"family": family, "M": M, "N": N, "points": points, "holds": ok,
            "exponent": known.pop() if ok else None, "failures": bad}


def kw_checks(M, N, order, points=20, seed=0):
    """Involution residual (M+N even) and duality proportionality for the sigma families."""
    report = {"M": M, "N": N, "order": order}
    if (M + N) % 2 == 0:
        c = corr_fw(M, N, LOW, 2 * order + 8)
        s = sigma_from_corr(c, "Low")
        r = ode_residual(invol(s, M, N), "HighEvenMN", N, M, order=order)
        report["invol"] = {"family": "HighEvenMN", "M": N, "N": M, "holds": r.is_zero(),
                           "residual_leading": None if r.is_zero() else qstr(r.leading())}
    fams = ["LowMN", "HighEvenMN" if (M + N) % 2 == 0 else "HighOddMN"]
    if M == N:
        fams.append("JMDiag")
    report["dual"] = [dual_check(f, M, N, points, seed) for f in fams]
    report["holds"] = (report.get("invol", {"holds": True})["holds"]
                       and all(d["holds"] for d in report["dual"]))
    return report


# ----- sweep helpers -----

def corr_for_sigma(M, N, regime, order):
    """The correlation whose sigma is tested: C itself, or C~ at high T with M+N odd."""
    order_k = 2 * order + 8 + N
    if regime == HIGH and (M + N) % 2:
        return corr_fw(M, N, HIGH, order_k, tilde=True)
    return corr_fw(M, N, regime, order_k)


def verify_ode(M, N, regime, order):
    """Residual record {family, M, N, order_verified, residual_leading_term?}."""
    c = corr_for_sigma(M, N, regime, order)
    s = sigma_from_corr(c)
    fam = {"DiagLow": "LowMN", "DiagHigh": "HighEvenMN", "Low": "LowMN",
           "HighEven": "HighEvenMN", "HighOdd": "HighOddMN"}[s.variant]
    out = []
    fams = [fam, "JMDiag"] if M == N else [fam]
    for f in fams:
        r = ode_residual(s, f, M, N, order=order)
        rec = {"family": f, "M": M, "N": N, "regime": regime,
               "order_verified": order if r.is_zero() else (r.valuation // 2 - 1)}
        if not r.is_zero():
            rec["residual_leading_term"] = {"power": r.valuation // 2, "coeff": qstr(r.leading())}
        out.append(rec)
    return out

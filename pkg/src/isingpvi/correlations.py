"""Correlations C(M,N) at nu = -k by Toeplitz, Forrester-Witte and quadratic-recursion routes.

Conventions:
  LowT   s_h = i,     s_v = -i/k     (k < 1 is the series variable)
  HighT  s_h = -i k,  s_v = i        (k_> is identified with the series variable k)
All orders are in k.
"""

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from gmpy2 import mpq

from .series import K, Q, SeriesK, SeriesError, one_minus_t_pow, qstr
from .hypergeom import (HALF, MatrixElementFamily, elliptic_series, fw_high_element,
                        fw_low_element, matrix_element, row_low_element)
from .determinants import SeriesMatrix, det_series, factordet_product, toeplitz_det

LOW, HIGH = "low", "high"


class Regime:
    """Temperature regime with its coupling frame at nu = -k."""

    def __init__(self, which):
        if which in ("low", "LowT", "lowT", LOW):
            which = LOW
        elif which in ("high", "HighT", "highT", HIGH):
            which = HIGH
        else:
            raise ValueError("regime must be 'low' or 'high'")
        self.which = which

    def frame(self, order):
        """(s_h^2, s_v^2) as series in k."""
        if self.which == LOW:
            return SeriesK.const(-1, order), SeriesK.monomial(-1, -2, order)
        return SeriesK.monomial(-1, 2, order), SeriesK.const(-1, order)

    def __eq__(self, other):
        return isinstance(other, Regime) and self.which == other.which

    def __hash__(self):
        return hash(self.which)

    def __repr__(self):
        return "Regime(%r)" % self.which


def _regime(r):
    return r if isinstance(r, Regime) else Regime(r)


@dataclass(frozen=True)
class Correlation:
    M: int
    N: int
    regime: Regime
    tilde: bool
    series: SeriesK

    def to_json(self):
        return {"M": self.M, "N": self.N, "regime": self.regime.which, "tilde": self.tilde,
                "series": self.series.to_json()}


# ----- Toeplitz routes -----

def _high_row_kernel(n, order):
    return matrix_element(MatrixElementFamily("HighRowFourier"), n, order)


def corr_row(N, regime, order):
    """C(0,N) from the row Toeplitz determinant."""
    regime = _regime(regime)
    if N < 1:
        raise ValueError("N >= 1 required")
    if regime.which == LOW:
        s = toeplitz_det(row_low_element, N, order)
    elif N % 2:
        s = SeriesK.zero(order)
    else:
        s = _at_order(lambda o: factordet_product(_high_row_kernel, N // 2, o), order)
    return Correlation(0, N, regime, False, s)


def _at_order(build, order):
    extra = 0
    for _ in range(8):
        s = build(order + extra)
        if s.order >= order:
            return s.truncate(order)
        extra += max(order - s.order, 2)
    raise SeriesError("could not reach order %d" % order)


def corr_diag(N, regime, order):
    """C(N,N): Toeplitz determinant with alpha_1 = 0."""
    regime = _regime(regime)
    if N < 1:
        raise ValueError("N >= 1 required")
    kind = "DiagLow" if regime.which == LOW else "DiagHigh"
    fam = MatrixElementFamily(kind)
    s = toeplitz_det(lambda n, o: matrix_element(fam, n, o), N, order)
    return Correlation(N, N, regime, False, s)


def corr_fw(M, N, regime, order, tilde=None):
    """C(M,N) (or the tilde limit at HighT with M+N odd) as prefactor times D_N."""
    regime = _regime(regime)
    if not (N >= 1 and 0 <= M <= N):
        raise ValueError("need 1 <= N and 0 <= M <= N")
    odd = (M + N) % 2 == 1
    if regime.which == LOW:
        D = toeplitz_det(lambda m, o: fw_low_element(M, N, m, o), N, order)
        e = mpq((N - M) ** 2 + (1 if odd else 0), 4)
        return Correlation(M, N, regime, False, (one_minus_t_pow(e, order) * D).truncate(order))
    if odd and tilde is False:
        return Correlation(M, N, regime, False, SeriesK.zero(order))
    D = toeplitz_det(lambda m, o: fw_high_element(M, N, m, o), N, order)
    if not odd:
        sign = -1 if ((N - M) // 2) % 2 else 1
        s = (one_minus_t_pow(mpq((N - M) ** 2, 4), order) * D).scale(sign)
        return Correlation(M, N, regime, False, s.truncate(order))
    sign = -1 if ((N - M + 1) // 2) % 2 else 1
    s = (one_minus_t_pow(mpq((N - M) ** 2 - 1, 4), order) * D).scale(sign * (M + N))
    return Correlation(M, N, regime, True, s.truncate(order))


# ----- quadratic recursion -----

class CSeries:
    """re + i*im over SeriesK; just enough arithmetic for the recursion."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=None):
        self.re = re
        self.im = SeriesK.zero(re.order, re.var) if im is None else im

    @property
    def order(self):
        return min(self.re.order, self.im.order)

    def is_zero(self):
        return self.re.is_zero() and self.im.is_zero()

    def is_real(self):
        return self.im.is_zero()

    def __add__(self, o):
        return CSeries(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return CSeries(self.re - o.re, self.im - o.im)

    def __neg__(self):
        return CSeries(-self.re, -self.im)

    def __mul__(self, o):
        if isinstance(o, SeriesK):
            return CSeries(self.re * o, self.im * o)
        return CSeries(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def __truediv__(self, o):
        if o.im.is_zero():
            return CSeries(self.re / o.re, self.im / o.re)
        if o.re.is_zero():
            return CSeries(self.im / o.im, -self.re / o.im)
        den = o.re * o.re + o.im * o.im
        num = self * CSeries(o.re, -o.im)
        return CSeries(num.re / den, num.im / den)

    def truncate(self, n):
        return CSeries(self.re.truncate(n), self.im.truncate(n))

    def to_json(self):
        return {"re": self.re.to_json(), "im": self.im.to_json()}

    def __repr__(self):
        return "CSeries(%r, %r)" % (self.re, self.im)


def _terms(rel, M, N):
    """Relation instance as (coef, (tab, m, n), (tab, m, n)) product terms; sum is zero.

    coef is 1, -1, 't' or 'k' (times sign), tab 'L' or 'H'.
    """
    if rel == 1:
        return [(1, ("H", M, N), ("H", M, N)), (-1, ("H", M - 1, N), ("H", M + 1, N)),
                (-1, ("L", M, N), ("L", M, N)), (1, ("L", M, N - 1), ("L", M, N + 1))]
    if rel == 2:
        return [("t", ("H", M, N), ("H", M, N)), ("-t", ("H", M, N - 1), ("H", M, N + 1)),
                (-1, ("L", M, N), ("L", M, N)), (1, ("L", M - 1, N), ("L", M + 1, N))]
    return [("k", ("H", M, N), ("H", M + 1, N + 1)), ("-k", ("H", M, N + 1), ("H", M + 1, N)),
            (-1, ("L", M, N), ("L", M + 1, N + 1)), (1, ("L", M, N + 1), ("L", M + 1, N))]


def _key(e):
    tab, m, n = e
    return (tab, abs(m), abs(n))


class RecursionTable:
    """Low and high tables filled from row-0/diagonal seeds by the three quadratic relations."""

    def __init__(self, maxM, maxN, order, pad=None):
        self.maxM, self.maxN, self.order = maxM, maxN, order
        self.pad = 2 * max(maxM, maxN) + 4 if pad is None else pad
        self.work = order + self.pad
        self.vals = {}
        self.log = []
        self._seed()

    def _seed(self):
        w = self.work
        top = max(self.maxM, self.maxN) + 2
        self.vals[("L", 0, 0)] = CSeries(SeriesK.const(1, w))
        self.vals[("H", 0, 0)] = CSeries(SeriesK.const(1, w))
        for n in range(1, top + 1):
            self.vals[("L", 0, n)] = CSeries(corr_row(n, LOW, w).series)
            self.vals[("H", 0, n)] = CSeries(corr_row(n, HIGH, w).series)
            self.vals[("L", n, n)] = CSeries(corr_diag(n, LOW, w).series)
            self.vals[("H", n, n)] = CSeries(corr_diag(n, HIGH, w).series)
            for m in range(0, n):
                if (m + n) % 2:
                    # C(M,N) = 0 at HighT for M < N, M+N odd
                    self.vals[("H", m, n)] = CSeries(SeriesK.zero(w))
        # C(1,0) = (1+s_h^2)^{1/2} - s_h C_d(0,1) with C the high table, C_d the low one:
        # s_h = i kills the root and H(1,0) = -i L(0,1); the companion relation with
        # H(0,1) = 0 fixes L(1,0) = sqrt(1-t), branch 1 at k = 0.
        self.vals[("H", 1, 0)] = CSeries(SeriesK.zero(w), -self.vals[("L", 0, 1)].re)
        self.vals[("L", 1, 0)] = CSeries(one_minus_t_pow(HALF, w))
        self.log.append("seeds: row 0, diagonal, HighT odd zeros, C(1,0) both regimes")

    def _coef(self, c):
        w = self.work
        if c == 1:
            return None, 1
        if c == -1:
            return None, -1
        mono = SeriesK.monomial(1, 2 if c.endswith("t") else 1, w)
        return mono, (-1 if c.startswith("-") else 1)

    def _in_range(self, key):
        _, m, n = key
        return m <= self.maxM + 1 and n <= self.maxN + 1

    def _solve_one(self, rel, M, N):
        terms = _terms(rel, M, N)
        unknown = None
        for _, a, b in terms:
            for e in (a, b):
                kk = _key(e)
                if kk not in self.vals:
                    if unknown is not None and unknown != kk:
                        return None
                    unknown = kk
        if unknown is None or not self._in_range(unknown):
            return None
        lin = None
        rest = None
        for c, a, b in terms:
            ka, kb = _key(a), _key(b)
            mono, sg = self._coef(c)
            if ka == unknown and kb == unknown:
                return None   # quadratic in the unknown
            if ka == unknown or kb == unknown:
                other = self.vals[kb if ka == unknown else ka]
                piece = other * mono if mono is not None else other
                piece = piece if sg > 0 else -piece
                lin = piece if lin is None else lin + piece
            else:
                piece = self.vals[ka] * self.vals[kb]
                piece = piece * mono if mono is not None else piece
                piece = piece if sg > 0 else -piece
                rest = piece if rest is None else rest + piece
        if lin is None or lin.is_zero():
            return None
        val = (-rest) / lin if rest is not None else CSeries(SeriesK.zero(self.work))
        return unknown, val

    def fill(self):
        changed = True
        while changed:
            changed = False
            for s in range(0, self.maxM + self.maxN + 2):
                for M in range(0, min(s, self.maxM + 1) + 1):
                    N = s - M
                    if N > self.maxN + 1:
                        continue
                    for rel in (3, 1, 2):
                        if (M, N) == (0, 0) and rel != 3:
                            continue
                        got = self._solve_one(rel, M, N)
                        if got is None:
                            continue
                        key, val = got
                        self.vals[key] = val
                        self.log.append("%s(%d,%d) from R%d at (%d,%d), order %d"
                                        % (key[0], key[1], key[2], rel, M, N, val.order))
                        changed = True
        return self

    def get(self, tab, M, N):
        return self.vals.get((tab, abs(M), abs(N)))

    def residuals(self):
        """Residual of every relation instance whose entries are all known."""
        out = []
        for M in range(0, self.maxM + 1):
            for N in range(0, self.maxN + 1):
                for rel in (1, 2, 3):
                    if (M, N) == (0, 0) and rel != 3:
                        continue
                    terms = _terms(rel, M, N)
                    if any(_key(e) not in self.vals for _, a, b in terms for e in (a, b)):
                        continue
                    tot = None
                    for c, a, b in terms:
                        mono, sg = self._coef(c)
                        p = self.vals[_key(a)] * self.vals[_key(b)]
                        p = p * mono if mono is not None else p
                        p = p if sg > 0 else -p
                        tot = p if tot is None else tot + p
                    out.append({"relation": rel, "M": M, "N": N, "order": tot.order,
                                "zero": tot.is_zero()})
        return out


def corr_recursion_table(maxM, maxN, order):
    """(low table, high table, residual report); tables map (M, N) -> CSeries through `order`.

    Low entries are real. High entries with M > N can be complex; with the
    seed convention H(1,0) = -i L(0,1) they are real for M+N even and
    purely imaginary for M+N odd.
    """
    rt = RecursionTable(maxM, maxN, order).fill()
    low, high = {}, {}
    for M in range(maxM + 1):
        for N in range(maxN + 1):
            for tab, dest in (("L", low), ("H", high)):
                v = rt.get(tab, M, N)
                if v is None:
                    raise SeriesError("entry %s(%d,%d) unreachable from the seeds" % (tab, M, N))
                if v.order < order:
                    raise SeriesError("entry %s(%d,%d) only exact through k^%d" % (tab, M, N, v.order))
                dest[(M, N)] = v.truncate(order)
    return low, high, {"residuals": rt.residuals(), "log": rt.log}


def corr_recursion(M, N, regime, order):
    low, high, _ = corr_recursion_table(M, max(N, 1), order)
    v = (low if _regime(regime).which == LOW else high)[(M, N)]
    if not v.is_real():
        raise SeriesError("C(%d,%d) is not real in this frame" % (M, N))
    return Correlation(M, N, _regime(regime), False, v.re)


# ----- elliptic polynomials -----

def _poly(c):
    if isinstance(c, dict):
        return [Q(x) for x in c["num"]], [Q(x) for x in c.get("den", [1])]
    if isinstance(c, (list, tuple)):
        return [Q(x) for x in c], [mpq(1)]
    return [Q(c)], [mpq(1)]


def _pmul(a, b):
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


class EllipticPoly:
    """prefactor * sum coeff(t) E~^e K~^k, coeff(t) a ratio of polynomials in t.

    Prefactor: constant * t^tpow * (1-t)^omtpow with rational exponents.
    """

    def __init__(self, terms, const=1, tpow=0, omtpow=0):
        self.terms = []
        for c, e, k in terms:
            num, den = _poly(c)
            self.terms.append(((num, den), int(e), int(k)))
        self.const, self.tpow, self.omtpow = Q(const), Q(tpow), Q(omtpow)
        if (2 * self.tpow).denominator != 1:
            raise ValueError("t power must be a multiple of 1/2")

    def __mul__(self, other):
        terms = []
        for (na, da), ea, ka in self.terms:
            for (nb, db), eb, kb in other.terms:
                terms.append(({"num": _pmul(na, nb), "den": _pmul(da, db)}, ea + eb, ka + kb))
        return EllipticPoly(terms, self.const * other.const, self.tpow + other.tpow,
                            self.omtpow + other.omtpow)

    def degrees(self):
        return sorted({e + k for _, e, k in self.terms})

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    @classmethod
    def from_json(cls, d):
        if "factors" in d:
            p = cls([(1, 0, 0)], d.get("const", 1), d.get("t", 0), d.get("one_minus_t", 0))
            for f in d["factors"]:
                p = p * cls([(x["c"], x["E"], x["K"]) for x in f])
            return p
        return cls([(x["c"], x["E"], x["K"]) for x in d["terms"]], d.get("const", 1),
                   d.get("t", 0), d.get("one_minus_t", 0))

    def to_json(self):
        def enc(num, den):
            if den == [1]:
                return [qstr(x) for x in num]
            return {"num": [qstr(x) for x in num], "den": [qstr(x) for x in den]}
        return {"const": qstr(self.const), "t": qstr(self.tpow), "one_minus_t": qstr(self.omtpow),
                "terms": [{"c": enc(n, d), "E": e, "K": k} for (n, d), e, k in self.terms]}


def elliptic_poly_eval(p, order):
    """Expand p as a k-series exact through k^order."""
    shift = int(2 * p.tpow)
    if not p.terms:
        return SeriesK.zero(order)
    need = order - shift
    if need < 0:
        return SeriesK.zero(order)
    no = need // 2 + 1
    E = elliptic_series("E", no).as_k()
    Kt = elliptic_series("K", no).as_k()
    ko = 2 * no
    total = SeriesK.zero(ko)
    for (num, den), e, k in p.terms:
        c = SeriesK.t_poly(num, ko)
        if len(den) > 1 or den[0] != 1:
            d = SeriesK.t_poly(den, ko)
            if d.valuation != 0:
                raise SeriesError("uncancelled pole at t = 0 in a coefficient")
            c = c / d
        total = total + c * E ** e * Kt ** k
    total = total * one_minus_t_pow(p.omtpow, ko)
    total = total.shift(shift).scale(p.const)
    if total.order < order:
        raise SeriesError("fixture only exact through k^%d" % total.order)
    return total.truncate(order)


def load_fixtures(path=None):
    """Closed-form correlations keyed by name; each entry has M, N, regime, tilde, poly.

    `path` is a fixtures.json file or a directory holding one; default is the bundled corpus.
    """
    if path is None:
        text = resources.files("isingpvi").joinpath("data/fixtures.json").read_text()
    else:
        path = Path(path)
        if path.is_dir():
            path = path / "fixtures.json"
        text = path.read_text()
    raw = json.loads(text)
    out = {}
    for name, d in raw.items():
        out[name] = dict(M=d["M"], N=d["N"], regime=Regime(d["regime"]), tilde=d.get("tilde", False),
                         poly=EllipticPoly.from_json(d["poly"]))
    return out


def fixture_series(name, order, fixtures=None):
    fx = (fixtures or load_fixtures())[name]
    return elliptic_poly_eval(fx["poly"], order)

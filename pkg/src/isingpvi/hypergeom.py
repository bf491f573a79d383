"""Gauss hypergeometric series, elliptic integrals and Toeplitz kernels.

Every Gamma-function ratio that appears in a matrix element is reduced to
a finite Pochhammer product, so nothing here leaves the rationals.

Order conventions: functions returning a series in t (hyp2f1_series,
elliptic_series, pi_tilde_series) take the order in t; matrix elements
take the order in k, because several of them have odd k-support.
"""

from dataclasses import dataclass, field

from gmpy2 import mpq

from .series import K, T, Q, SeriesK, SeriesError, one_minus_t_pow, qstr

HALF = mpq(1, 2)


def poch(a, n):
    """Rising factorial (a)_n."""
    a = Q(a)
    r = mpq(1)
    for i in range(n):
        r *= a + i
    return r


def binom(p, j):
    """Generalized binomial coefficient C(p, j) for rational p."""
    if j < 0:
        return mpq(0)
    p = Q(p)
    r = mpq(1)
    for i in range(j):
        r = r * (p - i) / (i + 1)
    return r


def factorial(n):
    r = 1
    for i in range(2, n + 1):
        r *= i
    return r


def _is_nonpos_int(x):
    return x.denominator == 1 and x <= 0


def gamma_ratio(x, y):
    """Gamma(x)/Gamma(y) for x - y an integer, as a Pochhammer quotient."""
    x, y = Q(x), Q(y)
    d = x - y
    if d.denominator != 1:
        raise ValueError("Gamma ratio needs an integer difference, got %s" % qstr(d))
    d = int(d)
    if d >= 0:
        # Gamma(y+d)/Gamma(y) = (y)_d; a pole of Gamma(y) makes this 0 unless x is a pole too
        if _is_nonpos_int(y) and not _is_nonpos_int(x):
            return mpq(0)
        if _is_nonpos_int(y):
            # both poles: limit of (y+e)_d, the vanishing factor cancels the sign bookkeeping
            return _pole_ratio(x, y)
        return poch(y, d)
    if _is_nonpos_int(x):
        if _is_nonpos_int(y):
            return _pole_ratio(x, y)
        raise ValueError("Gamma pole at %s" % qstr(x))
    return 1 / poch(x, -d)


def _pole_ratio(x, y):
    # Gamma(-a+e)/Gamma(-b+e) -> (-1)^(a-b) b!/a! as e -> 0 for nonnegative integers a, b
    a, b = int(-x), int(-y)
    sign = -1 if (a - b) % 2 else 1
    return mpq(sign * factorial(b), factorial(a))


@dataclass(frozen=True)
class Hyp2F1Spec:
    a: object
    b: object
    c: object

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, Q(getattr(self, name)))
        if _is_nonpos_int(self.c):
            raise ValueError("lower parameter %s is a non-positive integer" % qstr(self.c))


def hyp2f1_coeffs(a, b, c, n):
    """Taylor coefficients of 2F1([a,b],[c],t) for t^0 .. t^n."""
    a, b, c = Q(a), Q(b), Q(c)
    if _is_nonpos_int(c):
        raise ValueError("lower parameter %s is a non-positive integer" % qstr(c))
    out = [mpq(1)]
    for i in range(n):
        out.append(out[-1] * (a + i) * (b + i) / ((c + i) * (i + 1)))
    return out


def hyp2f1_series(spec, order):
    """2F1 as a t-series exact through t^order."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    return SeriesK.from_t_coeffs(hyp2f1_coeffs(spec.a, spec.b, spec.c, order), order)


def hyp2f1_k(a, b, c, korder, shift=0, scale=1):
    """scale * k^shift * 2F1([a,b],[c],k^2) as a k-series exact through k^korder."""
    if korder < shift:
        return SeriesK.zero(korder)
    n = (korder - shift) // 2
    cs = hyp2f1_coeffs(a, b, c, n)
    scale = Q(scale)
    return SeriesK.from_dict({shift + 2 * i: scale * x for i, x in enumerate(cs)}, korder)


def elliptic_series(which, order):
    """K~ = 2F1([1/2,1/2],[1],t) or E~ = 2F1([1/2,-1/2],[1],t), order in t."""
    if which in ("K", "k"):
        return hyp2f1_series(Hyp2F1Spec(HALF, HALF, 1), order)
    if which in ("E", "e"):
        return hyp2f1_series(Hyp2F1Spec(HALF, -HALF, 1), order)
    raise ValueError("which must be 'K' or 'E'")


def pi_tilde_series(c, order):
    """Pi~(c t, k) = (2/pi) int dtheta / ((1 - c t sin^2)(1 - t sin^2)^(1/2)), order in t.

    Double sum: sum_{a,b} c^a (1/2)_b/b! (1/2)_(a+b)/(a+b)! t^(a+b).
    """
    c = Q(c)
    coeffs = []
    kb = [poch(HALF, b) / factorial(b) for b in range(order + 1)]
    for n in range(order + 1):
        s = mpq(0)
        for b in range(n + 1):
            s += c ** (n - b) * kb[b]
        coeffs.append(s * kb[n])
    return SeriesK.from_t_coeffs(coeffs, order)


def sqrt_one_minus_t(korder):
    return one_minus_t_pow(HALF, korder)


def alpha_series(korder):
    """alpha(k) = (1 - sqrt(1-k^2))/k, the inverse of k = 2 alpha/(1+alpha^2)."""
    s = one_minus_t_pow(HALF, korder + 1)
    return (1 - s).shift(-1)


# ----- Toeplitz kernels -----

KINDS = ("RowLowEven", "RowLowOdd", "DiagLow", "DiagHigh", "HighRowPos", "HighRowNeg",
         "HighRowFourier", "FWEvenNeg", "FWEvenPos", "FWOdd",
         "FWHighEven_mGe1", "FWHighEven_mLt1", "FWHighOdd_mGe1", "FWHighOdd_mLt1",
         "GeneralFW")


@dataclass(frozen=True)
class MatrixElementFamily:
    kind: str
    p: object = None
    pp: object = None
    eta: object = 0
    xi: object = 0
    M: int = None
    N: int = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError("unknown family %r" % (self.kind,))
        for name in ("p", "pp", "eta", "xi"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, Q(v))
        if self.kind.startswith("FW"):
            if self.M is None or self.N is None:
                raise ValueError("%s needs M and N" % self.kind)
            even = (self.M + self.N) % 2 == 0
            if self.kind.startswith("FWEven") or self.kind.startswith("FWHighEven"):
                if not even:
                    raise ValueError("%s requires M+N even" % self.kind)
            if self.kind in ("FWOdd",) or self.kind.startswith("FWHighOdd"):
                if even:
                    raise ValueError("%s requires M+N odd" % self.kind)
        if self.kind == "GeneralFW" and (self.p is None or self.pp is None):
            raise ValueError("GeneralFW needs p and p'")


def general_fw_element_fourier(p, pp, m, order):
    """Fourier coefficient (1/2pi) int e^{i m theta} (1 - k e^{i theta})^p (1 - k e^{-i theta})^p' dtheta.

    Double binomial expansion: sum_j C(p,j) C(p',j+m) (-k)^(2j+m).
    """
    p, pp = Q(p), Q(pp)
    terms = {}
    j = max(0, -m)
    while 2 * j + m <= order:
        c = binom(p, j) * binom(pp, j + m)
        if c:
            e = 2 * j + m
            terms[e] = terms.get(e, 0) + (c if e % 2 == 0 else -c)
        j += 1
    return SeriesK.from_dict(terms, order)


def _row_low(n, order):
    m = abs(n) // 2
    pre = poch(HALF, m) / factorial(m)
    if n % 2 == 0:
        # (k/2)^{2m} sqrt(1-k^2) (1/2)_m/m! 2F1([m+1/2,m+1/2],[2m+1],k^2)
        f = hyp2f1_k(m + HALF, m + HALF, 2 * m + 1, order, 2 * m, pre / 4 ** m)
        return f * sqrt_one_minus_t(order)
    # a_{+-(2m+1)} = -+(k/2)^{2m+1} (1/2)_m/m! 2F1([m+1/2,m+1/2],[2m+2],k^2)
    sign = -1 if n > 0 else 1
    return hyp2f1_k(m + HALF, m + HALF, 2 * m + 2, order, 2 * m + 1, sign * pre / 2 ** (2 * m + 1))


def _high_row_alpha(n, order):
    """a_n of the high-temperature row correlation through the alpha variable."""
    if n % 2 == 0:
        return SeriesK.zero(order)
    al = alpha_series(order + 4)
    al2 = (al * al).truncate(order + 4)
    al4 = (al2 * al2).truncate(order + 4)
    if n > 0:
        m = (n - 1) // 2
        f = hyp2f1_k(-HALF, m + HALF, m + 1, order + 4)
        pre = poch(HALF, m) / factorial(m)
        out = _compose_t(f, al4) * al2 ** m if m else _compose_t(f, al4)
        return out.scale(pre).truncate(order)
    m = (-n - 1) // 2
    f = hyp2f1_k(HALF, m + HALF, m + 2, order + 4)
    pre = poch(HALF, m) / (2 * factorial(m + 1))
    return (_compose_t(f, al4) * al2 ** (m + 1)).scale(pre).truncate(order)


def _high_row_fourier(n, order):
    """a_n = -(1/2pi) int [(1-a^2 e^{2i th})/(1-a^2 e^{-2i th})]^{1/2} e^{(n-1) i th} dth.

    Agrees with the closed forms for n < 0 and is their negative for n > 0.
    Both sign choices give the same C(0,2N): the full Toeplitz determinant
    with this kernel equals the factorized product with the closed forms.
    """
    if n % 2 == 0:
        return SeriesK.zero(order)
    m = (n - 1) // 2
    # coefficient of e^{-2 i m th}: sum_a C(1/2,a) C(-1/2,a+m) (-a^2)^{2a+m}
    al = alpha_series(order + 4)
    al2 = (al * al).truncate(order + 2)
    terms = {}
    a = max(0, -m)
    while 2 * (2 * a + m) <= order + 2:
        c = binom(HALF, a) * binom(-HALF, a + m) * (-1) ** ((2 * a + m) % 2)
        e = 2 * a + m
        terms[e] = terms.get(e, 0) + c
        a += 1
    poly = SeriesK.from_dict(terms, order + 2)
    return (-poly.compose(al2)).truncate(order)


def _fw_low(fam, m, order):
    M, N = fam.M, fam.N
    d = Q(N - M)
    am = abs(m)
    sign = -1 if am % 2 else 1
    if fam.kind == "FWOdd":
        pre = gamma_ratio(am + d / 2, d / 2) / factorial(am)
        return hyp2f1_k(d / 2, d / 2 + am, 1 + am, order, am, sign * pre)
    if fam.kind == "FWEvenNeg":
        if m > 0:
            raise ValueError("FWEvenNeg is for m <= 0")
        pre = gamma_ratio(am + (d + 1) / 2, (d + 1) / 2) / factorial(am)
        return hyp2f1_k((d - 1) / 2, (d + 1) / 2 + am, 1 + am, order, am, sign * pre)
    if fam.kind == "FWEvenPos":
        if m < 1:
            raise ValueError("FWEvenPos is for m >= 1")
        pre = gamma_ratio(m + (d - 1) / 2, (d - 1) / 2) / factorial(m)
        return hyp2f1_k((d + 1) / 2, (d - 1) / 2 + m, 1 + m, order, m, sign * pre)
    raise AssertionError(fam.kind)


def _fw_high(fam, m, order):
    M, N = fam.M, fam.N
    d = Q(N - M)
    sign = 1 if (m - 1) % 2 == 0 else -1
    kind = fam.kind
    if kind == "FWHighEven_mGe1":
        if m < 1:
            raise ValueError("m >= 1 required")
        pre = gamma_ratio((d - 1) / 2 + m, (d + 1) / 2) / factorial(m - 1)
        return hyp2f1_k((d - 1) / 2, (d - 1) / 2 + m, m, order, m - 1, sign * pre)
    if kind == "FWHighEven_mLt1":
        if m >= 1:
            raise ValueError("m < 1 required")
        pre = gamma_ratio((d + 1) / 2 - m, (d - 1) / 2) / factorial(1 - m)
        return hyp2f1_k((d + 1) / 2, (d + 1) / 2 - m, 2 - m, order, 1 - m, sign * pre)
    if kind == "FWHighOdd_mGe1":
        if m < 1:
            raise ValueError("m >= 1 required")
        pre = gamma_ratio(d / 2 - 1 + m, d / 2) / factorial(m - 1)
        return hyp2f1_k(d / 2, d / 2 - 1 + m, m, order, m - 1, sign * pre)
    if kind == "FWHighOdd_mLt1":
        if m >= 1:
            raise ValueError("m < 1 required")
        pre = gamma_ratio(d / 2 + 1 - m, d / 2) / factorial(1 - m)
        return hyp2f1_k(d / 2, d / 2 + 1 - m, 2 - m, order, 1 - m, sign * pre)
    raise AssertionError(kind)


def _general_fw(fam, m, order):
    if fam.eta != 0 or fam.xi != 0:
        raise ValueError("only the eta = 0, xi = 0 specialization has a series in k")
    p, pp = fam.p, fam.pp
    am = abs(m)
    sign = -1 if am % 2 else 1
    if m <= 0:
        # Gamma(|m|-p')/(|m|! Gamma(-p')) (-1)^|m| t^{|m|/2} 2F1([-p,-p'+|m|],[1+|m|],t)
        pre = gamma_ratio(am - pp, -pp) / factorial(am)
        return hyp2f1_k(-p, -pp + am, 1 + am, order, am, sign * pre)
    pre = gamma_ratio(m - p, -p) / factorial(m)
    return hyp2f1_k(m - p, -pp, m + 1, order, m, sign * pre)


def matrix_element(family, n, order):
    """The n-th Toeplitz kernel of the given family as a k-series exact through k^order."""
    kind = family.kind
    if kind == "RowLowEven":
        if n % 2:
            raise ValueError("RowLowEven takes even indices")
        return _row_low(n, order)
    if kind == "RowLowOdd":
        if n % 2 == 0:
            raise ValueError("RowLowOdd takes odd indices")
        return _row_low(n, order)
    if kind == "DiagLow":
        # alpha_1 = 0, alpha_2 = k: [(1 - k e^{-i th})/(1 - k e^{i th})]^{1/2}
        return general_fw_element_fourier(-HALF, HALF, n, order)
    if kind == "DiagHigh":
        # alpha_2 = 1/k_>: pulling out e^{-i th} shifts the index by one; overall sign
        # fixed so that C(1,1) starts with +k/2
        return -general_fw_element_fourier(HALF, -HALF, n - 1, order)
    if kind == "HighRowPos":
        if n < 0:
            raise ValueError("HighRowPos takes n > 0")
        return _high_row_alpha(n, order)
    if kind == "HighRowNeg":
        if n > 0:
            raise ValueError("HighRowNeg takes n < 0")
        return _high_row_alpha(n, order)
    if kind == "HighRowFourier":
        return _high_row_fourier(n, order)
    if kind in ("FWEvenNeg", "FWEvenPos", "FWOdd"):
        return _fw_low(family, n, order)
    if kind.startswith("FWHigh"):
        return _fw_high(family, n, order)
    if kind == "GeneralFW":
        return _general_fw(family, n, order)
    raise AssertionError(kind)


def row_low_element(n, order):
    return _row_low(n, order)


def high_row_element(n, order):
    return _high_row_alpha(n, order)


def fw_low_element(M, N, m, order):
    """A_m of the low-temperature D_N, choosing the family by parity and sign of m."""
    if (M + N) % 2:
        return matrix_element(MatrixElementFamily("FWOdd", M=M, N=N), m, order)
    kind = "FWEvenNeg" if m <= 0 else "FWEvenPos"
    return matrix_element(MatrixElementFamily(kind, M=M, N=N), m, order)


def fw_high_element(M, N, m, order):
    par = "Odd" if (M + N) % 2 else "Even"
    kind = "FWHigh%s_%s" % (par, "mGe1" if m >= 1 else "mLt1")
    return matrix_element(MatrixElementFamily(kind, M=M, N=N), m, order)


# ----- identity suite -----

@dataclass
class IdentityResult:
    """Verdict for one identity. printed_holds is set when the displayed form
    differs from the one that was checked (None means they coincide)."""
    name: str
    holds: bool
    order: int
    note: str = ""
    printed_holds: object = None

    def to_json(self):
        d = {"identity": self.name, "holds": self.holds, "order": self.order}
        if self.note:
            d["note"] = self.note
        if self.printed_holds is not None:
            d["printed_holds"] = self.printed_holds
        return d


def _F(a, b, c, korder, shift=0, scale=1):
    return hyp2f1_k(a, b, c, korder, shift, scale)


def _tp(coeffs, korder):
    return SeriesK.t_poly(coeffs, korder)


def _equal(lhs, rhs, order):
    return min(lhs.order, rhs.order) >= order and (lhs - rhs).truncate(order).is_zero()


def _check(name, lhs, rhs, order, note="", printed=None):
    try:
        ok = _equal(lhs, rhs, order)
        pr = None if printed is None else _equal(printed[0], printed[1], order)
    except SeriesError as exc:
        return IdentityResult(name, False, order, str(exc))
    return IdentityResult(name, ok, order, note, pr)


def contiguous_identities(order):
    """The contiguous relations behind the direct C(0,2) proof; order in t."""
    ko = 2 * order
    h, q = HALF, mpq(3, 2)
    f = mpq(5, 2)
    omt = _tp([1, -1], ko)
    t = _tp([0, 1], ko)
    F11 = _F(h, h, 1, ko)
    F12 = _F(h, h, 2, ko)
    F31 = _F(h, q, 1, ko)
    F33 = _F(q, q, 2, ko)
    F52 = _F(h, f, 2, ko)
    F51 = _F(h, f, 1, ko)
    out = []
    out.append(_check("(1-t)F(1/2,3/2;1) reduction", omt * F31, omt * F11 + (t * F12).scale(h), ko))
    out.append(_check("(1-t)F(3/2,3/2;2) = F(1/2,1/2;2)", omt * F33, F12, ko))
    out.append(_check("column combination", F52.scale(q) - F31 - F11, F12.scale(-h), ko))
    z = SeriesK.zero(ko)
    out.append(_check("contiguous (a,b,c)=(1/2,5/2,1)", omt * F51 - F31 + (t * F52).scale(h), z, ko,
                      "factor t in the last term; first coefficient is (1-t), not (1-t)/2",
                      ((omt * F51).scale(h) - F31 + (t * F52).scale(h), z)))
    out.append(_check("contiguous (a,b,c)=(1/2,1/2,1)",
                      (omt * F11).scale(h) - (omt * F31).scale(h) + (t * F12).scale(mpq(1, 4)), z, ko))
    out.append(_check("contiguous (a,b,c)=(1/2,3/2,1)",
                      F11.scale(h) - _tp([2, -1], ko) * F31 + (omt * F51).scale(q), z, ko,
                      "signs of the last two terms flipped relative to the display",
                      (F11.scale(h) + _tp([2, -1], ko) * F31 - (omt * F51).scale(q), z)))
    # 2x2 determinant identity: low-T C(0,2) determinant against (1-t) D_2, written in t
    lhs = F11 * (omt * F11) + (t * F12 * F12).scale(mpq(1, 4))
    rhs = (omt * F31) * F31 - (t * omt * F33).scale(h) * F52.scale(q)
    out.append(_check("C(0,2) determinant identity", lhs, rhs, ko))
    return out


def landen_identities(order, mmax=4):
    """2F1([m+1/2,m+1/2],[2m+1],k^2) = (1+a^2)^{2m+1} 2F1([m+1/2,1/2],[m+1],a^4), k = 2a/(1+a^2).

    Checked as series in alpha; order in alpha^2.
    """
    ao = 2 * order
    out = []
    a2 = SeriesK.monomial(1, 2, ao)
    one_p = a2 + 1
    kk = (a2.scale(4) / (one_p * one_p)).truncate(ao)
    a4 = (a2 * a2).truncate(ao)
    for m in range(mmax + 1):
        lhs = _compose_t(_F(m + HALF, m + HALF, 2 * m + 1, ao), kk)
        rhs = one_p ** (2 * m + 1) * _compose_t(_F(m + HALF, HALF, m + 1, ao), a4)
        out.append(_check("F=F m=%d" % m, lhs, rhs, ao))
    return out


def _compose_t(f, inner):
    """f(t) with t replaced by the series inner (f given as a k-series with even support)."""
    n = f.order // 2
    poly = SeriesK.from_dict({i: f.coeff(2 * i) for i in range(n + 1)}, n)
    return poly.compose(inner)


def finalan_plus(n, order, printed=False):
    """Closed k-form of a_{2n+1}; printed=True uses the displayed overall factor 4."""
    s = sqrt_one_minus_t(order + 4)
    fac = mpq(4) if printed else mpq(1, 4)
    br = _F(n - HALF, n + HALF, 2 * n + 1, order + 4) + s * _F(n + HALF, n + HALF, 2 * n + 1, order + 4)
    pre = (1 - s) * br
    pre = pre.scale(fac * poch(HALF, n) / factorial(n) / mpq(4) ** (n - 1))
    return pre.shift(2 * (n - 1)).truncate(order)


def finalan_minus(n, order, printed=False):
    s = sqrt_one_minus_t(order + 4)
    fac = mpq(4) if printed else mpq(1, 4)
    br = _F(n - HALF, n + HALF, 2 * n + 1, order + 4) - s * _F(n + HALF, n + HALF, 2 * n + 1, order + 4)
    pre = ((1 + s) * br).scale(fac * poch(HALF, n) / factorial(n) / mpq(4) ** (n - 1))
    return pre.shift(2 * (n - 1)).truncate(order)


def row_kernel_identities(order, nmax=4):
    """Reductions of the high-temperature a_{+-(2n+1)}; order in t."""
    ko = 2 * order
    out = []
    for n in range(nmax + 1):
        T1 = (_tp([2, -1], ko) * _F(n + HALF, n + mpq(3, 2), 2 * n + 3, ko)).scale(n + mpq(3, 2)) \
            + (_tp([2, -2], ko) * _F(n + mpq(3, 2), n + mpq(3, 2), 2 * n + 3, ko)).scale(n + HALF)
        T2 = _F(n + HALF, n + mpq(3, 2), 2 * n + 3, ko).scale(2 * (n + mpq(3, 2))) \
            + (_tp([2, -1], ko) * _F(n + mpq(3, 2), n + mpq(3, 2), 2 * n + 3, ko)).scale(n + HALF)
        out.append(_check("T1 n=%d" % n, T1, _F(n - HALF, n + HALF, 2 * n + 1, ko, 0, 4 * (n + 1)), ko))
        out.append(_check("T2 n=%d" % n, T2, _F(n + HALF, n + HALF, 2 * n + 1, ko, 0, 4 * (n + 1)), ko))
        # contiguous step in alpha^4, written with x = alpha^4 as the series variable t
        lhs = _F(n + HALF, -HALF, n + 1, ko)
        rhs = (_F(n - HALF, -HALF, n + 1, ko) + _tp([1, -1], ko) * _F(n + HALF, HALF, n + 1, ko)).scale(HALF)
        out.append(_check("alpha contiguity n=%d" % n, lhs, rhs, ko))
        lhs = _F(n + HALF, HALF, n + 2, ko)
        rhs = _F(n + HALF, -HALF, n + 2, ko).scale(n + mpq(3, 2)) \
            - (_tp([1, -1], ko) * _F(n + mpq(3, 2), HALF, n + 2, ko)).scale(n + HALF)
        out.append(_check("F=Falpha n=%d" % n, lhs, rhs, ko))
        ap = high_row_element(2 * n + 1, ko)
        am = high_row_element(-(2 * n + 1), ko)
        out.append(_check("a_%d closed form" % (2 * n + 1), finalan_plus(n, ko), ap, ko,
                          "overall factor 1/4; the displayed factor 4 is off by 16",
                          (finalan_plus(n, ko, printed=True), ap)))
        out.append(_check("a_-%d closed form" % (2 * n + 1), finalan_minus(n, ko), am, ko,
                          "overall factor 1/4; the displayed factor 4 is off by 16",
                          (finalan_minus(n, ko, printed=True), am)))
    Kt = hyp2f1_k(HALF, HALF, 1, ko)
    Et = hyp2f1_k(HALF, -HALF, 1, ko)
    s = sqrt_one_minus_t(ko + 2)
    a1 = ((1 - s) * (Et + s * Kt)).shift(-2).truncate(ko)
    am1 = ((1 + s) * (Et - s * Kt)).shift(-2).truncate(ko - 2)
    out.append(_check("a_1 elliptic form", a1, high_row_element(1, ko), ko))
    out.append(_check("a_-1 elliptic form", am1, high_row_element(-1, ko).truncate(ko - 2), ko - 2))
    return out


def pi_reduction_identity(order):
    """Pi~(k^2, k) = E~/(1 - k^2); order in t."""
    lhs = pi_tilde_series(1, order)
    rhs = elliptic_series("E", order) / SeriesK.from_t_coeffs([1, -1], order)
    return [_check("Pi~(k^2,k) = E~/(1-k^2)", lhs.as_k(), rhs.as_k(), 2 * order)]


def verify_hypergeometric_identities(order):
    """Evaluate every identity used in the proofs; failures are report entries."""
    out = []
    out += contiguous_identities(order)
    out += landen_identities(order)
    out += row_kernel_identities(order)
    out += pi_reduction_identity(order)
    return out

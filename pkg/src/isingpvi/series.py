"""Truncated Laurent series in k with exact rational coefficients.

A series stores the coefficients of k^v, k^(v+1), ..., k^order and is
exact modulo k^(order+1).  The variable t = k^2 is a view: a series
tagged "t" has even support and is reported in powers of t.
"""

from fractions import Fraction
from numbers import Integral, Rational as _RationalABC

from gmpy2 import mpq

K = "k"
T = "t"


def Q(x):
    """Coerce ints, Fractions, mpq and "p/q" strings to an mpq."""
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, (Fraction, _RationalABC)) and not isinstance(x, Integral):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def qstr(x):
    x = mpq(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def _is_scalar(x):
    return isinstance(x, (Integral, Fraction, _RationalABC)) or type(x) is type(mpq(0))


class SeriesError(ValueError):
    pass


class SeriesK(object):
    """Immutable truncated Laurent series.

    coeffs[i] is the coefficient of k^(valuation+i); the list always runs
    up to k^order.  The identically zero series has no coefficients and
    valuation = order + 1.
    """

    __slots__ = ("valuation", "coeffs", "order", "var")

    def __init__(self, valuation, coeffs, order, var=K):
        coeffs = [mpq(c) for c in coeffs]
        need = order - valuation + 1
        if len(coeffs) > need:
            coeffs = coeffs[:max(need, 0)]
        elif len(coeffs) < need:
            coeffs = coeffs + [mpq(0)] * (need - len(coeffs))
        lead = 0
        while lead < len(coeffs) and coeffs[lead] == 0:
            lead += 1
        if lead == len(coeffs):
            valuation, coeffs = order + 1, []
        else:
            valuation += lead
            coeffs = coeffs[lead:]
        if var not in (K, T):
            raise SeriesError("unknown variable tag %r" % (var,))
        if var == T:
            if coeffs and valuation % 2:
                raise SeriesError("t-tagged series with odd valuation")
            for i in range(1, len(coeffs), 2):
                if coeffs[i]:
                    raise SeriesError("t-tagged series with odd support")
        object.__setattr__(self, "valuation", valuation)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("SeriesK is immutable")

    # ----- constructors -----

    @classmethod
    def zero(cls, order, var=K):
        return cls(order + 1, [], order, var)

    @classmethod
    def const(cls, c, order, var=K):
        return cls(0, [c], order, var)

    @classmethod
    def monomial(cls, c, power, order, var=K):
        """c * k^power."""
        return cls(power, [c], order, var)

    @classmethod
    def from_dict(cls, terms, order, var=K):
        """Build from {power of k: coefficient}."""
        terms = {p: c for p, c in terms.items() if c != 0}
        if not terms:
            return cls.zero(order, var)
        v = min(terms)
        coeffs = [0] * (max(order, v) - v + 1)
        for p, c in terms.items():
            if p <= order:
                coeffs[p - v] = c
        return cls(v, coeffs, order, var)

    @classmethod
    def from_t_coeffs(cls, coeffs, order_t, valuation_t=0):
        """Series in t from a list of coefficients of t^valuation_t, t^(valuation_t+1), ..."""
        terms = {}
        for i, c in enumerate(coeffs):
            if valuation_t + i <= order_t:
                terms[2 * (valuation_t + i)] = c
        return cls.from_dict(terms, 2 * order_t, T)

    @classmethod
    def t_poly(cls, coeffs, order, var=K):
        """Polynomial in t (coeffs ascending in t), exact through k^order."""
        return cls.from_dict({2 * i: c for i, c in enumerate(coeffs)}, order, var)

    # ----- basic queries -----

    def is_zero(self):
        return not self.coeffs

    def coeff(self, n):
        """Coefficient of k^n (0 beyond the stored range is only valid below order)."""
        if n > self.order:
            raise SeriesError("coefficient k^%d beyond order %d" % (n, self.order))
        i = n - self.valuation
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return mpq(0)

    def t_coeff(self, n):
        return self.coeff(2 * n)

    def leading(self):
        if not self.coeffs:
            raise SeriesError("zero series has no leading coefficient")
        return self.coeffs[0]

    def is_even(self):
        if self.valuation % 2 and self.coeffs:
            return False
        return all(c == 0 for c in self.coeffs[1::2])

    def is_odd(self):
        if not self.coeffs:
            return True
        if self.valuation % 2 == 0:
            return False
        return all(c == 0 for c in self.coeffs[1::2])

    @property
    def t_order(self):
        return self.order // 2

    def as_k(self):
        return SeriesK(self.valuation, self.coeffs, self.order, K)

    def as_t(self):
        return SeriesK(self.valuation, self.coeffs, self.order, T)

    def with_var(self, var):
        return self if var == self.var else SeriesK(self.valuation, self.coeffs, self.order, var)

    def truncate(self, order):
        if order >= self.order:
            return self
        return SeriesK(self.valuation, self.coeffs, order, self.var)

    def items(self):
        """(power of k, coefficient) for the nonzero terms."""
        v = self.valuation
        return [(v + i, c) for i, c in enumerate(self.coeffs) if c]

    def t_list(self, upto=None):
        """Coefficients of t^0 .. t^upto (requires even support, valuation >= 0)."""
        if upto is None:
            upto = self.t_order
        return [self.coeff(2 * i) for i in range(upto + 1)]

    # ----- arithmetic -----

    def _check(self, other):
        if self.var != other.var:
            raise SeriesError("variable tag mismatch: %s vs %s" % (self.var, other.var))

    def _lift(self, x):
        if isinstance(x, SeriesK):
            self._check(x)
            return x
        if _is_scalar(x):
            return SeriesK.const(Q(x), max(self.order, 0), self.var)
        return NotImplemented

    def __neg__(self):
        return SeriesK(self.valuation, [-c for c in self.coeffs], self.order, self.var)

    def __pos__(self):
        return self

    def __add__(self, other):
        if _is_scalar(other) and not isinstance(other, SeriesK):
            other = Q(other)
            if other == 0:
                return self
            if self.order < 0:
                return self
            other = SeriesK.const(other, self.order, self.var)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        order = min(self.order, other.order)
        v = min(self.valuation, other.valuation)
        if v > order:
            return SeriesK.zero(order, self.var)
        out = [mpq(0)] * (order - v + 1)
        for s in (self, other):
            off = s.valuation - v
            for i, c in enumerate(s.coeffs):
                j = off + i
                if j >= len(out):
                    break
                out[j] += c
        return SeriesK(v, out, order, self.var)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, SeriesK) or _is_scalar(other):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = Q(c)
        if c == 0:
            return SeriesK.zero(self.order, self.var)
        return SeriesK(self.valuation, [c * x for x in self.coeffs], self.order, self.var)

    def shift(self, m):
        """Multiply by k^m exactly."""
        if self.var == T and m % 2:
            raise SeriesError("odd shift of a t-tagged series")
        return SeriesK(self.valuation + m, self.coeffs, self.order + m, self.var)

    def __mul__(self, other):
        if _is_scalar(other) and not isinstance(other, SeriesK):
            return self.scale(other)
        if not isinstance(other, SeriesK):
            return NotImplemented
        self._check(other)
        a, b = self, other
        v = a.valuation + b.valuation
        # each factor is known through its own order; the product loses
        # whatever the other factor's valuation cannot cover
        order = min(a.order + b.valuation, b.order + a.valuation)
        if not a.coeffs or not b.coeffs:
            return SeriesK.zero(order, a.var)
        n = order - v + 1
        if n <= 0:
            return SeriesK.zero(order, a.var)
        out = [mpq(0)] * n
        bi = [(j, c) for j, c in enumerate(b.coeffs) if c and j < n]
        for i, x in enumerate(a.coeffs):
            if i >= n:
                break
            if not x:
                continue
            lim = n - i
            for j, y in bi:
                if j >= lim:
                    break
                out[i + j] += x * y
        return SeriesK(v, out, order, a.var)

    __rmul__ = __mul__

    def inverse(self):
        if not self.coeffs:
            raise ZeroDivisionError("series is identically zero to its order")
        v = self.valuation
        rel = self.order - v
        a = self.coeffs
        inv0 = 1 / a[0]
        out = [inv0]
        nz = [(j, c) for j, c in enumerate(a) if c and j > 0]
        for n in range(1, rel + 1):
            s = mpq(0)
            for j, c in nz:
                if j > n:
                    break
                s += c * out[n - j]
            out.append(-s * inv0)
        return SeriesK(-v, out, rel - v, self.var)

    def __truediv__(self, other):
        if _is_scalar(other) and not isinstance(other, SeriesK):
            other = Q(other)
            if other == 0:
                raise ZeroDivisionError("division by zero scalar")
            return self.scale(1 / other)
        if not isinstance(other, SeriesK):
            return NotImplemented
        self._check(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        if _is_scalar(other):
            return self.inverse().scale(other)
        return NotImplemented

    def __pow__(self, e):
        e = Q(e)
        if e.denominator == 1:
            return self._ipow(int(e))
        return self.pow_rational(e)

    def _ipow(self, n):
        if n < 0:
            return self.inverse()._ipow(-n)
        if n == 0:
            return SeriesK.const(1, self.order - self.valuation, self.var)
        base, result = self, None
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def pow_rational(self, e):
        """self**e for rational e by the binomial recurrence.

        The leading coefficient must be 1 and valuation*e an integer.
        """
        e = Q(e)
        if not self.coeffs:
            raise SeriesError("power of an identically zero series")
        if self.coeffs[0] != 1:
            if e.denominator == 1:
                return self._ipow(int(e))
            raise SeriesError("leading coefficient must be 1 for a fractional power")
        nv = self.valuation * e
        if nv.denominator != 1:
            raise SeriesError("fractional valuation %s" % qstr(nv))
        nv = int(nv)
        rel = self.order - self.valuation
        f = self.coeffs
        nz = [(j, c) for j, c in enumerate(f) if c and j > 0]
        g = [mpq(1)]
        # J. C. P. Miller recurrence: n g_n = sum_j ((e+1) j - n) f_j g_{n-j}
        for n in range(1, rel + 1):
            s = mpq(0)
            for j, c in nz:
                if j > n:
                    break
                s += ((e + 1) * j - n) * c * g[n - j]
            g.append(s / n)
        var = self.var
        if var == T and nv % 2:
            var = K
        return SeriesK(nv, g, nv + rel, var)

    def sqrt(self):
        return self.pow_rational(mpq(1, 2))

    def __eq__(self, other):
        if not isinstance(other, SeriesK):
            return NotImplemented
        return (self.var == other.var and self.valuation == other.valuation
                and self.order == other.order and self.coeffs == other.coeffs)

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((self.var, self.valuation, self.order, self.coeffs))

    def agrees(self, other, order=None):
        """Coefficientwise equality through k^order (default: common order)."""
        common = min(self.order, other.order)
        if order is None:
            order = common
        if order > common:
            raise SeriesError("cannot compare through k^%d: orders %d, %d"
                              % (order, self.order, other.order))
        d = (self.with_var(K) - other.with_var(K)).truncate(order)
        return d.is_zero()

    # ----- calculus -----

    def deriv_k(self):
        v = self.valuation
        return SeriesK(v - 1, [(v + i) * c for i, c in enumerate(self.coeffs)],
                       self.order - 1, K if self.var == T else self.var)

    def deriv_t(self):
        """d/dt = (1/(2k)) d/dk; result tagged like the input when even."""
        d = self.deriv_k()
        d = SeriesK(d.valuation - 1, [c / 2 for c in d.coeffs], d.order - 1, K)
        return d.as_t() if self.var == T else d

    def dlog_dt(self):
        if not self.coeffs:
            raise SeriesError("logarithmic derivative of an identically zero series")
        a = self.with_var(K)
        r = a.deriv_k() / a
        r = SeriesK(r.valuation - 1, [c / 2 for c in r.coeffs], r.order - 1, K)
        return r.as_t() if r.is_even() else r

    def integrate_t(self, const=0):
        """Antiderivative in t of a t-series with nonnegative valuation."""
        if self.var != T or self.valuation < 0:
            raise SeriesError("integrate_t needs a t-series analytic at 0")
        terms = {0: Q(const)}
        for p, c in self.items():
            n = p // 2
            terms[2 * (n + 1)] = c / (n + 1)
        return SeriesK.from_dict(terms, self.order + 2, T)

    def compose(self, inner):
        """self(inner) for inner of positive valuation (Horner)."""
        if not isinstance(inner, SeriesK) or inner.valuation < 1:
            raise SeriesError("inner series must have positive valuation")
        if self.valuation < 0:
            raise SeriesError("outer series must be analytic")
        if self.var == T:
            raise SeriesError("compose expects the outer series in its own variable k")
        nmax = self.order
        # dropped terms are O(inner^(nmax+1)); inner itself is exact to inner.order
        order = min(inner.order, inner.valuation * (nmax + 1) - 1)
        acc = SeriesK.zero(order, inner.var)
        for n in range(nmax, -1, -1):
            acc = acc * inner + self.coeff(n)
            acc = acc.truncate(order)
        return acc

    # ----- presentation -----

    def to_json(self, var=None):
        var = var or self.var
        if var == T:
            if not self.is_even():
                raise SeriesError("series has odd k-support; t-output refused")
            coeffs = list(self.coeffs[::2])
            val = self.valuation // 2 if self.coeffs else (self.order // 2) + 1
            return {"var": "t", "valuation": val, "order": self.order // 2,
                    "coeffs": [qstr(c) for c in coeffs]}
        return {"var": "k", "valuation": self.valuation, "order": self.order,
                "coeffs": [qstr(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj):
        coeffs = [Q(c) for c in obj["coeffs"]]
        if obj["var"] == "t":
            terms = {2 * (obj["valuation"] + i): c for i, c in enumerate(coeffs)}
            return cls.from_dict(terms, 2 * obj["order"], T)
        return cls(obj["valuation"], coeffs, obj["order"], K)

    def __repr__(self):
        return "SeriesK(%s)" % self.format(6)

    def format(self, nterms=None):
        items = self.items()
        if nterms is not None:
            items = items[:nterms]
        tv = self.var == T
        parts = []
        for p, c in items:
            sym = "t^%d" % (p // 2) if tv else "k^%d" % p
            parts.append("%s*%s" % (qstr(c), sym))
        bound = "O(t^%d)" % (self.order // 2 + 1) if tv else "O(k^%d)" % (self.order + 1)
        return " + ".join(parts + [bound])


def one(order, var=K):
    return SeriesK.const(1, order, var)


def tvar(order, var=K):
    """The series t = k^2."""
    return SeriesK.monomial(1, 2, order, var)


def one_minus_t_pow(e, order, var=K):
    """(1 - t)^e, exact through k^order."""
    base = SeriesK.t_poly([1, -1], order, var)
    return base.pow_rational(e)

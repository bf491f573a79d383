"""Determinants of matrices of series, Toeplitz assembly and Wilf factors."""

from .series import SeriesK, SeriesError


class SeriesMatrix:
    """Square grid of SeriesK entries. Toeplitz matrices keep their generator."""

    def __init__(self, rows, generator=None):
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square and nonempty")
        var = rows[0][0].var
        for r in rows:
            for e in r:
                if not isinstance(e, SeriesK):
                    raise TypeError("entries must be SeriesK")
                if e.var != var:
                    raise SeriesError("mixed variable tags in matrix")
        self.rows = rows
        self.dim = n
        self.generator = generator

    @classmethod
    def toeplitz(cls, element, dim, order):
        """Entry (j, k) = element(j - k, order)."""
        cache = {}
        for d in range(-(dim - 1), dim):
            cache[d] = element(d, order)
        rows = [[cache[j - k] for k in range(dim)] for j in range(dim)]
        return cls(rows, generator=element)

    def __getitem__(self, jk):
        j, k = jk
        return self.rows[j][k]

    @property
    def order(self):
        return min(e.order for r in self.rows for e in r)

    def is_symmetric_toeplitz(self):
        n = self.dim
        for j in range(n):
            for k in range(n):
                if self.rows[j][k] != self.rows[0][abs(j - k)]:
                    return False
        return True

    def minor(self, j, k):
        return SeriesMatrix([r[:k] + r[k + 1:] for i, r in enumerate(self.rows) if i != j])


def _cofactor(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    for k in range(n):
        e = rows[0][k]
        if e.is_zero():
            continue
        sub = [r[:k] + r[k + 1:] for r in rows[1:]]
        term = e * _cofactor(sub)
        if k % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return SeriesK.zero(min(x.order for r in rows for x in r), rows[0][0].var)
    return total


def _bareiss(rows):
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = None
    for k in range(n - 1):
        # pivot: smallest valuation in column k at or below row k
        best = None
        for i in range(k, n):
            if not a[i][k].is_zero() and (best is None or a[i][k].valuation < a[best][k].valuation):
                best = i
        if best is None:
            return SeriesK.zero(min(x.order for r in a for x in r), a[0][0].var)
        if best != k:
            a[k], a[best] = a[best], a[k]
            sign = -sign
        p = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                x = p * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = x if prev is None else x / prev
        prev = p
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def det_series(m, order=None):
    """Exact determinant. Cofactor expansion up to dimension 4, Bareiss above.

    The result carries the order actually guaranteed; if `order` is given and
    cannot be met an error is raised.
    """
    if not isinstance(m, SeriesMatrix):
        m = SeriesMatrix(m)
    if m.dim <= 4:
        d = _cofactor(m.rows)
    else:
        d = _bareiss(m.rows)
    if order is not None:
        if d.order < order:
            raise SeriesError("determinant exact only through order %d < %d" % (d.order, order))
        d = d.truncate(order)
    return d


def toeplitz_det(element, dim, order, pad=None):
    """det of the Toeplitz matrix of `element`, exact through `order`.

    Entries are generated with extra precision until the determinant reaches
    the requested order.
    """
    extra = 0 if pad is None else pad
    for _ in range(8):
        m = SeriesMatrix.toeplitz(element, dim, order + extra)
        d = det_series(m)
        if d.order >= order:
            return d.truncate(order)
        extra += max(order - d.order, 2)
    raise SeriesError("could not reach order %d" % order)


def wilf_matrices(A):
    """Factor matrices of a symmetric Toeplitz determinant with first row A[0..N-1].

    Subtracting column j from column N+1-j and adding row N+1-j to row j
    splits D_N into a '+' block of size ceil(N/2) and a '-' block of size
    floor(N/2).  Entries, for N = 2h:
        P_ij = A_|i-j| + A_(i+j+1),  Q_ij = A_|i-j| - A_(i+j+1)      (i, j < h)
    and for N = 2h+1:
        P_0j = A_j,  P_ij = A_|i-j| + A_(i+j)  (i >= 1, i, j <= h)
        Q_ij = A_|i-j| - A_(i+j+2)                                    (i, j < h)
    """
    n = len(A)
    h = n // 2
    if n % 2 == 0:
        P = [[A[abs(i - j)] + A[i + j + 1] for j in range(h)] for i in range(h)]
        Q = [[A[abs(i - j)] - A[i + j + 1] for j in range(h)] for i in range(h)]
    else:
        P = [[A[j] if i == 0 else A[abs(i - j)] + A[i + j] for j in range(h + 1)] for i in range(h + 1)]
        Q = [[A[abs(i - j)] - A[i + j + 2] for j in range(h)] for i in range(h)]
    return P, Q


def wilf_factor(m):
    """(plus, minus) determinants with plus * minus = det(m); m symmetric Toeplitz."""
    if not isinstance(m, SeriesMatrix):
        m = SeriesMatrix(m)
    if not m.is_symmetric_toeplitz():
        raise ValueError("Wilf factorization needs a symmetric Toeplitz matrix")
    A = m.rows[0]
    P, Q = wilf_matrices(A)
    plus = det_series(SeriesMatrix(P))
    if not Q:
        minus = SeriesK.const(1, plus.order, plus.var)
    else:
        minus = det_series(SeriesMatrix(Q))
    return plus, minus


def factordet(element, N, order):
    """The two N x N determinants whose product gives C(0,2N) at high temperature.

    First factor rows start a_{-1}, a_1, ..., a_{2N-3}; the second a_1, a_3, ..., a_{2N-1};
    both are Toeplitz in steps of two in the index.  With the kernel of the
    defining integral (a_{2n} = 0), C(0,2N) = (-1)^N * first * second: the
    even/odd reshuffle of the 2N x 2N Toeplitz matrix costs that sign.
    """
    first = SeriesMatrix.toeplitz(lambda d, o: element(-2 * d - 1, o), N, order)
    second = SeriesMatrix.toeplitz(lambda d, o: element(-2 * d + 1, o), N, order)
    return det_series(first), det_series(second)


def factordet_product(element, N, order):
    f1, f2 = factordet(element, N, order)
    p = f1 * f2
    return -p if N % 2 else p

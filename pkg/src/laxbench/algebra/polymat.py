"""Square matrices of univariate polynomials.

``PolyMat`` is the workhorse phase-space value: A(x) with entries of
declared degree bounds.  Entries are ``Poly`` and the coefficient ring is
duck-typed, so the same class carries exact points, float points, and
matrices of dual numbers during differentiation.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import InputError
from .poly import Poly
from .scalars import EXACT
from . import linalg


class PolyMat:

    __slots__ = ("r", "entries")

    def __init__(self, entries):
        rows = [list(r) for r in entries]
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise InputError("polynomial matrix must be square")
        self.r = n
        self.entries = [[e if isinstance(e, Poly) else Poly(e) for e in row]
                        for row in rows]

    @classmethod
    def zero(cls, r, bound=0):
        return cls([[Poly.zero(bound) for _ in range(r)] for _ in range(r)])

    @classmethod
    def from_coeff_matrices(cls, mats):
        """Build A(x) = sum_k mats[k] x^k from constant matrices."""
        if not mats:
            raise InputError("need at least one coefficient matrix")
        r = len(mats[0])
        top = len(mats) - 1
        return cls([[Poly([mats[k][i][j] for k in range(top + 1)])
                     for j in range(r)] for i in range(r)])

    @classmethod
    def identity(cls, r, one=1):
        return cls([[Poly([one if i == j else 0]) for j in range(r)]
                    for i in range(r)])

    def entry(self, i, j):
        """1-indexed entry A_{ij}(x)."""
        return self.entries[i - 1][j - 1]

    def coeff_matrix(self, k):
        """Constant matrix A_k, the coefficient of x^k."""
        return [[e.coeff(k) for e in row] for row in self.entries]

    def max_bound(self):
        return max(e.bound for row in self.entries for e in row)

    def evaluate(self, a):
        """Constant matrix A(a)."""
        return [[e(a) for e in row] for row in self.entries]

    def derivative(self):
        return PolyMat([[e.deriv() for e in row] for row in self.entries])

    def map_entries(self, fn):
        return PolyMat([[fn(e) for e in row] for row in self.entries])

    def padded(self, bound):
        return self.map_entries(lambda e: e.padded(max(bound, e.bound)))

    def __add__(self, other):
        self._check(other)
        return PolyMat([[a + b for a, b in zip(ra, rb)]
                        for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._check(other)
        return PolyMat([[a - b for a, b in zip(ra, rb)]
                        for ra, rb in zip(self.entries, other.entries)])

    def __neg__(self):
        return self.map_entries(lambda e: -e)

    def scale(self, s):
        return self.map_entries(lambda e: e.scale(s))

    def scale_poly(self, p):
        return self.map_entries(lambda e: e * p)

    def __mul__(self, other):
        if not isinstance(other, PolyMat):
            return self.scale(other)
        self._check(other)
        r = self.r
        out = []
        for i in range(r):
            row = []
            for j in range(r):
                acc = Poly([0])
                for l in range(r):
                    acc = acc + self.entries[i][l] * other.entries[l][j]
                row.append(acc)
            out.append(row)
        return PolyMat(out)

    def commutator(self, other):
        return self * other - other * self

    def conjugate(self, g, backend=EXACT):
        """g^{-1} A g for a constant invertible matrix g."""
        ginv = linalg.mat_inverse(g, backend)
        return self.left_right(ginv, g)

    def left_right(self, left, right):
        """Constant-matrix sandwich left * A(x) * right."""
        r = self.r
        mid = [[Poly([0])] * r for _ in range(r)]
        for i in range(r):
            for j in range(r):
                acc = Poly([0])
                for l in range(r):
                    acc = acc + self.entries[l][j].scale(left[i][l])
                mid[i][j] = acc
        out = [[Poly([0])] * r for _ in range(r)]
        for i in range(r):
            for j in range(r):
                acc = Poly([0])
                for l in range(r):
                    acc = acc + mid[i][l].scale(right[l][j])
                out[i][j] = acc
        return PolyMat(out)

    def trace(self):
        acc = Poly([0])
        for i in range(self.r):
            acc = acc + self.entries[i][i]
        return acc

    def power(self, k):
        out = PolyMat.identity(self.r)
        for _ in range(k):
            out = out * self
        return out

    def eq(self, other, backend=EXACT):
        if self.r != other.r:
            return False
        return all(a.eq(b, backend)
                   for ra, rb in zip(self.entries, other.entries)
                   for a, b in zip(ra, rb))

    def is_zero(self, backend=EXACT):
        return all(e.is_zero(backend) for row in self.entries for e in row)

    def _check(self, other):
        if not isinstance(other, PolyMat) or other.r != self.r:
            raise InputError("polynomial matrix size mismatch")

    def __repr__(self):
        return "PolyMat(%r)" % (self.entries,)


def char_poly(a):
    """Coefficients s_1..s_r of det(y I - A(x)) = y^r + s_1 y^{r-1} + ... + s_r.

    Faddeev-LeVerrier recurrence: only matrix products and divisions by the
    integers 1..r, so it is exact over the rationals and works verbatim for
    polynomial, float, and dual-number entries.
    """
    r = a.r
    s = []
    m = PolyMat.zero(r)
    c = Poly([1])
    for k in range(1, r + 1):
        m = a * m + PolyMat.identity(r).scale_poly(c)
        am = a * m
        c = am.trace().scale(Fraction(-1, k))
        s.append(c)
    return s


def char_poly_const(mat):
    """char_poly for a constant matrix, returning scalar coefficients."""
    pm = PolyMat([[Poly([v]) for v in row] for row in mat])
    return [p.coeff(0) for p in char_poly(pm)]


def trace_power(a, k, r=None):
    """(1/k) Tr A(x)^k; its coefficients are the spectral Hamiltonians."""
    r = a.r if r is None else r
    if not 1 <= k <= r:
        raise InputError("trace power k=%d outside 1..%d" % (k, r))
    return a.power(k).trace().scale(Fraction(1, k))


def commutator_kernel(a, m_of_a, backend=EXACT):
    """Coefficients in a of [A(x), M(a)] / (x - a).

    ``m_of_a`` is a PolyMat in the second variable.  The commutator is a
    bivariate matrix that vanishes on x = a, so the division is exact; the
    result is a list of PolyMats in x, indexed by the power of a.
    """
    from .poly import BiPoly, divide_by_x_minus_y

    r = a.r
    bx = a.max_bound()
    ba = m_of_a.max_bound()
    quotients = [[None] * r for _ in range(r)]
    max_da = 0
    for i in range(r):
        for j in range(r):
            grid = [[0] * (ba + 1) for _ in range(bx + 1)]
            for l in range(r):
                p = a.entries[i][l]
                q = m_of_a.entries[l][j]
                for mdeg, cm in enumerate(p.coeffs):
                    for ndeg, cn in enumerate(q.coeffs):
                        grid[mdeg][ndeg] = grid[mdeg][ndeg] + cm * cn
                p2 = m_of_a.entries[i][l]
                q2 = a.entries[l][j]
                for ndeg, cn in enumerate(p2.coeffs):
                    for mdeg, cm in enumerate(q2.coeffs):
                        grid[mdeg][ndeg] = grid[mdeg][ndeg] - cm * cn
            quot = divide_by_x_minus_y(BiPoly(grid), backend)
            quotients[i][j] = quot
            max_da = max(max_da, quot.bound_y)
    fields = []
    for n in range(max_da + 1):
        fields.append(PolyMat([[Poly([quotients[i][j].coeff(m, n)
                                      for m in range(max(bx, 1))])
                                for j in range(r)] for i in range(r)]))
    return fields

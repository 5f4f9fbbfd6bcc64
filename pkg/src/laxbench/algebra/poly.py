"""Univariate and bivariate polynomials with declared degree bounds.

A ``Poly`` stores exactly ``bound + 1`` coefficients, ascending in degree;
zero padding is part of the type and is never stripped, because membership
in a degree-bounded space is a structural fact the rest of the package
relies on.  Coefficients are duck-typed: exact rationals, complex floats,
multivariate polynomials and dual numbers all work.

The key primitive is the divided-difference kernel

    T(x, y) = (f(x) phi(y) - phi(x) f(y)) / (x - y),

computed by exact division; the numerator always vanishes on the diagonal
x = y, so a nonzero remainder is an internal error.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import InputError, InternalError
from .scalars import EXACT
from .dual import DualScalar


def ring_is_zero(v, backend=EXACT):
    """Zero test that understands plain scalars, MPoly and dual numbers."""
    if isinstance(v, DualScalar):
        return (ring_is_zero(v.val, backend)
                and all(ring_is_zero(g, backend) for g in v.grad))
    if hasattr(v, "is_zero"):
        return v.is_zero(backend)
    return backend.is_zero(v)


def ring_eq(a, b, backend=EXACT):
    if (isinstance(a, (int, float, complex, Fraction))
            and isinstance(b, (int, float, complex, Fraction))):
        return backend.eq(a, b)
    return ring_is_zero(a - b, backend)


def _as_coeffs(obj):
    if isinstance(obj, Poly):
        return list(obj.coeffs)
    return list(obj)


class Poly:
    """Polynomial c_0 + c_1 x + ... + c_D x^D with declared bound D."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = list(coeffs)
        if not cs:
            cs = [0]
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, bound=0):
        return cls([0] * (bound + 1))

    @classmethod
    def monomial(cls, k, coeff=1, bound=None):
        bound = k if bound is None else bound
        cs = [0] * (bound + 1)
        cs[k] = coeff
        return cls(cs)

    @property
    def bound(self):
        return len(self.coeffs) - 1

    def coeff(self, k):
        """Coefficient of x^k; zero beyond the stored bound."""
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def degree(self, backend=EXACT):
        """Actual degree (-1 for the zero polynomial)."""
        for k in range(len(self.coeffs) - 1, -1, -1):
            if not ring_is_zero(self.coeffs[k], backend):
                return k
        return -1

    def padded(self, bound):
        if bound < self.bound:
            raise InputError("cannot shrink bound %d to %d" % (self.bound, bound))
        return Poly(list(self.coeffs) + [0] * (bound - self.bound))

    def truncated(self, bound, backend=EXACT):
        """Restrict to degree <= bound; dropped coefficients must be zero."""
        for k in range(bound + 1, len(self.coeffs)):
            if not ring_is_zero(self.coeffs[k], backend):
                raise InputError("degree %d coefficient nonzero, bound %d" % (k, bound))
        return Poly(self.coeffs[: bound + 1]).padded(bound)

    def __add__(self, other):
        a, b = self.coeffs, _as_coeffs(other)
        n = max(len(a), len(b))
        return Poly([(a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0)
                     for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, Poly) else Poly([-c for c in _as_coeffs(other)]))

    def __mul__(self, other):
        if isinstance(other, Poly):
            a, b = self.coeffs, other.coeffs
            out = [0] * (len(a) + len(b) - 1)
            for i, ca in enumerate(a):
                if isinstance(ca, (int, float)) and ca == 0:
                    continue
                for j, cb in enumerate(b):
                    out[i + j] = out[i + j] + ca * cb
            return Poly(out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, s):
        return Poly([s * c for c in self.coeffs])

    def __call__(self, x):
        """Horner evaluation; works for any coefficient/argument ring."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def deriv(self):
        if len(self.coeffs) == 1:
            return Poly([0])
        return Poly([k * self.coeffs[k] for k in range(1, len(self.coeffs))])

    def shift(self, a):
        """Taylor re-expansion p(x + a) as a Poly with the same bound."""
        out = Poly([0])
        for c in reversed(self.coeffs):
            out = out * Poly([a, 1]) + Poly([c])
        return out.padded(self.bound)

    def eq(self, other, backend=EXACT):
        a, b = self.coeffs, _as_coeffs(other)
        n = max(len(a), len(b))
        return all(ring_eq(a[k] if k < len(a) else 0, b[k] if k < len(b) else 0,
                           backend) for k in range(n))

    def is_zero(self, backend=EXACT):
        return all(ring_is_zero(c, backend) for c in self.coeffs)

    def __repr__(self):
        return "Poly(%r)" % (list(self.coeffs),)


def poly_divmod(num, den, backend=EXACT):
    """Long division num = q*den + r with deg r < deg den."""
    dd = den.degree(backend)
    if dd < 0:
        raise InputError("division by zero polynomial")
    lead = den.coeffs[dd]
    rem = list(num.coeffs)
    q = [0] * max(1, len(rem) - dd)
    for k in range(len(rem) - 1, dd - 1, -1):
        c = rem[k]
        if ring_is_zero(c, backend):
            continue
        if isinstance(c, int) and isinstance(lead, int):
            f = c // lead if c % lead == 0 else Fraction(c, lead)
        else:
            f = c / lead
        q[k - dd] = f
        for j in range(dd + 1):
            rem[k - dd + j] = rem[k - dd + j] - f * den.coeffs[j]
    return Poly(q), Poly(rem[:dd] if dd > 0 else [rem[0] - rem[0]])


def poly_divexact(num, den, backend=EXACT):
    """Exact division; raises InternalError on a nonzero remainder."""
    q, r = poly_divmod(num, den, backend)
    if not r.is_zero(backend):
        raise InternalError("inexact polynomial division")
    return q


def poly_gcd(a, b, backend=EXACT):
    """Monic gcd over the rationals (exact backend only)."""
    a, b = Poly(a.coeffs), Poly(b.coeffs)
    while b.degree(backend) >= 0:
        _, r = poly_divmod(a, b, backend)
        a, b = b, r
    d = a.degree(backend)
    if d < 0:
        return a
    lead = a.coeffs[d]
    inv = Fraction(1, 1) / Fraction(lead) if backend.exact else 1.0 / lead
    return Poly([c * inv for c in a.coeffs[: d + 1]])


class BiPoly:
    """Bivariate polynomial with a dense (D_x+1) x (D_y+1) grid c[m][n] of
    the x^m y^n coefficients."""

    __slots__ = ("grid",)

    def __init__(self, grid):
        rows = [list(r) for r in grid]
        if not rows:
            rows = [[0]]
        width = max(len(r) for r in rows)
        for r in rows:
            r.extend([0] * (width - len(r)))
        self.grid = tuple(tuple(r) for r in rows)

    @classmethod
    def zero(cls, bx=0, by=0):
        return cls([[0] * (by + 1) for _ in range(bx + 1)])

    @property
    def bound_x(self):
        return len(self.grid) - 1

    @property
    def bound_y(self):
        return len(self.grid[0]) - 1

    def coeff(self, m, n):
        if 0 <= m < len(self.grid) and 0 <= n < len(self.grid[0]):
            return self.grid[m][n]
        return 0

    def __add__(self, other):
        bx = max(self.bound_x, other.bound_x)
        by = max(self.bound_y, other.bound_y)
        return BiPoly([[self.coeff(m, n) + other.coeff(m, n) for n in range(by + 1)]
                       for m in range(bx + 1)])

    def __neg__(self):
        return BiPoly([[-c for c in row] for row in self.grid])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return BiPoly([[s * c for c in row] for row in self.grid])

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            return self.scale(other)
        bx = self.bound_x + other.bound_x
        by = self.bound_y + other.bound_y
        out = [[0] * (by + 1) for _ in range(bx + 1)]
        for m, row in enumerate(self.grid):
            for n, c in enumerate(row):
                if isinstance(c, (int, float)) and c == 0:
                    continue
                for p, orow in enumerate(other.grid):
                    for q, oc in enumerate(orow):
                        if isinstance(oc, (int, float)) and oc == 0:
                            continue
                        out[m + p][n + q] = out[m + p][n + q] + c * oc
        return BiPoly(out)

    def __rmul__(self, other):
        return self.scale(other)

    @classmethod
    def in_x(cls, p):
        """Embed a univariate polynomial as a function of x."""
        return cls([[c] for c in p.coeffs])

    @classmethod
    def in_y(cls, p):
        """Embed a univariate polynomial as a function of y."""
        return cls([list(p.coeffs)])

    def __call__(self, x, y):
        acc = 0
        for m, row in enumerate(self.grid):
            px = x ** m
            for n, c in enumerate(row):
                if isinstance(c, (int, float)) and c == 0:
                    continue
                acc = acc + c * px * (y ** n)
        return acc

    def mul_x_minus_y(self):
        """Multiply by (x - y); used to reconstruct divided-difference numerators."""
        bx, by = self.bound_x + 1, self.bound_y + 1
        out = [[0] * (by + 1) for _ in range(bx + 1)]
        for m, row in enumerate(self.grid):
            for n, c in enumerate(row):
                out[m + 1][n] = out[m + 1][n] + c
                out[m][n + 1] = out[m][n + 1] - c
        return BiPoly(out)

    def eq(self, other, backend=EXACT):
        bx = max(self.bound_x, other.bound_x)
        by = max(self.bound_y, other.bound_y)
        return all(ring_eq(self.coeff(m, n), other.coeff(m, n), backend)
                   for m in range(bx + 1) for n in range(by + 1))

    def is_zero(self, backend=EXACT):
        return all(ring_is_zero(c, backend) for row in self.grid for c in row)

    def swap_xy(self):
        return BiPoly([[self.coeff(m, n) for m in range(self.bound_x + 1)]
                       for n in range(self.bound_y + 1)])

    def __repr__(self):
        return "BiPoly(%r)" % ([list(r) for r in self.grid],)


def divide_by_x_minus_y(num, backend=EXACT):
    """Exact division of a BiPoly by (x - y).

    Processes descending powers of x treating coefficients as polynomials
    in y; the remainder is num(y, y) and must vanish.
    """
    bx, by = num.bound_x, num.bound_y
    if num.is_zero(backend):
        return BiPoly.zero(max(bx - 1, 0), max(by - 1, 0))
    # q[m][n] for m <= bx-1; synthetic division: q_{m-1} = num_m + y*q_m
    q = [[0] * (by + 1) for _ in range(bx)]
    carry = [0] * (by + 2)  # y-poly q_m, starts at zero beyond top
    for m in range(bx, 0, -1):
        row = [num.coeff(m, n) for n in range(by + 1)] + [0]
        qm = [row[n] + (carry[n - 1] if n > 0 else 0) for n in range(by + 2)]
        if not ring_is_zero(qm[by + 1], backend):
            raise InternalError("divided difference overflow in y")
        q[m - 1] = qm[: by + 1]
        carry = qm
    # remainder check: num_0 + y*q_0 == 0
    for n in range(by + 1):
        r = num.coeff(0, n) + (carry[n - 1] if n > 0 else 0)
        if not ring_is_zero(r, backend):
            raise InternalError("numerator not divisible by (x - y)")
    width = max(by, 0)
    return BiPoly([row[: width + 1] for row in q]) if q else BiPoly.zero()


def divided_difference_kernel(f, phi, backend=EXACT):
    """T with T(x,y)*(x-y) = f(x)phi(y) - phi(x)f(y).

    The declared bounds are (f.bound + phi.bound - 1) in each variable,
    padded with zeros where the true degree is lower.
    """
    bf, bp = f.bound, phi.bound
    num = [[f.coeff(m) * phi.coeff(n) - phi.coeff(m) * f.coeff(n)
            for n in range(max(bf, bp) + 1)] for m in range(max(bf, bp) + 1)]
    quot = divide_by_x_minus_y(BiPoly(num), backend)
    b = max(bf + bp - 1, 0)
    return BiPoly([[quot.coeff(m, n) for n in range(b + 1)] for m in range(b + 1)])


def monomial_kernels(phi, top, backend=EXACT):
    """Kernels K_p = divided_difference_kernel(x^p, phi) for p = 0..top.

    These are the building blocks of both bracket families: for an entry
    with symbolic coefficients, T(x,y) = sum_p A_{ab;p} K_p(x,y).
    """
    return [divided_difference_kernel(Poly.monomial(p), phi, backend)
            for p in range(top + 1)]

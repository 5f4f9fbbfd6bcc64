"""Dense linear algebra over duck-typed scalars.

Matrices are plain lists of lists.  Over the exact backend everything is
Fraction arithmetic (bit-exact); over the float backend the same code runs
on complex payloads with tolerance-based zero tests, and rank/least-squares
questions are delegated to numpy SVD with a relative threshold.

``det_bareiss`` is fraction-free: it works over any ring with an exact
division (integers, polynomials), which keeps determinants of polynomial
matrices inside the polynomial ring.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import DomainError, InputError, InternalError
from .scalars import EXACT, value_of


def mat_shape(m):
    return len(m), len(m[0]) if m else 0


def mat_identity(n, one=1, zero=0):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_zero(n, p=None):
    p = n if p is None else p
    return [[0] * p for _ in range(n)]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_neg(a):
    return [[-x for x in row] for row in a]


def mat_scale(a, s):
    return [[s * x for x in row] for row in a]


def mat_mul(a, b):
    n, k = mat_shape(a)
    k2, p = mat_shape(b)
    if k != k2:
        raise InputError("matrix size mismatch %dx%d * %dx%d" % (n, k, k2, p))
    out = mat_zero(n, p)
    for i in range(n):
        ai = a[i]
        for l in range(k):
            c = ai[l]
            if isinstance(c, (int, float)) and c == 0:
                continue
            bl = b[l]
            row = out[i]
            for j in range(p):
                row[j] = row[j] + c * bl[j]
    return out


def mat_vec(a, v):
    return [sum_ring(x * y for x, y in zip(row, v)) for row in a]


def mat_transpose(a):
    return [list(col) for col in zip(*a)]


def mat_commutator(a, b):
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def mat_trace(a):
    return sum_ring(a[i][i] for i in range(len(a)))


def sum_ring(items):
    acc = 0
    for x in items:
        acc = acc + x
    return acc


def mat_pow(a, k):
    n = len(a)
    out = mat_identity(n)
    for _ in range(k):
        out = mat_mul(out, a)
    return out


def _fracify(m, backend):
    """Promote ints to Fractions so elimination divisions stay exact."""
    if not backend.exact:
        return [list(r) for r in m]
    return [[Fraction(x) if isinstance(x, int) else x for x in row] for row in m]


def _pivot_row(col, start, backend):
    """Largest-magnitude usable pivot; value parts drive the choice so the
    same routine serves dual-number entries."""
    best, best_mag = None, None
    for i in range(start, len(col)):
        v = value_of(col[i])
        if backend.is_zero(v):
            continue
        mag = abs(v)
        if best is None or mag > best_mag:
            best, best_mag = i, mag
    return best


def row_echelon(m, backend=EXACT, augment=None):
    """In-place style Gauss elimination; returns (rows, pivot columns).

    ``augment`` rows are carried along (same row operations).
    """
    a = _fracify(m, backend)
    aug = _fracify(augment, backend) if augment is not None else None
    n, p = mat_shape(a)
    pivots = []
    r = 0
    for c in range(p):
        pr = _pivot_row([a[i][c] for i in range(n)], r, backend)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        if aug is not None:
            aug[r], aug[pr] = aug[pr], aug[r]
        piv = a[r][c]
        for i in range(n):
            if i == r:
                continue
            f = a[i][c] / piv
            # duals may carry a nonzero gradient on a zero value, so only
            # plain scalar zeros may skip the elimination step
            if isinstance(f, (int, float, complex, Fraction)) and f == 0:
                continue
            a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            a[i][c] = 0 * a[i][c]
            if aug is not None:
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return a, pivots, aug


def mat_rank(m, backend=EXACT):
    if not m or not m[0]:
        return 0
    if not backend.exact:
        import numpy

        arr = numpy.array([[complex(x) for x in row] for row in m])
        s = numpy.linalg.svd(arr, compute_uv=False)
        if len(s) == 0 or s[0] == 0:
            return 0
        return int((s > 1e-8 * s[0]).sum())
    _, pivots, _ = row_echelon(m, backend)
    return len(pivots)


def mat_inverse(m, backend=EXACT):
    n, p = mat_shape(m)
    if n != p:
        raise InputError("inverse of non-square matrix")
    ident = mat_identity(n)
    a, pivots, aug = row_echelon(m, backend, augment=ident)
    if len(pivots) < n:
        raise DomainError("matrix is singular")
    out = mat_zero(n, n)
    for r, c in enumerate(pivots):
        piv = a[r][c]
        out[c] = [x / piv for x in aug[r]]
    return out


def mat_solve(m, rhs, backend=EXACT):
    """Solve m x = rhs exactly; raises DomainError when inconsistent,
    returns one solution (free variables set to zero)."""
    n, p = mat_shape(m)
    aug = [[v] for v in rhs]
    a, pivots, av = row_echelon(m, backend, augment=aug)
    x = [0] * p
    for r, c in enumerate(pivots):
        x[c] = av[r][0] / a[r][c]
    for r in range(len(pivots), n):
        if not backend.is_zero(value_of(av[r][0])):
            raise DomainError("inconsistent linear system")
    return x


def mat_nullspace(m, backend=EXACT):
    """Basis of the right kernel, one vector per free column."""
    n, p = mat_shape(m)
    a, pivots, _ = row_echelon(m, backend)
    free = [c for c in range(p) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * p
        v[fc] = 1
        for r, c in enumerate(pivots):
            v[c] = -a[r][fc] / a[r][c]
        basis.append(v)
    return basis


def mat_det(m, backend=EXACT):
    """Determinant by elimination (exact over rationals, tolerant over floats)."""
    n, p = mat_shape(m)
    if n != p:
        raise InputError("determinant of non-square matrix")
    a = _fracify(m, backend)
    det = 1
    sign = 1
    for c in range(n):
        pr = _pivot_row([a[i][c] for i in range(n)], c, backend)
        if pr is None:
            return 0 * det
        if pr != c:
            a[c], a[pr] = a[pr], a[c]
            sign = -sign
        piv = a[c][c]
        det = det * piv
        for i in range(c + 1, n):
            f = a[i][c] / piv
            a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det if sign > 0 else -det


def det_bareiss(m, divexact):
    """Fraction-free determinant over a ring with exact division.

    ``divexact(a, b)`` must return a/b when the division is exact and raise
    otherwise (it always is along the Bareiss recurrence).
    """
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = None
    for k in range(n - 1):
        if _bareiss_is_zero(a[k][k]):
            swap = None
            for i in range(k + 1, n):
                if not _bareiss_is_zero(a[i][k]):
                    swap = i
                    break
            if swap is None:
                return 0 * a[k][k]
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num if prev is None else divexact(num, prev)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def _bareiss_is_zero(x):
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return x == 0


def lstsq_exact(columns, target, backend=EXACT):
    """Rational least squares: minimize |target - sum c_i columns_i|.

    Solves the normal equations over the rationals; the residual is zero
    exactly iff target lies in the span.  Returns (coeffs, residual).
    """
    if not columns:
        return [], list(target)
    g = [[sum_ring(x * y for x, y in zip(ci, cj)) for cj in columns] for ci in columns]
    b = [sum_ring(x * y for x, y in zip(ci, target)) for ci in columns]
    # normal equations are always consistent; free directions get zero
    coeffs = mat_solve(g, b, backend)
    fit = [sum_ring(c * col[k] for c, col in zip(coeffs, columns))
           for k in range(len(target))]
    residual = [t - f for t, f in zip(target, fit)]
    return coeffs, residual


def lstsq_float(columns, target):
    """numpy least squares for the float backend (complex allowed)."""
    import numpy

    a = numpy.array([[complex(col[k]) for col in columns] for k in range(len(target))])
    b = numpy.array([complex(t) for t in target])
    if not columns:
        return [], list(b)
    sol, _, _, _ = numpy.linalg.lstsq(a, b, rcond=1e-8)
    residual = b - a @ sol
    return [complex(c) for c in sol], [complex(rv) for rv in residual]

"""Gauge normal forms: regularity, cyclic vectors, companion gauges, and
the r = 2 chart normalizations for both systems.

The central construction is g(u, A) = (u, xi_1(A)u, ..., xi_{r-1}(A)u)
with xi_i(A) = A^i + beta_1 A^{i-1} + ... + beta_i I built from the
characteristic coefficients.  Conjugating by g(u, A) puts the leading
coefficient into companion form, which yields a set of representatives for
the conjugation quotient on the locus where the leading coefficient is
regular and singular.

Everything on the exact backend is decided exactly: regularity through a
symbolic cyclic-vector determinant, kernels through rational elimination.
The float backend substitutes eigenvalue clustering with a relative
tolerance and rejects borderline inputs instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, InputError, InternalError
from .algebra import linalg
from .algebra.mpoly import MPoly
from .algebra.poly import Poly
from .algebra.polymat import PolyMat, char_poly_const
from .algebra.scalars import EXACT, value_of
from .spaces import DegreeProfile, PhasePoint


@dataclass
class JordanData:
    regular: bool
    eigenvalues: list
    block_sizes: list
    eigenvectors: list       # v_alpha convention: first nonzero component 1
    complete: bool           # full eigen decomposition resolved


def mat_det_generic(m):
    """Cofactor determinant over any commutative ring (small sizes)."""
    n = len(m)
    if n == 1:
        return m[0][0]
    acc = 0
    sign = 1
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        acc = acc + sign * m[0][j] * mat_det_generic(minor)
        sign = -sign
    return acc


def krylov_matrix(a, u):
    """Columns u, Au, ..., A^{r-1}u."""
    r = len(a)
    cols = [list(u)]
    for _ in range(r - 1):
        cols.append(linalg.mat_vec(a, cols[-1]))
    return [[cols[k][i] for k in range(r)] for i in range(r)]


def _normalize_first_nonzero(v, backend):
    for x in v:
        if not backend.is_zero(x):
            return [y / x for y in v]
    raise DomainError("zero vector cannot be normalized")


def _rational_roots(coeffs):
    """Rational roots (with multiplicity) of y^r + c_1 y^{r-1} + ... + c_r."""
    poly = Poly(list(reversed([Fraction(1)] + [Fraction(c) for c in coeffs])))
    roots = []
    # clear denominators -> integer poly; candidate roots p/q
    while True:
        deg = poly.degree()
        if deg <= 0:
            break
        den = 1
        for c in poly.coeffs:
            den = den * Fraction(c).denominator // _gcd(den, Fraction(c).denominator)
        ints = [int(Fraction(c) * den) for c in poly.coeffs]
        lead, const = ints[deg], ints[0]
        if const == 0:
            root = Fraction(0)
        else:
            root = None
            for p in _divisors(abs(const)):
                for q in _divisors(abs(lead)):
                    for cand in (Fraction(p, q), Fraction(-p, q)):
                        if poly(cand) == 0:
                            root = cand
                            break
                    if root is not None:
                        break
                if root is not None:
                    break
            if root is None:
                break
        roots.append(root)
        from .algebra.poly import poly_divexact
        poly = poly_divexact(poly, Poly([-root, 1]))
    return roots, poly.degree() <= 0


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a if a else 1


def _divisors(n):
    out = [d for d in range(1, abs(n) + 1) if n % d == 0]
    return out


def is_regular(mat, backend=EXACT):
    """Nonderogatory test plus whatever eigen data the backend can resolve.

    Exact: some u has det(u, Au, ..., A^{r-1}u) != 0 iff the minimal
    polynomial has full degree; decided by a symbolic determinant in u.
    Float: eigenvalue clustering, one Jordan block per cluster.
    """
    r = len(mat)
    if backend.exact:
        gens = [MPoly.variable(r, i) for i in range(r)]
        det = mat_det_generic(krylov_matrix(mat, gens))
        regular = bool(det)
        beta = char_poly_const([[Fraction(x) if isinstance(x, int) else x
                                 for x in row] for row in mat])
        roots, complete = _rational_roots(beta)
        eigenvalues, blocks, vecs = [], [], []
        for root in sorted(set(roots)):
            eigenvalues.append(root)
            blocks.append(roots.count(root))
            shifted = [[mat[i][j] - (root if i == j else 0) for j in range(r)]
                       for i in range(r)]
            ker = linalg.mat_nullspace(shifted, backend)
            vecs.append(_normalize_first_nonzero(ker[0], backend) if ker else None)
        return regular, JordanData(regular, eigenvalues, blocks, vecs, complete)
    import numpy

    arr = numpy.array([[complex(x) for x in row] for row in mat])
    eig = numpy.linalg.eigvals(arr)
    order = numpy.argsort(eig.real + eig.imag * 1e-3)
    eig = eig[order]
    clusters = []
    for lam in eig:
        if clusters and abs(lam - clusters[-1][-1]) <= 1e-8 * max(1.0, abs(lam)):
            clusters[-1].append(lam)
        else:
            clusters.append([lam])
    eigenvalues, blocks, vecs = [], [], []
    regular = True
    for cl in clusters:
        alpha = complex(numpy.mean(cl))
        shifted = arr - alpha * numpy.eye(r)
        s = numpy.linalg.svd(shifted, compute_uv=False)
        geo = int((s <= 1e-8 * max(1.0, s[0])).sum())
        if geo != 1:
            regular = False
        eigenvalues.append(alpha)
        blocks.append(len(cl))
        _, _, vh = numpy.linalg.svd(shifted)
        v = vh[-1].conj()
        vecs.append(_normalize_first_nonzero([complex(x) for x in v], backend))
    return regular, JordanData(regular, eigenvalues, blocks, vecs, True)


def xi(mat, i, backend=EXACT):
    """xi_i(A) = A^i + beta_1 A^{i-1} + ... + beta_i I (Horner form)."""
    r = len(mat)
    if not 1 <= i <= r - 1:
        raise InputError("xi index %d outside 1..%d" % (i, r - 1))
    beta = char_poly_const(mat)
    out = linalg.mat_identity(r)
    for k in range(1, i + 1):
        out = linalg.mat_add(linalg.mat_mul(mat, out),
                             linalg.mat_scale(linalg.mat_identity(r), beta[k - 1]))
    return out


def kernel_vector(mat, backend=EXACT):
    """v_0(A): kernel vector normalized so its first nonzero component is 1."""
    if backend.exact:
        ker = linalg.mat_nullspace(mat, backend)
        if not ker:
            raise DomainError("matrix has trivial kernel")
        return _normalize_first_nonzero(ker[0], backend)
    import numpy

    arr = numpy.array([[complex(x) for x in row] for row in mat])
    s = numpy.linalg.svd(arr, compute_uv=False)
    if s[-1] > 1e-8 * max(1.0, s[0]):
        raise DomainError("matrix has trivial kernel (float tolerance)")
    _, _, vh = numpy.linalg.svd(arr)
    return _normalize_first_nonzero([complex(x) for x in vh[-1].conj()], backend)


def in_V(mat, u, backend=EXACT):
    """u, Au, ..., A^{r-1}u spanning test; requires a regular matrix."""
    regular, _ = is_regular(mat, backend)
    if not regular:
        raise InputError("cyclic-vector test needs a regular matrix")
    det = linalg.mat_det(krylov_matrix(mat, list(u)), backend)
    return not backend.is_zero(det)


def g_matrix(u, mat, backend=EXACT, check=True):
    """g(u, A) = (u, xi_1(A)u, ..., xi_{r-1}(A)u), with the companion-form
    identity g^{-1} A g asserted when ``check`` is set."""
    if check:
        if not in_V(mat, u, backend):
            raise InputError("u is not a cyclic vector for the matrix")
    g = _g_matrix_raw(u, mat)
    if check:
        beta = char_poly_const(mat)
        ginv = linalg.mat_inverse(g, backend)
        conj = linalg.mat_mul(ginv, linalg.mat_mul(mat, g))
        comp = companion_matrix(beta)
        for i in range(len(mat)):
            for j in range(len(mat)):
                if not backend.eq(value_of(conj[i][j]), value_of(comp[i][j])):
                    raise InternalError("companion identity failed for g(u, A)")
    return g


def _g_matrix_raw(u, mat):
    r = len(mat)
    cols = [list(u)]
    for i in range(1, r):
        cols.append(linalg.mat_vec(xi(mat, i), list(u)))
    return [[cols[k][i] for k in range(r)] for i in range(r)]


def companion_matrix(beta):
    """First row -beta_1..-beta_r, subdiagonal ones."""
    r = len(beta)
    out = [[0] * r for _ in range(r)]
    for j in range(r):
        out[0][j] = -beta[j]
    for i in range(1, r):
        out[i][i - 1] = 1
    return out


# ---------------------------------------------------------------------------
# normal-form spaces at infinity (and at finite points) for the Beauville side

def omega_shape_ok(m, backend):
    """Leading-coefficient shape: first row free with zero corner, ones on
    the subdiagonal, zeros elsewhere."""
    r = len(m)
    if not backend.is_zero(m[0][r - 1]):
        return False
    for i in range(1, r):
        for j in range(r):
            want_one = (j == i - 1)
            v = m[i][j]
            if want_one and not backend.eq(v, 1):
                return False
            if not want_one and not backend.is_zero(v):
                return False
    return True


def t_shape_ok(m, backend):
    """Subleading shape: last column is (nonzero, 0, ..., 0)."""
    r = len(m)
    if backend.is_zero(m[0][r - 1]):
        return False
    return all(backend.is_zero(m[i][r - 1]) for i in range(1, r))


def in_s_infinity(a, d, backend=EXACT):
    return (omega_shape_ok(a.coeff_matrix(d), backend)
            and t_shape_ok(a.coeff_matrix(d - 1), backend))


def m_infinity_membership(point):
    """Leading coefficient regular and singular, with the subleading image
    of its kernel vector cyclic.

    The singularity condition is det A_d = 0 (equivalently, the top
    characteristic coefficient of s_r vanishes); see the notes on the
    alternative trace-coefficient cut in the repository ledger.
    """
    a, backend = point.matrix, point.backend
    d = point.profile.d
    ad = a.coeff_matrix(d)
    regular, jd = is_regular(ad, backend)
    if not regular:
        return False
    if not backend.is_zero(linalg.mat_det(ad, backend)):
        return False
    v0 = kernel_vector(ad, backend)
    u = linalg.mat_vec(a.coeff_matrix(d - 1), v0)
    if all(backend.is_zero(x) for x in u):
        return False
    # cross-check via the rank-one annihilator: B v_0 must be an eigenvector
    # of B xi_{r-1}(A); cheap and catches kernel-vector bugs
    xr = xi(ad, a.r - 1)
    b = a.coeff_matrix(d - 1)
    bx = linalg.mat_mul(b, xr)
    lhs = linalg.mat_vec(bx, u)
    lam = None
    for p, q in zip(lhs, u):
        if not backend.is_zero(q):
            lam = p * _inv_scalar(q) if backend.exact else p / q
            break
    if lam is not None:
        for p, q in zip(lhs, u):
            if not backend.eq(p, lam * q):
                raise InternalError("rank-one annihilator cross-check failed")
    return in_V(ad, u, backend)


def m_c_membership(point, c):
    a, backend = point.matrix, point.backend
    ac = a.evaluate(c)
    regular, _ = is_regular(ac, backend)
    if not regular:
        return False
    if not backend.is_zero(linalg.mat_det(ac, backend)):
        return False
    v0 = kernel_vector(ac, backend)
    u = linalg.mat_vec(a.derivative().evaluate(c), v0)
    if all(backend.is_zero(x) for x in u):
        return False
    return in_V(ac, u, backend)


@dataclass
class NormalForm:
    s: PolyMat
    gauge: object            # constant matrix (PGL side) or G_r triple
    target: str              # s_infty | s_c | s_prime_infty


def normalize_beauville(point, c=None):
    """Companion-gauge representative of a conjugation orbit.

    ``c is None`` normalizes the leading coefficient (representatives at
    infinity); a finite ``c`` normalizes the Taylor expansion at x = c.
    Raises DomainError off the normalizable locus.  The gauge g satisfies
    S = g^{-1} A g exactly, and the construction is invariant under
    conjugating the input.
    """
    a, backend = point.matrix, point.backend
    d = point.profile.d
    if c is None:
        if not m_infinity_membership(point):
            raise DomainError("point is outside the locus normalizable at infinity")
        lead = a.coeff_matrix(d)
        sub = a.coeff_matrix(d - 1)
    else:
        if not m_c_membership(point, c):
            raise DomainError("point is outside the locus normalizable at x=%r" % (c,))
        lead = a.evaluate(c)
        sub = a.derivative().evaluate(c)
    v0 = kernel_vector(lead, backend)
    u = linalg.mat_vec(sub, v0)
    g = g_matrix(u, lead, backend)
    s = a.conjugate(g, backend)
    if c is None:
        if not in_s_infinity(s, d, backend):
            raise InternalError("normal form failed the shape assertion")
        return NormalForm(s, g, "s_infty")
    sc = s.evaluate(c)
    sdc = s.derivative().evaluate(c)
    if not (omega_shape_ok(sc, backend) and t_shape_ok(sdc, backend)):
        raise InternalError("normal form failed the shape assertion at x=%r" % (c,))
    return NormalForm(s, g, "s_c")


def in_dm_subspace(nf, backend=EXACT):
    """Trace-free representatives with nilpotent-companion leading term:
    Tr S(x) = 0 and beta_1(S_d) = ... = beta_{r-1}(S_d) = 0."""
    s = nf.s
    d = max(e.degree(backend) for row in s.entries for e in row)
    if not s.trace().is_zero(backend):
        return False
    beta = char_poly_const(s.coeff_matrix(d))
    return all(backend.is_zero(b) for b in beta[:-1])


# ---------------------------------------------------------------------------
# r = 2 chart normalization for the BV side

def bv_gauge_parameters(a, d, backend=EXACT):
    """Closed-form (c, b1, b0) putting an r=2 BV matrix into the chart shape.

    Conditions: lower-left entry monic of degree d-1 (fixes c), lower-right
    coefficients at x^d and x^{d-1} zero (fix b1 then b0).  Chart breaks
    down when the x^{d-1} coefficient of the lower-left entry vanishes.
    """
    if a.r != 2:
        raise InputError("BV chart normalization is r=2 only")
    u = a.entry(2, 1)
    t = a.entry(2, 2)
    c = u.coeff(d - 1)
    if backend.is_zero(value_of(c)):
        raise DomainError("chart breakdown: monic normalization impossible")
    cinv = _inv_scalar(c)
    b1 = -t.coeff(d)
    b0 = -t.coeff(d - 1) - u.coeff(d - 2) * b1 * cinv
    return c, b1, b0


def bv_gauge_matrix(c, b1, b0):
    """Polynomial gauge [[1, b1 x + b0], [0, c]]."""
    return PolyMat([[Poly([1]), Poly([b0, b1])], [Poly([0]), Poly([c])]])


def apply_bv_gauge(a, c, b1, b0):
    """g^{-1} A g for the polynomial gauge above, computed entrywise."""
    v = a.entry(1, 1)
    w = a.entry(1, 2)
    u = a.entry(2, 1)
    t = a.entry(2, 2)
    b = Poly([b0, b1])
    cinv = _inv_scalar(c)
    ub_c = (u * b).scale(cinv)
    s11 = v - ub_c
    s21 = u.scale(cinv)
    s22 = t + ub_c
    s12 = w.scale(c) + b * (v - t) - (b * b * u).scale(cinv)
    return PolyMat([[s11, s12], [s21, s22]])


def _inv_scalar(c):
    if isinstance(c, int):
        return Fraction(1, c)
    return 1 / c


def normalize_bv_r2(point_or_mat, d=None, backend=EXACT):
    """Chart representative on the r=2 BV space (exact, closed form)."""
    if isinstance(point_or_mat, PhasePoint):
        a, backend = point_or_mat.matrix, point_or_mat.backend
        d = point_or_mat.profile.d
    else:
        a = point_or_mat
        if d is None:
            raise InputError("normalize_bv_r2 needs the degree parameter d")
    c, b1, b0 = bv_gauge_parameters(a, d, backend)
    s = apply_bv_gauge(a, c, b1, b0)
    if not in_s_prime_infinity(s, d, backend):
        raise InternalError("BV chart normalization failed the shape assertion")
    return NormalForm(s, (c, b1, b0), "s_prime_infty")


def in_s_prime_infinity(a, d, backend=EXACT):
    """Chart shape: lower-left monic of degree d-1, lower-right of degree
    <= d-2 (r = 2)."""
    if a.r != 2:
        return False
    u = a.entry(2, 1)
    t = a.entry(2, 2)
    if not backend.eq(value_of(u.coeff(d - 1)), 1):
        return False
    if u.degree(backend) > d - 1:
        return False
    if not (backend.is_zero(value_of(t.coeff(d))) and backend.is_zero(value_of(t.coeff(d - 1)))):
        return False
    return True


# ---------------------------------------------------------------------------
# extension of the companion normalization used for differentiation

def extended_normal_form(a, d, w, backend=EXACT):
    """Normal-form conjugation defined in a full neighborhood, for AD.

    Replaces the kernel vector by xi_{r-1}(A_d) w for a fixed probe vector
    w: on the normalizable locus xi_{r-1}(A_d) has rank one with image the
    kernel, so this agrees with the canonical normalization up to a scalar
    on u, which g(., A) absorbs.  Being polynomial in the matrix entries it
    is safe to evaluate on dual numbers.
    """
    lead = [[a.entry(i, j).coeff(d) for j in range(1, a.r + 1)]
            for i in range(1, a.r + 1)]
    sub = [[a.entry(i, j).coeff(d - 1) for j in range(1, a.r + 1)]
           for i in range(1, a.r + 1)]
    v = linalg.mat_vec(xi(lead, a.r - 1), list(w))
    u = linalg.mat_vec(sub, v)
    if all(backend.is_zero(value_of(x)) for x in u):
        raise DomainError("probe vector annihilated; pick another probe")
    g = _g_matrix_raw(u, lead)
    det = linalg.mat_det(g, backend)
    if backend.is_zero(value_of(det)):
        raise DomainError("extended normalization hit a singular gauge")
    return a.conjugate(g, backend)

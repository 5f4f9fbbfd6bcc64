"""r = 2 chart descriptions and the printed r-matrix brackets on them.

For both systems the quotient by the gauge group has an explicit chart:

* ``SInfChart``    -- leading coefficient in companion shape with zero
  corner, subleading with a single nonzero last-column entry (Beauville
  side; chart condition: that entry, the (1,2;d-1) coordinate, is nonzero).
* ``SPrimeChart``  -- lower-left entry monic of degree d-1, lower-right of
  degree <= d-2 (BV side).

``sinf_chart_bracket`` and ``sprime_chart_bracket`` evaluate the closed
r-matrix/K-matrix expressions for all pairwise brackets of chart
coordinates at a chart point.  ``chart_gradient_table`` differentiates the
chart coordinates as gauge-invariant observables on the ambient space
through the normalization map (forward-mode duals), which gives the
independent chain-rule oracle the cross-checks compare against.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, InputError
from .algebra.dual import DualScalar
from .algebra.poly import BiPoly, Poly, divided_difference_kernel
from .algebra.polymat import PolyMat
from .algebra.scalars import EXACT, value_of
from .gauge import apply_bv_gauge, bv_gauge_parameters, extended_normal_form
from .spaces import Coords, DegreeProfile


# ---------------------------------------------------------------------------
# chart shapes

class SInfChart:
    """Companion-gauge chart for the conjugation quotient, r = 2."""

    def __init__(self, d):
        self.d = d
        self.profile = DegreeProfile("beauville", 2, d)
        self.free = ([(1, 1, m) for m in range(d + 1)]
                     + [(1, 2, m) for m in range(d)]
                     + [(2, 1, m) for m in range(d)]
                     + [(2, 2, m) for m in range(d - 1)])
        self.fixed = {(1, 2, d): 0, (2, 1, d): 1, (2, 2, d - 1): 0, (2, 2, d): 0}
        # chart condition: the (1,2;d-1) coordinate stays nonzero
        self.condition = (1, 2, d - 1)

    def matrix_from(self, values):
        return _chart_matrix(self, values)

    def values_from(self, mat):
        return [mat.entry(i, j).coeff(m) for (i, j, m) in self.free]

    def random(self, rng, backend=EXACT, traceless=False):
        vals = {c: backend.rand(rng) for c in self.free}
        vals[self.condition] = backend.rand_nonzero(rng)
        if traceless:
            d = self.d
            vals[(1, 1, d)] = backend.coerce(0)
            vals[(1, 1, d - 1)] = backend.coerce(0)
            for m in range(d - 1):
                vals[(1, 1, m)] = -vals[(2, 2, m)]
        return [vals[c] for c in self.free]


class SPrimeChart:
    """Chart for the BV quotient, r = 2."""

    def __init__(self, d):
        self.d = d
        self.profile = DegreeProfile("bv", 2, d)
        self.free = ([(1, 1, m) for m in range(d + 1)]
                     + [(1, 2, m) for m in range(d + 2)]
                     + [(2, 1, m) for m in range(d - 1)]
                     + [(2, 2, m) for m in range(d - 1)])
        self.fixed = {(2, 1, d - 1): 1, (2, 2, d - 1): 0, (2, 2, d): 0}
        self.condition = None

    def matrix_from(self, values):
        return _chart_matrix(self, values)

    def values_from(self, mat):
        return [mat.entry(i, j).coeff(m) for (i, j, m) in self.free]

    def random(self, rng, backend=EXACT, traceless=False):
        vals = {c: backend.rand(rng) for c in self.free}
        if traceless:
            d = self.d
            vals[(1, 1, d)] = backend.coerce(0)
            vals[(1, 1, d - 1)] = backend.coerce(0)
            for m in range(d - 1):
                vals[(1, 1, m)] = -vals[(2, 2, m)]
        return [vals[c] for c in self.free]


def _chart_matrix(chart, values):
    if len(values) != len(chart.free):
        raise InputError("chart expects %d coordinates" % len(chart.free))
    table = dict(zip(chart.free, values))
    table.update(chart.fixed)
    p = chart.profile
    entries = []
    for i in (1, 2):
        row = []
        for j in (1, 2):
            b = p.bound(i, j)
            row.append(Poly([table.get((i, j, m), 0) for m in range(b + 1)]))
        entries.append(row)
    return PolyMat(entries)


# ---------------------------------------------------------------------------
# 4x4 tensor algebra over bivariate polynomials

def _bp(c):
    return c if isinstance(c, BiPoly) else BiPoly([[c]])


def kron2(b, c):
    """(B ox C)[(i,k),(j,l)] = B_ij C_kl with 2x2 blocks; entries BiPoly."""
    out = [[None] * 4 for _ in range(4)]
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    out[2 * i + k][2 * j + l] = _bp(b[i][j]) * _bp(c[k][l])
    return out


def m4_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def m4_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def m4_scale(a, s):
    return [[x * s for x in row] for row in a]


def m4_mul(a, b):
    out = []
    for i in range(4):
        row = []
        for j in range(4):
            acc = BiPoly.zero()
            for l in range(4):
                acc = acc + a[i][l] * b[l][j]
            row.append(acc)
        out.append(row)
    return out


def m4_commutator(a, b):
    return m4_sub(m4_mul(a, b), m4_mul(b, a))


def m4_zero():
    return [[BiPoly.zero() for _ in range(4)] for _ in range(4)]


def p2_sandwich(m):
    """P_2 M P_2: entry ((i,k),(j,l)) <- ((k,i),(l,j))."""
    out = m4_zero()
    for i in range(2):
        for k in range(2):
            for j in range(2):
                for l in range(2):
                    out[2 * i + k][2 * j + l] = m[2 * k + i][2 * l + j]
    return out


def m4_mul_p2_right(m):
    """M P_2: column relabeling (j,l) <- (l,j)."""
    out = m4_zero()
    for row in range(4):
        for j in range(2):
            for l in range(2):
                out[row][2 * j + l] = m[row][2 * l + j]
    return out


def m4_swap_xy(m):
    return [[e.swap_xy() for e in row] for row in m]


def _s_as_x(s):
    return [[BiPoly.in_x(s.entries[i][j]) for j in range(2)] for i in range(2)]


def _s_as_y(s):
    return [[BiPoly.in_y(s.entries[i][j]) for j in range(2)] for i in range(2)]


def _eye2():
    return [[1, 0], [0, 1]]


def _regular_part(s, phi_poly, rho, k, backend):
    """Common assembly: the 1/(x-y) singular parts of both r-matrices
    combine with phi into the entrywise divided-difference kernel, so the
    whole expression is polynomial:

      (I ox T)P_2 - (T ox I)P_2
        + phi(y)[rho, S(x) ox I] - phi(x)[rho_bar, I ox S(y)]
        + [K, S(x) ox I] - [K_bar, I ox S(y)]
    """
    t = [[divided_difference_kernel(s.entries[i][j], phi_poly, backend)
          for j in range(2)] for i in range(2)]
    sing = m4_sub(m4_mul_p2_right(kron2(_eye2(), t)),
                  m4_mul_p2_right(kron2(t, _eye2())))
    sx = kron2(_s_as_x(s), _eye2())
    sy = kron2(_eye2(), _s_as_y(s))
    rho_bar = p2_sandwich(m4_swap_xy(rho))
    k_bar = p2_sandwich(m4_swap_xy(k))
    phi_y = BiPoly.in_y(phi_poly)
    phi_x = BiPoly.in_x(phi_poly)
    total = m4_add(sing, m4_scale(m4_commutator(rho, sx), phi_y))
    total = m4_sub(total, m4_scale(m4_commutator(rho_bar, sy), phi_x))
    total = m4_add(total, m4_commutator(k, sx))
    total = m4_sub(total, m4_commutator(k_bar, sy))
    return total


def sinf_chart_bracket(chart, values, pencil, backend=EXACT):
    """All pairwise chart brackets on the companion chart from the printed
    r/K-matrix expression; requires deg phi <= d+1."""
    d = chart.d
    if not backend.is_zero(pencil.sigma[d + 2]):
        raise InputError("companion-chart bracket needs deg phi <= d+1")
    s = chart.matrix_from(values)
    table = dict(zip(chart.free, values))
    u_top = table[(1, 2, d - 1)]
    if backend.is_zero(value_of(u_top)):
        raise DomainError("chart breakdown: (1,2;%d) coordinate vanished" % (d - 1,))
    uinv = _inv(u_top)
    v_d = table[(1, 1, d)]
    w_sub = table[(2, 1, d - 1)]
    sig_d1 = pencil.sigma[d + 1]
    sig_d = pencil.sigma[d]
    rho = m4_scale(kron2([[v_d, 0], [1, 0]], [[0, 0], [1, 0]]), _bp(uinv))
    y = BiPoly([[0, 1]])
    f11 = y * (v_d * sig_d1 * uinv)
    f12 = _bp(-sig_d1)
    f21 = _bp((-w_sub * sig_d1 + sig_d) * uinv) + y * (sig_d1 * uinv)
    kfac = [[f11, f12], [f21, _bp(0)]]
    gfac = [[_bp(0), BiPoly.in_y(s.entries[0][1])],
            [-BiPoly.in_y(s.entries[1][0]), _bp(0)]]
    kmat = kron2(kfac, gfac)
    total = _regular_part(s, pencil.as_poly(), rho, kmat, backend)
    return _collect_pairs(chart, total)


def sprime_chart_bracket(chart, values, pencil, backend=EXACT):
    """All pairwise chart brackets on the BV chart from the printed
    expression; the quadratic pencil factor multiplies the K-matrix once."""
    d = chart.d
    if d < 3:
        raise InputError("BV chart bracket needs d >= 3 (references the "
                         "(2,1;d-3) coordinate)")
    s = chart.matrix_from(values)
    table = dict(zip(chart.free, values))
    v_d = table[(1, 1, d)]
    w_d1 = table[(1, 2, d + 1)]
    w_d = table[(1, 2, d)]
    u_d2 = table[(2, 1, d - 2)]
    u_d3 = table[(2, 1, d - 3)]
    s2, s1, s0 = pencil.sigma[d + 2], pencil.sigma[d + 1], pencil.sigma[d]
    # scalar polynomial w_{d+1}(z - u_{d-2}) + w_d evaluated at z = x + y
    a_xy = BiPoly([[w_d - w_d1 * u_d2, w_d1], [w_d1, 0]])
    # symmetric quadratic pencil factor; the sign of the middle coefficient
    # is fixed by the exact chain-rule cross-check (see the notes ledger)
    b_xy = BiPoly([
        [s2 * (u_d2 * u_d2 - u_d3) - s1 * u_d2 + s0, -s2 * u_d2 + s1, s2],
        [-s2 * u_d2 + s1, s2, 0],
        [s2, 0, 0],
    ])
    rho = kron2([[_bp(v_d), a_xy], [_bp(0), _bp(0)]], [[0, 1], [0, 0]])
    kmat = kron2([[_bp(0), b_xy], [_bp(0), _bp(0)]],
                 [[_bp(0), -BiPoly.in_y(s.entries[0][1])],
                  [BiPoly.in_y(s.entries[1][0]), _bp(0)]])
    total = _regular_part(s, pencil.as_poly(), rho, kmat, backend)
    return _collect_pairs(chart, total)


def _collect_pairs(chart, total):
    out = {}
    for a, (i, j, m) in enumerate(chart.free):
        for b, (k, l, n) in enumerate(chart.free):
            out[((i, j, m), (k, l, n))] = total[2 * (i - 1) + (k - 1)][2 * (j - 1) + (l - 1)].coeff(m, n)
    return out


def _inv(c):
    if isinstance(c, int):
        return Fraction(1, c)
    return 1 / c


# ---------------------------------------------------------------------------
# chain-rule oracle through the normalization maps

PROBES = ((1, 0), (0, 1), (1, 1), (1, -1), (2, 1))


def chart_gradient_table(chart, ambient_point_vec, backend=EXACT):
    """Values and gradients of every chart coordinate as gauge-invariant
    observables on the ambient coordinate space (one dual sweep)."""
    if isinstance(chart, SInfChart):
        coords = Coords(DegreeProfile("ambient", 2, chart.d))
        seeds = DualScalar.seed_all(ambient_point_vec)
        a = coords.to_polymat(seeds)
        s = None
        for w in PROBES:
            try:
                s = extended_normal_form(a, chart.d, w, backend)
                break
            except DomainError:
                continue
        if s is None:
            raise DomainError("no probe vector normalizes this point")
    else:
        coords = Coords(chart.profile)
        seeds = DualScalar.seed_all(ambient_point_vec)
        a = coords.to_polymat(seeds)
        c, b1, b0 = bv_gauge_parameters(a, chart.d, backend)
        s = apply_bv_gauge(a, c, b1, b0)
    values, grads = {}, {}
    for (i, j, m) in chart.free:
        ds = s.entry(i, j).coeff(m)
        if isinstance(ds, DualScalar):
            values[(i, j, m)] = ds.val
            grads[(i, j, m)] = list(ds.grad)
        else:
            values[(i, j, m)] = ds
            grads[(i, j, m)] = [0] * len(ambient_point_vec)
    return values, grads


def oracle_chart_bracket(chart, ambient_point_vec, table, backend=EXACT):
    """Pairwise chart brackets via the ambient tensor and the chain rule."""
    values, grads = chart_gradient_table(chart, ambient_point_vec, backend)
    tmat = table.matrix_at(ambient_point_vec)
    out = {}
    names = chart.free
    contracted = {}
    for c1 in names:
        g1 = grads[c1]
        row = [sum(g1[a] * tmat[a][b] for a in range(len(g1)) if g1[a])
               for b in range(len(g1))]
        contracted[c1] = row
    for c1 in names:
        row = contracted[c1]
        for c2 in names:
            g2 = grads[c2]
            out[(c1, c2)] = sum(row[b] * g2[b] for b in range(len(g2)) if g2[b])
    return values, out

"""Lax vector fields, orbit decompositions, multi-Hamiltonian ladders, and
the r = 2 chart flows.

The isospectral fields Y_i^{(k)} come from expanding [A(x), A(a)^k]/(x-a)
in powers of a (the division is exact since the commutator vanishes on
x = a).  Orbit-tangency questions reduce to exact rational least squares
against the gauge-group generators, so "tangent to orbits" is a decidable
predicate on both backends.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, InputError, InternalError
from .algebra import linalg
from .algebra.poly import Poly, poly_divexact
from .algebra.polymat import PolyMat, commutator_kernel, trace_power
from .algebra.scalars import EXACT
from .charts import SInfChart, SPrimeChart
from .poisson import SpectralObservable, hamiltonian_vf
from .spaces import Coords, DegreeProfile, membership


# ---------------------------------------------------------------------------
# gauge-orbit models

@dataclass(frozen=True)
class OrbitModel:
    group: str           # "pgl" (full conjugation) or "g_r" (BV subgroup)

    def generator_count(self, r):
        if self.group == "pgl":
            return r * r - 1
        return (r - 1) * (r - 1) + 2 * (r - 1)

    def generators(self, a):
        """Infinitesimal gauge motions at A, as PolyMats."""
        r = a.r
        fields = []
        if self.group == "pgl":
            for i in range(1, r + 1):
                for j in range(1, r + 1):
                    if i != j:
                        fields.append(a.commutator(_unit_mat(r, i, j)))
            for i in range(1, r):
                n = _unit_mat(r, i, i) - _unit_mat(r, i + 1, i + 1)
                fields.append(a.commutator(n))
        elif self.group == "g_r":
            xa = a.scale_poly(Poly([0, 1]))
            for i in range(2, r + 1):
                for j in range(2, r + 1):
                    fields.append(a.commutator(_unit_mat(r, i, j)))
            for j in range(2, r + 1):
                fields.append(a.commutator(_unit_mat(r, 1, j)))
            for j in range(2, r + 1):
                fields.append(xa.commutator(_unit_mat(r, 1, j)))
        else:
            raise InputError("unknown orbit model %r" % (self.group,))
        return fields


def _unit_mat(r, i, j):
    return PolyMat([[Poly([1 if (p, q) == (i, j) else 0])
                     for q in range(1, r + 1)] for p in range(1, r + 1)])


def orbit_model_for(system_or_profile):
    kind = getattr(system_or_profile, "kind", system_or_profile)
    return OrbitModel("g_r" if kind == "bv" else "pgl")


def orbit_decompose(v, point, model):
    """Express V as sum c_m X_m(A) + R with minimal residual.

    Exact backend: rational normal equations, so R = 0 exactly iff V is
    orbit-tangent.  Float backend: numpy least squares with SVD threshold.
    Returns (coefficients, residual vector, is_tangent).
    """
    coords = point.coords()
    backend = point.backend
    gens = model.generators(point.matrix)
    for g in gens:
        if not membership(g, point.profile, backend):
            raise InternalError("orbit generator left the degree profile")
    cols = [coords.to_vector(g) for g in gens]
    target = coords.to_vector(v)
    if backend.exact:
        coeffs, residual = linalg.lstsq_exact(cols, target, backend)
    else:
        coeffs, residual = linalg.lstsq_float(cols, target)
    member = all(backend.is_zero(x) for x in residual)
    return coeffs, residual, member


# ---------------------------------------------------------------------------
# isospectral vector fields

def y_fields(point_or_mat, k, system="beauville", d=None, backend=EXACT):
    """Y_i^{(k)}: coefficients of a^i in [A(x), A(a)^k]/(x - a).

    Index range: i = 0..dk-1 on the square profile, i = 0..dk on the BV
    profile; absent indices are zero matrices.  Entry degrees stay within
    the ambient profile (asserted).
    """
    if hasattr(point_or_mat, "matrix"):
        a = point_or_mat.matrix
        d = point_or_mat.profile.d
        backend = point_or_mat.backend
        system = "bv" if point_or_mat.profile.kind == "bv" else system
    else:
        a = point_or_mat
        if d is None:
            raise InputError("y_fields needs the degree parameter d")
    r = a.r
    if not 1 <= k <= r - 1:
        raise InputError("field order k=%d outside 1..%d" % (k, r - 1))
    count = d * k + (1 if system == "bv" else 0)
    fields = commutator_kernel(a, a.power(k), backend)
    for extra in fields[count:]:
        if not extra.is_zero(backend):
            raise InternalError("isospectral field exceeded its index range")
    fields = fields[:count]
    while len(fields) < count:
        fields.append(PolyMat.zero(r, max(d - 1, 0)))
    profile = DegreeProfile("bv" if system == "bv" else "beauville", r, d)
    for f in fields:
        if not membership(f, profile, backend):
            raise InternalError("isospectral field violated the degree profile")
    return fields


def y_sum(fields, pencil, j, zero_mat):
    """sum_i sigma_i Y_{j-i} with out-of-range indices contributing zero."""
    acc = zero_mat
    for i in range(min(j, pencil.d + 2) + 1):
        idx = j - i
        if 0 <= idx < len(fields):
            acc = acc + fields[idx].scale(pencil.sigma[i])
    return acc


def spectral_vf_identity_check(table, point, k, j):
    """Hamiltonian field of H^{(k)}_j against the pencil combination of the
    isospectral fields.

    Square system: exact componentwise equality at embedded points (top
    coefficients zero).  BV system: the difference must be tangent to the
    gauge orbits with exact zero residual.
    """
    profile = table.profile
    pencil = table.pencil
    d = profile.d
    a = point.matrix
    backend = point.backend
    vec = table.coords.to_vector(a)
    h = SpectralObservable(table.coords, k, j)
    vf = hamiltonian_vf(table, h, vec)
    if k == 1:
        want_fields = []
    else:
        want_fields = y_fields(a, k - 1,
                               system="bv" if profile.kind == "bv" else "beauville",
                               d=d, backend=backend)
    want = y_sum(want_fields, pencil, j, PolyMat.zero(a.r, max(d - 1, 0)))
    want_vec = table.coords.to_vector(want.padded(profile.max_bound()))
    diff = [x - y for x, y in zip(vf, want_vec)]
    if profile.kind == "ambient":
        exact = all(backend.is_zero(x) for x in diff)
        return {"mode": "exact", "match": exact,
                "defect": None if exact else diff}
    diff_mat = table.coords.to_polymat(diff)
    _, residual, member = orbit_decompose(diff_mat, point, OrbitModel("g_r"))
    return {"mode": "orbit", "match": member,
            "defect": None if member else residual}


def multi_hamiltonian_check(point, k, j, tables, system="beauville"):
    """The ladder {H^{(k+1)}_{j+i}, .}_i must name one vector field for all
    i = 0..d+2 (exactly on the square system, modulo gauge orbits on BV)."""
    d = point.profile.d
    if not (1 <= k <= point.matrix.r - 1 and 0 <= j <= k * d - 2):
        raise InputError("ladder indices (k=%d, j=%d) out of range" % (k, j))
    backend = point.backend
    yk = y_fields(point.matrix, k, system=system, d=d, backend=backend)
    target = yk[j]
    coords = tables[0].coords
    vec = coords.to_vector(point.matrix)
    target_vec = coords.to_vector(target.padded(point.profile.max_bound()
                                                if system == "bv" else d + 1))
    results = []
    for i, table in enumerate(tables):
        h = SpectralObservable(coords, k + 1, j + i)
        vf = hamiltonian_vf(table, h, vec)
        diff = [x - y for x, y in zip(vf, target_vec)]
        if system == "bv":
            diff_mat = coords.to_polymat(diff)
            _, residual, ok = orbit_decompose(diff_mat, point, OrbitModel("g_r"))
        else:
            ok = all(backend.is_zero(x) for x in diff)
        results.append(ok)
    return results


def y_span_rank(point, system="beauville"):
    """Rank of the isospectral fields modulo gauge-orbit directions; equals
    the spectral-curve genus at generic points."""
    a = point.matrix
    d = point.profile.d
    backend = point.backend
    coords = point.coords()
    model = OrbitModel("g_r" if system == "bv" else "pgl")
    gens = [coords.to_vector(g) for g in model.generators(a)]
    fields = []
    for k in range(1, a.r):
        for f in y_fields(a, k, system=system, d=d, backend=backend):
            fields.append(coords.to_vector(f))
    base = linalg.mat_rank(gens, backend) if gens else 0
    total = linalg.mat_rank(gens + fields, backend)
    return total - base


# ---------------------------------------------------------------------------
# r = 2 chart flows

@dataclass
class Trajectory:
    chart: object
    y0: object
    times: list
    states: list             # free-coordinate vectors per step
    monitored: list          # dict (k, i) -> H^{(k)}_i per step

    def drift(self):
        """Max |H - H(0)| over the monitored table."""
        base = self.monitored[0]
        worst = 0.0
        for row in self.monitored:
            for key, val in row.items():
                worst = max(worst, abs(complex(val) - complex(base[key])))
        return worst


def chart_lax_rhs(chart, values, y0, backend=EXACT):
    """dS/dt = [S(x), B(x)] for the chart Lax flows, as a PolyMat in x.

    B(x) is S(y0)/(x - y0) plus the chart-specific completion; the rational
    term is handled through the exact identity [S(x), S(y0)]/(x - y0),
    polynomial because the commutator vanishes at x = y0.
    """
    d = chart.d
    s = chart.matrix_from(values)
    table = dict(zip(chart.free, values))
    s_at = [[Poly([e(y0)]) for e in row] for row in s.entries]
    sy = PolyMat(s_at)
    comm = s.commutator(sy)
    lin = Poly([-y0, 1])
    rational_part = comm.map_entries(lambda e: poly_divexact(e, lin, backend))
    if isinstance(chart, SInfChart):
        u_top = table[(1, 2, d - 1)]
        if backend.is_zero(u_top):
            raise DomainError("chart breakdown: flow hit the locus (1,2;%d)=0"
                              % (d - 1,))
        factor = s.entry(1, 2)(y0) * _inv(u_top)
        w = PolyMat([[Poly([table[(1, 1, d)]]), Poly([0])],
                     [Poly([1]), Poly([0])]])
        completion = s.commutator(w.scale(factor))
    else:
        w_d1 = table[(1, 2, d + 1)]
        w_d = table[(1, 2, d)]
        u_d2 = table[(2, 1, d - 2)]
        a_poly = Poly([w_d1 * (y0 - u_d2) + w_d, w_d1])
        b2 = PolyMat([[Poly([0]), a_poly],
                      [Poly([0]), Poly([-table[(1, 1, d)]])]])
        completion = s.commutator(b2.scale(s.entry(2, 1)(y0)))
    return rational_part + completion


def _inv(c):
    if isinstance(c, int):
        return Fraction(1, c)
    return 1 / c


def chart_tangent_components(chart, rhs, backend=EXACT, tol=1e-6):
    """Split a matrix-valued tangent into chart components, asserting that
    the constrained coefficients vanish (the flow stays in the chart)."""
    for (i, j, m) in chart.fixed:
        c = rhs.entry(i, j).coeff(m)
        if backend.exact:
            if not backend.is_zero(c):
                raise InternalError("Lax flow left the chart at (%d,%d;%d)" % (i, j, m))
        else:
            if abs(c) > tol * max(1.0, _matrix_scale(rhs)):
                raise InternalError("Lax flow left the chart at (%d,%d;%d)" % (i, j, m))
    return [rhs.entry(i, j).coeff(m) for (i, j, m) in chart.free]


def _matrix_scale(m):
    return max((abs(complex(c)) for row in m.entries for e in row for c in e.coeffs),
               default=1.0)


def chart_lax_fields(chart, values, backend=EXACT):
    """Exact multi-Hamiltonian fields on the chart: project the isospectral
    fields along gauge orbits onto the chart tangent space.

    Solves Y_j(S) = F_j + sum c_m X_m(S) with F_j vanishing on the
    constrained coordinates; the system is overdetermined but consistent
    because the fields are tangent to the chart's ambient locus.
    """
    d = chart.d
    s = chart.matrix_from(values)
    if isinstance(chart, SInfChart):
        system = "beauville"
        model = OrbitModel("pgl")
        profile = DegreeProfile("beauville", 2, d)
    else:
        system = "bv"
        model = OrbitModel("g_r")
        profile = DegreeProfile("bv", 2, d)
    coords = Coords(profile)
    gens = model.generators(s)
    fixed_rows = []
    for (i, j, m) in chart.fixed:
        fixed_rows.append([g.entry(i, j).coeff(m) for g in gens])
    fields = y_fields(s, 1, system=system, d=d, backend=backend)
    out = []
    for yj in fields:
        rhs = [yj.entry(i, j).coeff(m) for (i, j, m) in chart.fixed]
        coeffs = linalg.mat_solve(fixed_rows, rhs, backend)
        proj = yj
        for c, g in zip(coeffs, gens):
            proj = proj - g.scale(c)
        for (i, j, m) in chart.fixed:
            if not backend.is_zero(proj.entry(i, j).coeff(m)):
                raise InternalError("chart projection failed")
        out.append([proj.entry(i, j).coeff(m) for (i, j, m) in chart.free])
    return out


def lax_integrate(chart, values0, y0, t_end, steps, backend=None):
    """Classical fixed-step 4th-order integration of the chart Lax flow,
    recording the full spectral-Hamiltonian table at every step."""
    if steps < 1:
        raise InputError("need at least one step")
    from .algebra.scalars import FLOAT

    backend = backend or FLOAT
    state = [complex(v) if not backend.exact else v for v in values0]
    h = t_end / steps

    def deriv(vals):
        rhs = chart_lax_rhs(chart, vals, y0, backend)
        return chart_tangent_components(chart, rhs, backend)

    times = [0.0]
    states = [list(state)]
    monitored = [_spectral_table(chart, state)]
    for n in range(steps):
        k1 = deriv(state)
        k2 = deriv([v + 0.5 * h * dv for v, dv in zip(state, k1)])
        k3 = deriv([v + 0.5 * h * dv for v, dv in zip(state, k2)])
        k4 = deriv([v + h * dv for v, dv in zip(state, k3)])
        state = [v + h * (a + 2 * b + 2 * c + e) / 6
                 for v, a, b, c, e in zip(state, k1, k2, k3, k4)]
        times.append((n + 1) * h)
        states.append(list(state))
        monitored.append(_spectral_table(chart, state))
    return Trajectory(chart, y0, times, states, monitored)


def _spectral_table(chart, values):
    s = chart.matrix_from(values)
    out = {}
    for k in (1, 2):
        hk = trace_power(s, k)
        for i in range(k * chart.d + 1):
            out[(k, i)] = hk.coeff(i)
    return out

"""Pencil-parameterized Poisson structures as exact structure constants.

Both bracket families are linear in the coordinate functions, so a tensor
is a finite antisymmetric table mapping a pair of coordinates to a linear
form.  That makes antisymmetry, linearity in the pencil, and the Jacobi
identity finitely checkable, exactly, over the rationals.

The bracket of coordinate entries is built from the divided-difference
kernels K_p = (x^p phi(y) - phi(x) y^p)/(x - y):

    {A_ij(x), A_kl(y)} = delta_il T_kj(x,y) - delta_kj T_il(x,y),
    T_ab(x,y) = sum_p A_{ab;p} K_p(x,y),

read off at the x^m y^n coefficient.  The BV variant is the same expansion
with (m, n) restricted to the asymmetric profile bounds, which implements
the degree truncation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .algebra.dual import DualScalar
from .algebra.mpoly import MPoly
from .algebra.poly import Poly, monomial_kernels
from .algebra.polymat import trace_power
from .algebra.scalars import EXACT, parse_rational
from .spaces import Coords, DegreeProfile


@dataclass(frozen=True)
class Pencil:
    """Coefficient vector sigma_0..sigma_{d+2} of the pencil polynomial.

    Always stored at full length d+3 (trailing zeros allowed) because the
    basis brackets {.,.}_i, 0 <= i <= d+2, index exactly these monomials.
    """
    d: int
    sigma: tuple

    def __post_init__(self):
        if len(self.sigma) != self.d + 3:
            raise InputError("pencil for d=%d needs %d coefficients, got %d"
                             % (self.d, self.d + 3, len(self.sigma)))

    @classmethod
    def make(cls, d, coeffs):
        cs = list(coeffs) + [0] * (d + 3 - len(list(coeffs)))
        return cls(d, tuple(cs[: d + 3]))

    @classmethod
    def monomial(cls, d, i):
        if not 0 <= i <= d + 2:
            raise InputError("pencil monomial x^%d outside 0..%d" % (i, d + 2))
        return cls.make(d, [0] * i + [1])

    @classmethod
    def parse(cls, d, text):
        """Accepts "x^i" or a comma-separated sigma list, entries rational."""
        text = text.strip()
        if text.startswith("x^"):
            return cls.monomial(d, int(text[2:]))
        if text == "x":
            return cls.monomial(d, 1)
        if text == "1":
            return cls.monomial(d, 0)
        return cls.make(d, [parse_rational(t) for t in text.split(",")])

    @classmethod
    def random(cls, d, rng, backend=EXACT):
        return cls(d, tuple(backend.rand(rng) for _ in range(d + 3)))

    def degree(self, backend=EXACT):
        for i in range(self.d + 2, -1, -1):
            if not backend.is_zero(self.sigma[i]):
                return i
        return -1

    def as_poly(self):
        return Poly(self.sigma)

    def combine(self, other, c1, c2):
        if other.d != self.d:
            raise InputError("pencil length mismatch")
        return Pencil(self.d, tuple(c1 * a + c2 * b
                                    for a, b in zip(self.sigma, other.sigma)))

    def label(self):
        return ",".join(str(s) for s in self.sigma)


class BracketTable:
    """Antisymmetric table of structure constants over a coordinate set.

    ``entries[(a, b)]`` is the linear form {x_a, x_b} as a map
    coordinate-index -> coefficient; both printed bracket families have no
    constant terms, which the builders guarantee by construction.
    """

    def __init__(self, profile, pencil, backend=EXACT):
        self.profile = profile
        self.pencil = pencil
        self.backend = backend
        self.coords = Coords(profile)
        self.entries = {}
        self.rows = [dict() for _ in range(len(self.coords))]

    def set_entry(self, a, b, form):
        form = {e: c for e, c in form.items() if not self.backend.is_zero(c)}
        if not form:
            return
        self.entries[(a, b)] = form
        self.rows[a][b] = form

    def entry(self, a, b):
        return self.entries.get((a, b), {})

    def evaluate_entry(self, a, b, vec):
        acc = 0
        for e, c in self.entry(a, b).items():
            acc = acc + c * vec[e]
        return acc

    def matrix_at(self, vec):
        """Dense antisymmetric matrix of bracket values at a point."""
        n = len(self.coords)
        out = [[0] * n for _ in range(n)]
        for (a, b), form in self.entries.items():
            acc = 0
            for e, c in form.items():
                acc = acc + c * vec[e]
            out[a][b] = acc
        return out

    def antisymmetry_defects(self):
        """Pairs where entry(b, a) != -entry(a, b); empty for a valid table."""
        bad = []
        for (a, b), form in self.entries.items():
            other = self.entry(b, a)
            keys = set(form) | set(other)
            for e in keys:
                if not self.backend.eq(other.get(e, 0), -form.get(e, 0)):
                    bad.append((a, b))
                    break
        return bad

    def to_json(self):
        enc = self.backend.to_json
        items = []
        for (a, b) in sorted(self.entries):
            if a > b:
                continue
            form = self.entries[(a, b)]
            items.append({
                "a": list(self.coords.names[a]),
                "b": list(self.coords.names[b]),
                "linear_form": {str(list(self.coords.names[e])): enc(c)
                                for e, c in sorted(form.items())},
            })
        return {
            "profile": self.profile.to_json(),
            "pencil": [enc(s) for s in self.pencil.sigma],
            "entries": items,
        }


def _build_table(profile, pencil, backend):
    """Shared expansion for both families; the profile's coordinate ranges
    implement the BV truncation automatically."""
    table = BracketTable(profile, pencil, backend)
    coords = table.coords
    r = profile.r
    kernels = monomial_kernels(pencil.as_poly(), profile.max_bound(), backend)

    def t_form(p_i, p_j, m, n):
        """Linear form of the x^m y^n coefficient of T_{p_i p_j}."""
        form = {}
        for p in range(profile.bound(p_i, p_j) + 1):
            c = kernels[p].coeff(m, n)
            if not backend.is_zero(c):
                form[coords.index_of(p_i, p_j, p)] = c
        return form

    for a, (i, j, m) in enumerate(coords.names):
        for b, (k, l, n) in enumerate(coords.names):
            if a == b:
                continue
            form = {}
            if i == l:
                for e, c in t_form(k, j, m, n).items():
                    form[e] = form.get(e, 0) + c
            if k == j:
                for e, c in t_form(i, l, m, n).items():
                    form[e] = form.get(e, 0) - c
            table.set_entry(a, b, form)
    return table


def beauville_tensor(r, d, pencil, backend=EXACT):
    """Pencil bracket on the ambient space M_r(S_{d+1})."""
    return _build_table(DegreeProfile("ambient", r, d), pencil, backend)


def bv_tensor(r, d, pencil, backend=EXACT):
    """Degree-truncated pencil bracket on the BV profile (needs d >= 1)."""
    return _build_table(DegreeProfile("bv", r, d), pencil, backend)


def tensor_for(system, r, d, pencil, backend=EXACT):
    if system == "beauville":
        return beauville_tensor(r, d, pencil, backend)
    if system == "bv":
        return bv_tensor(r, d, pencil, backend)
    raise InputError("unknown system %r" % (system,))


# ---------------------------------------------------------------------------
# observables

class Observable:
    """A function on phase space with values and gradients at points.

    ``evaluate`` must accept coordinate vectors over any ring (rationals,
    floats, dual numbers); the default gradient runs one forward-mode
    sweep, so second derivatives come from nesting duals.
    """

    def evaluate(self, vals):
        raise NotImplementedError

    def gradient(self, vals):
        seeds = DualScalar.seed_all(vals)
        out = self.evaluate(seeds)
        if isinstance(out, DualScalar):
            return list(out.grad)
        return [0] * len(vals)


class MPolyObservable(Observable):

    def __init__(self, mpoly):
        self.mpoly = mpoly

    def evaluate(self, vals):
        return self.mpoly.evaluate(vals)

    def gradient(self, vals):
        return [p.evaluate(vals) for p in self.mpoly.gradient()]


class CoordinateObservable(Observable):

    def __init__(self, coords, i, j, k):
        self.idx = coords.index_of(i, j, k)
        self.n = len(coords)

    def evaluate(self, vals):
        return vals[self.idx]

    def gradient(self, vals):
        return [1 if e == self.idx else 0 for e in range(self.n)]


class SpectralObservable(Observable):
    """H^{(k)}_j: the x^j coefficient of (1/k) Tr A(x)^k.

    The gradient has the closed form  d H^{(k)}_j / d A_{pq;m} =
    [x^{j-m}] (A(x)^{k-1})_{qp}, which avoids symbolic expansion at points.
    """

    def __init__(self, coords, k, j):
        self.coords = coords
        self.k = k
        self.j = j

    def evaluate(self, vals):
        a = self.coords.to_polymat(vals)
        return trace_power(a, self.k).coeff(self.j)

    def gradient(self, vals):
        a = self.coords.to_polymat(vals)
        powk1 = a.power(self.k - 1)
        grad = []
        for (p, q, m) in self.coords.names:
            grad.append(powk1.entry(q, p).coeff(self.j - m) if self.j >= m else 0)
        return grad

    def mpoly(self):
        n = len(self.coords)
        gens = [MPoly.variable(n, e) for e in range(n)]
        return trace_power(self.coords.to_polymat(gens), self.k).coeff(self.j)


class FuncObservable(Observable):

    def __init__(self, fn):
        self.fn = fn

    def evaluate(self, vals):
        return self.fn(vals)


def as_observable(f):
    if isinstance(f, Observable):
        return f
    if isinstance(f, MPoly):
        return MPolyObservable(f)
    if callable(f):
        return FuncObservable(f)
    raise InputError("cannot interpret %r as an observable" % (f,))


# ---------------------------------------------------------------------------
# brackets

def bracket(f, g, table):
    """{F, G} = sum_{a,b} dF/dx_a T(a,b) dG/dx_b, fully symbolic."""
    if not isinstance(f, MPoly) or not isinstance(g, MPoly):
        raise InputError("symbolic bracket needs MPoly arguments")
    n = len(table.coords)
    if f.nvars != n or g.nvars != n:
        raise InputError("coordinate-set mismatch with the bracket table")
    df = f.gradient()
    dg = g.gradient()
    out = MPoly(n)
    for (a, b), form in table.entries.items():
        if not df[a] or not dg[b]:
            continue
        lin = MPoly.linear_form(n, form)
        out = out + df[a] * lin * dg[b]
    return out


def bracket_at_point(f, g, table, vec):
    """Pointwise {F, G}(A) through gradients; exact over the rationals."""
    f = as_observable(f)
    g = as_observable(g)
    df = f.gradient(vec)
    dg = g.gradient(vec)
    acc = 0
    for (a, b), form in table.entries.items():
        ca = df[a]
        if isinstance(ca, (int, float, complex)) and ca == 0:
            continue
        cb = dg[b]
        if isinstance(cb, (int, float, complex)) and cb == 0:
            continue
        t = 0
        for e, c in form.items():
            t = t + c * vec[e]
        acc = acc + ca * t * cb
    return acc


def bracket_observable(f, g, table):
    """{F, G} as a new observable (enables nested/second derivatives)."""
    f = as_observable(f)
    g = as_observable(g)
    return FuncObservable(lambda vals: bracket_at_point(f, g, table, vals))


def jacobiator(f, g, h, table):
    """{F,{G,H}} + {G,{H,F}} + {H,{F,G}}, symbolic and exact."""
    return (bracket(f, bracket(g, h, table), table)
            + bracket(g, bracket(h, f, table), table)
            + bracket(h, bracket(f, g, table), table))


def jacobiator_at_point(f, g, h, table, vec):
    return (bracket_at_point(f, bracket_observable(g, h, table), table, vec)
            + bracket_at_point(g, bracket_observable(h, f, table), table, vec)
            + bracket_at_point(h, bracket_observable(f, g, table), table, vec))


def jacobi_defect_generators(table, a, b, c):
    """Jacobiator of three coordinate functions as a linear form.

    For structure-constant tables the jacobiator of generators is again a
    linear form; this is the fast path behind the exact Jacobi sweeps.
    """
    rows = table.rows
    acc = {}
    for (u, v, w) in ((a, b, c), (b, c, a), (c, a, b)):
        inner = rows[v].get(w)
        if not inner:
            continue
        for e, ce in inner.items():
            outer = rows[u].get(e)
            if not outer:
                continue
            for fidx, cf in outer.items():
                acc[fidx] = acc.get(fidx, 0) + ce * cf
    return {e: c for e, c in acc.items() if not table.backend.is_zero(c)}


def jacobi_all_generators(table, stop_at_first=True):
    """Scan distinct generator triples; returns list of violation witnesses.

    Triples with a repeated argument vanish identically by antisymmetry,
    so only a < b < c is scanned.
    """
    n = len(table.coords)
    bad = []
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                defect = jacobi_defect_generators(table, a, b, c)
                if defect:
                    bad.append(((a, b, c), defect))
                    if stop_at_first:
                        return bad
    return bad


def hamiltonian_vf(table, h, vec):
    """Vector field of H: component a is {H, x_a} = sum_b dH/dx_b T(b, a)."""
    h = as_observable(h)
    dh = h.gradient(vec)
    n = len(table.coords)
    out = [0] * n
    for (b, a), form in table.entries.items():
        cb = dh[b]
        if isinstance(cb, (int, float, complex)) and cb == 0:
            continue
        t = 0
        for e, c in form.items():
            t = t + c * vec[e]
        out[a] = out[a] + cb * t
    return out


def compatibility_check(builder, r, d, phi1, phi2, c1, c2, backend=EXACT):
    """Entrywise test that the table of c1*phi1 + c2*phi2 is the linear
    combination of the two tables; exact for either tensor builder."""
    t1 = builder(r, d, phi1, backend)
    t2 = builder(r, d, phi2, backend)
    tc = builder(r, d, phi1.combine(phi2, c1, c2), backend)
    keys = set(t1.entries) | set(t2.entries) | set(tc.entries)
    for key in keys:
        f1 = t1.entry(*key)
        f2 = t2.entry(*key)
        fc = tc.entry(*key)
        coords = set(f1) | set(f2) | set(fc)
        for e in coords:
            want = c1 * f1.get(e, 0) + c2 * f2.get(e, 0)
            if not backend.eq(fc.get(e, 0), want):
                return False
    return True


def casimir_check(table, f, points, orbit_model, decompose):
    """Classify the Hamiltonian vector field of ``f`` at each point.

    ``decompose`` is flows.orbit_decompose, injected to avoid a module
    cycle.  Statuses: "zero" (identically zero vf), "orbit-tangent"
    (decomposes over the orbit generators with zero residual), "transverse".
    """
    f = as_observable(f)
    backend = table.backend
    report = []
    for point in points:
        vec = point.vector()
        vf = hamiltonian_vf(table, f, vec)
        if all(backend.is_zero(v) for v in vf):
            report.append("zero")
            continue
        tangent = point.coords().to_polymat(vf)
        _, residual, member = decompose(tangent, point, orbit_model)
        report.append("orbit-tangent" if member else "transverse")
    return report

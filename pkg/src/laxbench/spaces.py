"""Phase spaces of polynomial matrices and their spectral data.

Three degree profiles are supported:

* ``beauville``  -- every entry of degree <= d,
* ``ambient``    -- every entry of degree <= d+1 (the extended space the
  pencil bracket lives on),
* ``bv``         -- the asymmetric profile with first-row degree d+1,
  first-column degree d-1, corner degree d, and d elsewhere.

Coordinate functions are the entry coefficients A_{ij;k}; their enumeration
is fixed lexicographically in (i, j, k) so that structure-constant tables
and serialized reports are stable across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import InputError, InternalError
from .algebra.poly import Poly, poly_divexact
from .algebra.polymat import PolyMat, char_poly, trace_power
from .algebra.linalg import det_bareiss
from .algebra.scalars import EXACT, Backend

PROFILE_KINDS = ("beauville", "ambient", "bv")


@dataclass(frozen=True)
class DegreeProfile:
    kind: str
    r: int
    d: int

    def __post_init__(self):
        if self.kind not in PROFILE_KINDS:
            raise InputError("unknown profile kind %r" % (self.kind,))
        if self.r < 2 or self.d < 1:
            raise InputError("need r >= 2 and d >= 1")

    def bound(self, i, j):
        """Degree bound of entry (i, j), 1-indexed."""
        if not (1 <= i <= self.r and 1 <= j <= self.r):
            raise InputError("entry (%d,%d) outside %dx%d" % (i, j, self.r, self.r))
        if self.kind == "beauville":
            return self.d
        if self.kind == "ambient":
            return self.d + 1
        if i == 1 and j == 1:
            return self.d
        if i == 1:
            return self.d + 1
        if j == 1:
            return self.d - 1
        return self.d

    def max_bound(self):
        return self.d + 1 if self.kind in ("ambient", "bv") else self.d

    def to_json(self):
        return {"kind": self.kind, "r": self.r, "d": self.d}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["kind"], int(obj["r"]), int(obj["d"]))


class CoordIndex(NamedTuple):
    i: int
    j: int
    k: int


class Coords:
    """Fixed lexicographic enumeration of the coordinates A_{ij;k}."""

    def __init__(self, profile):
        self.profile = profile
        self.names = []
        for i in range(1, profile.r + 1):
            for j in range(1, profile.r + 1):
                for k in range(profile.bound(i, j) + 1):
                    self.names.append(CoordIndex(i, j, k))
        self.index = {c: n for n, c in enumerate(self.names)}

    def __len__(self):
        return len(self.names)

    def index_of(self, i, j, k):
        try:
            return self.index[CoordIndex(i, j, k)]
        except KeyError:
            raise InputError("no coordinate (%d,%d;%d) in profile" % (i, j, k))

    def to_vector(self, a):
        """Coordinate vector of a PolyMat (entries read within bounds)."""
        return [a.entry(c.i, c.j).coeff(c.k) for c in self.names]

    def to_polymat(self, vec):
        p = self.profile
        entries = [[Poly([0])] * p.r for _ in range(p.r)]
        pos = 0
        for i in range(1, p.r + 1):
            for j in range(1, p.r + 1):
                b = p.bound(i, j)
                entries[i - 1][j - 1] = Poly(vec[pos: pos + b + 1])
                pos += b + 1
        return PolyMat(entries)


def genus(r, d):
    """Genus of the spectral curves over V(r, d)."""
    g2 = (r - 1) * (r * d - 2)
    if g2 % 2:
        raise InternalError("genus formula produced a half-integer")
    return g2 // 2


def membership(a, profile, backend=EXACT):
    """True iff every entry degree of ``a`` respects the profile bound."""
    if a.r != profile.r:
        return False
    for i in range(1, profile.r + 1):
        for j in range(1, profile.r + 1):
            if a.entry(i, j).degree(backend) > profile.bound(i, j):
                return False
    return True


@dataclass
class SpectralData:
    s: list            # s_1(x)..s_r(x)
    genus: int
    h: dict            # (k, i) -> H^{(k)}_i, 0 <= i <= k*d

    def h_poly(self, k):
        top = max(i for (kk, i) in self.h if kk == k)
        return Poly([self.h[(k, i)] for i in range(top + 1)])


@dataclass
class PhasePoint:
    matrix: PolyMat
    profile: DegreeProfile
    backend: Backend = field(default_factory=lambda: EXACT)
    certificate: dict | None = None

    def __post_init__(self):
        if not membership(self.matrix, self.profile, self.backend):
            raise InputError("matrix violates its degree profile")

    def coords(self):
        return Coords(self.profile)

    def vector(self):
        return self.coords().to_vector(self.matrix)


def spectral_map(point):
    """Characteristic data of a phase point, with the degree theorem asserted.

    det(yI - A(x)) = y^r + s_1(x) y^{r-1} + ... + s_r(x) with s_i of degree
    at most d*i; violating that bound signals an arithmetic bug, not bad
    input, hence InternalError.
    """
    a, profile, backend = point.matrix, point.profile, point.backend
    d = profile.d if profile.kind != "ambient" else profile.d + 1
    s = char_poly(a)
    for i, si in enumerate(s, start=1):
        if si.degree(backend) > d * i:
            raise InternalError("char poly coefficient s_%d exceeds degree %d"
                                % (i, d * i))
    h = {}
    for k in range(1, profile.r + 1):
        hk = trace_power(a, k)
        if hk.degree(backend) > d * k:
            raise InternalError("trace power %d exceeds degree %d" % (k, d * k))
        for i in range(d * k + 1):
            h[(k, i)] = hk.coeff(i)
    return SpectralData(s=s, genus=genus(profile.r, d), h=h)


def spectral_discriminant(s, backend=EXACT):
    """Resultant of P and dP/dy in y, a polynomial in x.

    P = y^r + s_1 y^{r-1} + ... + s_r.  Nonvanishing is a necessary
    condition for the spectral curve to be irreducible (it rules out
    repeated factors); it never certifies irreducibility.
    """
    r = len(s)
    coeffs = [Poly([1])] + list(s)                     # descending in y
    dcoeffs = [Poly([0]) + c.scale(r - k) for k, c in enumerate(coeffs[:-1])]
    n, m = r, r - 1
    size = n + m
    syl = [[Poly([0])] * size for _ in range(size)]
    for row in range(m):
        for k, c in enumerate(coeffs):
            syl[row][row + k] = c
    for row in range(n):
        for k, c in enumerate(dcoeffs):
            syl[m + row][row + k] = c
    return det_bareiss(syl, lambda a, b: poly_divexact(a, b, backend))


def random_point(profile, seed, backend=EXACT, max_tries=64):
    """Deterministic sample with a genericity certificate.

    Coefficients come from a fixed rational box.  The certificate records
    necessary conditions only (s_r not identically zero, squarefree
    spectral polynomial); irreducibility is never claimed.
    """
    import random

    rng = random.Random(seed)
    coords = Coords(profile)
    for _ in range(max_tries):
        # sample exactly, certify exactly, then coerce to the backend, so
        # the same seed names the same underlying rational point everywhere
        vec = [EXACT.rand(rng) for _ in coords.names]
        a = coords.to_polymat(vec)
        s = char_poly(a)
        if s[-1].is_zero(EXACT):
            continue
        disc = spectral_discriminant(s, EXACT)
        if disc.is_zero(EXACT):
            continue
        if not backend.exact:
            a = a.map_entries(lambda e: Poly([backend.coerce(c) for c in e.coeffs]))
        point = PhasePoint(a, profile, backend)
        point.certificate = {
            "spectral_top_coefficient_nonzero": True,
            "squarefree_spectral_polynomial": True,
            "irreducibility_certified": False,
        }
        return point
    raise InternalError("could not sample a generic point in %d tries" % max_tries)


def hamiltonian_label(k, i):
    return "H(%d)_%d" % (k, i)


def newton_consistency(spec, r, d, backend=EXACT):
    """p_k = -k s_k - sum_{m<k} s_m p_{k-m} with p_k = k * H^{(k)}(x).

    Returns True when the Newton identities tie the H table to the
    characteristic coefficients exactly.
    """
    p = {k: spec.h_poly(k).scale(k) for k in range(1, r + 1)}
    for k in range(1, r + 1):
        rhs = spec.s[k - 1].scale(-k)
        for m in range(1, k):
            rhs = rhs - spec.s[m - 1] * p[k - m]
        if not p[k].eq(rhs, backend):
            return False
    return True

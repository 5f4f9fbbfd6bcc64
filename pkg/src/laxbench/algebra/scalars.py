"""Scalar backends: exact rationals and complex floats with tolerance.

Scalars are stored as plain Python payloads (``int``/``Fraction`` on the
exact backend, ``complex`` on the float backend) so that arithmetic stays
fast and idiomatic.  A ``Backend`` object carries the tag and, for floats,
the comparison tolerance; every equality or zero test goes through it.

All higher layers (polynomials, matrices, brackets) are written against
plain ``+ - * /`` and therefore work over either backend, and also over
richer coefficient rings (multivariate polynomials, dual numbers) that
implement the same operators.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import InputError

DEFAULT_EPS = 1e-10


class Backend:
    """Scalar field tag: ``exact`` rationals or ``float`` complex numbers.

    The float backend compares with |a-b| <= eps*max(1, |a|, |b|).
    """

    def __init__(self, kind, eps=DEFAULT_EPS):
        if kind not in ("exact", "float"):
            raise InputError("unknown scalar backend %r" % (kind,))
        self.kind = kind
        self.eps = float(eps)

    @property
    def exact(self):
        return self.kind == "exact"

    def coerce(self, v):
        """Normalize a raw value into this backend's payload type."""
        if self.exact:
            if isinstance(v, (int, Fraction)):
                return v
            if isinstance(v, str):
                return parse_rational(v)
            raise InputError("exact backend cannot hold %r" % (v,))
        if isinstance(v, complex):
            return v
        if isinstance(v, (int, float, Fraction)):
            return complex(v)
        if isinstance(v, str):
            return complex(parse_rational(v))
        raise InputError("float backend cannot hold %r" % (v,))

    def is_zero(self, v):
        if self.exact:
            return v == 0
        return abs(v) <= self.eps

    def eq(self, a, b):
        if self.exact:
            return a == b
        return abs(a - b) <= self.eps * max(1.0, abs(a), abs(b))

    def rand(self, rng, num=9, den=3):
        """Deterministic sample from the fixed rational box
        {p/q : |p| <= num, 1 <= q <= den}, coerced to this backend."""
        p = rng.randint(-num, num)
        q = rng.randint(1, den)
        return self.coerce(Fraction(p, q))

    def rand_nonzero(self, rng, num=9, den=3):
        while True:
            v = self.rand(rng, num, den)
            if not self.is_zero(v):
                return v

    def to_json(self, v):
        if self.exact:
            f = Fraction(v)
            return "%d/%d" % (f.numerator, f.denominator)
        c = complex(v)
        return [c.real, c.imag]

    def from_json(self, obj):
        if self.exact:
            return parse_rational(obj)
        if isinstance(obj, (list, tuple)) and len(obj) == 2:
            return complex(obj[0], obj[1])
        return complex(parse_rational(obj)) if isinstance(obj, str) else complex(obj)

    def __repr__(self):
        if self.exact:
            return "Backend('exact')"
        return "Backend('float', eps=%g)" % self.eps


EXACT = Backend("exact")
FLOAT = Backend("float")


def parse_rational(s):
    """Parse "p/q" or "p" into a Fraction (canonical reduced form)."""
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    s = s.strip()
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError("not a rational: %r" % (s,)) from exc


def value_of(x):
    """Underlying scalar of a possibly dual-number value."""
    return x.val if hasattr(x, "val") else x

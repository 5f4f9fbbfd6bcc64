"""Sparse multivariate polynomials over a fixed coordinate set.

Terms are stored as a map from exponent keys to coefficients; a key is a
sorted tuple of (variable index, exponent) pairs with no zero exponents,
so the constant term has key ().  Zero coefficients are never stored.

MPoly interoperates with plain ints/Fractions/complex on the left and
right of ``+``/``*`` so polynomial code can stay duck-typed.
"""

from __future__ import annotations

from ..errors import InputError
from .scalars import EXACT


def _key_mul(ka, kb):
    d = dict(ka)
    for v, e in kb:
        d[v] = d.get(v, 0) + e
    return tuple(sorted((v, e) for v, e in d.items() if e))


class MPoly:

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for key, coeff in (terms.items() if isinstance(terms, dict) else terms):
                self._bump(tuple(key), coeff)

    def _bump(self, key, coeff):
        cur = self.terms.get(key, 0)
        new = cur + coeff
        if isinstance(new, (int, float, complex)) and new == 0:
            self.terms.pop(key, None)
        elif hasattr(new, "numerator") and new == 0:
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    @classmethod
    def constant(cls, nvars, value):
        p = cls(nvars)
        if value != 0:
            p.terms[()] = value
        return p

    @classmethod
    def variable(cls, nvars, idx):
        if not 0 <= idx < nvars:
            raise InputError("variable index %d out of range" % idx)
        return cls(nvars, {((idx, 1),): 1})

    @classmethod
    def linear_form(cls, nvars, form, constant=0):
        """Build sum_i form[i]*x_i + constant from a {index: coeff} map."""
        p = cls.constant(nvars, constant)
        for idx, c in form.items():
            p._bump(((idx, 1),), c)
        return p

    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise InputError("coordinate-set mismatch")
            return other
        return MPoly.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = MPoly(self.nvars, dict(self.terms))
        for k, c in other.terms.items():
            out._bump(k, c)
        return out

    __radd__ = __add__

    def __neg__(self):
        out = MPoly(self.nvars)
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            if other == 0:
                return MPoly(self.nvars)
            out = MPoly(self.nvars)
            out.terms = {k: c * other for k, c in self.terms.items()}
            return out
        other = self._coerce(other)
        out = MPoly(self.nvars)
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                out._bump(_key_mul(ka, kb), ca * cb)
        return out

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n):
        if n < 0:
            raise InputError("negative power of a polynomial")
        out = MPoly.constant(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self, backend=EXACT):
        return all(backend.is_zero(c) for c in self.terms.values())

    def eq(self, other, backend=EXACT):
        return (self - self._coerce(other)).is_zero(backend)

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e for _, e in k) for k in self.terms)

    def partial(self, idx):
        """Symbolic partial derivative with respect to variable idx."""
        out = MPoly(self.nvars)
        for key, coeff in self.terms.items():
            d = dict(key)
            e = d.get(idx, 0)
            if e == 0:
                continue
            d[idx] = e - 1
            newkey = tuple(sorted((v, x) for v, x in d.items() if x))
            out._bump(newkey, coeff * e)
        return out

    def gradient(self):
        return [self.partial(i) for i in range(self.nvars)]

    def evaluate(self, vals):
        """Evaluate on a coordinate vector of any ring elements."""
        if len(vals) != self.nvars:
            raise InputError("expected %d values, got %d" % (self.nvars, len(vals)))
        acc = 0
        for key, coeff in self.terms.items():
            term = coeff
            for v, e in key:
                for _ in range(e):
                    term = term * vals[v]
            acc = acc + term
        return acc

    def __repr__(self):
        if not self.terms:
            return "MPoly(0)"
        bits = []
        for key in sorted(self.terms, key=lambda k: (sum(e for _, e in k), k)):
            mono = "*".join("x%d^%d" % (v, e) if e > 1 else "x%d" % v for v, e in key)
            c = self.terms[key]
            bits.append("%s%s" % (c, "*" + mono if mono else ""))
        return "MPoly(%s)" % " + ".join(bits)

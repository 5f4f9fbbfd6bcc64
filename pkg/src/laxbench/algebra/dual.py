"""Forward-mode dual numbers for differentiating black-box observables.

A ``DualScalar`` carries a value and a dense gradient over the active
coordinate set.  Arithmetic follows the product/quotient rules exactly on
the exact backend, so gradients of rational normal-form coordinates come
out as exact rationals.  Nesting duals inside duals yields second-order
derivatives, which the pointwise Jacobi checks rely on.
"""

from __future__ import annotations

from ..errors import InputError


class DualScalar:

    __slots__ = ("val", "grad")

    def __init__(self, val, grad):
        self.val = val
        self.grad = tuple(grad)

    @classmethod
    def constant(cls, n, value):
        return cls(value, (0,) * n)

    @classmethod
    def seed(cls, vals, idx):
        """vals[idx] promoted with unit gradient in slot idx."""
        n = len(vals)
        return cls(vals[idx], tuple(1 if k == idx else 0 for k in range(n)))

    @classmethod
    def seed_all(cls, vals):
        n = len(vals)
        return [cls(vals[i], tuple(1 if k == i else 0 for k in range(n)))
                for i in range(n)]

    def _lift(self, other):
        if isinstance(other, DualScalar):
            if len(other.grad) != len(self.grad):
                raise InputError("dual gradient length mismatch")
            return other
        return DualScalar(other, (0,) * len(self.grad))

    def __add__(self, other):
        o = self._lift(other)
        return DualScalar(self.val + o.val,
                          tuple(a + b for a, b in zip(self.grad, o.grad)))

    __radd__ = __add__

    def __neg__(self):
        return DualScalar(-self.val, tuple(-g for g in self.grad))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return DualScalar(self.val * o.val,
                          tuple(self.val * gb + ga * o.val
                                for ga, gb in zip(self.grad, o.grad)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        inv = _reciprocal(o.val)
        q = self.val * inv
        return DualScalar(q, tuple((ga - q * gb) * inv
                                   for ga, gb in zip(self.grad, o.grad)))

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise InputError("dual powers must be nonnegative integers")
        out = DualScalar(_one_like(self.val), (0,) * len(self.grad))
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, DualScalar) else other
        return self.val == o.val and self.grad == o.grad

    def __hash__(self):
        return hash((self.val, self.grad))

    def __repr__(self):
        return "DualScalar(%r, grad=%r)" % (self.val, list(self.grad))


def _reciprocal(v):
    from fractions import Fraction

    if isinstance(v, int):
        return Fraction(1, v)
    if isinstance(v, Fraction):
        return 1 / v
    if isinstance(v, DualScalar):
        return DualScalar(_one_like(v.val), (0,) * len(v.grad)) / v
    if hasattr(v, "terms"):
        # constant multivariate polynomials invert inside the ring; this is
        # what symbolic chart points need (their pivots are exactly 1)
        if set(v.terms) <= {()}:
            c = v.terms.get((), 0)
            inv = Fraction(1, c) if isinstance(c, int) else 1 / c
            return type(v).constant(v.nvars, inv)
        raise InputError("cannot invert a non-constant polynomial")
    return 1.0 / v if not isinstance(v, complex) else 1 / v


def _one_like(v):
    if isinstance(v, DualScalar):
        return DualScalar(_one_like(v.val), (0,) * len(v.grad))
    return 1


def gradient_of(fn, vals):
    """Gradient of fn at vals by one forward sweep; nests transparently."""
    seeds = DualScalar.seed_all(vals)
    out = fn(seeds)
    if isinstance(out, DualScalar):
        return list(out.grad)
    return [0] * len(vals)

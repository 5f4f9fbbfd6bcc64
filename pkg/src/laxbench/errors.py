"""Error taxonomy shared by the whole package.

Three failure classes are distinguished so that callers (and the CLI) can
react differently:

* ``InputError``   -- the caller passed arguments outside an operation's
  contract (wrong sizes, indices out of range, malformed polynomials).
* ``DomainError``  -- the arguments are well-formed but the point lies
  outside the mathematical domain of the operation (chart breakdown,
  normalization undefined, non-regular leading coefficient).
* ``InternalError`` -- an identity that is a theorem failed; this always
  signals a bug in the package, never bad input.
"""


class InputError(ValueError):
    """Arguments violate an operation's precondition."""


class DomainError(ValueError):
    """The operation is undefined at the given point of phase space."""


class InternalError(RuntimeError):
    """A guaranteed identity failed; indicates an arithmetic bug."""

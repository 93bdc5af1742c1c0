"""Error taxonomy.

Every failure mode carries a stable machine-readable ``code`` and an exit
class: ``exit_code`` 2 for malformed or ill-typed input, 1 for checks that
fail on well-formed input. The CLI maps exceptions to JSON diagnostics
using exactly these attributes.
"""

from __future__ import annotations


class PhindexError(Exception):
    code = "error"
    exit_code = 1

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details


class InputError(PhindexError):
    """Input that is malformed before any mathematics happens."""

    code = "bad-input"
    exit_code = 2


# ---------------------------------------------------------------- expressions

class ExprSyntaxError(InputError):
    code = "expr-syntax"

    def __init__(self, message: str, position: int, **details):
        super().__init__(f"{message} (at position {position})",
                         position=position, **details)
        self.position = position


class ExponentError(ExprSyntaxError):
    """Exponents must be nonnegative integer literals."""

    code = "expr-exponent"


class UnknownName(InputError):
    code = "unknown-name"


class FieldFormatError(InputError):
    code = "field-format"


class BadHalfInteger(InputError):
    code = "bad-half-integer"


class ParityError(InputError):
    """A quantity that must be an exact half-integer (or whose doubled
    value must have a fixed parity) is not."""

    code = "parity"


# ------------------------------------------------------------------- circuits

class SingularOnCircuit(PhindexError):
    code = "singular-on-circuit"


class NonConvergent(PhindexError):
    code = "non-convergent"


class DegenerateTangency(PhindexError):
    """Leaf contact of order higher than two; perturb the radius."""

    code = "degenerate-tangency"


class CircuitIsLeaf(PhindexError):
    code = "circuit-is-leaf"


class InsufficientConcavities(PhindexError):
    code = "insufficient-concavities"


class MonotonicityViolation(PhindexError):
    code = "monotonicity-violation"


class PreconditionLoop(PhindexError):
    code = "precondition-loop"


class MethodDisagreement(PhindexError):
    code = "method-disagreement"


# ------------------------------------------------------------------- surfaces

class MeshFormatError(InputError):
    code = "mesh-format"


class Degenerate(PhindexError):
    code = "degenerate-face"


class NotClosed(PhindexError):
    code = "not-closed"


class NotManifold(PhindexError):
    code = "not-manifold"


class RangeError(InputError):
    code = "range"


# ------------------------------------------------------------ cover and pipes

class OrientableInput(InputError):
    code = "orientable-input"


class EvenInput(InputError):
    """The z -> z^2 model only covers odd doubled indices."""

    code = "even-input"


class ChiMismatch(PhindexError):
    code = "chi-mismatch"


class LengthMismatch(InputError):
    code = "length-mismatch"


class CapBoundViolation(InputError):
    code = "cap-bound"

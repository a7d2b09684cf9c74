"""
Exception hierarchy for shifted_orders.

Every failure raised by the library derives from ShiftedOrdersError so callers
(and the CLI) can catch one type. Capped computations are reported through
sentinels, never through exceptions.
"""
from typing import Optional


class ShiftedOrdersError(Exception):
    """Base exception for all toolkit errors"""
    pass


class FieldSpecError(ShiftedOrdersError):
    """Invalid field specification (non-prime modulus, unknown preset, ...)"""
    pass


class DimensionMismatchError(ShiftedOrdersError):
    """Matrix shapes do not fit the requested operation"""
    pass


class InconsistentRelationError(ShiftedOrdersError):
    """A relation combines paths that are not composable or not parallel"""
    pass


class InadmissibleRelationsError(ShiftedOrdersError):
    """Nonzero paths survive at the nilpotency cap"""
    pass


class AlgebraStructureError(ShiftedOrdersError):
    """Structure constants violate associativity, unit or idempotent axioms"""
    pass


class NonSplitAlgebraError(ShiftedOrdersError):
    """A simple quotient component is a proper division algebra over the field"""
    pass


class IdempotentLiftingError(ShiftedOrdersError):
    """Idempotent splitting or lifting failed for the given seed"""

    def __init__(self, message: str, seed: Optional[int] = None):
        super().__init__(message)
        self.seed = seed


class AlgebraMismatchError(ShiftedOrdersError):
    """Modules or morphisms over different algebras were combined"""
    pass


class DecompositionError(ShiftedOrdersError):
    """Decomposition not found within retry budget"""
    pass


class IsomorphismSearchError(ShiftedOrdersError):
    """Isomorphism test could not decide within its search budget"""
    pass


class ShiftPreconditionError(ShiftedOrdersError):
    """The requested shift level exceeds the dominant dimension"""
    pass


class NotQF3Error(ShiftPreconditionError):
    """A positive shift was requested for an algebra of dominant dimension 0"""
    pass


class TiltingVerificationError(ShiftedOrdersError):
    """A tilting condition failed; `condition` names which one"""

    def __init__(self, message: str, condition: str):
        super().__init__(f"tilting verification failed ({condition}): {message}")
        self.condition = condition


class NotGeneratorCogeneratorError(ShiftedOrdersError):
    """M is not a generator-cogenerator"""
    pass


class TheoremNotApplicableError(ShiftedOrdersError):
    """A theorem-level report was requested outside its hypotheses"""
    pass


class AlgebraFileError(ShiftedOrdersError):
    """Malformed algebra description file"""

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field:
            location.append(f"field '{field}'")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")
        self.line = line
        self.field = field


class ReportWriteError(ShiftedOrdersError):
    """The JSON report path is not writable"""
    pass


class ShiftToolkitError(ShiftedOrdersError):
    """Facade-level misuse, such as a malformed module spec"""
    pass

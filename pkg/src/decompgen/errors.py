"""Exception hierarchy for the engine.

Every error carries an exit-code class so the command line tool can map
failures uniformly: 2 for validation problems in the input, 3 for requests
that fall outside the supported scope, and plain EngineError (internal
consistency failures) aborts with a traceback.
"""

VALIDATION = 2
UNSUPPORTED = 3


class EngineError(Exception):
    exit_code = 1


class ValidationError(EngineError):
    exit_code = VALIDATION


class UnsupportedError(EngineError):
    exit_code = UNSUPPORTED


# ring / field layer

class UnsupportedRing(UnsupportedError):
    pass


class UnsupportedResidueField(UnsupportedError):
    pass


class NotPrime(ValidationError):
    pass


class FactorBudgetExceeded(UnsupportedError):
    pass


class NotReducible(ValidationError):
    pass


# linear algebra

class DimensionMismatch(ValidationError):
    pass


class Inconsistent(EngineError):
    pass


class NotSquare(ValidationError):
    pass


# algebra layer

class NotAssociative(ValidationError):
    pass


class NoUnit(ValidationError):
    pass


class BadTraceForm(ValidationError):
    pass


class UnitInIdeal(ValidationError):
    pass


class UnsupportedRestriction(UnsupportedError):
    pass


class NotAGroup(ValidationError):
    pass


# module / representation layer

class ChopBudgetExceeded(EngineError):
    pass


class RadicalNotNilpotent(EngineError):
    """Internal consistency failure: the computed radical must be nilpotent."""


class AttractorEscapesBase(EngineError):
    """A fingerprint coefficient of a generic simple fell outside the base ring."""


class NotSplit(ValidationError):
    pass


class NoIntegerSolution(EngineError):
    """The fingerprint multiplicity system had no unique nonnegative integer solution."""


class NotSymmetric(ValidationError):
    pass


class NotSemisimpleGeneric(ValidationError):
    pass


class UnsupportedFactorization(UnsupportedError):
    pass

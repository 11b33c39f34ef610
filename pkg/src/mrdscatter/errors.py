"""Exception hierarchy shared by every module."""


class MRDScatterError(Exception):
    """Base class for all library errors."""


# field construction / arithmetic
class NonPrimeP(MRDScatterError, ValueError):
    pass


class BadModulus(MRDScatterError, ValueError):
    pass


class ReducibleModulus(BadModulus):
    pass


class DegreeMismatch(BadModulus):
    pass


class DivisionByZero(MRDScatterError, ZeroDivisionError):
    pass


class TowerMismatch(MRDScatterError, ValueError):
    pass


class NotAnElement(MRDScatterError, ValueError):
    pass


# linear algebra
class AmbientMismatch(MRDScatterError, ValueError):
    pass


class NonSquare(MRDScatterError, ValueError):
    pass


# systems
class DependentBasis(MRDScatterError, ValueError):
    pass


class BudgetExceeded(MRDScatterError, RuntimeError):
    pass


class NotScatteredInput(MRDScatterError, ValueError):
    pass


class VerificationFailure(MRDScatterError, AssertionError):
    """A computed result contradicts a proven bound or identity."""


# codes
class UnsupportedShape(MRDScatterError, ValueError):
    pass


class DegenerateCode(MRDScatterError, ValueError):
    pass


class DegenerateSystem(MRDScatterError, ValueError):
    pass


class BadPuncturingMatrix(MRDScatterError, ValueError):
    pass


class RankCollapse(MRDScatterError, ValueError):
    pass


class NotMRDInput(MRDScatterError, ValueError):
    pass


# constructions
class SpecInvariantViolation(MRDScatterError, ValueError):
    pass


class WrongField(MRDScatterError, ValueError):
    pass


class ZeroLambda(MRDScatterError, ValueError):
    pass


class EvenCharacteristic(MRDScatterError, ValueError):
    pass


class DependentV(MRDScatterError, ValueError):
    pass


# duality certificate
class BadBasis(MRDScatterError, ValueError):
    pass


class NormViolation(MRDScatterError, ValueError):
    pass


class WitnessNotFound(MRDScatterError, RuntimeError):
    pass


class CertificateInvalid(MRDScatterError, AssertionError):
    pass


# file formats
class DescriptorError(MRDScatterError, ValueError):
    pass

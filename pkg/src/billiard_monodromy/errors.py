"""Exception hierarchy shared by every module.

Domain rejections subclass ValueError so that callers can catch the whole
family at once; cap overruns subclass RuntimeError because the computation
was cut short rather than refused.
"""


class DomainError(ValueError):
    """Input refused because it violates a documented precondition."""


# ---- polygon validation ----

class PolygonError(DomainError):
    """A tuple failed geometric or algebraic validation."""


class SumMismatch(PolygonError):
    pass


class EntryOutOfRange(PolygonError):
    pass


class GcdNotOne(PolygonError):
    pass


class AllZero(PolygonError):
    pass


class KTooSmall(PolygonError):
    pass


class CNotUnit(DomainError):
    pass


class PreconditionFailed(DomainError):
    pass


# ---- exact linear algebra ----

class JOutOfRange(DomainError):
    pass


class PNotPrime(DomainError):
    pass


# ---- polynomials over F_p ----

class ModulusNotPrime(DomainError):
    pass


class BothZero(DomainError):
    pass


class ZeroPolynomial(DomainError):
    pass


class DegreeTooLarge(DomainError):
    pass


class PDividesK(DomainError):
    pass


class NotEnoughAlphas(DomainError):
    pass


# ---- polygon calculus / classification ----

class ModuliNotCoprime(DomainError):
    pass


class LengthMismatch(DomainError):
    pass


class BadFactorization(DomainError):
    pass


class NotMultiple(DomainError):
    pass


class DNotAchievable(DomainError):
    pass


class NTooSmall(DomainError):
    pass


class InternalVerificationFailed(AssertionError):
    """A constructed witness failed its own re-verification: a library bug,
    never a property of the input."""


class CapExceeded(RuntimeError):
    """An enumeration grew past its configured cap.

    ``partial`` carries the count reached before aborting, when meaningful.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial

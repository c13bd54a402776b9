"""Exception family shared by all lattice backends and tools."""


class LatFactError(Exception):
    """Base class for every error raised by this package."""


class ForeignElement(LatFactError):
    """An element handle was passed to a lattice it does not belong to."""


class NotPrime(LatFactError):
    """Localization was requested at an element that is not prime."""


class NotMaximal(LatFactError):
    """A valuation was requested at an element that is not maximal."""


class ZeroElement(LatFactError):
    """The operation is undefined at the bottom element."""


class BottomElement(LatFactError):
    """The operation is undefined at the adjoined bottom function."""


class CapabilityMissing(LatFactError):
    """The backend cannot enumerate what the operation needs."""


class ParseError(LatFactError):
    """A document or element literal is structurally malformed."""


class AxiomViolation(LatFactError):
    """A table or closure map fails a defining axiom; carries a witness."""

    def __init__(self, message, axiom=None, witness=None):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


class InvariantViolation(LatFactError):
    """An internal cross-check failed; signals a broken backend."""


class InvalidModulus(LatFactError):
    """Divisor lattices need a modulus of at least 2."""


class InvalidGenerators(LatFactError):
    """Numerical monoid generators must be positive with gcd 1."""


class NotRadical(LatFactError):
    """The sublattice constructor needs a squarefree exponent vector."""


class StepFailed(LatFactError):
    """One factorization step did not reconstruct its input."""

    def __init__(self, step, message, witness=None):
        super().__init__(message)
        self.step = step
        self.witness = witness


class Stalled(LatFactError):
    """The factorization iteration repeated a remainder or ran out of
    steps without reaching the top element; inconclusive, not a refutation."""

    def __init__(self, message, inconclusive=True):
        super().__init__(message)
        self.inconclusive = inconclusive


class HypothesisViolated(LatFactError):
    """The backend does not satisfy the preconditions of the requested check."""


class SpaceMismatch(LatFactError):
    """Functions over different spaces cannot be combined."""


class EmptyFamily(LatFactError):
    """Joins and meets need at least one operand."""


class UnsupportedTopology(LatFactError):
    """Only discrete and finite spectra are comparable."""


class TooLarge(LatFactError):
    """Exhaustive subset enumeration exceeds the configured budget."""


class EmptyRegularCarrier(LatFactError):
    """The regular sublattice would collapse to a single element."""

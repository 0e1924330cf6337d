"""Exception types raised by the library."""


class SumProdError(Exception):
    """Base class for all library errors."""


class CompositeModulus(SumProdError):
    """Requested modulus is not a prime."""


class ElementOutOfRange(SumProdError):
    """Set element outside [0, p)."""


class FieldMismatch(SumProdError):
    """Operands belong to different prime fields."""


class ZeroDilate(SumProdError):
    """Dilation coefficient is 0 mod p."""


class ZeroInSet(SumProdError):
    """Operation requires 0 not to be a member."""


class SetTooSmall(SumProdError):
    """Operation requires more elements than the set has."""


class EmptyPivot(SumProdError):
    """Pivot set of an inequality check is empty."""


class SearchBoundExceeded(SumProdError):
    """Exhaustive subset search requested beyond its size cap."""


class EmptyIntersection(SumProdError):
    """Dilate intersection is empty where a nonempty one is required."""


class NotSubset(SumProdError):
    """Argument is not a subset of the expected base set."""


class WrongCase(SumProdError):
    """Quadruple was produced by the other case of the selection lemma."""


class FullRatioSet(SumProdError):
    """Ratio-of-differences set covers the whole field."""


class NotFullRatioSet(SumProdError):
    """Ratio-of-differences set does not cover the whole field."""


class SetTooLarge(SumProdError):
    """Set violates the |A|^2 < p size hypothesis."""


class HypothesisViolated(SumProdError):
    """Input set violates the theorem hypotheses."""


class EmptyInput(SumProdError):
    """A nonempty collection was required."""


class InvalidSpec(SumProdError):
    """Set-family specification is malformed or unsatisfiable."""

"""Exception types shared across the package.

Every validation error raised by the library is a subclass of
QumodError, so callers (the CLI in particular) can distinguish bad
input from genuine I/O trouble.
"""


class QumodError(Exception):
    """Base class for all validation errors raised by this package."""


class BackendMismatch(QumodError):
    """An exact value reached an operation that only works on floats."""


class InvalidAlgebra(QumodError):
    """Operation tables violate the structure laws they claim."""


class SizeBound(QumodError):
    """Requested enumeration exceeds a configured size limit."""


class IndexMismatch(QumodError):
    """Vector or kernel index sets do not line up."""


class IndexOut(QumodError):
    """Index outside the declared range."""


class NotAHomomorphism(QumodError):
    """A callable failed the join/action spot checks on the basis."""


class SubsetViolation(QumodError):
    """Expected a chain of index-set inclusions that does not hold."""


class InvalidRelation(QumodError):
    """A binary relation fails the consequence-relation conditions."""


class InvalidPartition(QumodError):
    """Fuzzy partition violates covering, density, or size conditions."""


class DivisibilityViolation(QumodError):
    """Block grid does not divide the image or code dimensions."""


class BoundsViolation(QumodError):
    """Block scheme violates the 1 < d < compressed-dimension bounds."""


class DimMismatch(QumodError):
    """Images or blocks with incompatible dimensions."""


class SchemeMismatch(QumodError):
    """Image dimensions disagree with the supplied block scheme."""


class UnsupportedMaxval(QumodError):
    """PNM file with a maxval other than 255."""


class MalformedHeader(QumodError):
    """PNM or container header that cannot be parsed."""


class TruncatedData(QumodError):
    """File ends before the declared payload is complete."""


class BadMagic(QumodError):
    """Container does not start with the expected magic bytes."""


class VersionUnsupported(QumodError):
    """Container version byte not understood by this reader."""


class NumeratorOverflow(QumodError):
    """Container payload carries a numerator above its denominator."""

"""Exception types shared across the package."""


class ZeroWeightError(Exception):
    """Base class for all package-specific errors."""


class UnsupportedLabel(ZeroWeightError):
    """Group label is not one of the supported simple types of rank <= 6."""


class NotElliptic(ZeroWeightError):
    """Operation requires an elliptic Weyl element (zero fixed space)."""


class NotEllipticRegular(ZeroWeightError):
    """Operation requires an elliptic regular Weyl element."""


class MissingTorsionPoint(ZeroWeightError):
    """No canonical torsion point exists for this class; supply one explicitly."""


class NonRationalResult(ZeroWeightError):
    """A cyclotomic value expected to be rational was not; indicates a bug upstream."""


class PointednessFailure(ZeroWeightError):
    """The restricted positive roots do not lie in a pointed cone."""


class InequalityStrict(ZeroWeightError):
    """|R_t+| exceeds the coroot-divisibility count; the (t, coset) pair is inconsistent."""


class UnsupportedClass(ZeroWeightError):
    """One or more conjugacy classes need a user-supplied torsion point."""

    def __init__(self, classes):
        self.classes = list(classes)
        super().__init__(f"classes without a canonical torsion point: {self.classes}")


class NonIntegralMultiplicity(ZeroWeightError):
    """A character inner product came out non-integral; engine or table is wrong."""


class DimensionCapExceeded(ZeroWeightError):
    """Representation dimension exceeds the configured oracle cap."""

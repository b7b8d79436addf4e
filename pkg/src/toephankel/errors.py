"""Exception types raised by the library.

Every failure mode that callers are expected to handle has its own class;
all of them derive from ToepHankelError so a bare `except ToepHankelError`
catches anything produced deliberately by this package.
"""


class ToepHankelError(Exception):
    pass


class DenominatorNearZero(ToepHankelError):
    """Symbol evaluation hit (or nearly hit) a zero of the denominator."""


class NotInvertibleOnCircle(ToepHankelError):
    """Inversion requested for a symbol with a zero in the circle annulus."""


class IllConditionedRoots(ToepHankelError):
    """A zero or pole sits inside the exclusion annulus around the circle;
    winding numbers cannot be certified."""


class GridTooSmall(ToepHankelError):
    """FFT/tail requirements exceed the hard grid cap."""


class BetaInsideDisk(ToepHankelError):
    """Shift parameter must satisfy |beta| > 1."""


class PoleHit(ToepHankelError):
    """The shift map was evaluated at its pole."""


class NotFredholm(ToepHankelError):
    """Factorization requested for a symbol with zeros/poles on the circle."""


class WrongSide(ToepHankelError):
    """One-sided inverse requested on the side the index does not allow."""


class NotInvertible(ToepHankelError):
    """A generating function vanishes on the circle."""


class NotMatching(ToepHankelError):
    """The matching condition fails beyond tolerance."""


class SignatureIndeterminate(ToepHankelError):
    """The factorization signature did not snap to +1 or -1."""


class CrossCheckMismatch(ToepHankelError):
    """Two independent computation paths disagree."""


class BadPlusFactor(ToepHankelError):
    """A plus factor has a zero or pole inside the closed unit disk."""


class NotApplicable(ToepHankelError):
    """The requested decomposition needs a positive index."""


class NotInKernel(ToepHankelError):
    """Input vector fails the kernel-membership residual gate."""


class WrongRegime(ToepHankelError):
    """Operation called outside its index regime."""


class NotFredholmPair(ToepHankelError):
    """One of the subordinated functions does not factorize."""


class NoSpectralGap(ToepHankelError):
    """Singular values show no clear zero/nonzero separation."""


class WindowTooTight(ToepHankelError):
    """Residual check would be dominated by truncation effects."""


class AtJumpPoint(ToepHankelError):
    """Pointwise evaluation requested exactly at a jump discontinuity."""


class InputError(ToepHankelError):
    """Malformed problem specification (CLI front end)."""

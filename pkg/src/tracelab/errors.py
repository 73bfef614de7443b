"""Exception hierarchy shared by all tracelab modules.

Every failure mode that callers are expected to handle has its own class;
the CLI maps these onto stable exit codes (see tracelab.cli).
"""


class TracelabError(Exception):
    """Base class for all tracelab errors."""


class NotPrime(TracelabError):
    """A field characteristic was not a prime number."""


class CapExceeded(TracelabError):
    """A field size or enumeration estimate exceeded the configured cap."""


class ZeroPolynomial(TracelabError):
    """An operation that requires a nonzero polynomial received zero."""


class ZeroFunction(TracelabError):
    """An operation that requires a nonzero function received zero."""


class EvenCharacteristic(TracelabError):
    """The operation is only defined in odd characteristic."""


class NotTwoTorsion(TracelabError):
    """The supplied point is not a nontrivial rational two-torsion point."""


class UnsupportedDivisor(TracelabError):
    """Riemann-Roch support for this curve model excludes the divisor."""


class UnsupportedCurve(TracelabError):
    """The curve model is outside the supported family for this operation."""


class InconsistentCounts(TracelabError):
    """Point counts are not consistent with any curve of the stated genus."""


class NonReducedSpectralCurve(TracelabError):
    """The trace section equals +-2 identically, so the spectral curve is non-reduced."""


class SingularSpectralCurve(TracelabError):
    """The spectral curve is singular (the discriminant has repeated points)."""


class DescriptorError(TracelabError):
    """A curve descriptor or config string failed to parse."""

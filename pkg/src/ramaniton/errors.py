"""Exception types raised by the simulator."""


class RamanitonError(Exception):
    """Base class for all simulator errors."""


class InvalidParameters(RamanitonError, ValueError):
    """Model or physical parameters violate their domain."""


class DegenerateModes(RamanitonError):
    """Two mode frequencies coincide; the Bogoliubov basis is not unique."""


class NonCanonical(RamanitonError):
    """A transformation failed the para-unitary normalization check."""


class UndefinedCorrelation(RamanitonError):
    """g2 requested where an occupation is too small for the ratio to exist."""


class InvalidOccupations(RamanitonError, ValueError):
    """Occupations incompatible with the vacuum-seeded conservation law."""


class Singularity(RamanitonError):
    """Perturbative coupling evaluated at the phonon resonance."""


class TruncationInadequate(RamanitonError):
    """Fock-space cutoff too small for the requested regime.

    ``report`` holds the diagnostics gathered before the check failed.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NoResonance(RamanitonError):
    """No phonon-occupation node found in the scanned range."""


class ConsistencyError(RamanitonError):
    """An exact identity of the vacuum-seeded dynamics failed numerically."""

"""Exception hierarchy; the CLI maps these onto exit codes."""


class RelBlockError(Exception):
    """Base class."""


class PosetError(RelBlockError, ValueError):
    """Malformed poset input or unknown element."""


class SizeError(RelBlockError, ValueError):
    """Parameter outside the supported size range."""


class CapabilityError(RelBlockError, TypeError):
    """Operation needs structure the poset (or weight map) lacks, e.g. a grading."""


class HostMismatchError(RelBlockError, ValueError):
    """Antichains from different posets were combined."""


class DomainError(RelBlockError, ValueError):
    """A value is not a member of the structure it was looked up in."""


class ResourceGuardError(RelBlockError):
    """Exponential routine refused an input above its size guard."""


class HypothesisError(RelBlockError, ValueError):
    """The weight map fails a structural hypothesis an operation relies on."""

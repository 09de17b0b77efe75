"""Exception hierarchy shared by all k3lm modules."""


class K3LMError(Exception):
    """Base class for all errors raised by k3lm."""


class LatticeError(K3LMError):
    """The lattice data itself is invalid (asymmetric Gram, odd diagonal,
    wrong signature, non-ample polarization)."""


class DomainError(K3LMError):
    """An operation was called outside its domain (bad class, violated
    precondition, inadmissible parameter)."""


class ConsistencyError(K3LMError):
    """An internal invariant failed.  This signals a bug or an input that
    falsifies an assumption the algorithms rely on; we abort loudly rather
    than return a possibly wrong certificate."""

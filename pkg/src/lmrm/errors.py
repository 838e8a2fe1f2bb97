class LMRMError(ValueError):
    """Base class for precondition failures raised by this package."""


class ConstructionError(LMRMError):
    pass


class NotASubgroupError(ConstructionError):
    pass


class NotNormalizedError(ConstructionError):
    """Raised when conjugation by K does not map H onto itself."""


class NontrivialIntersectionError(ConstructionError):
    pass


class GroupTooLargeError(ConstructionError):
    def __init__(self, cap, partial_size):
        super().__init__(f"generated group exceeds cap {cap} (reached {partial_size} elements)")
        self.cap = cap
        self.partial_size = partial_size


class UncorrectableError(LMRMError):
    """The received word is farther from the code than the decoder's radius."""


class InfeasibleError(LMRMError):
    """An exact computation would exceed its feasibility cap."""

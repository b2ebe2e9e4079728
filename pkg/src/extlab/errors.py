"""Exception types shared across the package."""


class ExtlabError(Exception):
    """Base class for every error raised by extlab."""


class InvalidGroup(ExtlabError, ValueError):
    pass


class CapExceeded(ExtlabError, RuntimeError):
    def __init__(self, what, size, cap):
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds the configured cap of {cap}")


class HypothesisNotMet(ExtlabError, ValueError):
    pass


class NotACocycle(ExtlabError, ValueError):
    def __init__(self, msg, witness=None):
        self.witness = witness
        super().__init__(msg)


class NotAHomomorphism(ExtlabError, ValueError):
    def __init__(self, msg, witness=None):
        self.witness = witness
        super().__init__(msg)


class BoundExceeded(ExtlabError, RuntimeError):
    pass

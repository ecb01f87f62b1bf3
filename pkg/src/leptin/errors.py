"""Exception hierarchy shared by all modules."""


class LeptinError(Exception):
    """Base class for all library errors."""


class InvalidElement(LeptinError):
    pass


class EmptySet(LeptinError):
    pass


class NotSymmetric(LeptinError):
    pass


class MissingWitness(LeptinError):
    pass


class SingularBasis(LeptinError):
    pass


class NotCovering(LeptinError):
    pass


class EmptyRegion(LeptinError):
    pass


class NoWindowFound(LeptinError):
    def __init__(self, message, best_bound=None):
        super().__init__(message)
        self.best_bound = best_bound


class InvalidPeriod(LeptinError):
    pass


class EmptyFamily(LeptinError):
    pass


class NoCertificate(LeptinError):
    def __init__(self, message, best_eps=None):
        super().__init__(message)
        self.best_eps = best_eps


class VerificationFailure(LeptinError):
    """A property suite found a counterexample."""

    def __init__(self, suite, case):
        super().__init__(f"suite {suite!r} failed on case {case!r}")
        self.suite = suite
        self.case = case

"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class StableWordsError(Exception):
    exit_code = 1


class InputError(StableWordsError, ValueError):
    exit_code = 2


class ParseError(InputError):
    pass


class DomainError(InputError):
    pass


class UnsupportedGroupError(InputError):
    pass


class ResourceError(StableWordsError):
    """A configured size guard was exceeded; ``bound`` names the limit."""

    exit_code = 3

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class InvariantViolation(StableWordsError, AssertionError):
    exit_code = 4

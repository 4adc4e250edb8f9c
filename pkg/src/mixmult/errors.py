"""Exception hierarchy; the CLI maps these to exit codes 1/2/3."""


class InputError(ValueError):
    """Malformed or inconsistent input."""


class WindowTooSmall(InputError):
    """A window cannot support the requested differences or fit."""


class Refused(RuntimeError):
    """A computation declined to answer (unstable fit, undefined value)."""


class UnstableFit(Refused):
    pass


class Inconsistency(RuntimeError):
    """Two exact routes that must agree did not."""

"""Exception hierarchy shared by all modules."""


class CoxredError(Exception):
    """Base class for pipeline errors (CLI exit code 3)."""


class InputError(CoxredError):
    """Malformed user input (CLI exit code 2)."""


class ParseError(InputError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
        self.position = position


class LabelError(InputError):
    pass


class NotInField(CoxredError):
    pass


class NotIntegral(CoxredError):
    pass


class NotPID(CoxredError):
    pass


class UnsupportedField(CoxredError):
    pass


class Disconnected(CoxredError):
    pass


class NonIntegralEntry(CoxredError):
    pass


class NotFreeLattice(CoxredError):
    pass


class UnclassifiableSubdiagram(CoxredError):
    pass


class CapExceeded(CoxredError):
    pass


class DecompositionFailure(CoxredError):
    pass


class NotCoxeter(CoxredError):
    def __init__(self, message, entry=None):
        super().__init__(message)
        self.entry = entry


class ZeroEulerCharacteristic(CoxredError):
    pass

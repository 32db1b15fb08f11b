"""Exception types raised across the package."""


class FractalError(Exception):
    """Base class for all errors raised by tensorfractal."""


class BudgetExceeded(FractalError):
    pass


class OrderMismatch(FractalError):
    pass


class NotBinary(FractalError):
    pass


class IndexOutOfRange(FractalError, IndexError):
    pass


class RankChainBroken(FractalError):
    pass


class InvalidOrder(FractalError, ValueError):
    pass


class UnknownName(FractalError, KeyError):
    def __str__(self):
        # KeyError would otherwise repr() the message
        return str(self.args[0]) if self.args else ""


class DegenerateSpec(FractalError, ValueError):
    pass


class ShapeNotPower(FractalError, ValueError):
    pass


class NonAlignedIfs(FractalError, ValueError):
    pass

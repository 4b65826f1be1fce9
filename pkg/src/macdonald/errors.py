"""Exception hierarchy shared by every module of the package."""


class MacdonaldError(Exception):
    pass


class DegenerateBeta(MacdonaldError):
    """Raised for beta in {0, 2}, where the group collapses to the infinite cyclic group."""


class UnsupportedBeta(MacdonaldError):
    """Raised for beta == 1 (the integral Heisenberg group)."""


class ParamsMismatch(MacdonaldError):
    pass


class FactorizationLimit(MacdonaldError):
    pass


class CapExceeded(MacdonaldError):
    def __init__(self, required, cap):
        super().__init__(f"needs {required} elements, cap is {cap}")
        self.required = required
        self.cap = cap


class NotTorsion(MacdonaldError):
    pass


class PrimeNotDividing(MacdonaldError):
    pass


class InvalidAutomorphism(MacdonaldError):
    pass


class BetaNotEven(MacdonaldError):
    pass


class GcdCondition(MacdonaldError):
    pass


class NotAUnit(MacdonaldError):
    pass


class ElementSyntaxError(MacdonaldError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position

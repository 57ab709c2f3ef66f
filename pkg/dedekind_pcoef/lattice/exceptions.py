from dedekind_pcoef.exceptions import InvalidInputException, PreconditionException, CapabilityException


class LatticeException(InvalidInputException):
    pass


class InvalidAntichainException(LatticeException):
    pass


class BaseSetMismatchException(LatticeException):
    def __init__(self, *args, left_n: int = None, right_n: int = None, **kwargs) -> None:
        super().__init__(*args, **kwargs)
        self.left_n = left_n
        self.right_n = right_n


class LatticePreconditionException(PreconditionException):
    pass


class OracleCapabilityException(CapabilityException):
    pass

class DedekindException(Exception):
    exit_code: int = 1


class InvalidInputException(DedekindException):
    exit_code = 2


class PreconditionException(InvalidInputException):
    pass


class CheckpointException(DedekindException):
    exit_code = 2


class CapabilityException(DedekindException):
    exit_code = 3

    def __init__(self, *args, cap_name: str = None, cap_value: int = None, **kwargs) -> None:
        super().__init__(*args, **kwargs)
        self.cap_name = cap_name
        self.cap_value = cap_value


class ConsistencyException(DedekindException):
    exit_code = 4

    def __init__(self, *args, context: dict = None, **kwargs) -> None:
        super().__init__(*args, **kwargs)
        self.context: dict = context or {}

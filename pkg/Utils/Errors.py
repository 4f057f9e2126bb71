from typing import Optional


class AztecFockError(Exception):
    """
    Base class of every error raised by the engine
    """


class ConfigError(AztecFockError):
    """
    Invalid user input: schema violations, unknown keys, failed preconditions
    """


class ModelError(ConfigError):
    """
    The model itself is invalid (cyclic order, curve modulus, size)
    """


class UnsupportedBlockError(ConfigError):
    """
    An extended inverse entry was requested in a block that is not computed
    """


class SingularityError(AztecFockError):
    """
    Evaluation at a pole, singular matrix or vanishing pivot
    """


class ConvergenceError(AztecFockError):
    def __init__(self, message: str, estimate: Optional[float] = None) \
            -> None:
        """
        An iterative method stopped before reaching its tolerance

        :param message: Description of the failure
        :param estimate: Last achieved error estimate, if any

        :return: None
        """
        super().__init__(message)
        self.estimate = estimate


class VerificationError(AztecFockError):
    def __init__(self, message: str, defect: Optional[float] = None) -> None:
        """
        An identity check exceeded its tolerance

        :param message: Description of the failed check
        :param defect: Size of the violation

        :return: None
        """
        super().__init__(message)
        self.defect = defect

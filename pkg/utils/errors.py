# utils/errors.py
from typing import Optional


class LabError(Exception):
    """Base class for every error raised by the lab"""


class ParameterError(LabError, ValueError):
    """Family parameters out of range, badly ordered, or colliding"""


class ConstructionError(LabError):
    """A region could not be built as requested"""


class SymmetryAbsentError(LabError):
    """The isometry does not fix the region or graph"""


class UnsupportedActionError(LabError):
    """A group action fixes a vertex of the graph being quotiented"""


class ContractError(LabError):
    """A graph operation was called outside its precondition"""


class EmbeddingRequiredError(LabError):
    """The Pfaffian counter was handed a graph it cannot embed in the plane"""


class FormulaApplicationError(LabError, ArithmeticError):
    """A closed form was applied outside its domain or did not clear to an integer"""


class BudgetExceededError(LabError):
    """An exhaustive counter was asked to go beyond the configured budget"""

    def __init__(self, message: str, budget: Optional[int] = None, requested: Optional[int] = None):
        super().__init__(message)
        self.budget = budget
        self.requested = requested


class RegionParseError(LabError, ValueError):
    """Malformed region document"""

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset

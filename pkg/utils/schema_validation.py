# utils/schema_validation.py
from typing import Any, Dict, List, Literal, Optional, Tuple, Type

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

CellEntry = Tuple[int, int, Literal["U", "D"]]
PointEntry = Tuple[int, int]


class RegionDocument(BaseModel):
    """Version 1 of the region JSON document"""
    model_config = ConfigDict(extra="forbid")

    v: Literal[1]
    family: str
    params: Dict[str, Any]
    cells: List[CellEntry]
    free_edges: List[Tuple[PointEntry, PointEntry]] = Field(default_factory=list)
    half_edges: List[Tuple[CellEntry, CellEntry]] = Field(default_factory=list)

    @field_validator("cells")
    @classmethod
    def cells_unique(cls, cells: List[CellEntry]) -> List[CellEntry]:
        if len(set(cells)) != len(cells):
            raise ValueError("cells must not repeat")
        return cells


def validate_schema(data: Any, schema_class: Type[BaseModel]) -> Tuple[bool, Optional[str], Optional[BaseModel]]:
    """Validate data against a schema; returns (ok, error text, model)"""
    if not isinstance(data, dict):
        return False, f"expected a JSON object, got {type(data).__name__}", None
    try:
        return True, None, schema_class.model_validate(data)
    except ValidationError as e:
        return False, str(e), None

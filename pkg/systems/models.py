from __future__ import annotations

from enum import Enum
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from systems.charmatrix import ReducedVectorMatrix, parse_matrix

CoefficientName = Literal["Z2", "Z"]


class InputDocument(BaseModel):
    """One manifold: simplex dimensions, coefficient ring and the reduced matrix rows."""

    model_config = ConfigDict(extra="forbid")

    dims: List[int]
    coefficients: CoefficientName
    rows: List[List[int]]

    def to_matrix(self) -> ReducedVectorMatrix:
        return parse_matrix(self.dims, self.coefficients, self.rows)

    @classmethod
    def from_matrix(cls, A: ReducedVectorMatrix) -> "InputDocument":
        return cls(dims=list(A.dims), coefficients=A.mode.value, rows=A.to_rows())


class FamilyKind(str, Enum):
    TRIANGULAR = "triangular"
    CYCLIC = "cyclic"
    BOUNDED_ENTRY = "bounded_entry"
    EXPLICIT = "explicit"


class FamilySpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dims: List[int]
    coefficients: CoefficientName = "Z2"
    kind: FamilyKind
    bound: int = Field(1, ge=0)  # entries in [-bound, bound] over Z
    target_product: Optional[int] = None  # cyclic: prod b_j, defaults to 2 (even n) or -2 (odd n)
    cap: Optional[int] = Field(None, ge=0)
    rows: Optional[List[List[List[int]]]] = None  # explicit kind


class ResultRecord(BaseModel):
    dims: List[int]
    mode: CoefficientName
    rows: List[List[int]]
    sw_all_zero: Optional[bool] = None
    pontryagin_all_zero: Optional[bool] = None
    sw_numbers: Dict[str, int] = Field(default_factory=dict)
    pontryagin_numbers: Dict[str, int] = Field(default_factory=dict)
    created_at: str = ""

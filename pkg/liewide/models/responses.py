from typing import Any, Dict, List, Optional

from pydantic import BaseModel


class SubalgebraSummary(BaseModel):
    system: str
    T: List[List[int]]
    symmetric: List[List[int]]
    special: List[List[int]]
    t: List[List[str]]
    t_mode: str
    k: List[List[str]]
    k_perp: List[List[str]]
    kind: str
    dim: int


class DecisionReport(BaseModel):
    subalgebra: SubalgebraSummary
    levi_decomposable: bool
    parabolic: bool
    ad_nilpotent_radical: bool
    perfect: bool
    radical_abelian: bool
    wide: bool
    cyclic_wide: str
    reason: str
    witnesses: Dict[str, Any] = {}


class WeightRecord(BaseModel):
    weight: List[int]
    dim: int
    indecomposable: Optional[bool] = None
    quotient_simple: Optional[bool] = None
    cyclic_indecomposable: Optional[bool] = None
    radical_dim: Optional[int] = None
    quotient_singular_dim: Optional[int] = None
    dichotomy: Optional[str] = None
    skipped: Optional[str] = None


class ModuleReport(BaseModel):
    subalgebra: SubalgebraSummary
    weight: List[int]
    dim: int
    radical_dim: int
    cyclic_levi_dim: Optional[int] = None
    quotient_dim: int
    quotient_singular_dim: int
    quotient_is_trivial: bool
    indecomposable: bool
    cyclic_indecomposable: bool
    dichotomy: Optional[str] = None


class CellRecord(BaseModel):
    index: int
    system: str
    T: List[List[int]]
    t_mode: str
    weight: List[int]
    predicted_wide: bool
    predicted_cyclic_wide: str
    empirical: WeightRecord


class VerifySummary(BaseModel):
    subalgebras: int
    cells: int
    checked: int
    skipped: int
    discrepancies: int


class VerifyReport(BaseModel):
    system: str
    grid: List[List[int]]
    summary: VerifySummary
    cells: List[CellRecord]
    discrepancies: List[Dict[str, Any]]


class EnumerateRow(BaseModel):
    index: int
    T: List[List[int]]
    symmetric: int
    special: int
    parabolic: bool
    levi_decomposable: bool
    wide: Optional[bool] = None
    cyclic_wide: Optional[str] = None


class PresetRow(BaseModel):
    name: str
    description: str
    weight: Optional[List[int]] = None


class EnumerateReport(BaseModel):
    system: str
    count: int
    rows: List[EnumerateRow]


class PresetList(BaseModel):
    presets: List[PresetRow]


class ModuleDump(BaseModel):
    system: str
    dim: int
    highest_weight: Optional[List[int]] = None
    highest_vector: Optional[int] = None
    weights: List[List[int]]
    actions: Dict[str, List[List[str]]]

from typing import List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, field_validator

from liewide.services.regsub import GENERATED_BY_TR
from liewide.utils import linalg

CartanRows = List[List[Union[int, str]]]


class SubalgebraSpec(BaseModel):
    """{system, T, t} as read from an input file."""

    model_config = ConfigDict(extra="forbid")

    system: str
    T: List[List[int]]
    t: Union[Literal["generated-by-Tr"], CartanRows] = GENERATED_BY_TR

    @field_validator("t")
    @classmethod
    def rational_entries(cls, v: Union[str, CartanRows]) -> Union[str, CartanRows]:
        if isinstance(v, str):
            return v
        for row in v:
            for x in row:
                linalg.qq(x)
        return v


class ModuleSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    subalgebra: SubalgebraSpec
    weight: List[int]


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    subcommand: Literal["decide", "verify", "module", "enumerate", "preset"]
    system: Optional[str] = None
    input: Optional[str] = None
    preset: Optional[str] = None
    n: Optional[int] = None
    k: Optional[int] = None
    weight: Optional[List[int]] = None
    max_dim: Optional[int] = None
    bound: Optional[int] = None
    cap: Optional[int] = None
    jobs: Optional[int] = None
    format: Literal["json", "text"] = "json"
    dump: Optional[str] = None

    @field_validator("max_dim", "bound", "cap", "jobs", "n", "k")
    @classmethod
    def positive(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v <= 0:
            raise ValueError("must be positive")
        return v

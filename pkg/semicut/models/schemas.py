from fractions import Fraction
from typing import Optional, Union

from pydantic import BaseModel, Field


# Objective values: integers stay integers, exact rationals are written "p/q"
ObjectiveValue = Union[int, float, str]


def objective_value(value: Union[int, float, Fraction, None]) -> Optional[ObjectiveValue]:
    if value is None:
        return None
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    return value


# Solve models
class RunReport(BaseModel):
    problem: str
    engine: str = "cuts"
    weighted: bool = False
    n: int
    k: Optional[ObjectiveValue] = None
    k_star: Optional[int] = None
    answer: str
    reason: Optional[str] = None
    objective: Optional[ObjectiveValue] = None
    cuts_enumerated: int = 0
    cut_graph_size: int = 0
    cut_budget: Optional[int] = None
    cap: Optional[int] = None
    wall_time_ms: float = 0.0
    instance: str = "-"
    seed: Optional[int] = None


class SolveReport(BaseModel):
    report: RunReport
    ordering: Optional[list[int]] = None
    arcs: Optional[list[tuple[int, int]]] = None


# Cut counting models
class CountCutsReport(BaseModel):
    n: int
    k: int
    count: Optional[int] = Field(None, description="null when the cap was exceeded")
    capped: bool
    cap: int
    cap_fas: int
    cap_cutwidth: int
    cap_ola: int
    analytic_cap_fas: float
    analytic_cap_cutwidth: float
    wall_time_ms: float = 0.0
    instance: str = "-"


# Bench models
class BenchRow(BaseModel):
    family: str
    n: int
    k: int
    seed: int
    cuts: int
    cap_fas: int
    cap_cutwidth: int
    capped: bool
    ms: float

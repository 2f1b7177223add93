from typing import TYPE_CHECKING
from typing import Any
from typing import Literal
from typing import TypedDict

if TYPE_CHECKING:
    from sombor.graph import Graph
    from sombor.graph import GraphClassSpec


class StructuralPredicates(TypedDict):
    is_regular: bool
    has_dominating_vertex: bool
    min_degree: int
    max_degree: int
    every_edge_touches_min_degree: bool
    every_edge_touches_max_degree: bool


class GraphRecord(TypedDict):
    # "<path>:<line>", "stdin:<line>" or "family:<kind>:<n>"
    source: str
    graph: "Graph"


class BoundReport(TypedDict):
    bound: str
    source: str
    index: str
    value: float
    lower: float | None
    upper: float | None
    holds: bool
    equality_low: bool
    equality_high: bool
    structural_low: bool
    structural_high: bool
    structural_equality_predicted: bool
    hypothesis_met: bool


class MonotonicityReport(TypedDict):
    source: str
    u: int
    v: int
    hso_decrease_condition: bool
    hso_increase_condition: bool
    cdso_decrease_condition: bool
    cdso_increase_condition: bool
    delta_hso: float
    delta_cdso: float
    anomaly: bool


class SweepReport(TypedDict):
    sweep: str
    checked: int
    violations: list[tuple[int, ...]]


class WitnessProperties(TypedDict):
    graph6: str
    has_dominating_vertex: bool
    min_degree: int
    max_degree: int
    degrees_in_2_3: bool


class ExtremalResult(TypedDict):
    spec: "GraphClassSpec"
    index: str
    direction: Literal["min", "max"]
    optimum: float
    examined: int
    witnesses: list["Graph"]
    witness_properties: list[WitnessProperties]
    # Closest distinct value when it sits within the near-tie window
    near_tie: float | None


class DegreeConjecture(TypedDict):
    applicable: bool
    # (min_degree, max_degree) of each witness
    cdso_max_degrees: list[tuple[int, int]]
    hso_min_degrees: list[tuple[int, int]]
    # None when ell < 2, where the statement does not apply
    holds: bool | None


class ConjectureReport(TypedDict):
    order: int
    ell: int
    cdso_min_result: ExtremalResult
    hso_max_result: ExtremalResult
    cdso_max_result: ExtremalResult
    hso_min_result: ExtremalResult
    dominating_vertex_all_witnesses: bool
    degree_conjecture: DegreeConjecture


class Report(TypedDict):
    kind: Literal["bound", "monotonicity", "extremal", "sweep", "index", "conjecture"]
    schema: str
    payload: dict[str, Any]

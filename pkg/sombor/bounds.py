import math
from enum import Enum
from functools import cached_property
from typing import Callable
from typing import NamedTuple

from sombor.graph import Family
from sombor.graph import Graph
from sombor.graph import is_complete_graph
from sombor.graph import is_connected
from sombor.graph import is_cycle_graph
from sombor.graph import is_path_graph
from sombor.graph import is_star_graph
from sombor.graph import is_tree
from sombor.graph import structural_predicates
from sombor.indices import SQRT2
from sombor.indices import SQRT5
from sombor.indices import IndexKind
from sombor.indices import closed_form
from sombor.indices import index_value
from sombor.logger import get_logger
from sombor.records import BoundReport
from sombor.records import StructuralPredicates

logger = get_logger()

# Absolute; every index value at the orders we verify stays below 1e3
EQUALITY_TOLERANCE = 1e-9


class BoundError(Exception):
    pass


class UnknownBoundError(BoundError):
    pass


class VerificationFailure(Exception):
    """A proven statement failed on a concrete input: a counterexample or a bug."""


class BoundId(str, Enum):
    HSO_GE_SQRT2M = "HSO_GE_SQRT2M"
    HSO_SO_SANDWICH = "HSO_SO_SANDWICH"
    HSO_GE_M1 = "HSO_GE_M1"
    HSO_ORDER_SIZE_LOWER = "HSO_ORDER_SIZE_LOWER"
    HSO_CYCLE_STAR = "HSO_CYCLE_STAR"
    CDSO_LE_SQRT2M = "CDSO_LE_SQRT2M"
    CDSO_GE_STARFORM = "CDSO_GE_STARFORM"
    CDSO_CONNECTED_RANGE = "CDSO_CONNECTED_RANGE"
    CDSO_SO_SANDWICH = "CDSO_SO_SANDWICH"
    CDSO_GE_M1 = "CDSO_GE_M1"
    CDSO_ORDER_SIZE_UPPER = "CDSO_ORDER_SIZE_UPPER"
    CDSO_TREE_RANGE = "CDSO_TREE_RANGE"
    CDSO_LE_HSO = "CDSO_LE_HSO"


class GraphFacts:
    """Lazily computed quantities shared by the bound formulas of one graph."""

    def __init__(self, graph: Graph):
        self.graph = graph
        self.n = graph.order
        self.m = graph.size

    @cached_property
    def connected(self) -> bool:
        return is_connected(self.graph)

    @cached_property
    def predicates(self) -> StructuralPredicates:
        return structural_predicates(self.graph)

    @property
    def delta(self) -> int:
        return self.predicates["min_degree"]

    @property
    def big_delta(self) -> int:
        return self.predicates["max_degree"]

    @property
    def regular(self) -> bool:
        return self.predicates["is_regular"]

    @cached_property
    def so(self) -> float:
        return index_value(self.graph, IndexKind.SO)

    @cached_property
    def m1(self) -> float:
        return index_value(self.graph, IndexKind.M1)

    @cached_property
    def path_or_cycle(self) -> bool:
        return is_path_graph(self.graph) or is_cycle_graph(self.graph)

    def value(self, kind: IndexKind) -> float:
        return index_value(self.graph, kind)


class BoundForm(NamedTuple):
    lower: float | None
    upper: float | None
    structural_low: bool
    structural_high: bool


class BoundSpec(NamedTuple):
    index: IndexKind
    hypothesis: Callable[[GraphFacts], bool]
    form: Callable[[GraphFacts], BoundForm]


def _connected_order(minimum: int) -> Callable[[GraphFacts], bool]:
    return lambda facts: facts.n >= minimum and facts.connected


def _star_norm(n: int) -> float:
    return math.sqrt((n - 1) ** 2 + 1)


def _hso_order_size(facts: GraphFacts) -> float:
    return 2 * (SQRT5 - SQRT2) * facts.n + (3 * SQRT2 - 2 * SQRT5) * facts.m


def _cdso_order_size(facts: GraphFacts) -> float:
    return (SQRT5 - 2 * SQRT2) * facts.n + (3 * SQRT2 - SQRT5) * facts.m


def _equal_degree_edges(facts: GraphFacts) -> bool:
    degrees = facts.graph.degrees
    return all(degrees[u] == degrees[v] for u, v in facts.graph.edges)


BOUNDS: dict[BoundId, BoundSpec] = {
    BoundId.HSO_GE_SQRT2M: BoundSpec(
        IndexKind.HSO,
        _connected_order(2),
        lambda f: BoundForm(SQRT2 * f.m, None, f.regular, False),
    ),
    BoundId.HSO_SO_SANDWICH: BoundSpec(
        IndexKind.HSO,
        _connected_order(2),
        lambda f: BoundForm(
            f.so / f.big_delta,
            f.so / f.delta,
            f.regular,
            f.predicates["every_edge_touches_min_degree"],
        ),
    ),
    BoundId.HSO_GE_M1: BoundSpec(
        IndexKind.HSO,
        _connected_order(2),
        lambda f: BoundForm(f.m1 / (SQRT2 * f.big_delta), None, f.regular, False),
    ),
    BoundId.HSO_ORDER_SIZE_LOWER: BoundSpec(
        IndexKind.HSO,
        _connected_order(4),
        lambda f: BoundForm(_hso_order_size(f), None, f.path_or_cycle, False),
    ),
    BoundId.HSO_CYCLE_STAR: BoundSpec(
        IndexKind.HSO,
        _connected_order(3),
        lambda f: BoundForm(
            closed_form(IndexKind.HSO, Family.CYCLE, f.n),
            closed_form(IndexKind.HSO, Family.STAR, f.n),
            is_cycle_graph(f.graph),
            is_star_graph(f.graph),
        ),
    ),
    BoundId.CDSO_LE_SQRT2M: BoundSpec(
        IndexKind.CDSO,
        _connected_order(2),
        lambda f: BoundForm(None, SQRT2 * f.m, False, f.regular),
    ),
    BoundId.CDSO_GE_STARFORM: BoundSpec(
        IndexKind.CDSO,
        _connected_order(2),
        lambda f: BoundForm(
            f.m * math.sqrt(f.big_delta**2 + 1) / f.big_delta,
            None,
            is_star_graph(f.graph),
            False,
        ),
    ),
    BoundId.CDSO_CONNECTED_RANGE: BoundSpec(
        IndexKind.CDSO,
        _connected_order(3),
        lambda f: BoundForm(
            _star_norm(f.n),
            f.n * (f.n - 1) / SQRT2,
            is_star_graph(f.graph),
            is_complete_graph(f.graph),
        ),
    ),
    BoundId.CDSO_SO_SANDWICH: BoundSpec(
        IndexKind.CDSO,
        _connected_order(2),
        lambda f: BoundForm(
            f.so / f.big_delta,
            f.so / f.delta,
            f.predicates["every_edge_touches_max_degree"],
            f.regular,
        ),
    ),
    BoundId.CDSO_GE_M1: BoundSpec(
        IndexKind.CDSO,
        _connected_order(2),
        lambda f: BoundForm(f.m1 / (SQRT2 * f.big_delta), None, f.regular, False),
    ),
    BoundId.CDSO_ORDER_SIZE_UPPER: BoundSpec(
        IndexKind.CDSO,
        _connected_order(4),
        lambda f: BoundForm(None, _cdso_order_size(f), False, f.path_or_cycle),
    ),
    BoundId.CDSO_TREE_RANGE: BoundSpec(
        IndexKind.CDSO,
        lambda f: f.n >= 4 and is_tree(f.graph),
        lambda f: BoundForm(
            _star_norm(f.n),
            SQRT5 + (f.n - 3) * SQRT2,
            is_star_graph(f.graph),
            is_path_graph(f.graph),
        ),
    ),
    BoundId.CDSO_LE_HSO: BoundSpec(
        IndexKind.CDSO,
        lambda f: True,
        lambda f: BoundForm(
            None, f.value(IndexKind.HSO), False, _equal_degree_edges(f)
        ),
    ),
}


def check_bound(
    graph: Graph,
    bound: BoundId | str,
    source: str = "",
    tolerance: float = EQUALITY_TOLERANCE,
    facts: GraphFacts | None = None,
) -> BoundReport:
    """
    Evaluate one proposition's bound on ``graph``.

    Bound formulas are only evaluated when the graph meets the hypothesis;
    otherwise the report carries the index value, no bounds and
    hypothesis_met = False.
    """
    try:
        bound = BoundId(bound)
    except ValueError:
        raise UnknownBoundError(f"Unknown bound id: {bound}")

    spec = BOUNDS[bound]
    facts = facts or GraphFacts(graph)
    value = facts.value(spec.index)

    if not spec.hypothesis(facts):
        return BoundReport(
            bound=bound.value,
            source=source,
            index=spec.index.value,
            value=value,
            lower=None,
            upper=None,
            holds=True,
            equality_low=False,
            equality_high=False,
            structural_low=False,
            structural_high=False,
            structural_equality_predicted=False,
            hypothesis_met=False,
        )

    form = spec.form(facts)

    holds = (form.lower is None or value >= form.lower - tolerance) and (
        form.upper is None or value <= form.upper + tolerance
    )

    return BoundReport(
        bound=bound.value,
        source=source,
        index=spec.index.value,
        value=value,
        lower=form.lower,
        upper=form.upper,
        holds=holds,
        equality_low=form.lower is not None and abs(value - form.lower) <= tolerance,
        equality_high=form.upper is not None
        and abs(value - form.upper) <= tolerance,
        structural_low=form.structural_low,
        structural_high=form.structural_high,
        structural_equality_predicted=form.structural_low or form.structural_high,
        hypothesis_met=True,
    )


def check_all(
    graph: Graph,
    source: str = "",
    include_unmet: bool = False,
    tolerance: float = EQUALITY_TOLERANCE,
) -> list[BoundReport]:
    facts = GraphFacts(graph)
    reports = [
        check_bound(graph, bound, source, tolerance, facts) for bound in BoundId
    ]

    if include_unmet:
        return reports

    return [report for report in reports if report["hypothesis_met"]]


def report_problems(report: BoundReport) -> list[str]:
    if not report["hypothesis_met"]:
        return []

    problems = []
    name = f"{report['bound']} on {report['source'] or 'graph'}"

    if not report["holds"]:
        problems.append(
            f"{name}: {report['index']} = {report['value']!r} outside "
            f"[{report['lower']!r}, {report['upper']!r}]"
        )

    if report["equality_low"] != report["structural_low"]:
        problems.append(
            f"{name}: lower equality {report['equality_low']} but structure "
            f"predicts {report['structural_low']}"
        )

    if report["equality_high"] != report["structural_high"]:
        problems.append(
            f"{name}: upper equality {report['equality_high']} but structure "
            f"predicts {report['structural_high']}"
        )

    return problems


def verify_bounds(
    graph: Graph, source: str = "", tolerance: float = EQUALITY_TOLERANCE
) -> list[BoundReport]:
    """check_all in verification mode: any problem raises VerificationFailure."""
    reports = check_all(graph, source, tolerance=tolerance)
    problems = [problem for report in reports for problem in report_problems(report)]

    if problems:
        for problem in problems:
            logger.error(problem)
        raise VerificationFailure(problems[0])

    return reports

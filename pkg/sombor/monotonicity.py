from sombor.bounds import EQUALITY_TOLERANCE
from sombor.enumeration import EnumerationPlan
from sombor.enumeration import enumerate_graphs
from sombor.graph import AdjacentPairError
from sombor.graph import Graph
from sombor.graph import SelfLoopError
from sombor.graph import VertexOutOfRangeError
from sombor.graph import add_edge_copy
from sombor.indices import IndexKind
from sombor.indices import edge_contribution
from sombor.indices import index_value
from sombor.logger import get_logger
from sombor.records import MonotonicityReport

logger = get_logger()

# The CDSO decrease statement asks for d(u) = 4 d(v) >= 12
CDSO_DECREASE_RATIO = 4
CDSO_DECREASE_MIN_HIGH_DEGREE = 12


def _neighbor_degrees(graph: Graph, vertex: int) -> list[int]:
    return [graph.degree(w) for w in graph.neighbors(vertex)]


def hso_decrease_condition(graph: Graph, u: int, v: int) -> bool:
    """d(u) = d(v) = delta >= 1 and every neighbour of u and v has degree > delta."""
    delta = min(graph.degrees)

    if delta < 1:
        return False

    return all(
        graph.degree(x) == delta and min(_neighbor_degrees(graph, x)) > delta
        for x in (u, v)
    )


def hso_increase_condition(graph: Graph, u: int, v: int) -> bool:
    """Minimum degree >= 1 and d(x) >= every neighbour degree for x in {u, v}."""
    if min(graph.degrees) < 1:
        return False

    return all(graph.degree(x) >= max(_neighbor_degrees(graph, x)) for x in (u, v))


def _uniform_neighbourhood(graph: Graph, vertex: int) -> bool:
    return all(d == graph.degree(vertex) for d in _neighbor_degrees(graph, vertex))


def _cdso_decrease_oriented(
    graph: Graph, high: int, low: int, min_low_degree: int
) -> bool:
    d_high, d_low = graph.degree(high), graph.degree(low)

    return (
        d_low >= min_low_degree
        and d_high == CDSO_DECREASE_RATIO * d_low
        and _uniform_neighbourhood(graph, high)
        and _uniform_neighbourhood(graph, low)
    )


def cdso_decrease_condition(graph: Graph, u: int, v: int) -> bool:
    """
    d(u) = d(u') = 4 d(v) = 4 d(v') >= 12 for all neighbours u' of u and v' of v.

    The pair is unordered: either endpoint may play the high-degree role.
    """
    low_minimum = CDSO_DECREASE_MIN_HIGH_DEGREE // CDSO_DECREASE_RATIO
    return _cdso_decrease_oriented(
        graph, u, v, low_minimum
    ) or _cdso_decrease_oriented(graph, v, u, low_minimum)


def loose_cdso_decrease_condition(graph: Graph, u: int, v: int) -> bool:
    """
    The CDSO decrease condition with the proof's own requirement d(v) >= 3.

    Under d(u) = 4 d(v) this selects the same pairs as the stated d(u) >= 12;
    it is kept separate so the two readings can be compared directly.
    """
    return _cdso_decrease_oriented(graph, u, v, 3) or _cdso_decrease_oriented(
        graph, v, u, 3
    )


def cdso_increase_condition(graph: Graph, u: int, v: int) -> bool:
    """Minimum degree >= 1 and d(x) + 1 <= every neighbour degree for x in {u, v}."""
    if min(graph.degrees) < 1:
        return False

    return all(graph.degree(x) + 1 <= min(_neighbor_degrees(graph, x)) for x in (u, v))


def _require_non_adjacent(graph: Graph, u: int, v: int) -> None:
    for vertex in (u, v):
        if not 0 <= vertex < graph.order:
            raise VertexOutOfRangeError(f"Vertex {vertex} outside 0..{graph.order - 1}")

    if u == v:
        raise SelfLoopError(f"Pair ({u}, {v}) is a single vertex")

    if graph.has_edge(u, v):
        raise AdjacentPairError(f"Vertices {u} and {v} are already adjacent")


def delta_from_proof(graph: Graph, u: int, v: int, kind: IndexKind) -> float:
    """
    Index change of G + uv summed over the changed edges only.

    Only the edges at u and v change their contribution, plus the new edge.
    """
    _require_non_adjacent(graph, u, v)

    total = 0.0
    for x in (u, v):
        d = graph.degree(x)
        for w in graph.neighbors(x):
            total += edge_contribution(kind, d + 1, graph.degree(w))
            total -= edge_contribution(kind, d, graph.degree(w))

    return total + edge_contribution(kind, graph.degree(u) + 1, graph.degree(v) + 1)


def classify_pair(graph: Graph, u: int, v: int, source: str = "") -> MonotonicityReport:
    _require_non_adjacent(graph, u, v)

    extended = add_edge_copy(graph, u, v)

    hso_decrease = hso_decrease_condition(graph, u, v)
    hso_increase = hso_increase_condition(graph, u, v)
    cdso_decrease = cdso_decrease_condition(graph, u, v)
    cdso_increase = cdso_increase_condition(graph, u, v)

    anomaly = (hso_decrease and hso_increase) or (cdso_decrease and cdso_increase)

    if anomaly:
        logger.warning(
            f"Opposite monotonicity conditions both hold for ({u}, {v}) "
            f"on {source or graph}"
        )

    return MonotonicityReport(
        source=source,
        u=u,
        v=v,
        hso_decrease_condition=hso_decrease,
        hso_increase_condition=hso_increase,
        cdso_decrease_condition=cdso_decrease,
        cdso_increase_condition=cdso_increase,
        delta_hso=index_value(extended, IndexKind.HSO)
        - index_value(graph, IndexKind.HSO),
        delta_cdso=index_value(extended, IndexKind.CDSO)
        - index_value(graph, IndexKind.CDSO),
        anomaly=anomaly,
    )


def scan_graph(graph: Graph, source: str = "") -> list[MonotonicityReport]:
    """One report per non-adjacent pair u < v with both degrees >= 1."""
    return [
        classify_pair(graph, u, v, source)
        for u in range(graph.order)
        for v in range(u + 1, graph.order)
        if not graph.has_edge(u, v) and graph.degree(u) and graph.degree(v)
    ]


def report_problems(
    report: MonotonicityReport, tolerance: float = EQUALITY_TOLERANCE
) -> list[str]:
    pair = f"({report['u']}, {report['v']}) on {report['source'] or 'graph'}"
    checks = [
        ("hso_decrease_condition", report["delta_hso"] < -tolerance),
        ("hso_increase_condition", report["delta_hso"] > tolerance),
        ("cdso_decrease_condition", report["delta_cdso"] < -tolerance),
        ("cdso_increase_condition", report["delta_cdso"] > tolerance),
    ]

    problems = [
        f"{flag} holds for {pair} but the index moved the wrong way"
        for flag, sign_ok in checks
        if report[flag] and not sign_ok  # type: ignore[literal-required]
    ]

    if report["anomaly"]:
        problems.append(f"opposite conditions hold together for {pair}")

    return problems


def find_decreasing_addition(
    n_max: int, tolerance: float = EQUALITY_TOLERANCE
) -> tuple[Graph, MonotonicityReport] | None:
    """
    First connected graph, by order then mask, with an edge addition that
    lowers HSO by more than ``tolerance``.
    """
    for order in range(2, n_max + 1):
        for graph in enumerate_graphs(EnumerationPlan(order=order)):
            for report in scan_graph(graph, f"connected:{order}"):
                if report["delta_hso"] < -tolerance:
                    logger.info(
                        f"HSO drops by {-report['delta_hso']!r} adding "
                        f"({report['u']}, {report['v']}) to {graph}"
                    )
                    return graph, report

    return None

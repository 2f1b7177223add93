from functools import partial
from typing import Literal

import numpy as np
import numpy.typing as npt

from sombor.bounds import EQUALITY_TOLERANCE
from sombor.enumeration import INTERNAL_ORDER_CAP
from sombor.enumeration import EmptyClassError
from sombor.enumeration import EnumerationError
from sombor.enumeration import EnumerationPlan
from sombor.enumeration import IntArray
from sombor.enumeration import MaskChunk
from sombor.enumeration import chunk_ranges
from sombor.enumeration import decode_chunk
from sombor.enumeration import edge_pairs
from sombor.enumeration import enumerate_graphs
from sombor.enumeration import graph_from_mask
from sombor.enumeration import parallel_map
from sombor.enumeration import validate_plan
from sombor.graph import CANONICAL_LIMIT
from sombor.graph import Graph
from sombor.graph import canonical_code
from sombor.graph import structural_predicates
from sombor.graph6 import write_graph6
from sombor.indices import IndexKind
from sombor.indices import index_table
from sombor.indices import index_value
from sombor.logger import get_logger
from sombor.records import ConjectureReport
from sombor.records import DegreeConjecture
from sombor.records import ExtremalResult
from sombor.records import WitnessProperties

logger = get_logger()

Direction = Literal["min", "max"]

# Distinct values closer than this to the optimum are reported as near ties
NEAR_TIE_WINDOW = 1e-6

CONJECTURE_MINIMUM_ORDER = 4
CONJECTURED_DEGREES = frozenset({2, 3})

FloatArray = npt.NDArray[np.float64]


def chunk_values(order: int, chunk: MaskChunk, kind: IndexKind) -> FloatArray:
    """Index value of every graph in a decoded chunk, one row per mask."""
    pairs = edge_pairs(order)

    if not pairs:
        return np.zeros(len(chunk.masks), dtype=np.float64)

    table = index_table(kind, order - 1)
    left = np.array([i for i, _ in pairs])
    right = np.array([j for _, j in pairs])

    contributions = table[chunk.degrees[:, left], chunk.degrees[:, right]]
    return (contributions * chunk.bits).sum(axis=1)


def _signed_values(
    order: int,
    target_size: int | None,
    kind: IndexKind,
    sign: float,
    bounds: tuple[int, int],
) -> tuple[IntArray, FloatArray]:
    chunk = decode_chunk(order, bounds[0], bounds[1], target_size)
    return chunk.masks, sign * chunk_values(order, chunk, kind)


def _chunk_best(
    order: int,
    target_size: int | None,
    kind: IndexKind,
    sign: float,
    bounds: tuple[int, int],
) -> tuple[int, float | None]:
    _, values = _signed_values(order, target_size, kind, sign, bounds)

    if not len(values):
        return 0, None

    return len(values), float(values.min())


def _chunk_attainers(
    order: int,
    target_size: int | None,
    kind: IndexKind,
    sign: float,
    optimum: float,
    tolerance: float,
    bounds: tuple[int, int],
) -> tuple[list[int], float | None]:
    masks, values = _signed_values(order, target_size, kind, sign, bounds)
    tied = values <= optimum + tolerance
    rest = values[~tied]

    return masks[tied].tolist(), float(rest.min()) if len(rest) else None


def _direction_sign(direction: Direction) -> float:
    if direction not in ("min", "max"):
        raise ValueError(f"Direction must be 'min' or 'max', got {direction!r}")

    return 1.0 if direction == "min" else -1.0


def _internal_search(
    plan: EnumerationPlan, kind: IndexKind, sign: float, tolerance: float
) -> tuple[int, list[Graph], float | None]:
    ranges = chunk_ranges(plan.order)
    fixed = (plan.order, plan.target_size, kind, sign)

    examined = 0
    optimum: float | None = None

    best_task = partial(_chunk_best, *fixed)

    for count, best in parallel_map(best_task, ranges, plan.workers):
        examined += count
        if best is not None and (optimum is None or best < optimum):
            optimum = best

    if optimum is None:
        return 0, [], None

    logger.info(f"Pass 1 over {examined} graphs: signed optimum {optimum!r}")

    attainers: list[Graph] = []
    nearest: float | None = None
    task = partial(_chunk_attainers, *fixed, optimum, tolerance)

    for masks, rest in parallel_map(task, ranges, plan.workers):
        attainers.extend(graph_from_mask(plan.order, mask) for mask in masks)
        if rest is not None and (nearest is None or rest < nearest):
            nearest = rest

    near_gap = None if nearest is None else nearest - optimum

    return examined, attainers, near_gap


def _stream_search(
    plan: EnumerationPlan, kind: IndexKind, sign: float, tolerance: float
) -> tuple[int, list[Graph], float | None]:
    scored = [
        (sign * index_value(graph, kind), graph) for graph in enumerate_graphs(plan)
    ]

    if not scored:
        return 0, [], None

    optimum = min(value for value, _ in scored)
    attainers = [graph for value, graph in scored if value <= optimum + tolerance]
    rest = [value for value, _ in scored if value > optimum + tolerance]
    near_gap = min(rest) - optimum if rest else None

    return len(scored), attainers, near_gap


def witness_key(graph: Graph) -> bytes:
    if graph.order <= CANONICAL_LIMIT:
        return canonical_code(graph)

    return write_graph6(graph)


def witness_properties(graph: Graph) -> WitnessProperties:
    predicates = structural_predicates(graph)

    return WitnessProperties(
        graph6=write_graph6(graph).decode("ascii"),
        has_dominating_vertex=predicates["has_dominating_vertex"],
        min_degree=predicates["min_degree"],
        max_degree=predicates["max_degree"],
        degrees_in_2_3=predicates["min_degree"] in CONJECTURED_DEGREES
        and predicates["max_degree"] in CONJECTURED_DEGREES,
    )


def find_extremal(
    plan: EnumerationPlan,
    kind: IndexKind | str,
    direction: Direction,
    tolerance: float = EQUALITY_TOLERANCE,
) -> ExtremalResult:
    """
    Exact minimum or maximum of an index over the plan's class.

    Internal plans run in two passes over the mask chunks: the first reduces
    to the optimum, the second collects every graph within ``tolerance`` of
    it. Witnesses are then deduplicated by canonical code and sorted by it.
    Labeled duplicates never change the optimum, so the scan ignores
    ``plan.dedup``.
    """
    validate_plan(plan)
    kind = IndexKind.parse(kind) if isinstance(kind, str) else kind
    sign = _direction_sign(direction)

    if plan.source == "internal":
        search = _internal_search
    else:
        search = _stream_search

    examined, attainers, near_gap = search(plan, kind, sign, tolerance)

    if not attainers:
        raise EmptyClassError(f"No graph satisfies {plan.spec}")

    unique = {witness_key(graph): graph for graph in reversed(attainers)}
    witnesses = [unique[key] for key in sorted(unique)]
    optimum = index_value(witnesses[0], kind)

    near_tie = None
    if near_gap is not None and near_gap <= NEAR_TIE_WINDOW:
        near_tie = optimum + sign * near_gap
        logger.warning(
            f"{direction} {kind.value} over {plan.spec}: distinct value {near_tie!r} "
            f"within {NEAR_TIE_WINDOW} of optimum {optimum!r}"
        )

    logger.info(
        f"{direction} {kind.value} over {plan.spec}: {optimum!r} with "
        f"{len(witnesses)} witnesses among {examined} graphs"
    )

    return ExtremalResult(
        spec=plan.spec,
        index=kind.value,
        direction=direction,
        optimum=optimum,
        examined=examined,
        witnesses=witnesses,
        witness_properties=[witness_properties(graph) for graph in witnesses],
        near_tie=near_tie,
    )


def _degree_pairs(result: ExtremalResult) -> list[tuple[int, int]]:
    return [
        (props["min_degree"], props["max_degree"])
        for props in result["witness_properties"]
    ]


def conjecture_report(
    n: int, ell: int, workers: int = 1, tolerance: float = EQUALITY_TOLERANCE
) -> ConjectureReport:
    """
    Extremal witnesses over connected graphs with cyclomatic number ell.

    Records whether every CDSO minimiser and HSO maximiser has a dominating
    vertex, and for ell >= 2 whether every CDSO maximiser and HSO minimiser
    has minimum and maximum degree in {2, 3}. Failures are logged as
    findings, never raised.
    """
    if not CONJECTURE_MINIMUM_ORDER <= n <= INTERNAL_ORDER_CAP:
        raise EnumerationError(
            f"Conjecture reports need {CONJECTURE_MINIMUM_ORDER} <= n <= "
            f"{INTERNAL_ORDER_CAP}, got {n}"
        )

    if ell < 1:
        raise EnumerationError(f"Conjecture reports need ell >= 1, got {ell}")

    max_ell = n * (n - 1) // 2 - n + 1
    if ell > max_ell:
        raise EmptyClassError(
            f"No connected graph on {n} vertices has cyclomatic number {ell} "
            f"(at most {max_ell})"
        )

    plan = EnumerationPlan(
        order=n, constraint="cyclomatic", ell=ell, workers=workers
    )

    def search(kind: IndexKind, direction: Direction) -> ExtremalResult:
        return find_extremal(plan, kind, direction, tolerance)

    cdso_min = search(IndexKind.CDSO, "min")
    hso_max = search(IndexKind.HSO, "max")
    cdso_max = search(IndexKind.CDSO, "max")
    hso_min = search(IndexKind.HSO, "min")

    dominating = all(
        props["has_dominating_vertex"]
        for result in (cdso_min, hso_max)
        for props in result["witness_properties"]
    )

    applicable = ell >= 2
    holds = None
    if applicable:
        holds = all(
            props["degrees_in_2_3"]
            for result in (cdso_max, hso_min)
            for props in result["witness_properties"]
        )

    if not dominating:
        logger.warning(
            f"n={n}, ell={ell}: an extremal witness has no dominating vertex"
        )

    if holds is False:
        logger.warning(
            f"n={n}, ell={ell}: an extremal witness has degrees outside {{2, 3}}"
        )

    return ConjectureReport(
        order=n,
        ell=ell,
        cdso_min_result=cdso_min,
        hso_max_result=hso_max,
        cdso_max_result=cdso_max,
        hso_min_result=hso_min,
        dominating_vertex_all_witnesses=dominating,
        degree_conjecture=DegreeConjecture(
            applicable=applicable,
            cdso_max_degrees=_degree_pairs(cdso_max),
            hso_min_degrees=_degree_pairs(hso_min),
            holds=holds,
        ),
    )

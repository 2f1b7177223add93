"""
Exhaustive generation of small connected graphs.

Internal generation walks every upper-triangle bitmask of K_n in chunks of
``CHUNK_MASKS`` consecutive masks. Each chunk is decoded into numpy arrays
(edge bits, degrees, adjacency rows) and filtered for connectivity and the
requested class without building Graph objects. Chunks are aligned ranges,
so each one fixes the high-order mask bits and can be handed to a separate
worker process; results are merged back in chunk order.
"""

import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from functools import partial
from typing import Callable
from typing import Iterable
from typing import Iterator
from typing import Literal
from typing import NamedTuple
from typing import TypeVar

import numpy as np
import numpy.typing as npt

from sombor.graph import CANONICAL_LIMIT
from sombor.graph import Graph
from sombor.graph import GraphClassSpec
from sombor.graph import canonical_code
from sombor.graph import satisfies_class
from sombor.graph6 import read_graphs
from sombor.logger import get_logger

logger = get_logger()

# 2^(8*7/2) = 2^28 masks at the cap
INTERNAL_ORDER_CAP = 8

CHUNK_MASKS = int(os.getenv("SOMBOR_CHUNK_MASKS", str(1 << 16)))

T = TypeVar("T")
R = TypeVar("R")

IntArray = npt.NDArray[np.int64]


class EnumerationError(Exception):
    pass


class EnumerationCapError(EnumerationError):
    pass


class EmptyClassError(EnumerationError):
    pass


@dataclass(frozen=True)
class EnumerationPlan:
    order: int
    constraint: Literal["connected", "tree", "cyclomatic"] = "connected"
    ell: int | None = None
    dedup: bool = False
    source: Literal["internal", "external"] = "internal"
    # graph6 or edge-list file for external plans, "-" reads standard input
    path: str | None = None
    workers: int = 1

    @property
    def spec(self) -> GraphClassSpec:
        return GraphClassSpec(
            order=self.order, constraint=self.constraint, ell=self.ell
        )

    @property
    def target_size(self) -> int | None:
        if self.constraint == "tree":
            return self.order - 1

        if self.constraint == "cyclomatic" and self.ell is not None:
            return self.order - 1 + self.ell

        return None


class MaskChunk(NamedTuple):
    masks: IntArray
    bits: npt.NDArray[np.uint8]
    degrees: IntArray


def validate_plan(plan: EnumerationPlan) -> None:
    if plan.order < 1:
        raise EnumerationError(f"Order must be positive, got {plan.order}")

    if plan.workers < 1:
        raise EnumerationError(f"Worker count must be positive, got {plan.workers}")

    if plan.constraint == "cyclomatic" and (plan.ell is None or plan.ell < 0):
        raise EnumerationError(f"Cyclomatic class needs ell >= 0, got {plan.ell}")

    if plan.source == "internal" and plan.order > INTERNAL_ORDER_CAP:
        raise EnumerationCapError(
            f"Internal generation is capped at n = {INTERNAL_ORDER_CAP}, got "
            f"{plan.order}; supply a graph6 stream instead"
        )

    if plan.source == "external" and plan.path is None:
        raise EnumerationError("External plans need an input path or '-'")

    if plan.dedup and plan.order > CANONICAL_LIMIT:
        raise EnumerationCapError(
            f"Deduplication is capped at n = {CANONICAL_LIMIT}, got {plan.order}"
        )


@lru_cache(maxsize=None)
def edge_pairs(order: int) -> tuple[tuple[int, int], ...]:
    """Vertex pair of each mask bit, bit 0 first, column-major like graph6."""
    return tuple((i, j) for j in range(1, order) for i in range(j))


def graph_from_mask(order: int, mask: int) -> Graph:
    adjacency = [0] * order

    for bit, (i, j) in enumerate(edge_pairs(order)):
        if mask >> bit & 1:
            adjacency[i] |= 1 << j
            adjacency[j] |= 1 << i

    return Graph(order, adjacency)


def mask_of(graph: Graph) -> int:
    index = {pair: bit for bit, pair in enumerate(edge_pairs(graph.order))}
    return sum(1 << index[edge] for edge in graph.edges)


def chunk_ranges(order: int) -> list[tuple[int, int]]:
    total = 1 << len(edge_pairs(order))
    return [
        (start, min(start + CHUNK_MASKS, total))
        for start in range(0, total, CHUNK_MASKS)
    ]


@lru_cache(maxsize=None)
def _incidence(order: int) -> tuple[IntArray, IntArray]:
    pairs = edge_pairs(order)
    incidence = np.zeros((len(pairs), order), dtype=np.int64)
    neighbours = np.zeros((len(pairs), order), dtype=np.int64)

    for bit, (i, j) in enumerate(pairs):
        incidence[bit, i] = incidence[bit, j] = 1
        neighbours[bit, i] = 1 << j
        neighbours[bit, j] = 1 << i

    return incidence, neighbours


def decode_chunk(
    order: int, start: int, stop: int, target_size: int | None
) -> MaskChunk:
    """Decode masks start..stop-1 and keep the connected ones of the requested size."""
    masks = np.arange(start, stop, dtype=np.int64)
    edge_count = len(edge_pairs(order))
    shifts = np.arange(edge_count, dtype=np.int64)
    bits = ((masks[:, None] >> shifts) & 1).astype(np.uint8)

    if target_size is not None:
        keep = bits.sum(axis=1) == target_size
        masks, bits = masks[keep], bits[keep]

    incidence, neighbours = _incidence(order)
    wide = bits.astype(np.int64)
    degrees = wide @ incidence
    # Distinct powers of two, so the sum is the bitwise OR
    adjacency = wide @ neighbours

    reach = np.ones(len(masks), dtype=np.int64)
    for _ in range(order - 1):
        grown = reach.copy()
        for v in range(order):
            grown |= np.where((reach >> v) & 1, adjacency[:, v], 0)
        reach = grown

    connected = reach == (1 << order) - 1

    return MaskChunk(masks[connected], bits[connected], degrees[connected])


def iter_chunks(plan: EnumerationPlan) -> Iterator[MaskChunk]:
    """Decoded chunks of an internal plan, in mask order."""
    validate_plan(plan)

    if plan.source != "internal":
        raise EnumerationError("Mask chunks exist only for internal plans")

    task = partial(_decode, plan.order, plan.target_size)
    yield from parallel_map(task, chunk_ranges(plan.order), plan.workers)


def parallel_map(
    func: Callable[[T], R], items: Iterable[T], workers: int
) -> Iterator[R]:
    """
    Map ``func`` over ``items`` in order, in worker processes when workers > 1.

    ``func`` must be picklable when workers > 1 (a module-level function or a
    partial of one).
    """
    if workers == 1:
        yield from map(func, items)
        return

    with ProcessPoolExecutor(max_workers=workers) as executor:
        yield from executor.map(func, items)


def _decode(
    order: int, target_size: int | None, bounds: tuple[int, int]
) -> MaskChunk:
    return decode_chunk(order, bounds[0], bounds[1], target_size)


def _connected_masks(
    order: int, target_size: int | None, bounds: tuple[int, int]
) -> IntArray:
    return _decode(order, target_size, bounds).masks


def _first_codes(
    order: int, target_size: int | None, bounds: tuple[int, int]
) -> list[tuple[bytes, int]]:
    found: dict[bytes, int] = {}

    for mask in _connected_masks(order, target_size, bounds).tolist():
        code = canonical_code(graph_from_mask(order, mask))
        found.setdefault(code, mask)

    return list(found.items())


def _internal_graphs(plan: EnumerationPlan) -> Iterator[Graph]:
    ranges = chunk_ranges(plan.order)

    if not plan.dedup:
        task = partial(_connected_masks, plan.order, plan.target_size)
        for masks in parallel_map(task, ranges, plan.workers):
            for mask in masks.tolist():
                yield graph_from_mask(plan.order, mask)
        return

    seen: set[bytes] = set()
    task_codes = partial(_first_codes, plan.order, plan.target_size)

    for chunk in parallel_map(task_codes, ranges, plan.workers):
        for code, mask in chunk:
            if code not in seen:
                seen.add(code)
                yield graph_from_mask(plan.order, mask)


def _external_graphs(plan: EnumerationPlan) -> Iterator[Graph]:
    spec = plan.spec
    seen: set[bytes] = set()

    if plan.path == "-":
        records = read_graphs(sys.stdin.buffer, "stdin")
    else:
        with open(str(plan.path), "rb") as stream:
            records = list(read_graphs(stream, str(plan.path)))

    for record in records:
        graph = record["graph"]

        if not satisfies_class(graph, spec):
            continue

        if plan.dedup:
            code = canonical_code(graph)
            if code in seen:
                continue
            seen.add(code)

        yield graph


def enumerate_graphs(plan: EnumerationPlan) -> Iterator[Graph]:
    """
    Every graph of the plan's class, in a deterministic order.

    Internal plans emit graphs in increasing mask order (first occurrence per
    isomorphism class when deduplicating), whatever the worker count.
    """
    validate_plan(plan)
    logger.info(f"Enumerating {plan}")

    if plan.source == "external":
        yield from _external_graphs(plan)
    else:
        yield from _internal_graphs(plan)


def count_graphs(plan: EnumerationPlan) -> int:
    validate_plan(plan)

    if plan.source == "external":
        return sum(1 for _ in enumerate_graphs(plan))

    ranges = chunk_ranges(plan.order)

    if plan.dedup:
        task_codes = partial(_first_codes, plan.order, plan.target_size)
        codes = {
            code
            for chunk in parallel_map(task_codes, ranges, plan.workers)
            for code, _ in chunk
        }
        return len(codes)

    task = partial(_connected_masks, plan.order, plan.target_size)
    return sum(len(masks) for masks in parallel_map(task, ranges, plan.workers))

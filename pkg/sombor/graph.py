import os
from enum import Enum
from itertools import permutations
from itertools import product
from typing import Iterable
from typing import Iterator
from typing import Literal
from typing import Sequence
from typing import Tuple
from typing import TypedDict

from sombor.records import StructuralPredicates

# Orders above this are refused by canonical_code, permutations explode past it
CANONICAL_LIMIT = int(os.getenv("SOMBOR_CANONICAL_LIMIT", "9"))


class GraphError(Exception):
    pass


class GraphOrderError(GraphError):
    pass


class VertexOutOfRangeError(GraphError):
    pass


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class AdjacentPairError(GraphError):
    pass


class FamilyOrderError(GraphError):
    pass


class CanonicalLimitError(GraphError):
    pass


class Family(str, Enum):
    PATH = "path"
    CYCLE = "cycle"
    STAR = "star"
    COMPLETE = "complete"


# Smallest order each family is defined for
FAMILY_MINIMUM_ORDER = {
    Family.PATH: 1,
    Family.CYCLE: 3,
    Family.STAR: 2,
    Family.COMPLETE: 1,
}


class GraphClassSpec(TypedDict):
    order: int
    constraint: Literal["connected", "tree", "cyclomatic"]
    ell: int | None


class Graph:
    """
    Immutable simple undirected graph on the vertices 0..n-1.

    Adjacency is stored as one integer bitmask per vertex, degrees and the
    sorted edge tuple are computed once at construction. Instances are never
    mutated; add_edge_copy and relabel return new graphs.
    """

    __slots__ = ("_order", "_adjacency", "_degrees", "_edges")

    def __init__(self, order: int, adjacency: Sequence[int]) -> None:
        self._order = order
        self._adjacency = tuple(adjacency)
        self._degrees = tuple(row.bit_count() for row in self._adjacency)
        self._edges = tuple(
            (u, v)
            for v in range(order)
            for u in range(v)
            if self._adjacency[u] >> v & 1
        )

    @property
    def order(self) -> int:
        return self._order

    @property
    def size(self) -> int:
        return len(self._edges)

    @property
    def adjacency(self) -> Tuple[int, ...]:
        return self._adjacency

    @property
    def degrees(self) -> Tuple[int, ...]:
        return self._degrees

    @property
    def edges(self) -> Tuple[Tuple[int, int], ...]:
        # Column-major upper triangle: (0,1), (0,2), (1,2), (0,3), ...
        return self._edges

    def degree(self, vertex: int) -> int:
        return self._degrees[vertex]

    def neighbors(self, vertex: int) -> list[int]:
        row = self._adjacency[vertex]
        return [w for w in range(self._order) if row >> w & 1]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adjacency[u] >> v & 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented

        return self._order == other._order and self._adjacency == other._adjacency

    def __hash__(self) -> int:
        return hash((self._order, self._adjacency))

    def __repr__(self) -> str:
        return f"Graph(n={self._order}, edges={list(self._edges)})"


def build_graph(order: int, edge_list: Iterable[Tuple[int, int]]) -> Graph:
    if order < 1:
        raise GraphOrderError(f"Graph order must be positive, got {order}")

    adjacency = [0] * order

    for u, v in edge_list:
        for endpoint in (u, v):
            if not 0 <= endpoint < order:
                raise VertexOutOfRangeError(
                    f"Vertex {endpoint} outside 0..{order - 1}"
                )

        if u == v:
            raise SelfLoopError(f"Self-loop at vertex {u}")

        if adjacency[u] >> v & 1:
            raise DuplicateEdgeError(f"Duplicate edge ({u}, {v})")

        adjacency[u] |= 1 << v
        adjacency[v] |= 1 << u

    return Graph(order, adjacency)


def family(kind: Family | str, order: int) -> Graph:
    kind = Family(kind)

    if order < FAMILY_MINIMUM_ORDER[kind]:
        raise FamilyOrderError(
            f"{kind.value} graphs need at least {FAMILY_MINIMUM_ORDER[kind]} "
            f"vertices, got {order}"
        )

    if kind is Family.PATH:
        edges = [(i, i + 1) for i in range(order - 1)]
    elif kind is Family.CYCLE:
        edges = [(i, (i + 1) % order) for i in range(order)]
    elif kind is Family.STAR:
        # Center is vertex 0
        edges = [(0, i) for i in range(1, order)]
    else:
        edges = [(u, v) for v in range(order) for u in range(v)]

    return build_graph(order, edges)


def components(graph: Graph) -> list[int]:
    """Return one vertex bitmask per connected component, lowest vertex first."""
    remaining = (1 << graph.order) - 1
    found = []

    while remaining:
        seed = remaining & -remaining
        reach = seed
        frontier = seed

        while frontier:
            grown = 0
            for v in _bits(frontier):
                grown |= graph.adjacency[v]
            frontier = grown & ~reach
            reach |= grown

        found.append(reach)
        remaining &= ~reach

    return found


def is_connected(graph: Graph) -> bool:
    return len(components(graph)) == 1


def cyclomatic_number(graph: Graph) -> int:
    return graph.size - graph.order + len(components(graph))


def structural_predicates(graph: Graph) -> StructuralPredicates:
    """
    Degree-level structural flags used by the equality characterizations.

    The two edge-incidence flags quantify over all edges and are vacuously
    true on edgeless graphs.
    """
    degrees = graph.degrees
    min_degree = min(degrees)
    max_degree = max(degrees)

    return StructuralPredicates(
        is_regular=min_degree == max_degree,
        has_dominating_vertex=graph.order - 1 in degrees,
        min_degree=min_degree,
        max_degree=max_degree,
        every_edge_touches_min_degree=all(
            min_degree in (degrees[u], degrees[v]) for u, v in graph.edges
        ),
        every_edge_touches_max_degree=all(
            max_degree in (degrees[u], degrees[v]) for u, v in graph.edges
        ),
    )


def is_tree(graph: Graph) -> bool:
    return graph.size == graph.order - 1 and is_connected(graph)


def is_path_graph(graph: Graph) -> bool:
    return is_tree(graph) and max(graph.degrees) <= 2


def is_cycle_graph(graph: Graph) -> bool:
    return (
        graph.order >= 3
        and all(d == 2 for d in graph.degrees)
        and is_connected(graph)
    )


def is_star_graph(graph: Graph) -> bool:
    # S_2 = K_2 and S_3 = P_3 are included
    return (
        graph.order >= 2
        and graph.size == graph.order - 1
        and max(graph.degrees) == graph.order - 1
    )


def is_complete_graph(graph: Graph) -> bool:
    return graph.size == graph.order * (graph.order - 1) // 2


def satisfies_class(graph: Graph, spec: GraphClassSpec) -> bool:
    if graph.order != spec["order"] or not is_connected(graph):
        return False

    if spec["constraint"] == "tree":
        return graph.size == graph.order - 1

    if spec["constraint"] == "cyclomatic":
        return graph.size - graph.order + 1 == spec["ell"]

    return True


def add_edge_copy(graph: Graph, u: int, v: int) -> Graph:
    if u == v:
        raise SelfLoopError(f"Cannot add a self-loop at vertex {u}")

    for endpoint in (u, v):
        if not 0 <= endpoint < graph.order:
            raise VertexOutOfRangeError(
                f"Vertex {endpoint} outside 0..{graph.order - 1}"
            )

    if graph.has_edge(u, v):
        raise AdjacentPairError(f"Vertices {u} and {v} are already adjacent")

    adjacency = list(graph.adjacency)
    adjacency[u] |= 1 << v
    adjacency[v] |= 1 << u

    return Graph(graph.order, adjacency)


def relabel(graph: Graph, permutation: Sequence[int]) -> Graph:
    """Return the graph with vertex v renamed to permutation[v]."""
    return build_graph(
        graph.order, [(permutation[u], permutation[v]) for u, v in graph.edges]
    )


def canonical_code(graph: Graph, limit: int | None = None) -> bytes:
    """
    Isomorphism-invariant byte code of a graph.

    Vertices are split into cells by iterated degree refinement, then every
    ordering that keeps the cells in place is tried and the smallest
    upper-triangle adjacency code wins. The first byte is the order.
    """
    limit = CANONICAL_LIMIT if limit is None else limit

    if graph.order > limit:
        raise CanonicalLimitError(
            f"Canonical codes are limited to {limit} vertices, got {graph.order}"
        )

    best: int | None = None

    for choice in product(*(permutations(cell) for cell in _refined_cells(graph))):
        ordering = [v for cell in choice for v in cell]
        code = _triangle_code(graph, ordering)

        if best is None or code < best:
            best = code

    n = graph.order
    width = (n * (n - 1) // 2 + 7) // 8

    return bytes([n]) + (best or 0).to_bytes(width, "big")


def _refined_cells(graph: Graph) -> list[list[int]]:
    colors = list(graph.degrees)
    classes = len(set(colors))

    while True:
        signatures = [
            (colors[v], tuple(sorted(colors[w] for w in graph.neighbors(v))))
            for v in range(graph.order)
        ]
        palette = {sig: rank for rank, sig in enumerate(sorted(set(signatures)))}
        colors = [palette[sig] for sig in signatures]

        if len(palette) == classes:
            break

        classes = len(palette)

    cells: list[list[int]] = [[] for _ in range(classes)]
    for v, color in enumerate(colors):
        cells[color].append(v)

    return cells


def _triangle_code(graph: Graph, ordering: Sequence[int]) -> int:
    code = 0
    for j in range(1, len(ordering)):
        row = graph.adjacency[ordering[j]]
        for i in range(j):
            code = code << 1 | (row >> ordering[i] & 1)
    return code


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low

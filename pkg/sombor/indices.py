import math
from enum import Enum
from typing import Callable

import numpy as np
import numpy.typing as npt

from sombor.graph import Family
from sombor.graph import Graph

SQRT2 = math.sqrt(2)
SQRT5 = math.sqrt(5)


class DegreeError(ValueError):
    pass


class ClosedFormRangeError(ValueError):
    pass


class IndexKind(str, Enum):
    SO = "SO"
    DSO = "DSO"
    HSO = "HSO"
    CDSO = "CDSO"
    M1 = "M1"

    @classmethod
    def parse(cls, name: str) -> "IndexKind":
        return cls(name.upper())

    def contribution(self, x: int, y: int) -> float:
        return edge_contribution(self, x, y)


def _norm(x: int, y: int) -> float:
    return math.sqrt(x * x + y * y)


# Edge contribution h(x, y) of each bond-incident-degree index
EDGE_FUNCTIONS: dict[IndexKind, Callable[[int, int], float]] = {
    IndexKind.SO: _norm,
    IndexKind.DSO: lambda x, y: _norm(x, y) / (x + y),
    IndexKind.HSO: lambda x, y: _norm(x, y) / min(x, y),
    IndexKind.CDSO: lambda x, y: _norm(x, y) / max(x, y),
    IndexKind.M1: lambda x, y: float(x + y),
}


def edge_contribution(kind: IndexKind, x: int, y: int) -> float:
    if x < 1 or y < 1:
        raise DegreeError(f"Edge endpoints must have degree >= 1, got ({x}, {y})")

    return EDGE_FUNCTIONS[kind](x, y)


def index_value(graph: Graph, kind: IndexKind) -> float:
    # fsum is exact up to the final rounding, so the value does not depend on edge order
    degrees = graph.degrees
    return math.fsum(
        EDGE_FUNCTIONS[kind](degrees[u], degrees[v]) for u, v in graph.edges
    )


def all_indices(graph: Graph) -> dict[str, float]:
    return {kind.value: index_value(graph, kind) for kind in IndexKind}


def vertex_form_m1(graph: Graph) -> float:
    return float(sum(d * d for d in graph.degrees))


def cdso_normalized(graph: Graph) -> float:
    """CDSO with the 1/sqrt(2) factor of the complementary-index construction kept."""
    return index_value(graph, IndexKind.CDSO) / SQRT2


def index_table(kind: IndexKind, max_degree: int) -> npt.NDArray[np.float64]:
    """
    Lookup table of h(x, y) for 0 <= x, y <= max_degree.

    Row and column 0 are zero so degree arrays of masked-out edges can index
    it without a branch.
    """
    table = np.zeros((max_degree + 1, max_degree + 1), dtype=np.float64)

    for x in range(1, max_degree + 1):
        for y in range(1, max_degree + 1):
            table[x, y] = EDGE_FUNCTIONS[kind](x, y)

    return table


# Smallest order each closed form is valid for
CLOSED_FORM_MINIMUM_ORDER = {
    Family.PATH: 3,
    Family.CYCLE: 3,
    Family.STAR: 2,
    Family.COMPLETE: 2,
}


def closed_form(kind: IndexKind, family: Family | str, order: int) -> float:
    """
    Index value of P_n, C_n, S_n or K_n from its edge multiset.

    The path formula needs n >= 3: P_2 has a single (1, 1) edge, which the
    two (1, 2) end edges of the general formula do not describe.
    """
    family = Family(family)
    n = order

    if n < CLOSED_FORM_MINIMUM_ORDER[family]:
        raise ClosedFormRangeError(
            f"Closed form for {family.value} graphs needs n >= "
            f"{CLOSED_FORM_MINIMUM_ORDER[family]}, got {n}"
        )

    return CLOSED_FORMS[kind][family](n)


def _star_norm(n: int) -> float:
    return math.sqrt((n - 1) ** 2 + 1)


CLOSED_FORMS: dict[IndexKind, dict[Family, Callable[[int], float]]] = {
    IndexKind.SO: {
        Family.PATH: lambda n: 2 * SQRT5 + 2 * SQRT2 * (n - 3),
        Family.CYCLE: lambda n: 2 * SQRT2 * n,
        Family.STAR: lambda n: (n - 1) * _star_norm(n),
        Family.COMPLETE: lambda n: n * (n - 1) ** 2 / SQRT2,
    },
    IndexKind.DSO: {
        Family.PATH: lambda n: 2 * SQRT5 / 3 + (n - 3) * SQRT2 / 2,
        Family.CYCLE: lambda n: n * SQRT2 / 2,
        Family.STAR: lambda n: (n - 1) * _star_norm(n) / n,
        Family.COMPLETE: lambda n: n * (n - 1) * SQRT2 / 4,
    },
    IndexKind.HSO: {
        Family.PATH: lambda n: 2 * SQRT5 + (n - 3) * SQRT2,
        Family.CYCLE: lambda n: n * SQRT2,
        Family.STAR: lambda n: (n - 1) * _star_norm(n),
        Family.COMPLETE: lambda n: n * (n - 1) / SQRT2,
    },
    IndexKind.CDSO: {
        Family.PATH: lambda n: SQRT5 + (n - 3) * SQRT2,
        Family.CYCLE: lambda n: n * SQRT2,
        Family.STAR: _star_norm,
        Family.COMPLETE: lambda n: n * (n - 1) / SQRT2,
    },
    IndexKind.M1: {
        Family.PATH: lambda n: float(4 * n - 6),
        Family.CYCLE: lambda n: float(4 * n),
        Family.STAR: lambda n: float(n * (n - 1)),
        Family.COMPLETE: lambda n: float(n * (n - 1) ** 2),
    },
}

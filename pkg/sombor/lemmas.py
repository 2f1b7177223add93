"""
Auxiliary functions from the proofs of the HSO and CDSO bounds, and
exhaustive sign sweeps over their integer domains.

Each sweep returns a SweepReport whose ``violations`` list is empty when the
claimed inequality holds everywhere on the grid. Grids are evaluated with
numpy, one row of the parameter triangle at a time.
"""

import math

import numpy as np
import numpy.typing as npt

from sombor.indices import IndexKind
from sombor.indices import edge_contribution
from sombor.logger import get_logger
from sombor.records import SweepReport

logger = get_logger()

# Pairs the order-size lemma leaves out of its sign condition
LEMMA_EXCLUDED_PAIRS = frozenset({(1, 1), (1, 2), (2, 2)})

# Slack for inequalities that are tight on part of their domain
SWEEP_TOLERANCE = 1e-12

FloatArray = npt.NDArray[np.float64]


class LemmaDomainError(ValueError):
    pass


def _require_ordered(r: int, s: int) -> None:
    if not 1 <= r <= s:
        raise LemmaDomainError(f"Expected 1 <= r <= s, got r={r}, s={s}")


def _require_signed_kind(kind: IndexKind) -> None:
    if kind not in (IndexKind.HSO, IndexKind.CDSO):
        raise LemmaDomainError(
            f"Sign conditions are stated for HSO and CDSO, not {kind.value}"
        )


def _vector_h(kind: IndexKind, x: FloatArray, y: FloatArray) -> FloatArray:
    norm = np.sqrt(x * x + y * y)

    if kind is IndexKind.HSO:
        return norm / np.minimum(x, y)

    return norm / np.maximum(x, y)


def lemma_phi(kind: IndexKind, r: int, s: int) -> float:
    _require_ordered(r, s)

    h = edge_contribution
    rs = r * s

    return (
        h(kind, r, s)
        + 2 * h(kind, 1, 2) * (rs - r - s) / rs
        + h(kind, 2, 2) * (2 * r + 2 * s - 3 * rs) / rs
    )


def _phi_row(kind: IndexKind, s: int) -> FloatArray:
    r = np.arange(1, s + 1, dtype=np.float64)
    s_col = np.full_like(r, float(s))
    rs = r * s_col

    return (
        _vector_h(kind, r, s_col)
        + 2 * edge_contribution(kind, 1, 2) * (rs - r - s_col) / rs
        + edge_contribution(kind, 2, 2) * (2 * r + 2 * s_col - 3 * rs) / rs
    )


def lemma_pairs(s_max: int) -> list[tuple[int, int]]:
    return [
        (r, s)
        for s in range(1, s_max + 1)
        for r in range(1, s + 1)
        if (r, s) not in LEMMA_EXCLUDED_PAIRS
    ]


def sweep_phi_sign(kind: IndexKind, s_max: int) -> SweepReport:
    """
    Check the order-size lemma's sign condition on every pair r <= s <= s_max.

    HSO needs Phi > 0 (lower bound), CDSO needs Phi < 0 (reversed bound).
    """
    _require_signed_kind(kind)

    if s_max < 3:
        raise LemmaDomainError(f"s_max must be at least 3, got {s_max}")

    violations: list[tuple[int, ...]] = []
    checked = 0

    for s in range(3, s_max + 1):
        row = _phi_row(kind, s)
        bad = row <= 0 if kind is IndexKind.HSO else row >= 0
        checked += s
        violations.extend((int(r) + 1, s) for r in np.flatnonzero(bad))

    report = SweepReport(
        sweep=f"phi_sign_{kind.value}", checked=checked, violations=violations
    )
    _log_sweep(report)

    return report


def in_deng_set(i: int, j: int, n: int) -> bool:
    return 1 <= i <= j <= n - 1 and (i, j) != (1, n - 1)


def deng_H(i: int, j: int, n: int) -> float:
    if n < 3 or not 1 <= i <= j <= n - 1:
        raise LemmaDomainError(
            f"Expected 1 <= i <= j <= n-1 and n >= 3, got ({i}, {j}, {n})"
        )

    return (
        (n - 1)
        / n
        * math.sqrt((n - 1) ** 2 + 1)
        * (i + j)
        / (j * math.sqrt(i * i + j * j))
    )


def deng_raw(i: int, j: int, n: int) -> float:
    """Star-maximality condition with the HSO edge function; negative iff H > 1."""
    if n < 3 or not 1 <= i <= j <= n - 1:
        raise LemmaDomainError(
            f"Expected 1 <= i <= j <= n-1 and n >= 3, got ({i}, {j}, {n})"
        )

    h = edge_contribution
    return h(IndexKind.HSO, i, j) - (n - 1) / n * (1 / i + 1 / j) * h(
        IndexKind.HSO, 1, n - 1
    )


def sweep_deng(n_max: int, cross_check: bool = False) -> SweepReport:
    """
    Check H(i, j, n) > 1 on the set S1 for every 3 <= n <= n_max.

    With ``cross_check`` the raw condition is evaluated too and any pair where
    the two forms disagree counts as a violation.
    """
    violations: list[tuple[int, ...]] = []
    checked = 0

    for n in range(3, n_max + 1):
        i, j = np.triu_indices(n - 1)
        i = (i + 1).astype(np.float64)
        j = (j + 1).astype(np.float64)

        # Drop (1, n-1), the last pair of the first row
        keep = ~((i == 1) & (j == n - 1))
        i, j = i[keep], j[keep]

        star = math.sqrt((n - 1) ** 2 + 1)
        h_values = (n - 1) / n * star * (i + j) / (j * np.sqrt(i * i + j * j))
        bad = h_values <= 1

        if cross_check:
            raw = np.sqrt(i * i + j * j) / i - (n - 1) / n * (1 / i + 1 / j) * star
            bad |= (raw < 0) != (h_values > 1)

        checked += len(i)
        violations.extend((int(i[k]), int(j[k]), n) for k in np.flatnonzero(bad))

    report = SweepReport(sweep="deng_H", checked=checked, violations=violations)
    _log_sweep(report)

    return report


def prop5_aux_F(r: int, s: int) -> float:
    _require_ordered(r, s)

    sqrt2, sqrt5 = math.sqrt(2), math.sqrt(5)
    return (2 * sqrt5 - 3 * sqrt2) * r * s - 2 * (sqrt5 - sqrt2) * (r + s) + s * s


def prop5_aux_psi(r: int, s: int) -> float:
    _require_ordered(r, s)

    sqrt2, sqrt5 = math.sqrt(2), math.sqrt(5)
    return (
        (2 * sqrt5 - 3 * sqrt2) * r * s
        - 2 * (sqrt5 - sqrt2) * (r + s)
        + s * math.sqrt(r * r + s * s)
    )


def sweep_prop5(s_max: int) -> SweepReport:
    """
    Check the two cases of the HSO order-size proof.

    F(1, s) > 0 for 8 <= s <= s_max and F(s, s) > 0 for 3 <= s <= 8; F is
    minimised over r at r = 1 for s >= 8 and at r = s for 3 <= s <= 7; and
    Psi(r, s) > F(r, s) on every swept pair.
    """
    violations: list[tuple[int, ...]] = []
    checked = 0

    for s in range(3, s_max + 1):
        r = np.arange(1, s + 1, dtype=np.float64)
        base = (2 * math.sqrt(5) - 3 * math.sqrt(2)) * r * s - 2 * (
            math.sqrt(5) - math.sqrt(2)
        ) * (r + s)
        f_row = base + s * s
        psi_row = base + s * np.sqrt(r * r + s * s)

        bad = psi_row <= f_row

        if s >= 8:
            bad |= f_row < f_row[0] - SWEEP_TOLERANCE
            bad[0] |= f_row[0] <= 0

        if s <= 8:
            bad[-1] |= f_row[-1] <= 0

        if s <= 7:
            bad |= f_row < f_row[-1] - SWEEP_TOLERANCE

        checked += s
        violations.extend((int(k) + 1, s) for k in np.flatnonzero(bad))

    report = SweepReport(sweep="prop5_F", checked=checked, violations=violations)
    _log_sweep(report)

    return report


def sweep_prop2_inequality(delta_max: int, d_max: int) -> SweepReport:
    """
    phi(delta, d) - phi(delta+1, d) >= phi(delta, delta+1) - phi(delta+1, delta+1)
    for every delta < d <= d_max, with phi the HSO edge function.
    """
    violations: list[tuple[int, ...]] = []
    checked = 0

    for delta in range(1, delta_max + 1):
        d = np.arange(delta + 1, d_max + 1, dtype=np.float64)
        low = np.full_like(d, float(delta))
        high = low + 1

        lhs = _vector_h(IndexKind.HSO, low, d) - _vector_h(IndexKind.HSO, high, d)
        rhs = edge_contribution(IndexKind.HSO, delta, delta + 1) - edge_contribution(
            IndexKind.HSO, delta + 1, delta + 1
        )

        checked += len(d)
        violations.extend(
            (delta, int(d[k])) for k in np.flatnonzero(lhs < rhs - SWEEP_TOLERANCE)
        )

    report = SweepReport(
        sweep="prop2_inequality", checked=checked, violations=violations
    )
    _log_sweep(report)

    return report


def prop2_closing(delta: int) -> float:
    h = edge_contribution
    return 2 * delta * h(IndexKind.HSO, delta, delta + 1) - (2 * delta + 1) * h(
        IndexKind.HSO, delta + 1, delta + 1
    )


def sweep_prop2_closing(delta_max: int) -> SweepReport:
    violations: list[tuple[int, ...]] = [
        (delta,) for delta in range(1, delta_max + 1) if prop2_closing(delta) <= 0
    ]

    report = SweepReport(
        sweep="prop2_closing", checked=delta_max, violations=violations
    )
    _log_sweep(report)

    return report


def cdso_decrease_closing(d: int) -> float:
    """CDSO(G) - CDSO(G+uv) for d(u) = 4 d(v) = 4d with uniform neighbourhoods."""
    if d < 1:
        raise LemmaDomainError(f"Expected d >= 1, got {d}")

    def phi(x: int, y: int) -> float:
        return edge_contribution(IndexKind.CDSO, x, y)

    return (
        4 * d * (phi(4 * d, 4 * d) - phi(4 * d + 1, 4 * d))
        + d * (phi(d, d) - phi(d + 1, d))
        - phi(4 * d + 1, d + 1)
    )


def sweep_cdso_decrease_closing(d_max: int) -> SweepReport:
    violations: list[tuple[int, ...]] = [
        (d,) for d in range(3, d_max + 1) if cdso_decrease_closing(d) <= 0
    ]

    report = SweepReport(
        sweep="cdso_decrease_closing", checked=max(d_max - 2, 0), violations=violations
    )
    _log_sweep(report)

    return report


def sweep_edge_function_symmetry(s_max: int) -> SweepReport:
    violations: list[tuple[int, ...]] = []

    for position, kind in enumerate(IndexKind):
        for x in range(1, s_max + 1):
            for y in range(1, x):
                if edge_contribution(kind, x, y) != edge_contribution(kind, y, x):
                    violations.append((position, x, y))

    report = SweepReport(
        sweep="edge_function_symmetry",
        checked=len(IndexKind) * s_max * (s_max - 1) // 2,
        violations=violations,
    )
    _log_sweep(report)

    return report


def run_all_sweeps(
    s_max: int,
    n_max: int = 300,
    delta_max: int = 200,
    d_max: int = 400,
    cross_check: bool = False,
) -> list[SweepReport]:
    return [
        sweep_phi_sign(IndexKind.HSO, s_max),
        sweep_phi_sign(IndexKind.CDSO, s_max),
        sweep_deng(n_max, cross_check=cross_check),
        sweep_prop5(s_max),
        sweep_prop2_inequality(delta_max, d_max),
        sweep_prop2_closing(delta_max),
        sweep_cdso_decrease_closing(delta_max),
        sweep_edge_function_symmetry(min(s_max, 60)),
    ]


def _log_sweep(report: SweepReport) -> None:
    if report["violations"]:
        logger.error(
            f"Sweep {report['sweep']}: {len(report['violations'])} violations, "
            f"first {report['violations'][0]}"
        )
    else:
        logger.info(f"Sweep {report['sweep']}: {report['checked']} cases hold")

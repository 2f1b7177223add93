"""
Report envelopes and their serializations.

Every result leaves the package as a Report: a kind tag, the schema version
and a JSON-compatible payload. Floats are rounded to 12 significant digits
(correctly rounded, ties to even) before serialization and graphs are
written as graph6, so identical inputs give byte-identical output. Graphs
beyond the short graph6 form are written as null.

CSV column order per report kind:

    bound         BoundReport field order
    monotonicity  MonotonicityReport field order
    sweep         sweep, checked, violation_count, first_violation
    index         source, graph6, SO, DSO, HSO, CDSO, M1
    extremal      order, constraint, ell, index, direction, optimum,
                  examined, witnesses, near_tie
    conjecture    order, ell, cdso_min, hso_max, cdso_max, hso_min,
                  dominating_vertex_all_witnesses, degree_conjecture_applicable,
                  degree_conjecture_holds
"""

import csv
import json
from enum import Enum
from typing import Any
from typing import Callable
from typing import Iterable
from typing import Mapping
from typing import TextIO

from sombor.graph import Graph
from sombor.graph6 import GRAPH6_SHORT_LIMIT
from sombor.graph6 import write_graph6
from sombor.records import BoundReport
from sombor.records import ConjectureReport
from sombor.records import ExtremalResult
from sombor.records import MonotonicityReport
from sombor.records import Report
from sombor.records import SweepReport

SCHEMA_VERSION = "1"
SIGNIFICANT_DIGITS = 12


class ReportError(Exception):
    pass


def round_number(value: float) -> float:
    return float(format(value, f".{SIGNIFICANT_DIGITS}g"))


def to_jsonable(value: Any) -> Any:
    """Convert a payload tree: graphs to graph6, tuples to lists, floats rounded."""
    if isinstance(value, Graph):
        if value.order > GRAPH6_SHORT_LIMIT:
            return None
        return write_graph6(value).decode("ascii")

    if isinstance(value, Enum):
        return value.value

    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value

    if isinstance(value, float):
        return round_number(value)

    if isinstance(value, Mapping):
        return {str(key): to_jsonable(item) for key, item in value.items()}

    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]

    raise ReportError(f"Cannot serialize {type(value).__name__} in a report")


def make_report(kind: str, payload: Mapping[str, Any]) -> Report:
    if kind not in CSV_COLUMNS:
        raise ReportError(f"Unknown report kind: {kind}")

    return Report(
        kind=kind,  # type: ignore[typeddict-item]
        schema=SCHEMA_VERSION,
        payload=to_jsonable(payload),
    )


def bound_report(report: BoundReport) -> Report:
    return make_report("bound", report)


def monotonicity_report(report: MonotonicityReport) -> Report:
    return make_report("monotonicity", report)


def sweep_report(report: SweepReport) -> Report:
    return make_report("sweep", report)


def extremal_report(result: ExtremalResult) -> Report:
    return make_report("extremal", result)


def conjecture_report_envelope(report: ConjectureReport) -> Report:
    return make_report("conjecture", report)


def index_report(source: str, graph: Graph, values: Mapping[str, float]) -> Report:
    return make_report("index", {"source": source, "graph": graph, **values})


def to_json_line(report: Report) -> str:
    return json.dumps(
        {
            "kind": report["kind"],
            "schema": report["schema"],
            "payload": report["payload"],
        },
        separators=(",", ":"),
        ensure_ascii=True,
        allow_nan=False,
    )


def write_json_lines(reports: Iterable[Report], stream: TextIO) -> int:
    written = 0

    for report in reports:
        stream.write(to_json_line(report) + "\n")
        written += 1

    return written


def _sweep_row(payload: dict[str, Any]) -> list[Any]:
    violations = payload["violations"]
    first = " ".join(str(v) for v in violations[0]) if violations else ""
    return [payload["sweep"], payload["checked"], len(violations), first]


def _index_row(payload: dict[str, Any]) -> list[Any]:
    keys = ("source", "graph", "SO", "DSO", "HSO", "CDSO", "M1")
    return [payload.get(key) for key in keys]


def _extremal_row(payload: dict[str, Any]) -> list[Any]:
    spec = payload["spec"]
    return [
        spec["order"],
        spec["constraint"],
        spec["ell"],
        payload["index"],
        payload["direction"],
        payload["optimum"],
        payload["examined"],
        " ".join(payload["witnesses"]),
        payload["near_tie"],
    ]


def _conjecture_row(payload: dict[str, Any]) -> list[Any]:
    degree = payload["degree_conjecture"]
    return [
        payload["order"],
        payload["ell"],
        payload["cdso_min_result"]["optimum"],
        payload["hso_max_result"]["optimum"],
        payload["cdso_max_result"]["optimum"],
        payload["hso_min_result"]["optimum"],
        payload["dominating_vertex_all_witnesses"],
        degree["applicable"],
        degree["holds"],
    ]


def _field_row(columns: list[str]) -> Callable[[dict[str, Any]], list[Any]]:
    return lambda payload: [payload[column] for column in columns]


CSV_COLUMNS: dict[str, list[str]] = {
    "bound": list(BoundReport.__annotations__),
    "monotonicity": list(MonotonicityReport.__annotations__),
    "sweep": ["sweep", "checked", "violation_count", "first_violation"],
    "index": ["source", "graph6", "SO", "DSO", "HSO", "CDSO", "M1"],
    "extremal": [
        "order",
        "constraint",
        "ell",
        "index",
        "direction",
        "optimum",
        "examined",
        "witnesses",
        "near_tie",
    ],
    "conjecture": [
        "order",
        "ell",
        "cdso_min",
        "hso_max",
        "cdso_max",
        "hso_min",
        "dominating_vertex_all_witnesses",
        "degree_conjecture_applicable",
        "degree_conjecture_holds",
    ],
}

CSV_ROWS: dict[str, Callable[[dict[str, Any]], list[Any]]] = {
    "bound": _field_row(CSV_COLUMNS["bound"]),
    "monotonicity": _field_row(CSV_COLUMNS["monotonicity"]),
    "sweep": _sweep_row,
    "index": _index_row,
    "extremal": _extremal_row,
    "conjecture": _conjecture_row,
}


def csv_row(report: Report) -> list[str]:
    return [_cell(value) for value in CSV_ROWS[report["kind"]](report["payload"])]


def _cell(value: Any) -> str:
    if value is None:
        return ""

    if isinstance(value, bool):
        return "true" if value else "false"

    if isinstance(value, float):
        return repr(value)

    return str(value)


def write_csv(reports: Iterable[Report], stream: TextIO) -> int:
    """Write reports of one kind as CSV with its documented header."""
    writer = csv.writer(stream, lineterminator="\n")
    kind: str | None = None
    written = 0

    for report in reports:
        if kind is None:
            kind = report["kind"]
            writer.writerow(CSV_COLUMNS[kind])
        elif report["kind"] != kind:
            raise ReportError(
                f"CSV output holds one report kind, got {report['kind']} after {kind}"
            )

        writer.writerow(csv_row(report))
        written += 1

    return written


def format_human(report: Report) -> str:
    columns = CSV_COLUMNS[report["kind"]]
    cells = csv_row(report)

    return f"[{report['kind']}] " + " ".join(
        f"{column}={cell or '-'}" for column, cell in zip(columns, cells)
    )


def write_human(reports: Iterable[Report], stream: TextIO) -> int:
    written = 0

    for report in reports:
        stream.write(format_human(report) + "\n")
        written += 1

    return written


WRITERS: dict[str, Callable[[Iterable[Report], TextIO], int]] = {
    "json": write_json_lines,
    "csv": write_csv,
    "human": write_human,
}

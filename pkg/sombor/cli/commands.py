import sys
from typing import Callable
from typing import Iterator

from sombor.bounds import VerificationFailure
from sombor.bounds import check_all
from sombor.bounds import report_problems as bound_problems
from sombor.cli.config import RunConfig
from sombor.enumeration import EmptyClassError
from sombor.enumeration import EnumerationPlan
from sombor.enumeration import enumerate_graphs
from sombor.enumeration import mask_of
from sombor.extremal import Direction
from sombor.extremal import conjecture_report
from sombor.extremal import find_extremal
from sombor.graph import family
from sombor.graph6 import parse_edge_list
from sombor.graph6 import parse_graph6
from sombor.graph6 import read_graphs
from sombor.graph6 import write_edge_list
from sombor.graph6 import write_graph6
from sombor.indices import IndexKind
from sombor.indices import index_value
from sombor.lemmas import run_all_sweeps
from sombor.logger import get_logger
from sombor.monotonicity import report_problems as monotonicity_problems
from sombor.monotonicity import scan_graph
from sombor.records import GraphRecord
from sombor.records import Report
from sombor.records import SweepReport
from sombor.report import bound_report
from sombor.report import conjecture_report_envelope
from sombor.report import extremal_report
from sombor.report import index_report
from sombor.report import monotonicity_report
from sombor.report import sweep_report

logger = get_logger()

# Orders and cyclomatic numbers the conjectures command covers by default
CONJECTURE_ORDERS = range(4, 9)
CONJECTURE_ELLS = range(1, 4)


class UsageError(Exception):
    pass


def _require_order(config: RunConfig) -> int:
    if config["n"] is None:
        raise UsageError(f"{config['command']} needs --n")

    return config["n"]


def _kinds(config: RunConfig) -> list[IndexKind]:
    if not config["index"]:
        return list(IndexKind)

    return [IndexKind.parse(name) for name in config["index"]]


def graph_records(config: RunConfig) -> Iterator[GraphRecord]:
    """Input graphs: a family, an exhaustive class, a file or standard input."""
    if config["family"]:
        n = _require_order(config)
        yield GraphRecord(
            source=f"family:{config['family']}:{n}", graph=family(config["family"], n)
        )
        return

    if config["exhaustive"]:
        n = _require_order(config)
        plan = EnumerationPlan(
            order=n, dedup=config["dedup"], workers=config["workers"]
        )
        for number, graph in enumerate(enumerate_graphs(plan), start=1):
            yield GraphRecord(source=f"connected:{n}:{number}", graph=graph)
        return

    path = config["input"] or "-"

    if path == "-":
        yield from read_graphs(sys.stdin.buffer, "stdin")
    else:
        with open(path, "rb") as stream:
            yield from read_graphs(stream, path)


def _fail_on(problems: list[str]) -> None:
    if problems:
        for problem in problems:
            logger.error(problem)
        raise VerificationFailure(f"{len(problems)} problems, first: {problems[0]}")


def compute(config: RunConfig) -> Iterator[Report]:
    kinds = _kinds(config)

    for record in graph_records(config):
        values = {kind.value: index_value(record["graph"], kind) for kind in kinds}
        yield index_report(record["source"], record["graph"], values)


def bounds(config: RunConfig) -> Iterator[Report]:
    problems: list[str] = []
    checked = 0

    for record in graph_records(config):
        reports = check_all(record["graph"], record["source"], tolerance=config["tol"])

        for report in reports:
            problems.extend(bound_problems(report))
            yield bound_report(report)
        checked += 1

    logger.info(f"Checked bounds on {checked} graphs, {len(problems)} problems")
    _fail_on(problems)


def monotonicity(config: RunConfig) -> Iterator[Report]:
    problems: list[str] = []

    for record in graph_records(config):
        for report in scan_graph(record["graph"], record["source"]):
            problems.extend(monotonicity_problems(report, config["tol"]))
            yield monotonicity_report(report)

    _fail_on(problems)


def _plan(config: RunConfig, order: int) -> EnumerationPlan:
    if config["ell"] is not None:
        constraint = "cyclomatic"
    else:
        constraint = config["constraint"]

    return EnumerationPlan(
        order=order,
        constraint=constraint,  # type: ignore[arg-type]
        ell=config["ell"],
        dedup=config["dedup"],
        source="external" if config["input"] else "internal",
        path=config["input"],
        workers=config["workers"],
    )


def extremal(config: RunConfig) -> Iterator[Report]:
    plan = _plan(config, _require_order(config))
    directions: list[Direction] = (
        [config["direction"]] if config["direction"] else ["min", "max"]
    )

    for kind in _kinds(config):
        for direction in directions:
            result = find_extremal(plan, kind, direction, config["tol"])
            yield extremal_report(result)


def conjectures(config: RunConfig) -> Iterator[Report]:
    orders = [config["n"]] if config["n"] is not None else list(CONJECTURE_ORDERS)
    ells = [config["ell"]] if config["ell"] is not None else list(CONJECTURE_ELLS)
    explicit = config["n"] is not None and config["ell"] is not None

    for n in orders:
        for ell in ells:
            try:
                report = conjecture_report(n, ell, config["workers"], config["tol"])
            except EmptyClassError:
                if explicit:
                    raise
                logger.info(f"Skipping n={n}, ell={ell}: no such connected graph")
                continue

            yield conjecture_report_envelope(report)


def sweeps(config: RunConfig) -> Iterator[Report]:
    problems: list[str] = []

    for report in run_all_sweeps(config["smax"], cross_check=config["debug"]):
        if report["violations"]:
            problems.append(
                f"sweep {report['sweep']} failed at {report['violations'][0]}"
            )
        yield sweep_report(report)

    _fail_on(problems)


def roundtrip(config: RunConfig) -> Iterator[Report]:
    """graph6 and edge-list round trips over every connected graph up to --n."""
    problems: list[str] = []

    for order in range(1, (config["n"] or 6) + 1):
        violations: list[tuple[int, ...]] = []
        checked = 0

        for graph in enumerate_graphs(EnumerationPlan(order=order)):
            checked += 1
            if (
                parse_graph6(write_graph6(graph)) != graph
                or parse_edge_list(write_edge_list(graph)) != graph
            ):
                violations.append((mask_of(graph),))

        report = SweepReport(
            sweep=f"roundtrip_{order}", checked=checked, violations=violations
        )
        if violations:
            problems.append(f"round trip failed for order {order} mask {violations[0]}")
        yield sweep_report(report)

    _fail_on(problems)


COMMANDS: dict[str, Callable[[RunConfig], Iterator[Report]]] = {
    "compute": compute,
    "bounds": bounds,
    "monotonicity": monotonicity,
    "extremal": extremal,
    "conjectures": conjectures,
    "sweeps": sweeps,
    "roundtrip": roundtrip,
}

import io
import json
import math
import sys
from pathlib import Path
from unittest import mock

import pytest

from sombor.bounds import BOUNDS
from sombor.bounds import BoundForm
from sombor.bounds import BoundId
from sombor.bounds import BoundSpec
from sombor.cli.cli import EXIT_OK
from sombor.cli.cli import EXIT_USAGE
from sombor.cli.cli import EXIT_VERIFICATION
from sombor.cli.cli import main
from sombor.cli.config import DEFAULTS
from sombor.cli.config import ConfigError
from sombor.cli.config import build_config
from sombor.cli.config import load_config_file
from sombor.indices import IndexKind


def json_lines(text):
    return [json.loads(line) for line in text.splitlines()]


@pytest.fixture
def stdin_bytes(monkeypatch):
    def feed(data):
        monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(data)))

    return feed


@pytest.fixture
def config_file(tmp_path):
    def write(values):
        path = tmp_path / "sombor.json"
        path.write_text(json.dumps(values))
        return str(path)

    return write


class TestCompute:
    def test_star_hso(self, capsys):
        code = main(["compute", "--family", "star", "--n", "7", "--index", "hso"])
        reports = json_lines(capsys.readouterr().out)

        assert code == EXIT_OK
        assert len(reports) == 1
        assert reports[0]["kind"] == "index"
        assert reports[0]["payload"]["source"] == "family:star:7"
        assert reports[0]["payload"]["HSO"] == pytest.approx(6 * math.sqrt(37))
        assert "SO" not in reports[0]["payload"]

    def test_reads_stdin(self, capsys, stdin_bytes):
        stdin_bytes(b"Bw\nBg\n")

        code = main(["compute", "--index", "m1", "--index", "CDSO"])
        reports = json_lines(capsys.readouterr().out)

        assert code == EXIT_OK
        assert [r["payload"]["source"] for r in reports] == ["stdin:1", "stdin:2"]
        assert reports[0]["payload"]["M1"] == 12.0

    def test_reads_file(self, capsys, tmp_path):
        path = tmp_path / "triangle.txt"
        path.write_text("3\n0 1\n1 2\n0 2\n")

        code = main(["compute", "-i", str(path), "--index", "hso"])
        reports = json_lines(capsys.readouterr().out)

        assert code == EXIT_OK
        assert reports[0]["payload"]["HSO"] == pytest.approx(3 * math.sqrt(2))

    def test_malformed_stdin(self, capsys, stdin_bytes):
        stdin_bytes(b"B!\n")

        assert main(["compute"]) == EXIT_USAGE

    def test_unicode_digit_in_edge_list(self, stdin_bytes):
        stdin_bytes("3\n0 \u00b2\n".encode("utf-8"))

        assert main(["compute"]) == EXIT_USAGE

    def test_missing_file(self, tmp_path):
        assert main(["compute", "-i", str(tmp_path / "absent.g6")]) == EXIT_USAGE

    def test_long_edge_list(self, capsys, tmp_path):
        path = tmp_path / "p63.txt"
        path.write_text("63\n" + "".join(f"{v} {v + 1}\n" for v in range(62)))

        code = main(["compute", "-i", str(path), "--index", "hso"])
        reports = json_lines(capsys.readouterr().out)

        assert code == EXIT_OK
        assert reports[0]["payload"]["graph"] is None
        assert reports[0]["payload"]["HSO"] == pytest.approx(
            2 * math.sqrt(5) + 60 * math.sqrt(2)
        )

    def test_human_format(self, capsys):
        code = main(["compute", "--family", "cycle", "--n", "5", "-f", "human"])

        assert code == EXIT_OK
        assert capsys.readouterr().out.startswith("[index] source=family:cycle:5 ")

    def test_family_needs_order(self):
        assert main(["compute", "--family", "path"]) == EXIT_USAGE


class TestVerificationCommands:
    def test_exhaustive_bounds(self, capsys):
        code = main(["bounds", "--order", "5", "--exhaustive", "--dedup"])
        reports = json_lines(capsys.readouterr().out)

        assert code == EXIT_OK
        assert {r["kind"] for r in reports} == {"bound"}
        assert all(r["payload"]["holds"] for r in reports)

    def test_broken_bound_exits_with_failure(self, capsys):
        broken = BoundSpec(
            IndexKind.HSO,
            lambda facts: True,
            lambda facts: BoundForm(1e9, None, False, False),
        )

        with mock.patch.dict(BOUNDS, {BoundId.HSO_GE_SQRT2M: broken}):
            code = main(["bounds", "--family", "cycle", "--n", "4"])

        assert code == EXIT_VERIFICATION

    def test_monotonicity(self, capsys):
        code = main(["monotonicity", "--family", "star", "--n", "4"])
        reports = json_lines(capsys.readouterr().out)

        assert code == EXIT_OK
        assert len(reports) == 3
        assert all(r["payload"]["hso_decrease_condition"] for r in reports)

    def test_sweeps(self, capsys):
        code = main(["sweeps", "--smax", "200", "-f", "csv"])
        lines = capsys.readouterr().out.splitlines()

        assert code == EXIT_OK
        assert lines[0] == "sweep,checked,violation_count,first_violation"
        assert len(lines) == 9

    def test_roundtrip(self, capsys):
        code = main(["roundtrip", "--n", "5"])
        reports = json_lines(capsys.readouterr().out)

        assert code == EXIT_OK
        assert [r["payload"]["checked"] for r in reports] == [1, 1, 4, 38, 728]


class TestSearchCommands:
    def test_extremal(self, capsys):
        code = main(
            ["extremal", "--n", "5", "--index", "hso", "--direction", "min"]
        )
        reports = json_lines(capsys.readouterr().out)

        assert code == EXIT_OK
        assert len(reports) == 1
        assert reports[0]["payload"]["optimum"] == pytest.approx(5 * math.sqrt(2))
        assert len(reports[0]["payload"]["witnesses"]) == 1

    def test_extremal_both_directions(self, capsys):
        code = main(["extremal", "--n", "5", "--class", "tree", "--index", "cdso"])
        reports = json_lines(capsys.readouterr().out)

        assert code == EXIT_OK
        assert [r["payload"]["direction"] for r in reports] == ["min", "max"]

    def test_conjectures(self, capsys):
        code = main(["conjectures", "--n", "5", "--ell", "2"])
        reports = json_lines(capsys.readouterr().out)

        assert code == EXIT_OK
        assert reports[0]["kind"] == "conjecture"
        assert reports[0]["payload"]["degree_conjecture"]["applicable"]

    def test_conjectures_golden_output(self, capsys):
        golden = Path(__file__).parent.parent / "data" / "conjectures_5_1.jsonl"

        code = main(["conjectures", "--n", "5", "--ell", "1"])

        assert code == EXIT_OK
        assert capsys.readouterr().out == golden.read_text()

    def test_conjectures_empty_class(self):
        assert main(["conjectures", "--n", "5", "--ell", "7"]) == EXIT_USAGE

    def test_exhaustive_cap(self):
        assert main(["compute", "--exhaustive", "--n", "9"]) == EXIT_USAGE


class TestConfiguration:
    def test_file_sets_format(self, capsys, config_file):
        path = config_file({"format": "csv", "index": ["hso"]})

        code = main(["compute", "-c", path, "--family", "path", "--n", "4"])

        assert code == EXIT_OK
        assert capsys.readouterr().out.splitlines()[0].startswith("source,graph6,")

    def test_flag_overrides_file(self, capsys, config_file):
        path = config_file({"format": "csv"})

        code = main(
            ["compute", "-c", path, "--family", "path", "--n", "4", "-f", "json"]
        )

        assert code == EXIT_OK
        assert json_lines(capsys.readouterr().out)[0]["kind"] == "index"

    def test_unknown_key(self, config_file):
        path = config_file({"colour": "red"})

        assert main(["compute", "-c", path]) == EXIT_USAGE

    def test_non_positive_tolerance(self):
        assert main(["bounds", "--family", "path", "--n", "3", "--tol", "0"]) == 2

    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["frobnicate"])

        assert excinfo.value.code == 2

    def test_build_config_precedence(self):
        config = build_config("compute", {"workers": 3, "smax": 50}, {"workers": 2})

        assert config["workers"] == 2
        assert config["smax"] == 50
        assert config["tol"] == DEFAULTS["tol"]
        assert config["command"] == "compute"

    @pytest.mark.parametrize(
        "values",
        [{"workers": 0}, {"smax": 2}, {"index": ["abc"]}, {"family": "wheel"}],
    )
    def test_invalid_values(self, values):
        with pytest.raises(ConfigError):
            build_config("compute", values, {})

    def test_load_rejects_non_object(self, config_file):
        with pytest.raises(ConfigError):
            load_config_file(config_file([1, 2]))

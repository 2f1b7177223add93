import math
import shutil
import subprocess
from unittest import mock

import pytest

from sombor.bounds import BOUNDS
from sombor.bounds import BoundForm
from sombor.bounds import BoundId
from sombor.bounds import BoundSpec
from sombor.bounds import UnknownBoundError
from sombor.bounds import VerificationFailure
from sombor.bounds import check_all
from sombor.bounds import check_bound
from sombor.bounds import report_problems
from sombor.bounds import verify_bounds
from sombor.enumeration import EnumerationPlan
from sombor.enumeration import enumerate_graphs
from sombor.graph import build_graph
from sombor.graph import family
from sombor.graph import is_path_graph
from sombor.graph import is_star_graph
from sombor.graph import is_tree
from sombor.indices import IndexKind


class TestCheckBound:
    def test_regular_graph_meets_sqrt2m(self):
        report = check_bound(family("cycle", 5), BoundId.HSO_GE_SQRT2M)

        assert report["hypothesis_met"]
        assert report["holds"]
        assert report["lower"] == pytest.approx(5 * math.sqrt(2))
        assert report["equality_low"]
        assert report["structural_low"]
        assert report["upper"] is None

    def test_star_is_strict_for_sqrt2m(self, star4):
        report = check_bound(star4, "HSO_GE_SQRT2M")

        assert report["holds"]
        assert not report["equality_low"]
        assert not report["structural_low"]

    def test_cycle_star_sandwich(self):
        report = check_bound(family("star", 6), BoundId.HSO_CYCLE_STAR)

        assert report["lower"] == pytest.approx(6 * math.sqrt(2))
        assert report["upper"] == pytest.approx(5 * math.sqrt(26))
        assert report["equality_high"]
        assert report["structural_high"]
        assert report["structural_equality_predicted"]

    def test_unmet_hypothesis_has_no_bounds(self, two_k2):
        report = check_bound(two_k2, BoundId.CDSO_CONNECTED_RANGE)

        assert not report["hypothesis_met"]
        assert report["lower"] is None
        assert report["upper"] is None
        assert report["holds"]
        assert report_problems(report) == []

    def test_tree_range_needs_a_tree(self):
        report = check_bound(family("cycle", 5), BoundId.CDSO_TREE_RANGE)

        assert not report["hypothesis_met"]

    def test_order_size_on_path(self):
        report = check_bound(family("path", 6), BoundId.CDSO_ORDER_SIZE_UPPER)

        assert report["upper"] == pytest.approx(math.sqrt(5) + 3 * math.sqrt(2))
        assert report["equality_high"]

    def test_unknown_bound(self, star4):
        with pytest.raises(UnknownBoundError):
            check_bound(star4, "HSO_GE_EVERYTHING")

    def test_report_index(self, star4):
        assert check_bound(star4, BoundId.CDSO_LE_HSO)["index"] == "CDSO"
        assert check_bound(star4, BoundId.HSO_GE_M1)["index"] == "HSO"


class TestCheckAll:
    def test_single_edge(self):
        reports = check_all(family("path", 2))
        ids = [report["bound"] for report in reports]

        # n = 2 meets every connected n >= 2 hypothesis but not n >= 3 or n >= 4
        assert "HSO_GE_SQRT2M" in ids
        assert "CDSO_LE_HSO" in ids
        assert "HSO_CYCLE_STAR" not in ids
        assert "HSO_ORDER_SIZE_LOWER" not in ids
        assert all(report["holds"] for report in reports)

    def test_declaration_order(self):
        reports = check_all(family("path", 5), include_unmet=True)

        assert [report["bound"] for report in reports] == [b.value for b in BoundId]

    def test_disconnected_graph(self, two_k2):
        reports = check_all(two_k2, include_unmet=True)
        met = {report["bound"]: report["hypothesis_met"] for report in reports}

        assert len(reports) == len(BoundId)
        assert met["CDSO_LE_HSO"]
        assert not met["HSO_GE_SQRT2M"]
        assert not met["CDSO_CONNECTED_RANGE"]

    def test_default_drops_unmet(self, two_k2):
        assert [report["bound"] for report in check_all(two_k2)] == ["CDSO_LE_HSO"]

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
    def test_exhaustive_agreement(self, connected_atlas, n):
        for graph in connected_atlas[n]:
            for report in check_all(graph, source=repr(graph)):
                assert report_problems(report) == []

    @pytest.mark.parametrize(
        "bound",
        [
            BoundId.HSO_CYCLE_STAR,
            BoundId.HSO_ORDER_SIZE_LOWER,
            BoundId.CDSO_ORDER_SIZE_UPPER,
        ],
    )
    def test_labeled_order_six(self, bound):
        checked = 0

        for graph in enumerate_graphs(EnumerationPlan(order=6)):
            assert report_problems(check_bound(graph, bound)) == []
            checked += 1

        assert checked == 26704

    def test_tree_bounds_equal_on_stars_only(self, connected_atlas):
        for n in range(4, 8):
            for graph in filter(is_tree, connected_atlas[n]):
                report = check_bound(graph, BoundId.CDSO_TREE_RANGE)

                assert report["hypothesis_met"]
                assert report["equality_low"] == is_star_graph(graph)

    def test_cdso_le_hso_equality_needs_equal_degree_edges(self, connected_atlas):
        for graph in connected_atlas[6]:
            report = check_bound(graph, BoundId.CDSO_LE_HSO)
            regular = len(set(graph.degrees)) == 1

            assert report["equality_high"] == regular


class TestVerification:
    def test_verify_passes(self):
        reports = verify_bounds(family("complete", 5), "K5")

        assert all(report["source"] == "K5" for report in reports)

    def test_broken_formula_raises(self):
        broken = BoundSpec(
            IndexKind.HSO,
            lambda facts: True,
            lambda facts: BoundForm(1e9, None, False, False),
        )

        with mock.patch.dict(BOUNDS, {BoundId.HSO_GE_SQRT2M: broken}):
            with pytest.raises(VerificationFailure):
                verify_bounds(family("cycle", 4))

    def test_wrong_structural_flag_is_a_problem(self):
        claims_equality = BoundSpec(
            IndexKind.HSO,
            lambda facts: True,
            lambda facts: BoundForm(0.0, None, True, False),
        )

        with mock.patch.dict(BOUNDS, {BoundId.HSO_GE_SQRT2M: claims_equality}):
            report = check_bound(build_graph(3, [(0, 1), (1, 2)]), "HSO_GE_SQRT2M")

        problems = report_problems(report)
        assert len(problems) == 1
        assert "lower equality" in problems[0]


def assert_tree_range(graph):
    report = check_bound(graph, BoundId.CDSO_TREE_RANGE)

    assert report["hypothesis_met"]
    assert report["holds"]
    assert report["equality_low"] == is_star_graph(graph)
    assert report["equality_high"] == is_path_graph(graph)
    assert report_problems(report) == []


class TestTreeBounds:
    def test_labeled_trees_order_eight(self):
        plan = EnumerationPlan(order=8, constraint="tree", workers=4)
        checked = 0

        for graph in enumerate_graphs(plan):
            assert_tree_range(graph)
            checked += 1

        # Cayley: n^(n-2) labeled trees
        assert checked == 8**6

    def test_geng_trees_order_nine(self, tmp_path):
        geng = shutil.which("geng")
        if geng is None:
            pytest.skip("geng not found, order nine trees need an external stream")

        path = tmp_path / "trees9.g6"
        with open(path, "wb") as stream:
            subprocess.run([geng, "-cq", "9", "8:8"], stdout=stream, check=True)

        plan = EnumerationPlan(
            order=9, constraint="tree", source="external", path=str(path), dedup=True
        )
        trees = list(enumerate_graphs(plan))

        assert len(trees) == 47
        for graph in trees:
            assert_tree_range(graph)

import networkx as nx
import pytest

from sombor.graph import AdjacentPairError
from sombor.graph import CanonicalLimitError
from sombor.graph import DuplicateEdgeError
from sombor.graph import FamilyOrderError
from sombor.graph import GraphOrderError
from sombor.graph import SelfLoopError
from sombor.graph import VertexOutOfRangeError
from sombor.graph import add_edge_copy
from sombor.graph import build_graph
from sombor.graph import canonical_code
from sombor.graph import components
from sombor.graph import cyclomatic_number
from sombor.graph import family
from sombor.graph import is_complete_graph
from sombor.graph import is_connected
from sombor.graph import is_cycle_graph
from sombor.graph import is_path_graph
from sombor.graph import is_star_graph
from sombor.graph import is_tree
from sombor.graph import relabel
from sombor.graph import satisfies_class
from sombor.graph import structural_predicates


class TestBuildGraph:
    def test_path_three(self):
        graph = build_graph(3, [(0, 1), (1, 2)])

        assert graph.order == 3
        assert graph.size == 2
        assert graph.degrees == (1, 2, 1)
        assert graph.edges == ((0, 1), (1, 2))

    def test_edges_are_column_major(self):
        graph = build_graph(4, [(2, 3), (0, 3), (1, 2), (0, 1)])

        assert graph.edges == ((0, 1), (1, 2), (0, 3), (2, 3))

    def test_edgeless(self):
        graph = build_graph(4, [])

        assert graph.size == 0
        assert graph.degrees == (0, 0, 0, 0)

    @pytest.mark.parametrize(
        "order,edges,error",
        [
            (0, [], GraphOrderError),
            (2, [(0, 0)], SelfLoopError),
            (3, [(0, 3)], VertexOutOfRangeError),
            (3, [(-1, 2)], VertexOutOfRangeError),
            (3, [(0, 1), (1, 0)], DuplicateEdgeError),
        ],
    )
    def test_invalid_input(self, order, edges, error):
        with pytest.raises(error):
            build_graph(order, edges)

    def test_equality_is_labeled(self):
        assert build_graph(3, [(0, 1)]) == build_graph(3, [(1, 0)])
        assert build_graph(3, [(0, 1)]) != build_graph(3, [(1, 2)])


class TestFamilies:
    @pytest.mark.parametrize("n", [3, 4, 7])
    def test_sizes(self, n):
        assert family("path", n).size == n - 1
        assert family("cycle", n).size == n
        assert family("star", n).size == n - 1
        assert family("complete", n).size == n * (n - 1) // 2

    def test_star_center_is_zero(self):
        assert family("star", 5).degree(0) == 4

    def test_cycle_too_small(self):
        with pytest.raises(FamilyOrderError):
            family("cycle", 2)

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            family("wheel", 5)

    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_recognizers(self, n):
        assert is_path_graph(family("path", n))
        assert is_star_graph(family("star", n))
        assert is_complete_graph(family("complete", n))
        assert is_tree(family("path", n))

        if n >= 3:
            assert is_cycle_graph(family("cycle", n))
            assert not is_tree(family("cycle", n))

    def test_small_coincidences(self):
        # S_3 = P_3 and C_3 = K_3
        assert is_star_graph(family("path", 3))
        assert is_cycle_graph(family("complete", 3))
        assert not is_star_graph(family("path", 4))


class TestStructure:
    def test_components(self, two_k2):
        assert components(two_k2) == [0b0011, 0b1100]
        assert not is_connected(two_k2)
        assert cyclomatic_number(two_k2) == 0

    def test_cyclomatic_number(self):
        assert cyclomatic_number(family("complete", 5)) == 6
        assert cyclomatic_number(family("cycle", 6)) == 1

    def test_predicates_on_star(self, star4):
        predicates = structural_predicates(star4)

        assert predicates["has_dominating_vertex"]
        assert not predicates["is_regular"]
        assert predicates["min_degree"] == 1
        assert predicates["max_degree"] == 3
        assert predicates["every_edge_touches_min_degree"]
        assert predicates["every_edge_touches_max_degree"]

    def test_predicates_on_path(self):
        predicates = structural_predicates(family("path", 5))

        assert not predicates["every_edge_touches_min_degree"]
        assert predicates["every_edge_touches_max_degree"]

    def test_satisfies_class(self):
        spec = {"order": 5, "constraint": "cyclomatic", "ell": 1}

        assert satisfies_class(family("cycle", 5), spec)
        assert not satisfies_class(family("path", 5), spec)
        assert satisfies_class(
            family("path", 5), {"order": 5, "constraint": "tree", "ell": None}
        )
        assert not satisfies_class(
            build_graph(5, [(0, 1)]),
            {"order": 5, "constraint": "connected", "ell": None},
        )


class TestAddEdge:
    def test_copy_is_new_graph(self, star4):
        extended = add_edge_copy(star4, 1, 2)

        assert extended.has_edge(1, 2)
        assert not star4.has_edge(1, 2)
        assert extended.size == star4.size + 1

    @pytest.mark.parametrize(
        "u,v,error",
        [
            (0, 1, AdjacentPairError),
            (1, 1, SelfLoopError),
            (1, 9, VertexOutOfRangeError),
        ],
    )
    def test_invalid_pairs(self, star4, u, v, error):
        with pytest.raises(error):
            add_edge_copy(star4, u, v)


class TestCanonicalCode:
    def test_invariant_under_relabeling(self, connected_atlas):
        for graph in connected_atlas[6]:
            reversed_labels = list(reversed(range(graph.order)))
            rotated = [(v + 2) % graph.order for v in range(graph.order)]

            code = canonical_code(graph)

            assert canonical_code(relabel(graph, reversed_labels)) == code
            assert canonical_code(relabel(graph, rotated)) == code

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7])
    def test_separates_isomorphism_classes(self, atlas, to_graph, n):
        codes = {canonical_code(to_graph(graph)) for graph in atlas[n]}

        assert len(codes) == len(atlas[n])

    def test_agrees_with_networkx(self, to_graph):
        first = nx.path_graph(5)
        second = nx.relabel_nodes(first, {0: 3, 1: 0, 2: 4, 3: 1, 4: 2})

        assert nx.is_isomorphic(first, second)
        assert canonical_code(to_graph(first)) == canonical_code(to_graph(second))

    def test_first_byte_is_order(self):
        assert canonical_code(family("cycle", 5))[0] == 5

    def test_limit(self):
        with pytest.raises(CanonicalLimitError):
            canonical_code(family("path", 10))

        assert canonical_code(family("path", 10), limit=10)[0] == 10

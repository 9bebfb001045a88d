from fractions import Fraction

import pytest

from unicover.connectors import (even_2cut_connectors, normalize_connectors,
                                 two_cut_classes, two_cut_pairs)
from unicover.decompose import (DecompositionError, decompose_connectors,
                                verify_combination)
from unicover.families import k4, petersen, random_subcubic_2ec
from unicover.graph import GraphError
from unicover.lp import everywhere

from conftest import make_graph

F = Fraction


def two_triangles_x(two_triangles):
    """All ones except a half/three-halves split across the bridge pair."""
    x = everywhere(two_triangles, F(1))
    x[6] = F(1, 2)
    x[7] = F(3, 2)
    return x


class TestTwoCutPairs:
    def test_c4_all_pairs(self, c4):
        pairs = two_cut_pairs(c4, everywhere(c4, F(1)))
        assert len(pairs) == 6

    def test_k4_has_none(self):
        assert two_cut_pairs(k4(), everywhere(k4(), F(1))) == []

    def test_three_parallel_edges_have_none(self):
        g = make_graph(2, [(0, 1)] * 3)
        assert two_cut_pairs(g, {0: F(1, 2), 1: F(3, 2), 2: F(3, 2)}) == []

    def test_bridge_pair_found(self, two_triangles):
        pairs = two_cut_pairs(two_triangles, everywhere(two_triangles, F(1)))
        assert (6, 7) in pairs

    def test_rejects_disconnected_support(self, c4):
        with pytest.raises(GraphError, match="connected"):
            two_cut_pairs(c4, {0: F(1), 2: F(1)})


class TestTwoCutClasses:
    def test_c4_single_d1_class(self, c4):
        classes = two_cut_classes(c4, everywhere(c4, F(1)))
        assert len(classes) == 1
        cls = classes.classes[0]
        assert cls.kind == "D1" and cls.edge_ids == frozenset({0, 1, 2, 3})

    def test_k4_no_classes(self):
        assert len(two_cut_classes(k4(), everywhere(k4(), F(2, 3)))) == 0

    def test_three_parallel_edges_no_classes(self):
        g = make_graph(2, [(0, 1)] * 3)
        assert len(two_cut_classes(g, {0: F(1, 2), 1: F(3, 2), 2: F(3, 2)})) == 0

    def test_two_triangles_mixed(self, two_triangles):
        classes = two_cut_classes(two_triangles, two_triangles_x(two_triangles))
        kinds = {frozenset(c.edge_ids): c.kind for c in classes.classes}
        assert kinds[frozenset({6, 7})] == "D2"
        d2 = next(c for c in classes.classes if c.kind == "D2")
        assert d2.distinguished == 6

    def test_rejects_vector_outside_polyhedron(self, two_triangles):
        x = everywhere(two_triangles, F(1))
        x[6] = x[7] = F(1, 2)
        with pytest.raises(DecompositionError):
            two_cut_classes(two_triangles, x)


class TestNormalize:
    def test_no_pair_two_and_zero(self, two_triangles):
        x = two_triangles_x(two_triangles)
        base = decompose_connectors(two_triangles, x)
        norm = normalize_connectors(base, x, G=two_triangles)
        for eid in x:
            mults = [t.multiset().get(eid, 0) for t in norm.terms]
            assert not (2 in mults and 0 in mults)
        assert norm.coverage() == base.coverage()

    def test_coefficients_still_sum_to_one(self):
        g = petersen()
        x = everywhere(g, F(1))
        base = decompose_connectors(g, x)
        norm = normalize_connectors(base, x, G=g)
        assert sum(t.coefficient for t in norm.terms) == 1

    def test_rejects_dominated_input(self, c4):
        from unicover.decompose import decompose_spanning_trees
        comb = decompose_spanning_trees(c4, everywhere(c4, F(1)))
        with pytest.raises(DecompositionError, match="equality"):
            normalize_connectors(comb, everywhere(c4, F(1)), G=c4)


class TestEven2CutConnectors:
    def check(self, g, x):
        comb = even_2cut_connectors(g, x)
        verify_combination(g, comb, "connector")
        assert comb.relation == "dominated-by"
        for a, b in two_cut_pairs(g, x):
            for t in comb.terms:
                f = t.multiset()
                assert (f.get(a, 0) + f.get(b, 0)) % 2 == 0
        return comb

    def test_c4_every_term_full_cycle(self, c4):
        comb = self.check(c4, everywhere(c4, F(1)))
        for t in comb.terms:
            assert dict(t.edges) == {0: 1, 1: 1, 2: 1, 3: 1}

    def test_two_triangles_d2_case(self, two_triangles):
        x = two_triangles_x(two_triangles)
        comb = self.check(two_triangles, x)
        # Terms avoiding the half-value bridge must double its partner.
        for t in comb.terms:
            f = t.multiset()
            if f.get(6, 0) == 0:
                assert f.get(7, 0) == 2

    def test_class_free_input_unchanged_coverage(self):
        g = k4()
        x = everywhere(g, F(1))
        comb = even_2cut_connectors(g, x)
        assert comb.coverage() == x

    def test_random_subcubic(self):
        for seed in range(8):
            g = random_subcubic_2ec(10, seed)
            self.check(g, everywhere(g, F(1)))

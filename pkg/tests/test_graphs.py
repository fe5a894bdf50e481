"""Graphs, homology, simple loops, admissibility, flips, double trees."""

import math
import random
from fractions import Fraction

import pytest

from conftest import oracle_min_loop, oracle_simple_cycles
from outfn import actions, graphs, symreps
from outfn.linalg import Matrix


def random_multigraph(rng):
    nv = rng.randint(1, 8)
    ne = rng.randint(0, 16)
    verts = [f"v{i}" for i in range(nv)]
    recs = [(f"e{i}", rng.choice(verts), rng.choice(verts)) for i in range(ne)]
    return graphs.make_graph(verts, recs)


class TestBuilders:
    def test_cage(self):
        g = graphs.cage(7)
        assert len(g.vertices) == 2 and len(g.edges) == 7

    def test_cover_of_rose(self):
        g = graphs.cover_of_rose(5)
        assert len(g.vertices) == 2 and len(g.edges) == 10
        assert g.rank() == 9

    def test_tiny_rose(self):
        assert graphs.rose(1).rank() == 1

    def test_size_guards(self):
        with pytest.raises(ValueError):
            graphs.rose(0)
        with pytest.raises(ValueError):
            graphs.daisy_chain(1)

    def test_json_round_trip(self):
        g = graphs.daisy_chain(3)
        back = graphs.Graph.from_json(g.to_json())
        assert back == g


class TestHomology:
    def test_rose_loops_are_the_basis(self):
        basis = graphs.h1_basis(graphs.rose(4))
        assert basis.dim == 4
        assert basis.matrix == Matrix.identity(4)

    def test_cage_dimension(self):
        assert graphs.h1_basis(graphs.cage(6)).dim == 5

    def test_barbell_bridge_weight_vanishes(self):
        g = graphs.barbell()
        basis = graphs.h1_basis(g)
        assert basis.dim == 2
        row = g.edges.index("b")
        assert all(basis.matrix.data[row][j] == 0 for j in range(basis.dim))

    def test_dimension_formula_on_random_graphs(self):
        rng = random.Random(2718)
        for _ in range(60):
            g = random_multigraph(rng)
            if not g.edges:
                continue
            expected = len(g.edges) - len(g.vertices) + g.component_count()
            assert graphs.h1_basis(g).dim == expected

    def test_separating_edges_carry_no_weight(self):
        # oracle: an edge separates exactly when deleting it increases
        # the component count
        rng = random.Random(1729)
        for _ in range(30):
            g = random_multigraph(rng)
            if not g.edges:
                continue
            basis = graphs.h1_basis(g)
            for row, e in enumerate(g.edges):
                rest = graphs.make_graph(
                    g.vertices,
                    [(f, g.iota(f), g.tau(f)) for f in g.edges if f != e])
                separating = rest.component_count() > g.component_count()
                if separating:
                    assert all(basis.matrix.data[row][j] == 0
                               for j in range(basis.dim))


class TestInducedAction:
    def test_rose_permutation_matrices(self):
        act = actions.symmetric_rose(4)
        assert act.verify_relations()
        rep = graphs.induced_rep(act)
        assert rep.verify_relations()
        assert symreps.multiplicity(rep, "trivial", 4) == 1

    def test_flip_on_single_petal(self):
        g = graphs.rose(1)
        flip = actions.petal_flip_involution(g)
        m = graphs.induced_matrix(flip, graphs.h1_basis(g))
        assert m == Matrix([[Fraction(-1)]])

    def test_cage_character_is_fixed_points_minus_one(self):
        n = 5
        rep = graphs.induced_rep(actions.symmetric_cage(n))
        for lam in symreps.partitions(n):
            word = symreps.adjacent_factorization(
                symreps.class_representative(lam, n))
            tr = rep.matrix_of(word).trace()
            assert tr == symreps.named_character("standard", n, lam)

    def test_vertex_swap_acts_as_minus_identity(self):
        full = actions.cage_full(5)
        assert full.verify_relations()
        rep = graphs.induced_rep(full)
        assert rep.generators["delta"] == Matrix.identity(4).scale(-1)

    def test_homomorphism_property(self):
        act = actions.cage_full(4)
        basis = graphs.h1_basis(act.graph)
        rng = random.Random(31)
        names = list(act.maps)
        for _ in range(15):
            a, b = rng.choice(names), rng.choice(names)
            lhs = graphs.induced_matrix(act.maps[a] * act.maps[b], basis)
            rhs = (graphs.induced_matrix(act.maps[a], basis)
                   * graphs.induced_matrix(act.maps[b], basis))
            assert lhs == rhs


class TestCollapse:
    def test_cage_minus_edge_is_rose(self):
        res = graphs.collapse(graphs.cage(3), ["c1"])
        assert len(res.quotient.vertices) == 1
        assert len(res.quotient.edges) == 2
        assert all(res.quotient.is_loop(e) for e in res.quotient.edges)

    def test_barbell_bridge_collapse_is_isomorphism(self):
        res = graphs.collapse(graphs.barbell(), ["b"])
        assert res.source_basis.dim == res.quotient_basis.dim == 2
        assert res.cycle_map.rank() == 2

    def test_empty_collapse_is_identity(self):
        g = graphs.rose(3)
        res = graphs.collapse(g, [])
        assert res.quotient == g
        assert res.cycle_map.is_identity()

    def test_two_step_composition(self):
        g = graphs.daisy_chain(3)
        one = graphs.collapse(g, ["d1a"])
        two = graphs.collapse(one.quotient, ["d2a"])
        both = graphs.collapse(g, ["d1a", "d2a"])
        assert two.cycle_map * one.cycle_map == both.cycle_map

    def test_surjectivity_on_random_graphs(self):
        rng = random.Random(55)
        for _ in range(25):
            g = random_multigraph(rng)
            if not g.edges:
                continue
            subset = [e for e in g.edges if rng.random() < 0.4]
            res = graphs.collapse(g, subset)
            assert res.cycle_map.rank() == res.quotient_basis.dim


class TestSimpleLoops:
    def test_cage_counts(self):
        for n in (2, 3, 4, 5):
            loops = graphs.simple_loops(graphs.cage(n))
            assert len(loops) == math.comb(n, 2)
            assert all(len(l) == 2 for l in loops)

    def test_rose_counts(self):
        loops = graphs.simple_loops(graphs.rose(4))
        assert len(loops) == 4
        assert all(len(l) == 1 for l in loops)

    def test_daisy_chain_counts(self):
        for k in (2, 3, 4):
            loops = graphs.simple_loops(graphs.daisy_chain(k))
            short = [l for l in loops if len(l) == 2]
            long = [l for l in loops if len(l) == k]
            if k == 2:
                # the strand loops coincide with the doubled-edge loops
                assert len(loops) == len(short) == 2 + 2 ** 2
            else:
                assert len(short) == k
                assert len(long) == 2 ** k
                assert len(loops) == k + 2 ** k

    def test_matches_subset_oracle(self):
        rng = random.Random(808)
        for _ in range(20):
            g = random_multigraph(rng)
            if len(g.edges) > 10:
                continue
            mine = {l.edge_set for l in graphs.simple_loops(g)}
            assert mine == set(oracle_simple_cycles(g))

    def test_edge_cap(self, monkeypatch):
        monkeypatch.setenv("OUTFN_MAX_EDGES", "4")
        with pytest.raises(ValueError):
            graphs.simple_loops(graphs.cage(5))
        monkeypatch.delenv("OUTFN_MAX_EDGES")
        assert graphs.simple_loops(graphs.cage(5))

    def test_loop_vectors_are_cycles(self):
        g = graphs.daisy_chain(3)
        inc = g.incidence_matrix()
        for l in graphs.simple_loops(g):
            assert all(x == 0 for x in inc.apply(l.edge_vector(g)))


class TestMinLoopAndObstruction:
    def test_cage_edges(self):
        assert graphs.min_loop_through_edge(graphs.cage(4), "c2") == 2

    def test_bridge_is_separating(self):
        assert graphs.min_loop_through_edge(graphs.barbell(), "b") is None
        assert graphs.separating_edges(graphs.barbell()) == ["b"]

    def test_rose_edge(self):
        assert graphs.min_loop_through_edge(graphs.rose(3), "p1") == 1

    def test_homogeneous_graphs_have_no_witness(self):
        assert graphs.admissibility_obstruction(graphs.cage(4)) is None
        assert graphs.admissibility_obstruction(graphs.rose(3)) is None

    def _doubled_triangle(self):
        return graphs.make_graph(
            ["a", "b", "c"],
            [("e1", "a", "b"), ("e2", "a", "b"),
             ("e3", "b", "c"), ("e4", "c", "a")])

    def test_heterogeneous_witness_matches_brute_force(self):
        g = self._doubled_triangle()
        witness = graphs.admissibility_obstruction(g)
        assert witness is not None
        # brute force via the subset oracle
        m = {e: oracle_min_loop(g, e) for e in g.edges}
        assert m == {"e1": 2, "e2": 2, "e3": 3, "e4": 3}
        brute = []
        for e in g.edges:
            if m[e] is None:
                continue
            for x in dict.fromkeys(g.ends[e]):
                others = [f for f in g.edges if f != e and x in g.ends[f]]
                if all(m[f] != m[e] for f in others):
                    brute.append((e, x))
        assert witness in brute
        assert witness == brute[0]


class TestAdmissibility:
    def test_full_cage_action_is_admissible(self):
        assert graphs.is_admissible(actions.cage_full(5))
        assert graphs.invariant_forests(actions.cage_full(5)) == []

    def test_trivial_group_on_small_cage(self):
        act = actions.trivial_action(graphs.cage(2))
        forests = graphs.invariant_forests(act)
        assert forests  # every single edge is a forest
        assert not graphs.is_admissible(act)

    def test_barbell_always_rejected(self):
        act = actions.trivial_action(graphs.barbell())
        assert ["b"] in graphs.invariant_forests(act)
        assert not graphs.is_admissible(act)

    def test_rose_under_trivial_group_is_admissible(self):
        # loops are never forests, and the rose vertex has valence 2n >= 4
        act = actions.trivial_action(graphs.rose(2))
        assert graphs.invariant_forests(act) == []
        assert graphs.is_admissible(act)


class TestFlipsAndDoubleTree:
    def test_cage_vertex_swap_flips_everything(self):
        g = graphs.cage(4)
        assert graphs.flips_all_simple_loops(g, actions.vertex_swap(g))

    def test_identity_does_not_flip(self):
        g = graphs.rose(2)
        assert not graphs.flips_all_simple_loops(g, graphs.identity_aut(g))

    def test_non_involution_rejected(self):
        act = actions.symmetric_cage(3)
        three_cycle = act.maps["s1"] * act.maps["s2"]
        with pytest.raises(ValueError):
            graphs.flips_all_simple_loops(act.graph, three_cycle)

    def test_daisy_strand_swap(self):
        g = graphs.daisy_chain(3)
        sw = actions.strand_swap(g)
        # every doubled-edge loop is flipped, the long strand loops are
        # exchanged instead, so the global answer is negative
        p = graphs.signed_edge_matrix(sw)
        for l in graphs.simple_loops(g):
            v = l.edge_vector(g)
            flipped = p.apply(v) == [-Fraction(x) for x in v]
            assert flipped == (len(l) == 2)
        assert not graphs.flips_all_simple_loops(g, sw)

    def test_cage_double_tree_is_star(self):
        n = 5
        g = graphs.cage(n)
        dt = graphs.double_tree_decomposition(g, actions.vertex_swap(g))
        assert all(dt.conclusions().values())
        assert len(dt.f_vertices) == n          # one midpoint per edge
        assert len(dt.f_edges) == 0
        assert len(dt.d_edges) == n             # a star of half-edges
        d_sub_vertices = set(dt.d_vertices)
        assert len(d_sub_vertices) == n + 1

    def test_single_loop_reflection(self):
        g = graphs.rose(1)
        dt = graphs.double_tree_decomposition(g, actions.petal_flip_involution(g))
        assert len(dt.d_edges) == 1             # an arc: half the loop
        assert len(dt.f_vertices) == 2          # the vertex and the midpoint

    def test_two_petal_flip(self):
        g = graphs.rose(2)
        dt = graphs.double_tree_decomposition(g, actions.petal_flip_involution(g))
        assert len(dt.d_edges) == 2             # two arcs joined at the vertex
        assert len(dt.f_vertices) == 3
        assert all(dt.conclusions().values())

    def test_precondition_enforced(self):
        g = graphs.rose(2)
        with pytest.raises(ValueError):
            graphs.double_tree_decomposition(g, graphs.identity_aut(g))

    def test_pointwise_fixed_edge(self):
        # a tripod whose two outer edges are exchanged and whose third
        # edge is fixed pointwise: no simple loops, so the flipping
        # hypothesis is vacuous and the fixed edge lands in both trees
        g = graphs.make_graph(
            ["c", "x", "y", "z"],
            [("p", "c", "x"), ("q", "c", "y"), ("r", "c", "z")])
        xi = graphs.GraphAut(
            g, {"c": "c", "x": "y", "y": "x", "z": "z"},
            {"p": "q", "q": "p", "r": "r"}, {})
        dt = graphs.double_tree_decomposition(g, xi)
        assert all(dt.conclusions().values())
        assert dt.f_edges == frozenset({"r"})
        assert dt.f_vertices == frozenset({"c", "z"})
        assert len(dt.d_edges) == 2


class TestInvariantOrientation:
    def test_alternating_on_rose(self):
        act = actions.alternating_rose(5)
        res = graphs.invariant_orientation(act)
        assert res["orientation"] is not None
        assert res["orbit_count"] == 1
        assert res["trivial_multiplicity"] == 1
        assert res["counts_match"]

    def test_trivial_group(self):
        res = graphs.invariant_orientation(actions.trivial_action(graphs.rose(3)))
        assert res["orientation"] is not None
        assert res["orbit_count"] == res["trivial_multiplicity"] == 3

    def test_flip_obstruction(self):
        g = graphs.rose(1)
        desc = symreps.GroupDescriptor("Z2", ("f",), (("f", "f"),), order=2)
        act = graphs.GraphAction(g, desc, {"f": actions.petal_flip_involution(g)})
        res = graphs.invariant_orientation(act)
        assert res["orientation"] is None
        assert res["obstruction_edge"] == "p1"

    def test_non_rose_rejected(self):
        with pytest.raises(ValueError):
            graphs.invariant_orientation(actions.symmetric_cage(3))


class TestCageMultiplicity:
    def test_transitive(self):
        out = graphs.cage_trivial_multiplicity_check(actions.alternating_cage(5))
        assert out == {"orbit_count": 1, "trivial_multiplicity": 0, "ok": True}

    def test_two_orbits(self):
        out = graphs.cage_trivial_multiplicity_check(
            actions.alternating_doubled_cage(5))
        assert out == {"orbit_count": 2, "trivial_multiplicity": 1, "ok": True}

    def test_trivial_action_three_orbits(self):
        act = actions.trivial_alternating_action(graphs.cage(3), 5)
        out = graphs.cage_trivial_multiplicity_check(act)
        assert out == {"orbit_count": 3, "trivial_multiplicity": 2, "ok": True}

    def test_requires_perfect_group(self):
        with pytest.raises(ValueError):
            graphs.cage_trivial_multiplicity_check(actions.symmetric_cage(4))


class TestSignedRose:
    def test_full_rose_symmetries(self):
        act = actions.signed_rose(4)
        assert act.verify_relations()
        rep = graphs.induced_rep(act)
        assert rep.verify_relations()
        assert rep.generators["e1"] == Matrix(
            [[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])

    def test_central_alternating_cage(self):
        act = actions.cage_central_alternating(6)
        assert act.verify_relations()
        assert graphs.is_admissible(act)

    def test_parity_involution(self):
        # even rank: plain vertex swap, flips everything
        xi = actions.parity_involution(4)
        g = graphs.cage(5)
        assert graphs.flips_all_simple_loops(g, xi)
        # odd rank: composed with an edge swap, loops through the first
        # two edges are exchanged rather than flipped
        xi5 = actions.parity_involution(5)
        g6 = graphs.cage(6)
        assert (xi5 * xi5).is_identity()
        assert not graphs.flips_all_simple_loops(g6, xi5)


class TestActionSerialisation:
    def test_round_trip(self):
        act = actions.cage_full(3)
        obj = act.to_json()
        obj["graph"] = act.graph.to_json()
        g = graphs.Graph.from_json(obj["graph"])
        back = graphs.action_from_json(g, obj)
        assert back.verify_relations()
        assert back.maps["delta"].same_as(act.maps["delta"])

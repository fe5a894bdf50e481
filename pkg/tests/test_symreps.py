"""Eigenspace decompositions, containment and divisibility laws,
symmetric-group characters and multiplicities."""

import math
from fractions import Fraction

import pytest

from conftest import (
    determinant_rep,
    flip_matrix,
    signed_permutation_rep,
    symmetric_group_perm_rep,
    transvection,
    with_transvections,
)
from outfn import actions, graphs, symreps
from outfn.linalg import Matrix


class TestSimultaneousEigenspaces:
    def test_coordinate_flips(self):
        n = 4
        rep = signed_permutation_rep(n)
        assert rep.verify_relations()
        dec = symreps.simultaneous_eigenspaces(symreps.involution_family(rep, n))
        assert dec.layer_dims == (0, n, 0, 0, 0)
        for i in range(1, n + 1):
            space = dec.spaces[frozenset([i])]
            assert space.dim == 1
            e_i = [Fraction(1 if k == i - 1 else 0) for k in range(n)]
            assert space.contains_vector(e_i)

    def test_all_identity(self):
        dec = symreps.simultaneous_eigenspaces([Matrix.identity(3)] * 2)
        assert dec.spaces[frozenset()].dim == 3
        assert dec.total_dim() == 3

    def test_non_involution_rejected(self):
        with pytest.raises(ValueError):
            symreps.simultaneous_eigenspaces([Matrix([[2]])])

    def test_non_commuting_rejected(self):
        a = Matrix([[0, 1], [1, 0]])
        b = Matrix([[1, 0], [0, -1]])
        with pytest.raises(ValueError):
            symreps.simultaneous_eigenspaces([a, b])


class TestDivisibility:
    def test_permutation_rep(self):
        n = 5
        rep = signed_permutation_rep(n)
        dec = symreps.simultaneous_eigenspaces(symreps.involution_family(rep, n))
        out = symreps.divisibility_check(dec)
        assert out["ok"]
        assert dec.layer_dims[1] == n and n % math.comb(n, 1) == 0

    def test_trivial_rep(self):
        n = 4
        gens = {name: Matrix.identity(3)
                for name in symreps.signed_permutation_group(n).generators}
        rep = symreps.FiniteRep(symreps.signed_permutation_group(n), 3, gens)
        dec = symreps.simultaneous_eigenspaces(symreps.involution_family(rep, n))
        assert dec.layer_dims[0] == 3
        assert symreps.divisibility_check(dec)["ok"]

    def test_double_permutation_rep(self):
        n = 4
        rep = signed_permutation_rep(n)
        doubled = rep.direct_sum(rep)
        assert doubled.verify_relations()
        dec = symreps.simultaneous_eigenspaces(symreps.involution_family(doubled, n))
        assert dec.layer_dims[1] == 2 * n
        assert symreps.divisibility_check(dec)["ok"]


class TestDiamond:
    def test_transvections_pass(self):
        n = 4
        rep = with_transvections(signed_permutation_rep(n), n)
        dec = symreps.simultaneous_eigenspaces(symreps.involution_family(rep, n))
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i != j:
                    assert symreps.check_diamond(rep, dec, i, j)

    def test_identity_rho_vacuous(self):
        n = 4
        rep = with_transvections(signed_permutation_rep(n), n,
                                 build=lambda i, j, nn: Matrix.identity(nn))
        dec = symreps.simultaneous_eigenspaces(symreps.involution_family(rep, n))
        assert symreps.check_diamond(rep, dec, 1, 2)

    def test_planted_counterexample(self):
        # corrupt rho12 so that it moves the flip-3 eigenvector into the
        # flip-1 eigenspace: the symmetric difference {1,3} exceeds {1,2}
        n = 4
        rep = with_transvections(signed_permutation_rep(n), n)
        bad = dict(rep.generators)
        m = [[Fraction(1 if a == b else 0) for b in range(n)] for a in range(n)]
        m[0][2] = Fraction(1)
        bad["rho12"] = Matrix(m)
        badrep = symreps.FiniteRep(
            symreps.GroupDescriptor("planted", tuple(bad), ()), n, bad)
        dec = symreps.simultaneous_eigenspaces(symreps.involution_family(badrep, n))
        assert not symreps.check_diamond(badrep, dec, 1, 2)
        assert symreps.diamond_violations(badrep, dec, 1, 2)


class TestCharacters:
    def test_standard_at_long_cycle(self):
        assert symreps.named_character("standard", 5, (5,)) == -1

    def test_permutation_at_identity(self):
        assert symreps.named_character("permutation", 4, (1, 1, 1, 1)) == 4

    def test_signed_standard_at_transposition(self):
        assert symreps.named_character("signed_standard", 4, (2, 1, 1)) == -1

    def test_invalid_partition(self):
        with pytest.raises(ValueError):
            symreps.named_character("trivial", 4, (3, 2))

    def test_class_sizes_sum_to_group_order(self):
        for n in (3, 4, 5, 6):
            assert sum(symreps.class_size(n, lam)
                       for lam in symreps.partitions(n)) == math.factorial(n)

    def test_first_orthogonality(self):
        # characters of distinct irreducibles are orthogonal
        for n in (4, 5):
            for a in ("trivial", "determinant", "standard", "signed_standard"):
                for b in ("trivial", "determinant", "standard", "signed_standard"):
                    total = sum(
                        symreps.class_size(n, lam)
                        * symreps.named_character(a, n, lam)
                        * symreps.named_character(b, n, lam)
                        for lam in symreps.partitions(n)
                    )
                    assert total == (math.factorial(n) if a == b else 0)


class TestMultiplicity:
    def test_permutation_rep_decomposes(self):
        for n in (4, 5):
            rep = symmetric_group_perm_rep(n)
            assert rep.verify_relations()
            assert symreps.multiplicity(rep, "trivial", n) == 1
            assert symreps.multiplicity(rep, "standard", n) == 1
            assert symreps.multiplicity(rep, "determinant", n) == 0

    def test_determinant_rep(self):
        n = 4
        rep = determinant_rep(n)
        assert rep.verify_relations()
        assert symreps.multiplicity(rep, "determinant", n) == 1
        for other in ("trivial", "standard", "signed_standard"):
            assert symreps.multiplicity(rep, other, n) == 0

    def test_cage_homology_is_standard(self):
        n = 5
        rep = graphs.induced_rep(actions.symmetric_cage(n))
        assert symreps.multiplicity(rep, "standard", n) == 1
        assert symreps.multiplicity(rep, "trivial", n) == 0

    def test_dimension_budget_with_equality_on_graph_reps(self):
        n = 5
        for rep, dim in ((graphs.induced_rep(actions.symmetric_rose(n)), n),
                         (graphs.induced_rep(actions.symmetric_cage(n)), n - 1)):
            used = sum(
                symreps.multiplicity(rep, name, n) * symreps.named_dimension(name, n)
                for name in ("trivial", "determinant", "standard", "signed_standard")
            )
            assert used == dim == rep.dim


class TestBranching:
    def test_branching_rule(self):
        for n in (4, 5):
            out = symreps.branching_check(n)
            assert out["ok"]
            assert out["multiplicities"]["standard"] == 1
            assert out["multiplicities"]["trivial"] == 1
            assert out["multiplicities"]["determinant"] == 0

    def test_trivial_restricts_to_trivial(self):
        n = 4
        gens = {f"s{i}": Matrix.identity(1) for i in range(1, n)}
        rep = symreps.FiniteRep(symreps.symmetric_group(n), 1, gens)
        assert symreps.multiplicity(rep, "trivial", n) == 1

    def test_small_rank_rejected(self):
        with pytest.raises(ValueError):
            symreps.branching_check(2)


class TestCrossModuleDecomposition:
    def test_cage_homology_under_coordinate_flips(self):
        # the difference cycles edge_i - edge_last span the cage cycle
        # space; the sign-flip matrices written in that basis decompose
        # with all mass in the singleton layer
        n = 4
        g = graphs.cage(n + 1)
        basis = graphs.h1_basis(g)
        diffs = []
        for i in range(n):
            vec = [Fraction(0)] * (n + 1)
            vec[i] = Fraction(1)
            vec[n] = Fraction(-1)
            diffs.append(basis.coordinates(vec))  # raises if not a cycle
        assert Matrix.from_columns(diffs).rank() == n
        flips = [flip_matrix(i, n) for i in range(1, n + 1)]
        dec = symreps.simultaneous_eigenspaces(flips)
        assert dec.layer_dims == (0, n, 0, 0, 0)


class TestRepSerialisation:
    def test_round_trip(self):
        rep = with_transvections(signed_permutation_rep(4), 4)
        back = symreps.FiniteRep.from_json(rep.to_json())
        assert back.dim == rep.dim
        assert back.generators.keys() == rep.generators.keys()
        assert back.generators["rho12"] == transvection(1, 2, 4)
        assert back.verify_relations()

"""Exact matrix kernel, elimination, and the square functors."""

import random
from fractions import Fraction

import pytest

from outfn import graphs
from outfn.linalg import Matrix, exterior_square, schur_square, symmetric_square


def rand_matrix(rng, rows, cols, lo=-4, hi=4):
    return Matrix([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)])


class TestKernel:
    def test_identity_has_trivial_kernel(self):
        assert Matrix.identity(3).kernel_basis().cols == 0

    def test_zero_matrix_full_kernel(self):
        assert Matrix.zeros(2, 2).kernel_basis().cols == 2

    def test_cage_incidence_kernels(self):
        # rank-nullity: the incidence matrix of a k-cage has rank 1
        for k in (3, 4):
            inc = graphs.cage(k).incidence_matrix()
            assert inc.rank() == 1
            assert inc.kernel_basis().cols == k - 1

    def test_kernel_columns_annihilate(self):
        rng = random.Random(7)
        for _ in range(20):
            m = rand_matrix(rng, rng.randint(1, 5), rng.randint(1, 6))
            k = m.kernel_basis()
            if k.cols:
                assert (m * k).is_zero()
            assert m.rank() + k.cols == m.cols


class TestElimination:
    def test_inverse_round_trip(self):
        rng = random.Random(11)
        for _ in range(15):
            n = rng.randint(1, 5)
            m = rand_matrix(rng, n, n)
            if m.rank() < n:
                continue
            assert (m * m.inverse()).is_identity()

    def test_singular_inverse_raises(self):
        with pytest.raises(ValueError):
            Matrix.zeros(2, 2).inverse()

    def test_solve_consistent(self):
        a = Matrix([[1, 2], [3, 4], [5, 6]])
        b = Matrix([[1], [1], [2]])
        assert a.solve(b) is None  # (1,1,2) is not in the column span

        b2 = a * Matrix([[2], [-1]])
        x2 = a.solve(b2)
        assert a * x2 == b2

    def test_determinant_multiplicative(self):
        rng = random.Random(13)
        for _ in range(10):
            a, b = rand_matrix(rng, 4, 4), rand_matrix(rng, 4, 4)
            assert (a * b).determinant() == a.determinant() * b.determinant()

    def test_rref_exactness(self):
        m = Matrix([[2, 4], [1, 3]])
        red, piv = m.rref()
        assert piv == (0, 1)
        assert red == Matrix.identity(2)
        assert m.determinant() == Fraction(2)

    def test_json_round_trip(self):
        m = Matrix([[Fraction(1, 3), 2], [0, Fraction(-5, 7)]])
        assert Matrix.from_json(m.to_json()) == m


class TestSquareFunctors:
    def test_dimensions(self):
        m = Matrix.identity(4)
        assert exterior_square(m).shape == (6, 6)
        assert symmetric_square(m).shape == (10, 10)

    def test_kills_minus_identity(self):
        neg = Matrix.identity(3).scale(-1)
        assert exterior_square(neg).is_identity()
        assert symmetric_square(neg).is_identity()

    def test_sign_blind(self):
        rng = random.Random(23)
        for mu in ((1, 1), (2,)):
            m = rand_matrix(rng, 4, 4)
            assert schur_square(m.scale(-1), mu) == schur_square(m, mu)

    def test_functorial(self):
        rng = random.Random(5)
        for mu in ((1, 1), (2,)):
            for _ in range(8):
                a, b = rand_matrix(rng, 4, 4, -3, 3), rand_matrix(rng, 4, 4, -3, 3)
                assert schur_square(a * b, mu) == schur_square(a, mu) * schur_square(b, mu)

    def test_exterior_square_is_determinant_in_dim_two(self):
        a = Matrix([[1, 2], [3, 4]])
        assert exterior_square(a) == Matrix([[a.determinant()]])

    def test_unsupported_partition(self):
        with pytest.raises(ValueError):
            schur_square(Matrix.identity(3), (3,))

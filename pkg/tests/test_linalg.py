"""Exact sparse linear algebra over the supported fields."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lghomology.errors import CompositionNonzero
from lghomology.linalg import (CyclotomicField, Matrix, PrimeField, QQ,
                               homology_dim, kernel_basis, rank)


def test_rank_simple():
    m = Matrix.from_rows([[1, 2], [2, 4]], QQ)
    assert rank(m) == 1


def test_kernel_members_annihilate():
    m = Matrix.from_rows([[1, 2, 3], [4, 5, 6]], QQ)
    basis = kernel_basis(m)
    assert len(basis) == 1
    for vec in basis:
        assert m.apply(vec) == {}


def test_identity_has_full_rank():
    assert rank(Matrix.identity(5, QQ)) == 5


def test_homology_of_exact_pair_is_zero():
    # x -> (x, -x) -> x + y is exact in the middle
    d_in = Matrix.from_rows([[1], [-1]], QQ)
    d_out = Matrix.from_rows([[1, 1]], QQ)
    assert homology_dim(d_in, d_out) == 0


def test_homology_rejects_nonzero_composition():
    d_in = Matrix.from_rows([[1], [0]], QQ)
    d_out = Matrix.from_rows([[1, 0]], QQ)
    with pytest.raises(CompositionNonzero):
        homology_dim(d_in, d_out)


small_entries = st.integers(min_value=-4, max_value=4)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small_entries, min_size=3, max_size=3),
                min_size=2, max_size=4))
def test_rank_matches_sympy(rows):
    import sympy

    m = Matrix.from_rows(rows, QQ)
    assert rank(m) == sympy.Matrix(rows).rank()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small_entries, min_size=4, max_size=4),
                min_size=2, max_size=3))
def test_kernel_dimension_and_membership(rows):
    m = Matrix.from_rows(rows, QQ)
    basis = kernel_basis(m)
    assert len(basis) == m.cols - rank(m)
    for vec in basis:
        assert m.apply(vec) == {}


def test_prime_field_arithmetic():
    f7 = PrimeField(7)
    a = f7.from_int(3)
    b = f7.from_int(5)
    assert (a * b).val == 1
    assert (a / b).val == (3 * pow(5, -1, 7)) % 7
    assert f7.from_fraction(Fraction(1, 2)).val == 4


def test_rank_over_prime_field_differs_from_rationals():
    rows = [[2, 0], [0, 2]]
    assert rank(Matrix.from_rows(rows, QQ)) == 2
    assert rank(Matrix.from_rows(rows, PrimeField(2))) == 0


def test_cyclotomic_field_relations():
    for d in (2, 3, 4, 5):
        f = CyclotomicField(d)
        z = f.zeta(1)
        power = f.one
        for _ in range(d):
            power = power * z
        assert power == f.one
        assert z * z.inverse() == f.one


def test_cyclotomic_quartic_square_root_of_minus_one():
    f = CyclotomicField(4)
    z = f.zeta(1)
    assert z * z == f.from_int(-1)


def test_matrix_multiplication_associates():
    a = Matrix.from_rows([[1, 2], [3, 4]], QQ)
    b = Matrix.from_rows([[0, 1], [1, 0]], QQ)
    c = Matrix.from_rows([[2, 0], [0, 2]], QQ)
    assert ((a @ b) @ c).entries == (a @ (b @ c)).entries

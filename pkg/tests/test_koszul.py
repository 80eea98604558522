"""Forms, polyvector fields, contraction homology, and the splitting map."""

import pytest

from conftest import make_model
from lghomology.errors import CharacteristicTooSmall
from lghomology.jacobi import canonical_module, jacobi_data
from lghomology.koszul import (contract_dW, e2_page, form_basis,
                               form_comparison, hkr_split,
                               koszul_concentrated, koszul_homology_dims,
                               polyvector_basis, split_insertion_identity,
                               wedge_dW)
from lghomology.linalg import PrimeField


def test_basis_counts():
    ring = make_model("x^2+y^2", "xy").ring
    # 1-forms of grade 2 in two variables: x dx, y dx, x dy, y dy
    assert len(form_basis(ring, 1, 2)) == 4
    # 1-vectors of grade 0: x @x, y @x, x @y, y @y
    assert len(polyvector_basis(ring, 1, 0)) == 4
    assert len(polyvector_basis(ring, 2, -2)) == 1


def test_wedge_squares_to_zero():
    model = make_model("x^3+y^3+z^3", "xyz")
    for k in (0, 1):
        for g in (0, 1, 2, 3):
            a = wedge_dW(model, k + 1, g + model.degree)
            b = wedge_dW(model, k, g)
            assert (a @ b).is_zero()


def test_contraction_squares_to_zero():
    model = make_model("x^3+y^3+z^3", "xyz")
    for k in (2, 3):
        for g in (-3, -2, 0, 2):
            a = contract_dW(model, k - 1, g + model.degree)
            b = contract_dW(model, k, g)
            assert (a @ b).is_zero()


def test_concentration_on_isolated_singularities():
    for src, names in (("x^3", "x"), ("x^2+y^2", "xy"),
                       ("x^3+y^3+z^3", "xyz")):
        assert koszul_concentrated(make_model(src, names))


def test_concentration_spot_dims_match_quotient():
    model = make_model("x^2+y^2", "xy")
    dims = koszul_homology_dims(model, 4)
    assert set(dims) == {0}
    assert dims[0] == dict(jacobi_data(model).dims.dims)


def test_split_insertion_identity_small_windows():
    model = make_model("x^2+y^2", "xy")
    for k in range(5):
        for g in (k, k + 1, k + 2):
            assert split_insertion_identity(model, k, g)


def test_split_insertion_identity_weighted():
    model = make_model("x^3+y^2", "xy", weights=(2, 3))
    for k in range(4):
        assert split_insertion_identity(model, k, 2 * k + 2)


def test_form_comparison_matches():
    model = make_model("x^2+y^2", "xy")
    for k in range(4):
        for g in (k, k + 1, k + 2):
            h, forms = form_comparison(model, k, g)
            assert h == forms


def test_split_requires_large_characteristic():
    model = make_model("x^4+y^4", "xy", field=PrimeField(3))
    with pytest.raises(CharacteristicTooSmall):
        hkr_split(model, 3, 3)
    # k below the characteristic is fine
    hkr_split(model, 2, 2)


def test_e2_support_univariate_cubic():
    model = make_model("x^3", "x")
    page = e2_page(model, max_column=2, max_row=3, max_charge=8)
    omega = dict(canonical_module(model).dims.dims)  # {1: 1, 2: 1}
    assert page[(0, 1)] == omega
    assert page[(1, 2)] == {g + 3: n for g, n in omega.items()}
    assert page[(2, 3)] == {g + 6: n for g, n in omega.items()}
    # the (0, 0) corner carries the whole polynomial line
    assert page[(0, 0)] == {q: 1 for q in range(9)}


def test_e2_vanishes_off_support_rows():
    model = make_model("x^2+y^2", "xy")
    page = e2_page(model, max_column=2, max_row=4, max_charge=8)
    for (i, j) in page:
        assert i == 0 or j - i == model.ring.nvars

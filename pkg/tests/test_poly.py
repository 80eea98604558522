"""Multivariate polynomial arithmetic, parsing, and Groebner bases."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lghomology.errors import NotZeroDimensional, ParseError, UnknownVariable
from lghomology.poly import (PolyRing, Polynomial, buchberger,
                             format_polynomial, graded_quotient_dims,
                             is_zero_dimensional, normal_form,
                             parse_polynomial, standard_monomials)

RING = PolyRing(("x", "y", "z"))


def test_parse_format_round_trip():
    for src in ("x^2+y^2", "x*y*z-3*x+1/2", "2*x^3-y"):
        p = parse_polynomial(src, RING)
        again = parse_polynomial(format_polynomial(p), RING)
        assert p == again


def test_parse_rejects_unknown_variable():
    with pytest.raises(UnknownVariable):
        parse_polynomial("x+q", RING)


def test_parse_rejects_garbage():
    for src in ("x+", "(x", "x^", "^2", "x//2"):
        with pytest.raises(ParseError):
            parse_polynomial(src, RING)


def test_double_star_exponent():
    assert parse_polynomial("x**3", RING) == parse_polynomial("x^3", RING)


def _to_sympy(p, symbols):
    import sympy

    out = sympy.Integer(0)
    for mono, coeff in p.terms.items():
        term = sympy.Rational(coeff)
        for s, e in zip(symbols, mono):
            term *= s ** e
        out += term
    return sympy.expand(out)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2),
                          st.integers(-3, 3)), min_size=1, max_size=4),
       st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2),
                          st.integers(-3, 3)), min_size=1, max_size=4))
def test_product_matches_sympy(terms_a, terms_b):
    import sympy

    ring = PolyRing(("x", "y"))
    xs = sympy.symbols("x y")

    def build(terms):
        acc = {}
        for ea, eb, c in terms:
            key = (ea, eb)
            acc[key] = acc.get(key, 0) + Fraction(c)
        return Polynomial(ring, {k: v for k, v in acc.items() if v})

    a, b = build(terms_a), build(terms_b)
    assert _to_sympy(a * b, xs) == sympy.expand(_to_sympy(a, xs) *
                                                _to_sympy(b, xs))


def test_weighted_degree_and_homogeneity():
    ring = PolyRing(("x", "y"), (1, 2))
    p = parse_polynomial("x^2+y", ring)
    assert p.is_homogeneous()
    assert p.degree() == 2
    assert not parse_polynomial("x+y", ring).is_homogeneous()


def test_monomial_counts():
    ring = PolyRing(("x", "y", "z"))
    # number of degree-d monomials in 3 variables is (d+1)(d+2)/2
    for d in range(5):
        assert len(ring.monomials_of_degree(d)) == (d + 1) * (d + 2) // 2


def test_buchberger_membership_matches_sympy():
    import sympy

    ring = PolyRing(("x", "y"))
    gens = [parse_polynomial(s, ring) for s in ("x^2+y", "x*y-1")]
    gb = buchberger(gens, ring)
    xs = sympy.symbols("x y")
    sym_gb = sympy.groebner([_to_sympy(g, xs) for g in gens], *xs,
                            order="grevlex")
    probes = ["x^3+x*y", "x^4", "y^2+x", "x^2*y-x", "1"]
    for src in probes:
        p = parse_polynomial(src, ring)
        ours = not normal_form(p, gb)
        theirs = sym_gb.reduce(_to_sympy(p, xs))[1] == 0
        assert ours == theirs


def test_normal_form_is_idempotent_and_linear():
    ring = PolyRing(("x", "y"))
    gb = buchberger([parse_polynomial("x^2-y", ring),
                     parse_polynomial("y^2-1", ring)], ring)
    p = parse_polynomial("x^5+y^3+x*y", ring)
    q = parse_polynomial("x^2*y^2", ring)
    np_, nq = normal_form(p, gb), normal_form(q, gb)
    assert normal_form(np_, gb) == np_
    assert normal_form(p + q, gb) == np_ + nq


def test_zero_dimensionality_detection():
    ring = PolyRing(("x", "y"))
    point = buchberger([parse_polynomial("x^2", ring),
                        parse_polynomial("y^3", ring)], ring)
    curve = buchberger([parse_polynomial("x*y", ring)], ring)
    assert is_zero_dimensional(point)
    assert not is_zero_dimensional(curve)
    with pytest.raises(NotZeroDimensional):
        standard_monomials(curve)


def test_standard_monomials_of_monomial_ideal():
    ring = PolyRing(("x", "y"))
    gb = buchberger([parse_polynomial("x^2", ring),
                     parse_polynomial("y^3", ring)], ring)
    monos = standard_monomials(gb)
    assert sorted(monos) == [(a, b) for a in range(2) for b in range(3)]


def test_graded_quotient_dims_total():
    ring = PolyRing(("x", "y"))
    gb = buchberger([parse_polynomial("x^3", ring),
                     parse_polynomial("y^2", ring)], ring)
    dims = graded_quotient_dims(gb)
    assert dims.total == 6
    assert dims == {0: 1, 1: 2, 2: 2, 3: 1}


def test_division_by_constant_only():
    assert parse_polynomial("x/2", RING) == parse_polynomial("1/2*x", RING)
    with pytest.raises(ParseError):
        parse_polynomial("1/x", RING)

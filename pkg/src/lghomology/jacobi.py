"""Landau-Ginzburg model invariants from the ideal of partial derivatives.

The critical-locus quotient ring, its dimension (the Milnor number), its
graded dimension series, and the top-form quotient with its degree shift.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NonHomogeneous, NonIsolated, ZeroPotentialGradient
from .poly import (DimensionSeries, GroebnerBasis, PolyRing, Polynomial,
                   buchberger, graded_quotient_dims, is_zero_dimensional,
                   standard_monomials)

INFINITE = math.inf


@dataclass(frozen=True)
class LGModel:
    """A polynomial ring with graded variables plus a potential."""

    ring: PolyRing
    potential: Polynomial

    def __post_init__(self):
        if self.potential.ring != self.ring:
            raise ValueError("potential lives in a different ring")
        if self.potential.degree() < 1:
            raise ValueError("potential must be nonconstant")

    @property
    def degree(self):
        """Weighted degree of the potential."""
        return self.potential.degree()

    def is_homogeneous(self):
        return self.potential.is_homogeneous()

    def require_homogeneous(self):
        if not self.is_homogeneous():
            raise NonHomogeneous("potential is not weighted-homogeneous")

    @property
    def weight_sum(self):
        return sum(self.ring.weights)


@dataclass
class JacobiData:
    ideal: GroebnerBasis
    milnor: object  # int or INFINITE
    dims: DimensionSeries  # empty when milnor is infinite


@dataclass
class CanonicalData:
    """Graded data of the top-form quotient: shifted dimension series + parity."""

    dims: DimensionSeries
    parity: int
    shift: int


def jacobi_ideal(model):
    """Reduced Groebner basis of the ideal of partial derivatives."""
    partials = [model.potential.diff(i) for i in range(model.ring.nvars)]
    partials = [p for p in partials if p]
    if not partials:
        raise ZeroPotentialGradient("all partial derivatives vanish")
    return buchberger(partials, model.ring)


def has_isolated_critical_points(model):
    return is_zero_dimensional(jacobi_ideal(model))


def milnor_number(model):
    """Dimension of the critical-locus quotient ring; INFINITE if not isolated."""
    gb = jacobi_ideal(model)
    if not is_zero_dimensional(gb):
        return INFINITE
    return len(standard_monomials(gb))


def jacobi_data(model):
    gb = jacobi_ideal(model)
    if not is_zero_dimensional(gb):
        return JacobiData(gb, INFINITE, DimensionSeries({}))
    dims = graded_quotient_dims(gb)
    return JacobiData(gb, dims.total, dims)


def canonical_module(model):
    """Top-form quotient data: quotient-ring dims shifted by the volume degree.

    The degree shift is the weighted degree of the volume form (sum of the
    variable weights); the parity is the variable count mod 2.
    """
    data = jacobi_data(model)
    if data.milnor is INFINITE:
        raise NonIsolated("critical points are not isolated")
    model.require_homogeneous()
    shift = model.weight_sum
    return CanonicalData(dims=data.dims.shifted(shift),
                         parity=model.ring.nvars % 2,
                         shift=shift)


def expected_weighted_milnor(model):
    """Classical product formula for weighted-homogeneous isolated potentials.

    Independent oracle: prod over variables of (d - w_i) / w_i.
    """
    model.require_homogeneous()
    d = model.degree
    value = 1
    for w in model.ring.weights:
        num = d - w
        if num % w:
            return None  # formula only integral when each w divides d - w
        value *= num // w
    return value


def socle_degree(model):
    """Top weighted degree of the quotient ring for homogeneous potentials."""
    model.require_homogeneous()
    return model.ring.nvars * model.degree - 2 * model.weight_sum

"""Shared helpers for the test suite."""

from lghomology.jacobi import LGModel
from lghomology.poly import PolyRing, parse_polynomial


def make_model(source, names, weights=None, field=None):
    kwargs = {}
    if field is not None:
        kwargs["field"] = field
    ring = PolyRing(tuple(names), tuple(weights) if weights else None, **kwargs)
    return LGModel(ring, parse_polynomial(source, ring))

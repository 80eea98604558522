"""Differential forms, polyvector fields, and the splitting of chains.

Forms and polyvector fields over a graded polynomial ring are encoded as
sparse maps from (monomial, strictly increasing index tuple) to scalars.
A form ``m dx_I`` has grade deg(m) + sum of the weights in I; a polyvector
``m @_I`` has grade deg(m) - sum of the weights in I.  Wedging with the
differential of the potential and contracting against it both raise the
grade by the potential degree.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import factorial

from .errors import CharacteristicTooSmall
from .linalg import Matrix, homology_dim, rank
from .poly import mono_mul

# ---------------------------------------------------------------------------
# Bases


def form_basis(ring, k, grade):
    """Monomial k-forms of the given grade, ordered deterministically."""
    out = []
    for idx in combinations(range(ring.nvars), k):
        mono_deg = grade - sum(ring.weights[i] for i in idx)
        if mono_deg < 0:
            continue
        for m in ring.monomials_of_degree(mono_deg):
            out.append((m, idx))
    return out


def polyvector_basis(ring, k, grade):
    """Monomial k-vector fields of the given grade."""
    out = []
    for idx in combinations(range(ring.nvars), k):
        mono_deg = grade + sum(ring.weights[i] for i in idx)
        if mono_deg < 0:
            continue
        for m in ring.monomials_of_degree(mono_deg):
            out.append((m, idx))
    return out


def _mono_partial(mono, i):
    """(coefficient, monomial) of the i-th partial of a monomial, or None."""
    if mono[i] == 0:
        return None
    lowered = mono[:i] + (mono[i] - 1,) + mono[i + 1:]
    return mono[i], lowered


def _dW_components(model):
    """Sparse list of (variable index, monomial, coefficient) of the gradient."""
    out = []
    for i in range(model.ring.nvars):
        p = model.potential.diff(i)
        for m, c in p.terms.items():
            out.append((i, m, c))
    return out


# ---------------------------------------------------------------------------
# The two Koszul-type differentials


def wedge_dW(model, k, grade):
    """Matrix of dW wedge -, from k-forms of the grade to (k+1)-forms."""
    ring = model.ring
    field = ring.field
    src = form_basis(ring, k, grade)
    dst = form_basis(ring, k + 1, grade + model.degree)
    index = {e: n for n, e in enumerate(dst)}
    comps = _dW_components(model)
    out = {}
    for col, (m, idx) in enumerate(src):
        for i, wm, wc in comps:
            if i in idx:
                continue
            pos = sum(1 for j in idx if j < i)
            sign = field.one if pos % 2 == 0 else field.from_int(-1)
            new_idx = tuple(sorted(idx + (i,)))
            row = index[(mono_mul(m, wm), new_idx)]
            key = (row, col)
            val = sign * wc
            cur = out.get(key)
            s = val if cur is None else cur + val
            if s:
                out[key] = s
            elif cur is not None:
                del out[key]
    return Matrix(len(dst), len(src), field, out)


def contract_dW(model, k, grade):
    """Matrix of contraction against dW, k-vectors to (k-1)-vectors."""
    ring = model.ring
    field = ring.field
    src = polyvector_basis(ring, k, grade)
    if k == 0:
        return Matrix(0, len(src), field)
    dst = polyvector_basis(ring, k - 1, grade + model.degree)
    index = {e: n for n, e in enumerate(dst)}
    partials = {}
    for i in range(ring.nvars):
        partials[i] = model.potential.diff(i).terms
    out = {}
    for col, (m, idx) in enumerate(src):
        for pos, i in enumerate(idx):
            sign = field.one if pos % 2 == 0 else field.from_int(-1)
            new_idx = idx[:pos] + idx[pos + 1:]
            for wm, wc in partials[i].items():
                row = index[(mono_mul(m, wm), new_idx)]
                key = (row, col)
                val = sign * wc
                cur = out.get(key)
                s = val if cur is None else cur + val
                if s:
                    out[key] = s
                elif cur is not None:
                    del out[key]
    return Matrix(len(dst), len(src), field, out)


# ---------------------------------------------------------------------------
# Koszul cohomology


def koszul_homology_dims(model, max_grade):
    """Homology of the contraction complex, per spot and grade.

    Returns {k: {grade: dim}} with zero entries omitted.
    """
    ring = model.ring
    d = model.degree
    lo = -sum(ring.weights)
    out = {}
    for k in range(ring.nvars + 1):
        for g in range(lo, max_grade + 1):
            d_out = contract_dW(model, k, g)
            d_in = contract_dW(model, k + 1, g - d)
            h = homology_dim(d_in, d_out)
            if h:
                out.setdefault(k, {})[g] = h
    return out


def koszul_concentrated(model, max_grade=None):
    """True when homology sits only at spot zero, matching the quotient ring."""
    from .jacobi import jacobi_data, socle_degree
    if max_grade is None:
        max_grade = socle_degree(model) + model.degree
    dims = koszul_homology_dims(model, max_grade)
    if any(k != 0 for k in dims):
        return False
    expected = {g: n for g, n in jacobi_data(model).dims.dims.items()
                if g <= max_grade}
    return dims.get(0, {}) == expected


# ---------------------------------------------------------------------------
# Splitting chains into forms


def _check_characteristic(field, k):
    char = getattr(field, "characteristic", 0)
    if char and char <= k:
        raise CharacteristicTooSmall(
            "splitting a degree-%d chain needs invertible %d!" % (k, k))


def hkr_split(model, k, grade):
    """Matrix of the chain-to-form splitting on one graded window.

    Sends m_0|m_1|..|m_k to (1/k!) m_0 dm_1 ^ .. ^ dm_k.
    """
    from .hochschild import poly_chain_basis
    ring = model.ring
    field = ring.field
    _check_characteristic(field, k)
    src = poly_chain_basis(ring, k, grade)
    dst = form_basis(ring, k, grade)
    index = {e: n for n, e in enumerate(dst)}
    inv_fact = field.from_fraction(Fraction(1, factorial(k)))
    out = {}
    for col, t in enumerate(src):
        # expand dm_1 ^ .. ^ dm_k over choices of one variable per slot
        stack = [(t[0], (), field.one)]
        for slot in range(1, k + 1):
            new_stack = []
            for mono, chosen, coeff in stack:
                for i in range(ring.nvars):
                    part = _mono_partial(t[slot], i)
                    if part is None or i in chosen:
                        continue
                    e, lowered = part
                    new_stack.append((mono_mul(mono, lowered), chosen + (i,),
                                      coeff * field.from_int(e)))
            stack = new_stack
        for mono, chosen, coeff in stack:
            perm = list(chosen)
            # sign of the permutation sorting the chosen indices
            sign = 1
            for a in range(len(perm)):
                for b in range(a + 1, len(perm)):
                    if perm[a] > perm[b]:
                        sign = -sign
            idx = tuple(sorted(chosen))
            row = index[(mono, idx)]
            val = coeff * inv_fact
            if sign < 0:
                val = -val
            key = (row, col)
            cur = out.get(key)
            s = val if cur is None else cur + val
            if s:
                out[key] = s
            elif cur is not None:
                del out[key]
    return Matrix(len(dst), len(src), field, out)


def split_insertion_identity(model, k, grade):
    """Check: splitting after curvature insertion equals wedging with dW."""
    from .hochschild import poly_boundary_plus
    left = hkr_split(model, k + 1, grade + model.degree) @ \
        poly_boundary_plus(model, k, grade)
    right = wedge_dW(model, k, grade) @ hkr_split(model, k, grade)
    return left == right


def form_comparison(model, k, grade):
    """(multiplication-homology dim, k-form dim) on one graded window."""
    from .hochschild import poly_boundary_minus, poly_chain_basis
    ring = model.ring
    d_out = poly_boundary_minus(ring, k, grade) if k >= 1 else \
        Matrix(0, len(poly_chain_basis(ring, 0, grade)), ring.field)
    d_in = poly_boundary_minus(ring, k + 1, grade)
    return homology_dim(d_in, d_out), len(form_basis(ring, k, grade))


# ---------------------------------------------------------------------------
# The second page


def e2_page(model, max_column, max_row, max_charge):
    """Second-page dimensions {(i, j): {charge: dim}}.

    Rows carry forms of degree j - i with the wedge differential moving one
    column left; the charge (grade plus column times potential degree) is
    preserved.
    """
    model.require_homogeneous()
    d = model.degree
    out = {}
    for i in range(max_column + 1):
        for j in range(max_row + 1):
            k = j - i
            if k < 0 or k > model.ring.nvars:
                continue
            spot = {}
            for q in range(max_charge + 1):
                g = q - i * d
                if g < 0:
                    continue
                d_out = wedge_dW(model, k, g) if i >= 1 else \
                    Matrix(0, len(form_basis(model.ring, k, g)), model.ring.field)
                d_in = wedge_dW(model, k - 1, g - d) if k >= 1 else \
                    Matrix(len(form_basis(model.ring, k, g)), 0, model.ring.field)
                h = homology_dim(d_in, d_out)
                if h:
                    spot[q] = h
            if spot:
                out[(i, j)] = spot
    return out

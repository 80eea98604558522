"""Finite-abelian diagonal symmetries of Landau-Ginzburg models.

A group action assigns each variable a character exponent; group elements
scale variables by roots of unity.  Orbifold invariants are assembled
sector by sector: each group element contributes the canonical-module data
of the potential restricted to its fixed variables, tagged with characters,
and the final answer keeps the invariant part (equal to coinvariants away
from torsion in the group order).

Cross products of finite carriers with the group are also built here,
together with the chain-level map sending a cross-product tensor to its
per-sector restriction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product as iter_product

from .errors import (BadCharacteristic, NonIsolatedSector, NotInvariant,
                     WindowTooSmall)
from .jacobi import LGModel, jacobi_ideal, socle_degree
from .linalg import CyclotomicField, Matrix, QQ
from .poly import (PolyRing, Polynomial, is_zero_dimensional,
                   standard_monomials)

# ---------------------------------------------------------------------------
# Group actions


@dataclass(frozen=True)
class GroupAction:
    """Diagonal action of a product of cyclic groups on the variables.

    ``orders`` lists the cyclic orders; ``weights[v]`` gives the character
    exponents of variable v, one per cyclic factor.  Elements are exponent
    tuples of the same length as ``orders``.
    """

    orders: tuple
    weights: tuple  # per variable, tuple of exponents per factor

    def __post_init__(self):
        for w in self.weights:
            if len(w) != len(self.orders):
                raise ValueError("weight tuple length must match the orders")

    @classmethod
    def cyclic(cls, d, weights):
        """Single cyclic factor of order d with integer variable weights."""
        return cls((d,), tuple((w % d,) for w in weights))

    @property
    def identity(self):
        return (0,) * len(self.orders)

    def elements(self):
        return list(iter_product(*(range(d) for d in self.orders)))

    @property
    def order(self):
        out = 1
        for d in self.orders:
            out *= d
        return out

    def char_zero(self):
        return (0,) * len(self.orders)

    def char_add(self, a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, self.orders))

    def char_scale(self, a, n):
        return tuple((x * n) % d for x, d in zip(a, self.orders))

    def monomial_character(self, mono):
        """Character exponents of a monomial under the diagonal action."""
        out = self.char_zero()
        for v, e in enumerate(mono):
            if e:
                out = self.char_add(out, self.char_scale(self.weights[v], e))
        return out

    def phase(self, g, character):
        """Rotation number in [0, 1) applied by g to a vector of the character."""
        total = Fraction(0)
        for gi, ci, d in zip(g, character, self.orders):
            total += Fraction(gi * ci, d)
        return total - math.floor(total)

    def fixes_variable(self, g, v):
        return self.phase(g, self.weights[v]) == 0

    def is_invariant(self, poly):
        zero = self.char_zero()
        return all(self.monomial_character(m) == zero for m in poly.terms)

    def require_invariant(self, poly):
        if not self.is_invariant(poly):
            raise NotInvariant("potential is not fixed by the action")


def fixed_locus(action, g):
    """Indices of the variables fixed by the group element."""
    return tuple(v for v in range(len(action.weights))
                 if action.fixes_variable(g, v))


def restrict_potential(model, fixed_vars):
    """Model on the fixed variables with the others set to zero."""
    ring = model.ring
    keep = set(fixed_vars)
    sub_names = tuple(ring.names[v] for v in fixed_vars)
    sub_weights = tuple(ring.weights[v] for v in fixed_vars)
    sub_ring = PolyRing(sub_names, sub_weights, field=ring.field)
    terms = {}
    for mono, c in model.potential.terms.items():
        if any(e and v not in keep for v, e in enumerate(mono)):
            continue
        sub_mono = tuple(mono[v] for v in fixed_vars)
        terms[sub_mono] = terms.get(sub_mono, ring.field.zero) + c
    poly = Polynomial(sub_ring, {m: c for m, c in terms.items() if c})
    if not poly:
        return sub_ring, None
    if poly.degree() < 1:
        return sub_ring, None
    return sub_ring, LGModel(sub_ring, poly)


# ---------------------------------------------------------------------------
# Sectors


@dataclass
class SectorReport:
    """Contribution of one group element.

    ``classes`` lists (shifted degree, character) pairs; the parity is the
    fixed-space dimension mod 2.
    """

    g: tuple
    fixed_vars: tuple
    restricted: object  # LGModel or None for point sectors
    classes: list
    parity: int

    @property
    def dim(self):
        return len(self.classes)


def sector_hh_bm(model, action, g):
    """Canonical-module classes of one sector, tagged with characters.

    Each class of the restricted potential's top-form quotient carries the
    character of its monomial plus the volume twist (sum of fixed-variable
    weights).  A zero-dimensional fixed locus contributes one class with
    the trivial character.
    """
    fv = fixed_locus(action, g)
    sub_ring, restricted = restrict_potential(model, fv)
    parity = len(fv) % 2
    if not fv:
        return SectorReport(g, fv, None, [(0, action.char_zero())], 0)
    if restricted is None:
        raise NonIsolatedSector(
            "restricted potential vanishes on a positive-dimensional locus")
    gb = jacobi_ideal(restricted)
    if not is_zero_dimensional(gb):
        raise NonIsolatedSector("restricted critical locus is not isolated")
    volume = action.char_zero()
    for v in fv:
        volume = action.char_add(volume, action.weights[v])
    shift = restricted.weight_sum
    classes = []
    for mono in standard_monomials(gb):
        # character of the monomial in the original variables
        char = volume
        for pos, v in enumerate(fv):
            if mono[pos]:
                char = action.char_add(
                    char, action.char_scale(action.weights[v], mono[pos]))
        classes.append((sub_ring.weighted_degree(mono) + shift, char))
    classes.sort()
    return SectorReport(g, fv, restricted, classes, parity)


def coinvariant_dims(classes, action, field=QQ):
    """Number of invariant classes; equals coinvariants away from torsion."""
    char = getattr(field, "characteristic", 0)
    if char and action.order % char == 0:
        raise BadCharacteristic(
            "group order %d is divisible by the characteristic" % action.order)
    zero = action.char_zero()
    return sum(1 for _deg, c in classes if c == zero)


@dataclass
class OrbifoldReport:
    sectors: list
    invariant_counts: dict   # g -> invariant class count
    combined: dict           # class degree (identity-sector Jacobi degree) -> dim
    even_total: int
    odd_total: int
    twisted_count: int

    @property
    def total(self):
        return sum(self.invariant_counts.values())


def orbifold_hh_bm(model, action):
    """Assembled orbifold invariants over all sectors.

    Identity-sector invariant classes are graded by their Jacobi degree;
    twisted-sector classes are placed in the middle column (half the socle
    degree), a convention following the quartic example.
    """
    action.require_invariant(model.potential)
    zero = action.char_zero()
    sectors = []
    invariant_counts = {}
    combined = {}
    even = odd = 0
    twisted = 0
    middle = Fraction(socle_degree(model), 2)
    for g in action.elements():
        sec = sector_hh_bm(model, action, g)
        sectors.append(sec)
        inv = coinvariant_dims(sec.classes, action, model.ring.field)
        invariant_counts[g] = inv
        if sec.parity == 0:
            even += inv
        else:
            odd += inv
        if g == action.identity:
            shift = sec.restricted.weight_sum if sec.restricted else 0
            for deg, c in sec.classes:
                if c == zero:
                    key = Fraction(deg - shift)
                    combined[key] = combined.get(key, 0) + 1
        else:
            twisted += inv
            if inv:
                combined[middle] = combined.get(middle, 0) + inv
    return OrbifoldReport(sectors, invariant_counts, combined, even, odd,
                          twisted)


# ---------------------------------------------------------------------------
# Cross products of truncated monomial algebras with the group


def _cyclotomic_order(action):
    out = 1
    for d in action.orders:
        out = out * d // math.gcd(out, d)
    return out


class CrossProduct:
    """Cross product of k[x_i]/(x_i^{p_i}) with a diagonal abelian group.

    Basis elements are pairs (exponent tuple, group element); products
    follow (a # g)(b # h) = a (g.b) # gh with g acting by root-of-unity
    scalars.  The curvature is W # identity.
    """

    def __init__(self, action, powers, potential_terms, field=None):
        from .hochschild import FiniteCurvedAlgebra
        self.action = action
        self.powers = tuple(powers)
        L = _cyclotomic_order(action)
        if field is None:
            field = QQ if L == 1 else CyclotomicField(L)
        self.field = field
        self.root_order = L
        base = []
        ranges = [range(p) for p in self.powers]
        for expo in iter_product(*ranges):
            base.append(expo)
        self.base_monomials = base
        self.base_index = {m: i for i, m in enumerate(base)}
        self.potential_terms = {tuple(m): Fraction(c)
                                for m, c in potential_terms.items() if c}
        for m in self.potential_terms:
            if any(e >= p for e, p in zip(m, self.powers)):
                raise ValueError("potential monomial exceeds the truncation")
        w_poly_chars = {self.action.monomial_character(m)
                        for m in self.potential_terms}
        if w_poly_chars - {self.action.char_zero()}:
            raise NotInvariant("potential is not fixed by the action")

        self.group = action.elements()
        self.g_index = {g: i for i, g in enumerate(self.group)}
        self.elements = [(m, g) for m in base for g in self.group]
        self.index = {e: i for i, e in enumerate(self.elements)}

        one = field.one
        mult = {}
        for i, (a, g) in enumerate(self.elements):
            for j, (b, h) in enumerate(self.elements):
                scalar = self._phase_scalar(g, b)
                prod = tuple(x + y for x, y in zip(a, b))
                if any(e >= p for e, p in zip(prod, self.powers)):
                    continue
                gh = action.char_add(g, h)
                k = self.index[(prod, gh)]
                mult[(i, j)] = {k: scalar}
        curvature = {}
        for m, c in self.potential_terms.items():
            curvature[self.index[(m, action.identity)]] = field.from_fraction(c)
        unit = self.index[(tuple(0 for _ in self.powers), action.identity)]
        labels = ["%s#%s" % (m, g) for (m, g) in self.elements]
        self.algebra = FiniteCurvedAlgebra(labels, mult, curvature, unit=unit,
                                           field=field, check=True)

    def _phase_scalar(self, g, mono):
        """Scalar by which g acts on the base monomial."""
        char = self.action.monomial_character(mono)
        ph = self.action.phase(g, char)
        if ph == 0:
            return self.field.one
        power = ph * self.root_order
        if power.denominator != 1:
            raise ValueError("phase incompatible with the root order")
        return self.field.zeta(int(power))

    def monomial_phase_scalar(self, g, mono):
        return self._phase_scalar(g, mono)

    def fixed_vars(self, g):
        return tuple(v for v in range(len(self.powers))
                     if self.action.fixes_variable(g, v))

    def sector_algebra(self, g):
        """Curved algebra of the fixed subspace of g, over the same field."""
        from .hochschild import FiniteCurvedAlgebra
        fv = set(self.fixed_vars(g))
        keep = [m for m in self.base_monomials
                if all(e == 0 or v in fv for v, e in enumerate(m))]
        idx = {m: i for i, m in enumerate(keep)}
        one = self.field.one
        mult = {}
        for i, a in enumerate(keep):
            for j, b in enumerate(keep):
                prod = tuple(x + y for x, y in zip(a, b))
                if any(e >= p for e, p in zip(prod, self.powers)):
                    continue
                mult[(i, j)] = {idx[prod]: one}
        curvature = {}
        for m, c in self.potential_terms.items():
            if m in idx:
                curvature[idx[m]] = self.field.from_fraction(c)
        unit = idx[tuple(0 for _ in self.powers)]
        alg = FiniteCurvedAlgebra([str(m) for m in keep], mult, curvature,
                                  unit=unit, field=self.field, check=True)
        return alg, keep, idx


def cross_product(action, powers, potential_terms, field=None):
    return CrossProduct(action, powers, potential_terms, field=field)


# ---------------------------------------------------------------------------
# The per-sector restriction of cross-product chains


def psi_map(cp, chain):
    """Image of a cross-product basis tensor under the sector restriction.

    ``chain`` is a tuple of cross-product basis indices.  Returns
    (g, scalar, base tensor) where g is the product of the group parts and
    the slots have been rotated by the prefix products; returns None when
    the restriction to the fixed subspace kills the tensor.
    """
    action = cp.action
    elems = [cp.elements[i] for i in chain]
    g_total = action.char_zero()
    for _m, g in elems:
        g_total = action.char_add(g_total, g)
    fv = set(cp.fixed_vars(g_total))
    scalar = cp.field.one
    prefix = action.char_zero()
    out = []
    for pos, (m, g) in enumerate(elems):
        if pos > 0:
            scalar = scalar * cp.monomial_phase_scalar(prefix, m)
        prefix = action.char_add(prefix, g)
        if any(e and v not in fv for v, e in enumerate(m)):
            return None
        out.append(m)
    return g_total, scalar, tuple(out)


def _sector_chain_layout(cp, max_tensor):
    """Per-sector chain windows and a flat index for their direct sum."""
    from .hochschild import ChainWindow
    layout = {}
    for g in cp.group:
        alg, keep, idx = cp.sector_algebra(g)
        win = ChainWindow(alg, max_tensor, normalized=False)
        layout[g] = (alg, keep, idx, win)
    offsets = {}
    totals = {}
    for k in range(max_tensor + 1):
        off = 0
        for g in cp.group:
            offsets[(g, k)] = off
            off += layout[g][3].dim(k)
        totals[k] = off
    return layout, offsets, totals


def psi_matrices(cp, max_tensor, corrupt=False):
    """Matrices of the sector-restriction map on a chain window."""
    from .hochschild import ChainWindow
    win = ChainWindow(cp.algebra, max_tensor, normalized=False)
    layout, offsets, totals = _sector_chain_layout(cp, max_tensor)
    mats = {}
    for k in range(max_tensor + 1):
        ent = {}
        for col, t in enumerate(win.bases[k]):
            image = psi_map(cp, t)
            if image is None:
                continue
            g, scalar, monos = image
            alg, keep, idx, swin = layout[g]
            try:
                local = swin.index[k][tuple(idx[m] for m in monos)]
            except KeyError:
                continue
            if corrupt and k > 0:
                scalar = -scalar
            ent[(offsets[(g, k)] + local, col)] = scalar
        mats[k] = Matrix(totals[k], win.dim(k), cp.field, ent)
    return win, layout, offsets, totals, mats


def _sector_block_boundaries(cp, layout, offsets, totals, max_tensor):
    bm = {}
    bp = {}
    for k in range(1, max_tensor + 1):
        ent = {}
        for g in cp.group:
            m = layout[g][3].boundary_minus(k)
            ro, co = offsets[(g, k - 1)], offsets[(g, k)]
            for (i, j), v in m.entries.items():
                ent[(ro + i, co + j)] = v
        bm[k] = Matrix(totals[k - 1], totals[k], cp.field, ent)
    for k in range(max_tensor):
        ent = {}
        for g in cp.group:
            m = layout[g][3].boundary_plus(k)
            ro, co = offsets[(g, k + 1)], offsets[(g, k)]
            for (i, j), v in m.entries.items():
                ent[(ro + i, co + j)] = v
        bp[k] = Matrix(totals[k + 1], totals[k], cp.field, ent)
    return bm, bp


def _coinvariant_projector(cp, layout, offsets, totals, k):
    """Averaging projector over the diagonal group action on sector chains."""
    n = totals[k]
    field = cp.field
    inv_order = field.from_fraction(Fraction(1, cp.action.order))
    ent = {}
    for g in cp.group:
        alg, keep, idx, swin = layout[g]
        off = offsets[(g, k)]
        for col, t in enumerate(swin.bases[k]):
            for h in cp.group:
                scalar = field.one
                for slot in t:
                    scalar = scalar * cp.monomial_phase_scalar(h, keep[slot])
                key = (off + col, off + col)
                # diagonal action fixes the tensor shape, only scales it
                cur = ent.get(key, field.zero)
                ent[key] = cur + scalar * inv_order
    return Matrix(n, n, field, {k2: v for k2, v in ent.items() if v})


def psi_chain_check(cp, max_tensor, corrupt=False):
    """Exact commutation of the restriction map with both differentials.

    The insertion part must commute on the nose; the multiplication part
    after composing with the coinvariant projector.
    """
    if max_tensor < 2:
        raise WindowTooSmall("need tensor degree at least 2")
    win, layout, offsets, totals, psi = psi_matrices(cp, max_tensor,
                                                     corrupt=corrupt)
    bm_s, bp_s = _sector_block_boundaries(cp, layout, offsets, totals,
                                          max_tensor)
    bm_c = {k: win.boundary_minus(k) for k in range(1, max_tensor + 1)}
    bp_c = {k: win.boundary_plus(k) for k in range(max_tensor)}
    for k in range(max_tensor):
        if psi[k + 1] @ bp_c[k] != bp_s[k] @ psi[k]:
            return False
    for k in range(1, max_tensor + 1):
        proj = _coinvariant_projector(cp, layout, offsets, totals, k - 1)
        left = proj @ (psi[k - 1] @ bm_c[k])
        right = proj @ (bm_s[k] @ psi[k])
        if left != right:
            return False
    return True

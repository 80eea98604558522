"""Curved Hochschild machinery.

Chains are normalized by default: slots after the zeroth are drawn from a
complement of the unit.  The boundary splits as a tensor-degree-lowering
part (multiplications, with the wrap-around term) and a raising part
(insertions of the curvature element).  Homology is computed on finite
windows of the associated bicomplex and accepted only after the reported
dimensions stop changing as the window grows.

Sign conventions: positions after the zeroth slot count with alternating
signs; the wrap-around term additionally carries the Koszul sign of moving
the last element past the others (cohomological degrees, when present,
determine parities).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import (BadFunctional, CompositionNonzero, InfiniteCarrier,
                     NoStabilization, PositiveDegreeCarrier, WindowTooSmall)
from .linalg import Matrix, QQ, homology_dim, rank
from .poly import mono_mul

# ---------------------------------------------------------------------------
# Finite-dimensional curved algebras


class FiniteCurvedAlgebra:
    """Finite-dimensional associative algebra with a central curvature element.

    ``mult[(i, j)]`` maps a basis pair to a sparse product vector; ``unit``
    indexes the multiplicative identity.  ``degrees`` is an optional list of
    cohomological degrees used for Koszul signs and compact-type checks.
    """

    def __init__(self, labels, mult, curvature, unit=0, degrees=None, field=QQ,
                 check=True):
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.field = field
        self.unit = unit
        self.degrees = list(degrees) if degrees is not None else None
        self.mult = {k: {b: c for b, c in v.items() if c} for k, v in mult.items()}
        self.curvature = {b: c for b, c in curvature.items() if c}
        if check:
            self._check()

    def _check(self):
        one = self.field.one
        for i in range(self.dim):
            if self.product(self.unit, i) != {i: one} or \
               self.product(i, self.unit) != {i: one}:
                raise ValueError("unit law fails at basis element %d" % i)
        # Centrality of the curvature element.
        for i in range(self.dim):
            left = self.multiply_vec(self.curvature, {i: one})
            right = self.multiply_vec({i: one}, self.curvature)
            if left != right:
                raise ValueError("curvature element is not central")
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    ij = self.multiply_vec(self.product(i, j), {k: one})
                    jk = self.multiply_vec({i: one}, self.product(j, k))
                    if ij != jk:
                        raise ValueError("multiplication is not associative")

    def product(self, i, j):
        return self.mult.get((i, j), {})

    def multiply_vec(self, u, v):
        out = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.product(i, j).items():
                    cur = out.get(k)
                    s = a * b * c if cur is None else cur + a * b * c
                    if s:
                        out[k] = s
                    elif cur is not None:
                        del out[k]
        return out

    def parity(self, i):
        return 0 if self.degrees is None else self.degrees[i] % 2

    def curvature_parity(self):
        if self.degrees is None or not self.curvature:
            return 0
        ps = {self.degrees[i] % 2 for i in self.curvature}
        if len(ps) > 1:
            raise ValueError("curvature element has mixed parity")
        return ps.pop()

    def nonunit_indices(self):
        return [i for i in range(self.dim) if i != self.unit]

    @classmethod
    def truncated_polynomial(cls, power, curvature_coeffs, field=QQ,
                             generator_degree=None):
        """k[x]/(x^power) with curvature given as {exponent: coefficient}."""
        labels = ["x^%d" % e for e in range(power)]
        mult = {}
        one = field.one
        for i in range(power):
            for j in range(power):
                if i + j < power:
                    mult[(i, j)] = {i + j: one}
        curv = {e: field.from_fraction(c) for e, c in curvature_coeffs.items() if c}
        degrees = None
        if generator_degree is not None:
            degrees = [e * generator_degree for e in range(power)]
        return cls(labels, mult, curv, unit=0, degrees=degrees, field=field)

    @classmethod
    def graded_points(cls, degrees, field=QQ):
        """Unit plus pairwise-annihilating generators in given degrees.

        Basis: 1 in degree 0 and one generator per entry of ``degrees``;
        products of two non-unit elements vanish.  Flat (zero curvature).
        """
        labels = ["1"] + ["e%d" % i for i in range(len(degrees))]
        one = field.one
        n = len(degrees) + 1
        mult = {}
        for i in range(n):
            mult[(0, i)] = {i: one}
            mult[(i, 0)] = {i: one}
        return cls(labels, mult, {}, unit=0, degrees=[0] + list(degrees),
                   field=field)


# ---------------------------------------------------------------------------
# Chain windows over a finite algebra


class ChainWindow:
    """Truncated chain spaces of a finite curved algebra.

    ``bases[k]`` lists the basis tensors of tensor degree ``k``; normalized
    windows exclude the unit from all slots after the zeroth.
    """

    def __init__(self, algebra, max_tensor, normalized=True):
        self.algebra = algebra
        self.max_tensor = max_tensor
        self.normalized = normalized
        slots = algebra.nonunit_indices() if normalized else list(range(algebra.dim))
        self.bases = []
        self.index = []
        current = [()]
        for k in range(max_tensor + 1):
            if k == 0:
                basis = [(i,) for i in range(algebra.dim)]
            else:
                basis = [t + (i,) for t in self.bases[k - 1] for i in slots]
            self.bases.append(basis)
            self.index.append({t: n for n, t in enumerate(basis)})
        del current

    def dim(self, k):
        return len(self.bases[k])

    def _project_slot(self, idx, slot):
        """Kill unit components in interior slots of normalized windows."""
        return not (self.normalized and slot >= 1 and idx == self.algebra.unit)

    def _emit(self, out, col, tensor, slot_values, slot, sign):
        """Expand a tensor with a sparse vector in one slot into matrix entries."""
        for idx, coeff in slot_values.items():
            if not self._project_slot(idx, slot):
                continue
            t = tensor[:slot] + (idx,) + tensor[slot + 1:]
            row = self.index[len(t) - 1].get(t)
            if row is None:
                continue
            key = (row, col)
            cur = out.get(key)
            val = sign * coeff
            s = val if cur is None else cur + val
            if s:
                out[key] = s
            elif cur is not None:
                del out[key]

    def boundary_minus(self, k):
        """Matrix of the multiplication part, C_k -> C_{k-1}."""
        alg = self.algebra
        one = alg.field.one
        minus_one = alg.field.from_int(-1)
        out = {}
        for col, t in enumerate(self.bases[k]):
            parities = [alg.parity(i) for i in t]
            # merges of adjacent slots
            for j in range(k):
                sign = one if j % 2 == 0 else minus_one
                prod = alg.product(t[j], t[j + 1])
                merged = t[:j] + (None,) + t[j + 2:]
                self._emit(out, col, merged, prod, j, sign)
            # wrap-around term
            koszul = parities[k] * sum(parities[:k])
            sgn = one if (k + koszul) % 2 == 0 else minus_one
            prod = alg.product(t[k], t[0])
            merged = (None,) + t[1:k]
            self._emit(out, col, merged, prod, 0, sgn)
        return Matrix(self.dim(k - 1), self.dim(k), alg.field, out)

    def boundary_plus(self, k):
        """Matrix of the curvature insertions, C_k -> C_{k+1}."""
        alg = self.algebra
        one = alg.field.one
        minus_one = alg.field.from_int(-1)
        wp = alg.curvature_parity()
        out = {}
        for col, t in enumerate(self.bases[k]):
            parities = [alg.parity(i) for i in t]
            for j in range(k + 1):
                koszul = wp * sum(parities[1:j + 1])
                sign = one if (j + koszul) % 2 == 0 else minus_one
                widened = t[:j + 1] + (None,) + t[j + 1:]
                self._emit(out, col, widened, alg.curvature, j + 1, sign)
        return Matrix(self.dim(k + 1), self.dim(k), alg.field, out)

    def all_boundaries(self):
        bm = {k: self.boundary_minus(k) for k in range(1, self.max_tensor + 1)}
        bp = {k: self.boundary_plus(k) for k in range(self.max_tensor)}
        return bm, bp


def mixed_complex_check(algebra, max_tensor, corrupt_plus=False):
    """Verify the two squares and the anticommutator on the window interior."""
    if max_tensor < 3:
        raise WindowTooSmall("need tensor degree at least 3")
    win = ChainWindow(algebra, max_tensor)
    bm, bp = win.all_boundaries()
    if corrupt_plus:
        mid = max(k for k in bp if bp[k].entries)
        bp = dict(bp)
        bp[mid] = _corrupt(bp[mid])
    for k in range(2, max_tensor + 1):
        if not (bm[k - 1] @ bm[k]).is_zero():
            return False
    for k in range(max_tensor - 1):
        if not (bp[k + 1] @ bp[k]).is_zero():
            return False
    for k in range(1, max_tensor):
        anti = bp[k - 1] @ bm[k] + bm[k + 1] @ bp[k]
        if not anti.is_zero():
            return False
    return True


def _corrupt(m):
    if not m.entries:
        return m
    key = sorted(m.entries)[0]
    ent = dict(m.entries)
    ent[key] = -ent[key]
    return Matrix(m.rows, m.cols, m.field, ent)


# ---------------------------------------------------------------------------
# Pure-curvature algebras and the contracting homotopy


class PureCurvatureSpace:
    """Vector space with a distinguished element and no multiplication."""

    def __init__(self, dim_, curvature, field=QQ):
        self.dim = dim_
        self.field = field
        self.curvature = {b: c for b, c in curvature.items() if c}
        if not self.curvature:
            raise ValueError("curvature element must be nonzero")

    def chain_basis(self, k):
        basis = [()]
        for _ in range(k + 1):
            basis = [t + (i,) for t in basis for i in range(self.dim)]
        return basis

    def boundary_plus(self, k):
        one, minus_one = self.field.one, self.field.from_int(-1)
        src = self.chain_basis(k)
        dst = self.chain_basis(k + 1)
        index = {t: n for n, t in enumerate(dst)}
        out = {}
        for col, t in enumerate(src):
            for j in range(k + 1):
                sign = one if j % 2 == 0 else minus_one
                for idx, c in self.curvature.items():
                    row = index[t[:j + 1] + (idx,) + t[j + 1:]]
                    key = (row, col)
                    cur = out.get(key)
                    s = sign * c if cur is None else cur + sign * c
                    if s:
                        out[key] = s
                    elif cur is not None:
                        del out[key]
        return Matrix(len(dst), len(src), self.field, out)

    def homotopy(self, L, k):
        """h_k: C_k -> C_{k-1}, pairing the last slot with the functional."""
        one, minus_one = self.field.one, self.field.from_int(-1)
        if k == 0:
            return Matrix(0, self.dim, self.field)
        src = self.chain_basis(k)
        dst = self.chain_basis(k - 1)
        index = {t: n for n, t in enumerate(dst)}
        sign = one if (k + 1) % 2 == 0 else minus_one
        out = {}
        for col, t in enumerate(src):
            c = L.get(t[k], self.field.zero)
            if not c:
                continue
            out[(index[t[:k]], col)] = sign * c
        return Matrix(len(dst), len(src), self.field, out)


def _normalize_functional(space, L):
    Lw = space.field.zero
    for b, c in space.curvature.items():
        Lw = Lw + L.get(b, space.field.zero) * c
    if not Lw:
        raise BadFunctional("functional vanishes on the curvature element")
    inv = Lw.inverse() if hasattr(Lw, "inverse") else 1 / Lw
    return {b: c * inv for b, c in L.items()}


def vanishing_homotopy(space, L, max_tensor):
    """Homotopy operators h_k with h.b + b.h = id verified on the interior.

    Returns the dict of h_k matrices; raises if the identity fails.
    """
    L = _normalize_functional(space, L)
    bp = {k: space.boundary_plus(k) for k in range(max_tensor)}
    h = {k: space.homotopy(L, k) for k in range(max_tensor + 1)}
    for k in range(max_tensor):
        n = space.dim ** (k + 1)
        ident = Matrix.identity(n, space.field)
        lhs = h[k + 1] @ bp[k]
        if k > 0:
            lhs = lhs + bp[k - 1] @ h[k]
        if lhs != ident:
            raise AssertionError("homotopy identity fails at tensor degree %d" % k)
    return h


def vanishing_homotopy_cochain(space, L, max_tensor):
    """Cochain-side homotopy: pairs the first argument with the functional."""
    L = _normalize_functional(space, L)
    field = space.field
    one, minus_one = field.one, field.from_int(-1)
    dim = space.dim

    def cbasis(k):
        # elementary cochains (input tuple of length k, output index)
        ins = [()]
        for _ in range(k):
            ins = [t + (i,) for t in ins for i in range(dim)]
        return [(t, b) for t in ins for b in range(dim)]

    def d_mat(k):
        # C^k -> C^{k-1}: insert the curvature element into each input slot
        src, dst = cbasis(k), cbasis(k - 1)
        index = {e: n for n, e in enumerate(src)}
        out = {}
        for row, (t, b) in enumerate(dst):
            for j in range(k):
                sign = one if j % 2 == 0 else minus_one
                for idx, c in space.curvature.items():
                    col = index.get((t[:j] + (idx,) + t[j:], b))
                    if col is None:
                        continue
                    key = (row, col)
                    cur = out.get(key)
                    s = sign * c if cur is None else cur + sign * c
                    if s:
                        out[key] = s
                    elif cur is not None:
                        del out[key]
        return Matrix(len(dst), len(src), field, out)

    def h_mat(k):
        # C^k -> C^{k+1}: [h(phi)](a_1..a_{k+1}) = L(a_1) phi(a_2..)
        src, dst = cbasis(k), cbasis(k + 1)
        index = {e: n for n, e in enumerate(src)}
        out = {}
        for row, (t, b) in enumerate(dst):
            c = L.get(t[0], field.zero)
            if not c:
                continue
            col = index[(t[1:], b)]
            out[(row, col)] = c
        return Matrix(len(dst), len(src), field, out)

    d = {k: d_mat(k) for k in range(1, max_tensor + 2)}
    h = {k: h_mat(k) for k in range(max_tensor + 1)}
    for k in range(max_tensor):
        n = dim ** (k + 1)
        ident = Matrix.identity(n, field)
        lhs = d[k + 1] @ h[k]
        if k > 0:
            lhs = lhs + h[k - 1] @ d[k]
        if lhs != ident:
            raise AssertionError("cochain homotopy identity fails at degree %d" % k)
    return h


# ---------------------------------------------------------------------------
# Cochain windows over a finite algebra


class CochainWindow:
    """Truncated cochain spaces Hom(A^{tensor i}, A) of a finite algebra."""

    def __init__(self, algebra, max_tensor):
        if not isinstance(algebra, FiniteCurvedAlgebra):
            raise InfiniteCarrier("cochain computations need a finite carrier")
        self.algebra = algebra
        self.max_tensor = max_tensor
        self.bases = []
        self.index = []
        ins = [()]
        for i in range(max_tensor + 1):
            basis = [(t, b) for t in ins for b in range(algebra.dim)]
            self.bases.append(basis)
            self.index.append({e: n for n, e in enumerate(basis)})
            ins = [t + (j,) for t in ins for j in range(algebra.dim)]

    def dim(self, i):
        return len(self.bases[i])

    def internal_degree(self, i, elem):
        t, b = elem
        degs = self.algebra.degrees or [0] * self.algebra.dim
        j = degs[b] - sum(degs[x] for x in t)
        return i + j - 1

    def _add(self, out, key, val):
        cur = out.get(key)
        s = val if cur is None else cur + val
        if s:
            out[key] = s
        elif cur is not None:
            del out[key]

    def d_mult(self, i):
        """Multiplication part of the differential, C^i -> C^{i+1}."""
        alg = self.algebra
        field = alg.field
        one, minus_one = field.one, field.from_int(-1)
        src_index = self.index[i]
        out = {}
        for row, (s, b) in enumerate(self.bases[i + 1]):
            pars = [alg.parity(x) for x in s]
            # 1) a_1 * phi(a_2..a_{i+1})
            t = s[1:]
            for c in range(alg.dim):
                prod = alg.product(s[0], c)
                coeff = prod.get(b)
                if coeff:
                    col = src_index[(t, c)]
                    phi_internal_par = 0
                    if alg.degrees is not None:
                        # parity of the cochain's output-minus-input degree
                        phi_internal_par = (alg.degrees[c]
                                            - sum(alg.degrees[x] for x in t)) % 2
                    sign = one if (pars[0] * phi_internal_par) % 2 == 0 else minus_one
                    self._add(out, (row, col), sign * coeff)
            # 2) interior multiplications
            for jpos in range(1, i + 1):
                merged = alg.product(s[jpos - 1], s[jpos])
                sign = one if jpos % 2 == 0 else minus_one
                for mid, coeff in merged.items():
                    t = s[:jpos - 1] + (mid,) + s[jpos + 1:]
                    col = src_index.get((t, b))
                    if col is not None:
                        self._add(out, (row, col), sign * coeff)
            # 3) phi(a_1..a_i) * a_{i+1}
            t = s[:i]
            sign = one if (i + 1) % 2 == 0 else minus_one
            for c in range(alg.dim):
                prod = alg.product(c, s[i])
                coeff = prod.get(b)
                if coeff:
                    col = src_index[(t, c)]
                    self._add(out, (row, col), sign * coeff)
        return Matrix(self.dim(i + 1), self.dim(i), field, out)

    def d_curv(self, i):
        """Curvature-insertion part of the differential, C^i -> C^{i-1}."""
        alg = self.algebra
        field = alg.field
        one, minus_one = field.one, field.from_int(-1)
        src_index = self.index[i]
        out = {}
        for row, (s, b) in enumerate(self.bases[i - 1]):
            for j in range(i):
                sign = one if j % 2 == 0 else minus_one
                for idx, c in alg.curvature.items():
                    col = src_index.get((s[:j] + (idx,) + s[j:], b))
                    if col is None:
                        continue
                    self._add(out, (row, col), sign * c)
        return Matrix(self.dim(i - 1), self.dim(i), field, out)


def cochain_diff(algebra, max_tensor):
    """All cochain differential matrices on a window.

    Returns (d_mult, d_curv): tensor-degree-raising and -lowering parts.
    """
    win = CochainWindow(algebra, max_tensor)
    d_mult = {i: win.d_mult(i) for i in range(max_tensor)}
    d_curv = {i: win.d_curv(i) for i in range(1, max_tensor + 1)}
    return d_mult, d_curv


# ---------------------------------------------------------------------------
# Homology reports and windowed computations


@dataclass
class HomologyReport:
    variant: str
    dims: dict
    stabilization: dict = dc_field(default_factory=dict)


def _assemble_block(src_ks, dst_ks, src_dims, dst_dims, blocks, field):
    """Assemble a block matrix from per-(src_k, dst_k) component matrices."""
    row_off, off = {}, 0
    for k in dst_ks:
        row_off[k] = off
        off += dst_dims[k]
    nrows = off
    col_off, off = {}, 0
    for k in src_ks:
        col_off[k] = off
        off += src_dims[k]
    ncols = off
    ent = {}
    for (sk, dk), mat in blocks.items():
        if sk not in col_off or dk not in row_off:
            continue
        ro, co = row_off[dk], col_off[sk]
        for (i, j), v in mat.entries.items():
            ent[(ro + i, co + j)] = v
    return Matrix(nrows, ncols, field, ent)


def hh_ordinary(algebra, max_tensor=10):
    """Parity-graded homology of the direct-sum total complex, windowed.

    The window at cap M holds all tensor degrees of one parity up to M;
    enlarging M by two adds one column.  A value is accepted once two
    consecutive caps agree.
    """
    if not algebra.curvature:
        raise ValueError("curvature element is zero; use a flat computation")
    win = ChainWindow(algebra, max_tensor + 1)
    bm, bp = win.all_boundaries()
    dims_of = {k: win.dim(k) for k in range(max_tensor + 2)}
    field = algebra.field

    def spot_value(parity, cap):
        # chains: degrees = parity mod 2, k <= cap
        mid = [k for k in range(parity % 2, cap + 1, 2)]
        src = [k for k in range(1 - parity % 2, cap, 2)]      # cap M-1
        dst = [k for k in range(1 - parity % 2, cap + 2, 2)]  # cap M+1
        blocks_in = {}
        for k in src:
            if k >= 1:
                blocks_in[(k, k - 1)] = bm[k]
            blocks_in[(k, k + 1)] = bp[k]
        blocks_out = {}
        for k in mid:
            if k >= 1:
                blocks_out[(k, k - 1)] = bm[k]
            blocks_out[(k, k + 1)] = bp[k]
        d_in = _assemble_block(src, mid, dims_of, dims_of, blocks_in, field)
        d_out = _assemble_block(mid, dst, dims_of, dims_of, blocks_out, field)
        return homology_dim(d_in, d_out)

    dims = {}
    stab = {}
    for parity in (0, 1):
        prev = None
        settled = None
        for cap in range(parity, max_tensor, 2):
            val = spot_value(parity, cap)
            if prev is not None and val == prev:
                settled = val
                stab[parity] = cap
                break
            prev = val
        if settled is None:
            raise NoStabilization(
                "parity %d did not settle within tensor window %d"
                % (parity, max_tensor))
        dims[parity] = settled
    return HomologyReport("ordinary", dims, stab)


# ---------------------------------------------------------------------------
# Polynomial (graded) backend


def poly_chain_basis(ring, k, total_degree, _cache={}):
    """Monomial tensors (m_0 | .. | m_k), interior slots of positive degree."""
    key = (ring, k, total_degree)
    hit = _cache.get(key)
    if hit is not None:
        return hit
    out = []
    if k == 0:
        out = [(m,) for m in ring.monomials_of_degree(total_degree)]
    else:
        min_w = min(ring.weights)
        for last_deg in range(min_w, total_degree - 0 + 1):
            for rest in poly_chain_basis(ring, k - 1, total_degree - last_deg):
                for m in ring.monomials_of_degree(last_deg):
                    out.append(rest + (m,))
    _cache[key] = out
    return out


def poly_boundary_minus(ring, k, total_degree, field=None):
    """Multiplication boundary on graded monomial chains, C_k -> C_{k-1}."""
    field = field or ring.field
    one, minus_one = field.one, field.from_int(-1)
    src = poly_chain_basis(ring, k, total_degree)
    dst = poly_chain_basis(ring, k - 1, total_degree)
    index = {t: n for n, t in enumerate(dst)}
    out = {}
    for col, t in enumerate(src):
        for j in range(k):
            sign = one if j % 2 == 0 else minus_one
            merged = t[:j] + (mono_mul(t[j], t[j + 1]),) + t[j + 2:]
            row = index[merged]
            key = (row, col)
            cur = out.get(key)
            s = sign if cur is None else cur + sign
            if s:
                out[key] = s
            elif cur is not None:
                del out[key]
        sign = one if k % 2 == 0 else minus_one
        merged = (mono_mul(t[k], t[0]),) + t[1:k]
        row = index[merged]
        key = (row, col)
        cur = out.get(key)
        s = sign if cur is None else cur + sign
        if s:
            out[key] = s
        elif cur is not None:
            del out[key]
    return Matrix(len(dst), len(src), field, out)


def poly_boundary_plus(model, k, total_degree):
    """Insertion of the potential, C_k(deg D) -> C_{k+1}(deg D + deg W)."""
    ring = model.ring
    field = ring.field
    one, minus_one = field.one, field.from_int(-1)
    W = model.potential
    src = poly_chain_basis(ring, k, total_degree)
    dst = poly_chain_basis(ring, k + 1, total_degree + model.degree)
    index = {t: n for n, t in enumerate(dst)}
    out = {}
    for col, t in enumerate(src):
        for j in range(k + 1):
            sign = one if j % 2 == 0 else minus_one
            for wm, wc in W.terms.items():
                widened = t[:j + 1] + (wm,) + t[j + 1:]
                row = index[widened]
                key = (row, col)
                cur = out.get(key)
                val = sign * wc
                s = val if cur is None else cur + val
                if s:
                    out[key] = s
                elif cur is not None:
                    del out[key]
    return Matrix(len(dst), len(src), field, out)


def _bm_spot_spaces(model, n, q):
    """Block layout of the first-quadrant total space at total degree n, charge q.

    Blocks are (column_shift i, tensor degree k = n - 2i, chain degree
    q - i*d); the charge q is preserved by both differentials.
    """
    d = model.degree
    blocks = []
    for i in range(n // 2 + 1):
        k = n - 2 * i
        D = q - i * d
        if k < 0 or D < 0:
            continue
        if n - i < i:  # below the diagonal of the first-quadrant complex
            continue
        blocks.append((i, k, D))
    return blocks


def _bm_differential(model, n, q):
    """Assembled differential tot_n -> tot_{n-1} at fixed charge q."""
    ring = model.ring
    field = ring.field
    src_blocks = _bm_spot_spaces(model, n, q)
    dst_blocks = _bm_spot_spaces(model, n - 1, q)
    src_dims = {b: len(poly_chain_basis(ring, b[1], b[2])) for b in src_blocks}
    dst_dims = {b: len(poly_chain_basis(ring, b[1], b[2])) for b in dst_blocks}
    blocks = {}
    for (i, k, D) in src_blocks:
        if k >= 1 and (i, k - 1, D) in dst_dims:
            blocks[((i, k, D), (i, k - 1, D))] = poly_boundary_minus(ring, k, D)
        if i >= 1 and (i - 1, k + 1, D + model.degree) in dst_dims:
            blocks[((i, k, D), (i - 1, k + 1, D + model.degree))] = \
                poly_boundary_plus(model, k, D)
    return _assemble_block(src_blocks, dst_blocks, src_dims, dst_dims, blocks,
                           field)


def bm_spot_homology(model, n, q):
    """Homology dimension of the first-quadrant total complex at (n, charge q)."""
    d_out = _bm_differential(model, n, q)
    d_in = _bm_differential(model, n + 1, q)
    return homology_dim(d_in, d_out)


def hh_bm_graded(model, internal_degrees, max_r=5):
    """Borel-Moore dimensions per internal degree, stabilized over shifts.

    For each requested degree the value is read off the tower of
    first-quadrant windows; it is accepted when two consecutive shifts
    agree.  The complementary parity is checked to stabilize to zero.
    """
    model.require_homogeneous()
    n0 = model.ring.nvars
    d = model.degree
    dims = {}
    stab = {}
    for e in internal_degrees:
        for parity_offset in (0, 1):
            prev = None
            settled = None
            for r in range(max_r + 1):
                n = n0 + parity_offset + 2 * r
                q = e + r * d
                val = bm_spot_homology(model, n, q)
                if prev is not None and val == prev:
                    settled = val
                    stab[(e, parity_offset)] = r
                    break
                prev = val
            if settled is None:
                raise NoStabilization(
                    "degree %d (parity offset %d) did not settle in %d shifts"
                    % (e, parity_offset, max_r))
            parity = (n0 + parity_offset) % 2
            key = (e, parity)
            dims[key] = dims.get(key, 0) + settled
    return HomologyReport("borel_moore", dims, stab)


# ---------------------------------------------------------------------------
# Compact type


def compact_type_check(algebra, max_internal=4, tensor_cap=None):
    """Check the degree bound and that windowed HH and HH_c dims agree.

    The carrier must be finite dimensional, Z-graded in non-positive
    degrees.  Internal degrees from -max_internal to max_internal are
    compared.
    """
    if algebra.degrees is None:
        raise PositiveDegreeCarrier("carrier must be Z-graded")
    if any(deg > 0 for deg in algebra.degrees):
        raise PositiveDegreeCarrier("carrier has positive-degree elements")
    min_deg = min(algebra.degrees)
    # The tensor degree of any cochain component of internal degree m is
    # bounded by m + 1 - min_deg; size the window accordingly.
    needed = max_internal + 2 - min_deg * 1
    cap = tensor_cap if tensor_cap is not None else needed + 1
    win = CochainWindow(algebra, cap + 1)
    d_mult = {i: win.d_mult(i) for i in range(cap + 1)}
    d_curv = {i: win.d_curv(i) for i in range(1, cap + 2)}

    # index cochain basis elements by internal degree
    by_degree = {}
    for i in range(cap + 2):
        if i > cap + 1:
            continue
        for n, elem in enumerate(win.bases[i]):
            m = win.internal_degree(i, elem)
            by_degree.setdefault(m, []).append((i, n))
            if i > m + 1 - min_deg:
                return False  # degree bound violated

    def graded_matrix(m):
        """Differential from internal degree m to m + 1 (full product side)."""
        src = by_degree.get(m, [])
        dst = by_degree.get(m + 1, [])
        src_pos = {e: p for p, e in enumerate(src)}
        dst_pos = {e: p for p, e in enumerate(dst)}
        ent = {}
        for (i, n), p in src_pos.items():
            if i in d_mult:
                for (r, c), v in d_mult[i].entries.items():
                    if c == n and (i + 1, r) in dst_pos:
                        ent[(dst_pos[(i + 1, r)], p)] = v
            if i in d_curv:
                for (r, c), v in d_curv[i].entries.items():
                    if c == n and (i - 1, r) in dst_pos:
                        ent[(dst_pos[(i - 1, r)], p)] = v
        return Matrix(len(dst), len(src), algebra.field, ent)

    def graded_matrix_capped(m, icap):
        src = [(i, n) for (i, n) in by_degree.get(m, []) if i <= icap]
        dst = [(i, n) for (i, n) in by_degree.get(m + 1, []) if i <= icap]
        src_pos = {e: p for p, e in enumerate(src)}
        dst_pos = {e: p for p, e in enumerate(dst)}
        ent = {}
        for (i, n), p in src_pos.items():
            if i in d_mult:
                for (r, c), v in d_mult[i].entries.items():
                    if c == n and (i + 1, r) in dst_pos:
                        ent[(dst_pos[(i + 1, r)], p)] = v
            if i in d_curv:
                for (r, c), v in d_curv[i].entries.items():
                    if c == n and (i - 1, r) in dst_pos:
                        ent[(dst_pos[(i - 1, r)], p)] = v
        return Matrix(len(dst), len(src), algebra.field, ent)

    for m in range(-max_internal, max_internal + 1):
        full = homology_dim(graded_matrix(m - 1), graded_matrix(m))
        icap = max(0, m + 1 - min_deg) + 1
        capped = homology_dim(graded_matrix_capped(m - 1, icap),
                              graded_matrix_capped(m, icap))
        if full != capped:
            return False
    return True


# ---------------------------------------------------------------------------
# Bicomplex windows (finite backend)


@dataclass
class BicomplexWindow:
    """Rectangle of the chain bicomplex with its two differentials."""

    algebra: object
    imin: int
    imax: int
    jmin: int
    jmax: int
    horizontal: dict   # (i, j) -> matrix of the raising part, to (i-1, j)
    vertical: dict     # (i, j) -> matrix of the lowering part, to (i, j-1)
    chain_dims: dict   # (i, j) -> dimension of C_{j-i}

    @classmethod
    def build(cls, algebra, imin, imax, jmin, jmax):
        max_k = jmax - imin
        win = ChainWindow(algebra, max(max_k, 1))
        bm, bp = win.all_boundaries()
        horizontal, vertical, dims = {}, {}, {}
        for i in range(imin, imax + 1):
            for j in range(jmin, jmax + 1):
                k = j - i
                if k < 0:
                    continue
                dims[(i, j)] = win.dim(k)
                if k + 1 <= win.max_tensor:
                    horizontal[(i, j)] = bp[k]
                if k >= 1:
                    vertical[(i, j)] = bm[k]
        return cls(algebra, imin, imax, jmin, jmax, horizontal, vertical, dims)

    def check_squares(self):
        """Exact identities on the window interior."""
        for (i, j), h in self.horizontal.items():
            h2 = self.horizontal.get((i - 1, j))
            if h2 is not None and not (h2 @ h).is_zero():
                return False
            v = self.vertical.get((i - 1, j))
            v2 = self.vertical.get((i, j))
            if v2 is not None:
                hv = self.horizontal.get((i, j - 1))
                if hv is not None and v is not None:
                    if not (v @ h + hv @ v2).is_zero():
                        return False
        for (i, j), v in self.vertical.items():
            v2 = self.vertical.get((i, j - 1))
            if v2 is not None and not (v2 @ v).is_zero():
                return False
        return True

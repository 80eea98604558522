"""Matrix factorizations of a potential and their morphism complexes.

A factorization is a pair of polynomial matrices composing to W times the
identity on both sides.  Morphism spaces carry the two-periodic commutator
differential; their cohomology is computed either exactly over univariate
rings (diagonalization over the principal-ideal ring) or by quotienting by
powers of the maximal ideal with stabilization detection.

The graded variant constrains entries to twist-adjusted degrees 0 and d;
such objects also arise from twisted complexes over the cyclic-orbifold
category, whose summands are (residue, shift) pairs and whose endomorphism
entries carry the rescaled grading 2(|f| - b + a)/d - (l - k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from .errors import (DegreeConstraintViolated, MethodUnsupported,
                     ModelMismatch, NoStabilization, ParityViolation,
                     ShapeMismatch)
from .linalg import Matrix, homology_dim, rank
from .poly import Polynomial, mono_mul

INFINITE = math.inf


# ---------------------------------------------------------------------------
# Dense polynomial matrices


class PolyMatrix:
    """Small dense matrix with polynomial entries."""

    def __init__(self, ring, rows):
        self.ring = ring
        self.data = [[self._coerce(e) for e in row] for row in rows]
        self.nrows = len(self.data)
        self.ncols = len(self.data[0]) if self.data else 0
        for row in self.data:
            if len(row) != self.ncols:
                raise ShapeMismatch("ragged rows")

    def _coerce(self, e):
        if isinstance(e, Polynomial):
            return e
        return self.ring.constant(e)

    @classmethod
    def identity(cls, ring, n, scale=None):
        s = scale if scale is not None else ring.one()
        z = ring.zero()
        return cls(ring, [[s if i == j else z for j in range(n)]
                          for i in range(n)])

    @classmethod
    def zero(cls, ring, nrows, ncols):
        z = ring.zero()
        return cls(ring, [[z] * ncols for _ in range(nrows)])

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ShapeMismatch("inner dimensions differ")
        z = self.ring.zero()
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = z
                for k in range(self.ncols):
                    acc = acc + self.data[i][k] * other.data[k][j]
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.ring, out)

    def __add__(self, other):
        return PolyMatrix(self.ring,
                          [[a + b for a, b in zip(r1, r2)]
                           for r1, r2 in zip(self.data, other.data)])

    def __sub__(self, other):
        return PolyMatrix(self.ring,
                          [[a - b for a, b in zip(r1, r2)]
                           for r1, r2 in zip(self.data, other.data)])

    def __neg__(self):
        return PolyMatrix(self.ring, [[-a for a in row] for row in self.data])

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.data == other.data

    def is_zero(self):
        return all(not e for row in self.data for e in row)

    def __repr__(self):
        return "PolyMatrix(%d x %d)" % (self.nrows, self.ncols)


# ---------------------------------------------------------------------------
# Matrix factorizations


@dataclass
class MatrixFactorization:
    """P0: E0 -> E1 and P1: E1 -> E0 with both compositions W times id.

    ``twists0``/``twists1`` hold per-summand internal-degree twists for the
    graded case (a degree-zero map into the twist B(m) is multiplication
    by a polynomial of degree m).
    """

    model: object
    P0: PolyMatrix
    P1: PolyMatrix
    twists0: tuple = None
    twists1: tuple = None

    def __post_init__(self):
        if self.P0.ncols != self.P1.nrows or self.P0.nrows != self.P1.ncols:
            raise ShapeMismatch("factor shapes are not composable")

    @property
    def rank0(self):
        return self.P0.ncols

    @property
    def rank1(self):
        return self.P0.nrows


def verify_mf(mf, model=None):
    """True iff both compositions equal the potential times the identity."""
    model = model or mf.model
    ring = model.ring
    W = model.potential
    left = mf.P1 @ mf.P0
    right = mf.P0 @ mf.P1
    return left == PolyMatrix.identity(ring, mf.rank0, W) and \
        right == PolyMatrix.identity(ring, mf.rank1, W)


def koszul_factorization(model, splitting):
    """Rank-2^(n-1) factorization of a sum of products.

    ``splitting`` is a list of (poly, poly) pairs whose products sum to the
    potential; returns the tensor factorization built from the rank-one
    pieces (u, v).
    """
    ring = model.ring
    total = ring.zero()
    for u, v in splitting:
        total = total + u * v
    if total != model.potential:
        raise ValueError("splitting does not multiply out to the potential")
    # start with the rank-one factorization and fold in the rest
    u, v = splitting[0]
    P0 = PolyMatrix(ring, [[u]])
    P1 = PolyMatrix(ring, [[v]])
    for u, v in splitting[1:]:
        n0, n1 = P0.ncols, P0.nrows
        uI0 = PolyMatrix.identity(ring, n0, u)
        vI0 = PolyMatrix.identity(ring, n0, v)
        uI1 = PolyMatrix.identity(ring, n1, u)
        vI1 = PolyMatrix.identity(ring, n1, v)
        # block structure of the tensor product of two factorizations
        newP0 = _block(ring, [[P0, vI0], [uI1, -P1]])
        newP1 = _block(ring, [[P1, vI0], [uI1, -P0]])
        P0, P1 = newP0, newP1
    return MatrixFactorization(model, P0, P1)


def direct_sum(a, b):
    """Summand-wise direct sum of two factorizations of the same potential."""
    if a.model != b.model:
        raise ModelMismatch("factorizations live over different models")
    ring = a.model.ring
    P0 = _block(ring, [[a.P0, PolyMatrix.zero(ring, a.rank1, b.rank0)],
                       [PolyMatrix.zero(ring, b.rank1, a.rank0), b.P0]])
    P1 = _block(ring, [[a.P1, PolyMatrix.zero(ring, a.rank0, b.rank1)],
                       [PolyMatrix.zero(ring, b.rank0, a.rank1), b.P1]])
    return MatrixFactorization(a.model, P0, P1)


def trivial_factorization(model):
    """The contractible factorization (1, W)."""
    ring = model.ring
    return MatrixFactorization(model, PolyMatrix(ring, [[ring.one()]]),
                               PolyMatrix(ring, [[model.potential]]))


def _block(ring, grid):
    rows = []
    for brow in grid:
        height = brow[0].nrows
        for r in range(height):
            row = []
            for blockm in brow:
                row.extend(blockm.data[r])
            rows.append(row)
    return PolyMatrix(ring, rows)


# ---------------------------------------------------------------------------
# Hom complexes


@dataclass
class HomComplex:
    """Two-periodic complex of B-linear maps between two factorizations.

    Even maps are pairs (E0 -> F0, E1 -> F1); odd maps are pairs
    (E0 -> F1, E1 -> F0).  The flattened differentials act on entry
    coordinates with polynomial coefficients.
    """

    src: MatrixFactorization
    dst: MatrixFactorization
    d_even: PolyMatrix
    d_odd: PolyMatrix
    even_entries: list = dc_field(default_factory=list)
    odd_entries: list = dc_field(default_factory=list)


def _hom_blocks(src, dst, parity):
    """Entry coordinates of the even or odd part, as (block, row, col)."""
    if parity == 0:
        shapes = [(dst.rank0, src.rank0), (dst.rank1, src.rank1)]
    else:
        shapes = [(dst.rank1, src.rank0), (dst.rank0, src.rank1)]
    out = []
    for blk, (nr, nc) in enumerate(shapes):
        for i in range(nr):
            for j in range(nc):
                out.append((blk, i, j))
    return out


def _flatten_d(src, dst, parity):
    """Flattened commutator differential from the given parity to the other."""
    ring = src.model.ring
    src_entries = _hom_blocks(src, dst, parity)
    dst_entries = _hom_blocks(src, dst, 1 - parity)
    pos = {e: n for n, e in enumerate(src_entries)}
    z = ring.zero()
    out = [[z] * len(src_entries) for _ in range(len(dst_entries))]
    sign = -1 if parity == 0 else 1  # -(-1)^{|phi|} phi Q
    P0n, P1n = dst.P0, dst.P1
    P0m, P1m = src.P0, src.P1
    if parity == 0:
        # phi = (phi0: E0->F0 [block 0], phi1: E1->F1 [block 1])
        # d(phi) block 0: E0->F1 = P0n phi0 - phi1 P0m
        # d(phi) block 1: E1->F0 = P1n phi1 - phi0 P1m
        left = {0: (P0n, 0), 1: (P1n, 1)}
        rightm = {0: (P0m, 1), 1: (P1m, 0)}
    else:
        # psi = (psi0: E0->F1 [block 0], psi1: E1->F0 [block 1])
        # d(psi) block 0: E0->F0 = P1n psi0 + psi1 P0m
        # d(psi) block 1: E1->F1 = P0n psi1 + psi0 P1m
        left = {0: (P1n, 0), 1: (P0n, 1)}
        rightm = {0: (P0m, 1), 1: (P1m, 0)}
    for row, (blk, i, j) in enumerate(dst_entries):
        P, src_blk = left[blk]
        for k in range(P.ncols):
            col = pos.get((src_blk, k, j))
            if col is not None and P.data[i][k]:
                out[row][col] = out[row][col] + P.data[i][k]
        Q, src_blk = rightm[blk]
        for k in range(Q.nrows):
            col = pos.get((src_blk, i, k))
            if col is not None and Q.data[k][j]:
                term = Q.data[k][j]
                if sign < 0:
                    term = -term
                out[row][col] = out[row][col] + term
    return PolyMatrix(ring, out), src_entries, dst_entries


def hom_complex(src, dst):
    if src.model != dst.model:
        raise ModelMismatch("factorizations live over different models")
    d_even, even_entries, _ = _flatten_d(src, dst, 0)
    d_odd, odd_entries, _ = _flatten_d(src, dst, 1)
    if not (d_odd @ d_even).is_zero() or not (d_even @ d_odd).is_zero():
        raise AssertionError("commutator differential does not square to zero")
    return HomComplex(src, dst, d_even, d_odd, even_entries, odd_entries)


def apply_differential(hom, phi_blocks, parity):
    """Apply the commutator differential to a map given as two blocks."""
    src, dst = hom.src, hom.dst
    if parity == 0:
        phi0, phi1 = phi_blocks
        return (dst.P0 @ phi0 - phi1 @ src.P0,
                dst.P1 @ phi1 - phi0 @ src.P1)
    psi0, psi1 = phi_blocks
    return (dst.P1 @ psi0 + psi1 @ src.P0,
            dst.P0 @ psi1 + psi0 @ src.P1)


# ---------------------------------------------------------------------------
# Univariate diagonalization


def _udivmod(a, b):
    """Quotient and remainder of univariate polynomials."""
    ring = a.ring
    q = ring.zero()
    r = a
    db = b.degree()
    lcb = b.leading_coeff()
    while r and r.degree() >= db:
        shift = r.degree() - db
        coeff = r.leading_coeff() / lcb
        t = Polynomial(ring, {(shift,): coeff})
        q = q + t
        r = r - t * b
    return q, r


def smith_diagonalize(mat):
    """Diagonalize over k[x] by unimodular operations.

    Returns (diag, V, Vinv) where diag lists the diagonal entries of the
    transformed matrix and the column transform satisfies M.V = (row ops
    applied to the diagonal form); kernel columns of M are the columns of V
    beyond the rank.
    """
    ring = mat.ring
    if ring.nvars != 1:
        raise MethodUnsupported("diagonalization needs one variable")
    M = [row[:] for row in mat.data]
    m, n = mat.nrows, mat.ncols
    V = PolyMatrix.identity(ring, n).data
    Vi = PolyMatrix.identity(ring, n).data

    def col_swap(a, b):
        for row in M:
            row[a], row[b] = row[b], row[a]
        for row in V:
            row[a], row[b] = row[b], row[a]
        Vi[a], Vi[b] = Vi[b], Vi[a]

    def col_add(dst_c, src_c, q):
        # col_dst += q * col_src ; inverse is a row op on Vi
        for row in M:
            row[dst_c] = row[dst_c] + q * row[src_c]
        for row in V:
            row[dst_c] = row[dst_c] + q * row[src_c]
        for j in range(n):
            Vi[src_c][j] = Vi[src_c][j] - q * Vi[dst_c][j]

    def row_swap(a, b):
        M[a], M[b] = M[b], M[a]

    def row_add(dst_r, src_r, q):
        for j in range(n):
            M[dst_r][j] = M[dst_r][j] + q * M[src_r][j]

    t = 0
    while t < min(m, n):
        # find minimal-degree nonzero entry in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if M[i][j]:
                    deg = M[i][j].degree()
                    if best is None or deg < best[0]:
                        best = (deg, i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            row_swap(bi, t)
        if bj != t:
            col_swap(bj, t)
        while True:
            dirty = False
            for i in range(t + 1, m):
                if M[i][t]:
                    q, r = _udivmod(M[i][t], M[t][t])
                    row_add(i, t, -q)
                    if r:
                        row_swap(i, t)
                        dirty = True
            for j in range(t + 1, n):
                if M[t][j]:
                    q, r = _udivmod(M[t][j], M[t][t])
                    col_add(j, t, -q)
                    if r:
                        col_swap(j, t)
                        dirty = True
            if not dirty and all(not M[i][t] for i in range(t + 1, m)) and \
                    all(not M[t][j] for j in range(t + 1, n)):
                break
        t += 1
    diag = [M[i][i] for i in range(min(m, n))]
    return diag, PolyMatrix(ring, V), PolyMatrix(ring, Vi)


def _cohomology_dim_univariate(d_in, d_out):
    """dim_k of ker(d_out)/im(d_in) for free-module maps over k[x]."""
    ring = d_out.ring
    diag, V, Vi = smith_diagonalize(d_out)
    rank = sum(1 for e in diag if e)
    n = d_out.ncols
    ker_idx = [j for j in range(n) if j >= rank]
    coords = Vi @ d_in
    # rows of coords away from the kernel must vanish since d_out . d_in = 0
    for j in range(rank):
        for v in coords.data[j]:
            if v:
                raise AssertionError("image does not lie in the kernel")
    X = PolyMatrix(ring, [coords.data[j] for j in ker_idx]) if ker_idx else \
        PolyMatrix.zero(ring, 0, d_in.ncols)
    if X.nrows == 0:
        return 0
    diag2, _, _ = smith_diagonalize(X)
    nonzero = [e for e in diag2 if e]
    if len(nonzero) < X.nrows:
        return INFINITE
    return sum(e.degree() for e in nonzero)


def _degree_window_matrix(pm, cap, min_row_degree=None):
    """Field matrix of a polynomial matrix on entries of degree at most cap.

    Columns range over (coordinate, monomial of degree <= cap); rows over
    all reachable products, optionally keeping only rows whose monomial
    degree exceeds ``min_row_degree``.
    """
    ring = pm.ring
    field = ring.field
    src = []
    for j in range(pm.ncols):
        for g in range(cap + 1):
            for mm in ring.monomials_of_degree(g):
                src.append((j, mm))
    src_pos = {e: n for n, e in enumerate(src)}
    row_pos = {}
    ent = {}
    for col, (j, mm) in enumerate(src):
        for i in range(pm.nrows):
            p = pm.data[i][j]
            if not p:
                continue
            for pmono, c in p.terms.items():
                prod = mono_mul(pmono, mm)
                if min_row_degree is not None and \
                        ring.weighted_degree(prod) <= min_row_degree:
                    continue
                key_r = (i, prod)
                row = row_pos.setdefault(key_r, len(row_pos))
                key = (row, col)
                cur = ent.get(key)
                s = c if cur is None else cur + c
                if s:
                    ent[key] = s
                elif cur is not None:
                    del ent[key]
    return Matrix(len(row_pos), len(src), field, ent)


def _filtered_dims(hom, cap):
    """(even, odd) dims of bounded-degree classes modulo larger-window images."""
    big = 2 * cap

    def one_side(d_out, d_in):
        a = _degree_window_matrix(d_out, cap)
        kernel_dim = a.cols - rank(a)
        full = _degree_window_matrix(d_in, big)
        high = _degree_window_matrix(d_in, big, min_row_degree=cap)
        image_in_window = rank(full) - rank(high)
        return kernel_dim - image_in_window

    return one_side(hom.d_even, hom.d_odd), one_side(hom.d_odd, hom.d_even)


def ext_dims(src, dst, method="smith", bound=12):
    """(even, odd) cohomology dimensions of the Hom complex."""
    hom = hom_complex(src, dst)
    if method == "smith":
        if src.model.ring.nvars != 1:
            raise MethodUnsupported("smith method needs a univariate ring")
        even = _cohomology_dim_univariate(hom.d_odd, hom.d_even)
        odd = _cohomology_dim_univariate(hom.d_even, hom.d_odd)
        return even, odd
    if method == "truncate":
        src.model.require_homogeneous()
        prev = None
        for cap in range(2, bound + 1):
            val = _filtered_dims(hom, cap)
            if prev is not None and val == prev:
                return val
            prev = val
        raise NoStabilization("ext dims did not settle below cap %d" % bound)
    raise MethodUnsupported("unknown method %r" % method)


# ---------------------------------------------------------------------------
# Hat grading and twisted complexes


def hat_degree(f_degree, src, dst, d):
    """Rescaled degree of a morphism (a/d)[k] -> (b/d)[l] of weight f_degree."""
    a, k = src
    b, l = dst
    if (f_degree - (b - a)) % d != 0:
        raise DegreeConstraintViolated(
            "degree %d is not congruent to %d mod %d" % (f_degree, (b - a) % d, d))
    return 2 * (f_degree - b + a) // d - (l - k)


@dataclass
class TwistObject:
    """Direct sum of (residue, shift) summands with an odd twisting map.

    ``delta.data[r][c]`` is the component from summand c to summand r.
    """

    summands: list  # [(a, k)]
    delta: PolyMatrix

    def __post_init__(self):
        n = len(self.summands)
        if self.delta.nrows != n or self.delta.ncols != n:
            raise ShapeMismatch("delta must be square of the summand count")

    def entry_hat_degree(self, model, r, c):
        """Hat degree of the (r, c) entry, None when the entry vanishes."""
        p = self.delta.data[r][c]
        if not p:
            return None
        if not p.is_homogeneous():
            raise DegreeConstraintViolated("entry is not homogeneous")
        return hat_degree(p.degree(), self.summands[c], self.summands[r],
                          model.degree)


def maurer_cartan_check(obj, model):
    """True iff W id + delta.delta vanishes exactly."""
    ring = model.ring
    n = len(obj.summands)
    lhs = PolyMatrix.identity(ring, n, model.potential) + obj.delta @ obj.delta
    return lhs.is_zero()


def twist_to_graded_mf(obj, model):
    """Translate a twisted complex into a graded factorization.

    Even-shift summands carry twist k d/2 + a, odd-shift summands
    (k+1) d/2 + a; the odd-to-even block is negated so the compositions
    equal plus W times the identity.
    """
    ring = model.ring
    d = model.degree
    even_idx = [i for i, (a, k) in enumerate(obj.summands) if k % 2 == 0]
    odd_idx = [i for i, (a, k) in enumerate(obj.summands) if k % 2 != 0]
    if model.potential and (not even_idx or not odd_idx):
        raise ParityViolation(
            "a factorization of a nonzero potential needs both parities")
    for i in even_idx:
        for j in even_idx:
            if obj.delta.data[i][j]:
                raise ParityViolation("twisting map has an even-to-even entry")
    for i in odd_idx:
        for j in odd_idx:
            if obj.delta.data[i][j]:
                raise ParityViolation("twisting map has an odd-to-odd entry")
    twists0 = tuple(obj.summands[i][1] * d // 2 + obj.summands[i][0]
                    for i in even_idx)
    twists1 = tuple((obj.summands[i][1] + 1) * d // 2 + obj.summands[i][0]
                    for i in odd_idx)
    P0 = PolyMatrix(ring, [[obj.delta.data[r][c] for c in even_idx]
                           for r in odd_idx]) if odd_idx else \
        PolyMatrix.zero(ring, 0, len(even_idx))
    P1 = PolyMatrix(ring, [[-obj.delta.data[r][c] for c in odd_idx]
                           for r in even_idx]) if even_idx else \
        PolyMatrix.zero(ring, 0, len(odd_idx))
    return MatrixFactorization(model, P0, P1, twists0=twists0, twists1=twists1)


def verify_graded_degrees(gmf, model=None):
    """Entries of P0 have twist-adjusted degree 0, of P1 degree d."""
    model = model or gmf.model
    d = model.degree
    t0, t1 = gmf.twists0, gmf.twists1
    if t0 is None or t1 is None:
        return False
    for r, row in enumerate(gmf.P0.data):
        for c, p in enumerate(row):
            if not p:
                continue
            if not p.is_homogeneous() or p.degree() - (t1[r] - t0[c]) != 0:
                return False
    for r, row in enumerate(gmf.P1.data):
        for c, p in enumerate(row):
            if not p:
                continue
            if not p.is_homogeneous() or p.degree() - (t0[r] - t1[c]) != d:
                return False
    return True


def graded_hom_dims(src, dst, k_range):
    """Dimensions of degree-zero maps into each twist of the target by kd."""
    model = src.model
    if src.model != dst.model:
        raise ModelMismatch("factorizations live over different models")
    ring = model.ring
    d = model.degree

    def hilbert(n):
        if n < 0:
            return 0
        return len(ring.monomials_of_degree(n))

    out = {}
    for k in k_range:
        total = 0
        for tsrc in (src.twists0 or ()) + (src.twists1 or ()):
            for tdst in (dst.twists0 or ()) + (dst.twists1 or ()):
                total += hilbert(tdst + k * d - tsrc)
        out[k] = total
    return out

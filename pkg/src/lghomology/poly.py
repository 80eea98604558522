"""Exact multivariate polynomials, Groebner bases, and quotient-ring data.

Monomials are exponent tuples; polynomials are sparse term maps over an
exact scalar field.  The monomial order is weighted degree-reverse-
lexicographic throughout.

Expression grammar (whitespace-insensitive)::

    expr    := term (('+' | '-') term)*
    term    := ['-'] factor ('*' factor)*
    factor  := atom ['^' integer]
    atom    := integer ['/' integer] | variable | '(' expr ')'

Implicit multiplication is not supported; use '*'.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import NotZeroDimensional, ParseError, UnknownVariable
from .linalg import QQ


@dataclass(frozen=True)
class PolyRing:
    """Polynomial ring data: variable names, positive weights, scalar field."""

    names: tuple
    weights: tuple = None
    field: object = QQ

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if self.weights is None:
            object.__setattr__(self, "weights", (1,) * len(self.names))
        else:
            object.__setattr__(self, "weights", tuple(self.weights))
        if len(self.weights) != len(self.names):
            raise ValueError("weights/names length mismatch")
        if any(w <= 0 for w in self.weights):
            raise ValueError("variable weights must be positive")

    @property
    def nvars(self):
        return len(self.names)

    def zero_mono(self):
        return (0,) * self.nvars

    def weighted_degree(self, mono):
        return sum(e * w for e, w in zip(mono, self.weights))

    def order_key(self, mono):
        """Sort key: larger key = larger monomial in weighted degrevlex."""
        return (self.weighted_degree(mono), tuple(-e for e in reversed(mono)))

    def variable(self, i):
        mono = [0] * self.nvars
        mono[i] = 1
        return Polynomial(self, {tuple(mono): self.field.one})

    def constant(self, c):
        c = self.field.from_fraction(c) if isinstance(c, (int, Fraction)) else c
        if not c:
            return Polynomial(self, {})
        return Polynomial(self, {self.zero_mono(): c})

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(1)

    def monomials_of_degree(self, deg):
        """All monomials of exact weighted degree ``deg``, sorted descending."""
        out = []

        def rec(i, rem, cur):
            if i == self.nvars:
                if rem == 0:
                    out.append(tuple(cur))
                return
            w = self.weights[i]
            for e in range(rem // w + 1):
                cur.append(e)
                rec(i + 1, rem - e * w, cur)
                cur.pop()

        rec(0, deg, [])
        out.sort(key=self.order_key, reverse=True)
        return out


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class Polynomial:
    """Sparse exact polynomial attached to a :class:`PolyRing`."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c}

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            cur = terms.get(m)
            s = c if cur is None else cur + c
            if s:
                terms[m] = s
            elif cur is not None:
                del terms[m]
        return Polynomial(self.ring, terms)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __neg__(self):
        minus = self.ring.field.from_int(-1)
        return Polynomial(self.ring, {m: minus * c for m, c in self.terms.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                cur = terms.get(m)
                s = c1 * c2 if cur is None else cur + c1 * c2
                if s:
                    terms[m] = s
                elif cur is not None:
                    del terms[m]
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        return self.ring.constant(other)

    def scale(self, c):
        return Polynomial(self.ring, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, n):
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def diff(self, i):
        terms = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            lowered = list(m)
            lowered[i] -= 1
            terms[tuple(lowered)] = c * self.ring.field.from_int(e)
        return Polynomial(self.ring, terms)

    def degree(self):
        """Maximal weighted degree of a term; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.ring.weighted_degree(m) for m in self.terms)

    def is_homogeneous(self):
        degs = {self.ring.weighted_degree(m) for m in self.terms}
        return len(degs) <= 1

    def leading_monomial(self):
        return max(self.terms, key=self.ring.order_key)

    def leading_coeff(self):
        return self.terms[self.leading_monomial()]

    def monic(self):
        if not self.terms:
            return self
        inv = self.leading_coeff()
        inv = inv.inverse() if hasattr(inv, "inverse") else 1 / inv
        return self.scale(inv)

    def constant_term(self):
        return self.terms.get(self.ring.zero_mono(), self.ring.field.zero)

    def substitute_zero(self, var_indices):
        """Set the given variables to zero."""
        kill = set(var_indices)
        terms = {}
        for m, c in self.terms.items():
            if any(m[i] for i in kill):
                continue
            cur = terms.get(m)
            terms[m] = c if cur is None else cur + c
        return Polynomial(self.ring, terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: self.ring.order_key(mc[0]),
                      reverse=True)

    def __repr__(self):
        return format_polynomial(self)


def format_polynomial(p):
    if p.is_zero():
        return "0"
    parts = []
    for mono, coeff in p.sorted_terms():
        factors = []
        for name, e in zip(p.ring.names, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append("%s^%d" % (name, e))
        cs = str(coeff)
        if factors and cs == "1":
            body = "*".join(factors)
        elif factors and cs == "-1":
            body = "-" + "*".join(factors)
        elif factors:
            body = "*".join([cs] + factors)
        else:
            body = cs
        parts.append(body)
    out = parts[0]
    for part in parts[1:]:
        out += " - " + part[1:] if part.startswith("-") else " + " + part
    return out


_TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9]*|\*\*|[-+*/^()])")


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError("unexpected character %r" % text[pos], pos)
            break
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()
    tokens.append((None, len(text)))
    return tokens


def parse_polynomial(text, ring):
    """Parse an expression into a :class:`Polynomial` over ``ring``."""
    tokens = _tokenize(text)
    idx = [0]

    def peek():
        return tokens[idx[0]][0]

    def pos():
        return tokens[idx[0]][1]

    def advance():
        idx[0] += 1

    def parse_expr():
        sign = 1
        if peek() in ("+", "-"):
            if peek() == "-":
                sign = -1
            advance()
        acc = parse_term()
        if sign < 0:
            acc = -acc
        while peek() in ("+", "-"):
            op = peek()
            advance()
            nxt = parse_term()
            acc = acc + nxt if op == "+" else acc - nxt
        return acc

    def parse_term():
        acc = parse_factor()
        while peek() in ("*", "/"):
            op = peek()
            advance()
            nxt = parse_factor()
            if op == "*":
                acc = acc * nxt
            else:
                if len(nxt.terms) != 1 or nxt.leading_monomial() != ring.zero_mono():
                    raise ParseError("can only divide by a nonzero constant", pos())
                c = nxt.leading_coeff()
                inv = c.inverse() if hasattr(c, "inverse") else 1 / c
                acc = acc.scale(inv)
        return acc

    def parse_factor():
        base = parse_atom()
        if peek() in ("^", "**"):
            advance()
            if peek() is None or not peek().isdigit():
                raise ParseError("expected integer exponent", pos())
            e = int(peek())
            advance()
            base = base ** e
        return base

    def parse_atom():
        tok = peek()
        if tok is None:
            raise ParseError("unexpected end of expression", pos())
        if tok == "(":
            advance()
            inner = parse_expr()
            if peek() != ")":
                raise ParseError("expected ')'", pos())
            advance()
            return inner
        if tok == "-":
            advance()
            return -parse_atom()
        if tok.isdigit():
            advance()
            return ring.constant(int(tok))
        if re.match(r"[A-Za-z_]", tok):
            if tok not in ring.names:
                raise UnknownVariable("unknown variable %r" % tok, pos())
            advance()
            return ring.variable(ring.names.index(tok))
        raise ParseError("unexpected token %r" % tok, pos())

    result = parse_expr()
    if peek() is not None:
        raise ParseError("trailing input %r" % peek(), pos())
    return result


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis with monic generators, deterministically sorted."""

    ring: PolyRing
    generators: tuple

    def leading_monomials(self):
        return [g.leading_monomial() for g in self.generators]

    def __iter__(self):
        return iter(self.generators)


def _reduce_once(f, gens):
    """One full normal-form pass of ``f`` against ``gens``."""
    ring = f.ring
    remainder = {}
    work = dict(f.terms)
    while work:
        mono = max(work, key=ring.order_key)
        coeff = work.pop(mono)
        hit = None
        for g in gens:
            if mono_divides(g.leading_monomial(), mono):
                hit = g
                break
        if hit is None:
            remainder[mono] = coeff
            continue
        quot_mono = mono_div(mono, hit.leading_monomial())
        lc = hit.leading_coeff()
        lc_inv = lc.inverse() if hasattr(lc, "inverse") else 1 / lc
        factor = coeff * lc_inv
        for gm, gc in hit.terms.items():
            key = mono_mul(gm, quot_mono)
            if key == mono:
                continue
            cur = work.get(key)
            s = -factor * gc if cur is None else cur - factor * gc
            if s:
                work[key] = s
            elif cur is not None:
                del work[key]
    return Polynomial(ring, remainder)


def normal_form(f, gb):
    """Remainder of ``f`` modulo the Groebner basis; zero iff f is in the ideal."""
    return _reduce_once(f, list(gb.generators))


def _s_polynomial(f, g):
    lf, lg = f.leading_monomial(), g.leading_monomial()
    lcm = mono_lcm(lf, lg)
    cf, cg = f.leading_coeff(), g.leading_coeff()
    mf = Polynomial(f.ring, {mono_div(lcm, lf): f.ring.field.one})
    mg = Polynomial(f.ring, {mono_div(lcm, lg): f.ring.field.one})
    inv_cf = cf.inverse() if hasattr(cf, "inverse") else 1 / cf
    inv_cg = cg.inverse() if hasattr(cg, "inverse") else 1 / cg
    return (mf * f).scale(inv_cf) - (mg * g).scale(inv_cg)


def buchberger(gens, ring=None):
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("need at least one nonzero generator")
    ring = ring or gens[0].ring
    if any(g.ring != ring for g in gens):
        raise ValueError("generators live in different rings")
    basis = [g.monic() for g in gens]
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    while pairs:
        pairs.sort(key=lambda ij: ring.order_key(
            mono_lcm(basis[ij[0]].leading_monomial(), basis[ij[1]].leading_monomial())))
        i, j = pairs.pop(0)
        f, g = basis[i], basis[j]
        lf, lg = f.leading_monomial(), g.leading_monomial()
        if mono_lcm(lf, lg) == mono_mul(lf, lg):
            continue  # coprime leading terms: S-polynomial reduces to zero
        s = _reduce_once(_s_polynomial(f, g), basis)
        if s:
            basis.append(s.monic())
            k = len(basis) - 1
            pairs.extend((i2, k) for i2 in range(k))
    # Minimalize: drop generators whose leading term is divisible by another's.
    minimal = []
    for i, g in enumerate(basis):
        lm = g.leading_monomial()
        if any(mono_divides(h.leading_monomial(), lm)
               for j, h in enumerate(basis) if j != i and
               (h.leading_monomial() != lm or j < i)):
            continue
        minimal.append(g)
    # Reduce each generator against the others.
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = _reduce_once(g, others) if others else g
        reduced.append(r.monic())
    reduced.sort(key=lambda p: ring.order_key(p.leading_monomial()))
    return GroebnerBasis(ring, tuple(reduced))


def is_zero_dimensional(gb):
    """True iff the staircase is finite: each variable has a pure-power lead."""
    ring = gb.ring
    leads = gb.leading_monomials()
    for i in range(ring.nvars):
        if not any(m[i] > 0 and all(m[j] == 0 for j in range(ring.nvars) if j != i)
                   for m in leads):
            return False
    return True


def standard_monomials(gb, degree_cap=None):
    """Monomials outside the leading-term ideal, sorted by weighted degree.

    Without ``degree_cap`` the ideal must be zero-dimensional.
    """
    ring = gb.ring
    leads = gb.leading_monomials()
    if degree_cap is None:
        if not is_zero_dimensional(gb):
            raise NotZeroDimensional("staircase is infinite; pass degree_cap")
        bounds = []
        for i in range(ring.nvars):
            powers = [m[i] for m in leads
                      if m[i] > 0 and all(m[j] == 0 for j in range(ring.nvars) if j != i)]
            bounds.append(min(powers))
        candidates = itertools.product(*(range(b) for b in bounds))
    else:
        candidates = []
        for deg in range(degree_cap + 1):
            candidates.extend(ring.monomials_of_degree(deg))
    out = [m for m in candidates
           if not any(mono_divides(lead, m) for lead in leads)]
    out.sort(key=lambda m: (ring.weighted_degree(m),) + ring.order_key(m))
    return out


@dataclass
class DimensionSeries:
    """Graded dimension counts keyed by weighted degree."""

    dims: dict = dc_field(default_factory=dict)

    @property
    def total(self):
        return sum(self.dims.values())

    def shifted(self, offset):
        return DimensionSeries({d + offset: c for d, c in self.dims.items()})

    def __getitem__(self, deg):
        return self.dims.get(deg, 0)

    def __eq__(self, other):
        if isinstance(other, DimensionSeries):
            other = other.dims
        return {d: c for d, c in self.dims.items() if c} == \
               {d: c for d, c in other.items() if c}

    def sorted_items(self):
        return sorted(self.dims.items())


def graded_quotient_dims(gb):
    """Dimension of each weighted-degree piece of the quotient ring."""
    monos = standard_monomials(gb)
    dims = {}
    for m in monos:
        d = gb.ring.weighted_degree(m)
        dims[d] = dims.get(d, 0) + 1
    return DimensionSeries(dims)

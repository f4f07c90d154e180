"""Sparse multivariate polynomials over an exact field, with monomial orders.

Exponents are plain tuples of naturals, one entry per ring variable.
Polynomials are immutable term maps exponent -> nonzero coefficient.
A RingContext fixes the field, the variable names, the computation mode
(graded polynomial ring vs. local power-series ring, the latter handled
through explicit truncation downstream) and the partition of the variables
into a y-block and a z-block.  Every context has a dual context whose
variables index the dual "divided power" monomials.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .errors import ContextMismatchError, InputSyntaxError
from .field import QQ, field_from_name

NEG_INF = float("-inf")


# ---------------------------------------------------------------------------
# exponent helpers


def e_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def e_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def e_min(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


def e_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def e_deg(a):
    return sum(a)


def e_divides(a, b):
    """True when a <= b componentwise, i.e. x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def e_coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# monomial orders


class MonomialOrder:
    """A total multiplicative order on exponent tuples.

    kind is one of 'grevlex', 'lex' or 'block'.  A block order compares the
    first `block` variables with the base kind, then the rest; it eliminates
    the first block.  An optional permutation reorders variables before
    comparison (perm[0] is the most significant variable index).
    """

    __slots__ = ("kind", "block", "base", "perm")

    def __init__(self, kind="grevlex", block=0, base="grevlex", perm=None):
        if kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown order kind {kind!r}")
        if base not in ("grevlex", "lex"):
            raise ValueError(f"unknown base order {base!r}")
        self.kind = kind
        self.block = block
        self.base = base
        self.perm = tuple(perm) if perm is not None else None

    @staticmethod
    def _grevlex_key(e):
        return (sum(e), tuple(-x for x in reversed(e)))

    def key(self, e):
        """Sort key; larger key means larger monomial."""
        if self.perm is not None:
            e = tuple(e[i] for i in self.perm)
        if self.kind == "grevlex":
            return self._grevlex_key(e)
        if self.kind == "lex":
            return e
        head, tail = e[: self.block], e[self.block :]
        sub = self._grevlex_key if self.base == "grevlex" else (lambda t: t)
        return (sub(head), sub(tail))

    def compare(self, a, b):
        """Return -1, 0 or 1 as a <, =, > b in this order."""
        if len(a) != len(b):
            raise ValueError("exponent length mismatch")
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def signature(self):
        return (self.kind, self.block, self.base, self.perm)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder(block={self.block}, base={self.base!r})"
        return f"MonomialOrder({self.kind!r})"


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elimination_order(nfirst, base="grevlex"):
    """Block order eliminating the first `nfirst` variables."""
    return MonomialOrder("block", block=nfirst, base=base)


def order_from_name(name):
    if name == "grevlex":
        return GREVLEX
    if name == "lex":
        return LEX
    raise InputSyntaxError(f"unknown order {name!r}")


# ---------------------------------------------------------------------------
# ring contexts


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*$")


@dataclass(frozen=True)
class RingContext:
    """Field, named variables, mode and y/z-block partition."""

    field: object = QQ
    names: tuple = ()
    mode: str = "graded"  # 'graded' or 'local'
    zvars: tuple = ()
    _dual_of: object = dc_field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.mode not in ("graded", "local"):
            raise ValueError(f"unknown ring mode {self.mode!r}")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        for n in self.names:
            if not _NAME_RE.match(n):
                raise ValueError(f"bad variable name {n!r}")
        unknown = [z for z in self.zvars if z not in self.names]
        if unknown:
            raise ValueError(f"zvars {unknown} not among ring variables")

    @property
    def nvars(self):
        return len(self.names)

    @cached_property
    def index(self):
        return {n: i for i, n in enumerate(self.names)}

    @cached_property
    def zindices(self):
        return tuple(self.index[z] for z in self.zvars)

    @cached_property
    def yindices(self):
        zset = set(self.zindices)
        return tuple(i for i in range(self.nvars) if i not in zset)

    @property
    def dim_hint(self):
        """Size of the z-block, the expected Krull dimension downstream."""
        return len(self.zvars)

    @cached_property
    def dual(self):
        """The dual context; its variables pair with this ring's monomials."""
        if self._dual_of is not None:
            return self._dual_of
        duals = []
        for n in self.names:
            cand = n.upper() if n.upper() != n else "D" + n
            duals.append(cand)
        if len(set(duals)) != len(duals):
            duals = ["D" + n for n in self.names]
        zdual = tuple(duals[i] for i in self.zindices)
        return RingContext(self.field, tuple(duals), "graded", zdual, _dual_of=self)

    def same_as(self, other):
        return (
            isinstance(other, RingContext)
            and self.field == other.field
            and self.names == other.names
            and self.mode == other.mode
            and self.zvars == other.zvars
        )

    def check_same(self, other, what="operands"):
        if not self.same_as(other):
            raise ContextMismatchError(f"{what} live over different ring contexts")

    # -- polynomial constructors ------------------------------------------

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return Polynomial(self, {(0,) * self.nvars: self.field.one})

    def constant(self, c):
        c = self.field.coerce(c)
        if c == self.field.zero:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def variable(self, name_or_index):
        i = name_or_index if isinstance(name_or_index, int) else self.index[name_or_index]
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def monomial(self, exponent, coeff=1):
        exponent = tuple(exponent)
        if len(exponent) != self.nvars or any(x < 0 for x in exponent):
            raise ValueError(f"bad exponent {exponent} for {self.nvars} variables")
        c = self.field.coerce(coeff)
        if c == self.field.zero:
            return self.zero()
        return Polynomial(self, {exponent: c})

    def from_terms(self, terms):
        return Polynomial(self, dict(terms))

    def parse(self, text):
        return parse_polynomial(self, text)

    # -- monomial enumeration ---------------------------------------------

    def exponents_of_degree(self, d, indices=None):
        """All exponents of total degree d supported on the given indices."""
        idx = tuple(range(self.nvars)) if indices is None else tuple(indices)
        if d == 0:
            yield (0,) * self.nvars
            return
        if not idx:
            return
        for comb in itertools.combinations_with_replacement(idx, d):
            e = [0] * self.nvars
            for i in comb:
                e[i] += 1
            yield tuple(e)

    def exponents_upto(self, d):
        for k in range(d + 1):
            yield from self.exponents_of_degree(k)

    def __repr__(self):
        return f"RingContext({self.field!r}, {','.join(self.names)}, {self.mode}, z={','.join(self.zvars) or '-'})"


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Immutable sparse polynomial; no stored coefficient is zero."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms, _clean=True):
        self.ring = ring
        if _clean:
            fld = ring.field
            zero = fld.zero
            cleaned = {}
            for e, c in terms.items():
                c = fld.coerce(c)
                if c != zero:
                    cleaned[tuple(e)] = c
            terms = cleaned
        self.terms = terms

    # -- structure ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self):
        """Total degree; NEG_INF for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def degree_on(self, indices):
        """Max total degree counting only the given variable indices."""
        if not self.terms:
            return NEG_INF
        return max(sum(e[i] for i in indices) for e in self.terms)

    def order_of_vanishing(self):
        """Min total degree of a term; NEG_INF for zero."""
        if not self.terms:
            return NEG_INF
        return min(sum(e) for e in self.terms)

    def is_monomial(self):
        return len(self.terms) == 1

    def constant_coefficient(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def lead(self, order=GREVLEX):
        """(exponent, coefficient) of the largest term in the order."""
        if not self.terms:
            raise ValueError("zero polynomial has no lead term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def sorted_terms(self, order=GREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # -- arithmetic ----------------------------------------------------------

    def _coerce_other(self, other):
        if isinstance(other, Polynomial):
            self.ring.check_same(other.ring)
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce_other(other)
        fld = self.ring.field
        res = dict(self.terms)
        for e, c in other.terms.items():
            s = fld.add(res.get(e, fld.zero), c)
            if s == fld.zero:
                res.pop(e, None)
            else:
                res[e] = s
        return Polynomial(self.ring, res, _clean=False)

    __radd__ = __add__

    def __neg__(self):
        fld = self.ring.field
        return Polynomial(self.ring, {e: fld.neg(c) for e, c in self.terms.items()}, _clean=False)

    def __sub__(self, other):
        return self + (-self._coerce_other(other))

    def __rsub__(self, other):
        return self._coerce_other(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            fld = self.ring.field
            c = fld.coerce(other)
            if c == fld.zero:
                return self.ring.zero()
            return Polynomial(
                self.ring, {e: fld.mul(v, c) for e, v in self.terms.items()}, _clean=False
            )
        self.ring.check_same(other.ring)
        fld = self.ring.field
        res = {}
        zero = fld.zero
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e_add(e1, e2)
                s = fld.add(res.get(e, zero), fld.mul(c1, c2))
                if s == zero:
                    res.pop(e, None)
                else:
                    res[e] = s
        return Polynomial(self.ring, res, _clean=False)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        for _ in range(n):
            result = result * self
        return result

    def mul_term(self, exponent, coeff):
        """Multiply by coeff * x^exponent (no coercion checks, hot path)."""
        fld = self.ring.field
        if coeff == fld.zero:
            return self.ring.zero()
        return Polynomial(
            self.ring,
            {e_add(e, exponent): fld.mul(c, coeff) for e, c in self.terms.items()},
            _clean=False,
        )

    def monic(self, order=GREVLEX):
        e, c = self.lead(order)
        if c == self.ring.field.one:
            return self
        inv = self.ring.field.inv(c)
        return self.mul_term((0,) * self.ring.nvars, inv)

    def truncate(self, bound):
        """Drop all terms of total degree >= bound."""
        if bound <= 0:
            return self.ring.zero()
        kept = {e: c for e, c in self.terms.items() if sum(e) < bound}
        if len(kept) == len(self.terms):
            return self
        return Polynomial(self.ring, kept, _clean=False)

    # -- comparison / rendering ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring.same_as(other.ring) and self.terms == other.terms
        try:
            return self.terms == self.ring.constant(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def render(self, order=GREVLEX):
        return render_polynomial(self, order)

    def __repr__(self):
        return self.render()


# ---------------------------------------------------------------------------
# canonical text rendering


def _render_monomial(names, e):
    parts = []
    for n, k in zip(names, e):
        if k == 1:
            parts.append(n)
        elif k > 1:
            parts.append(f"{n}^{k}")
    return "*".join(parts)


def render_polynomial(p, order=GREVLEX):
    """Canonical rendering: descending terms, '*' products, '^' powers."""
    if p.is_zero():
        return "0"
    fld = p.ring.field
    names = p.ring.names
    out = []
    for i, (e, c) in enumerate(p.sorted_terms(order)):
        mono = _render_monomial(names, e)
        cs = fld.render(c)
        negative = cs.startswith("-")
        mag = cs[1:] if negative else cs
        if mono and mag == "1":
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = mag
        if i == 0:
            out.append(("-" if negative else "") + body)
        else:
            out.append(("- " if negative else "+ ") + body)
    return " ".join(out)


# ---------------------------------------------------------------------------
# expression parsing (the same grammar the canonical renderer emits)

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()/]))"
)


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise InputSyntaxError(f"unexpected character {text[pos]!r}", col=pos + 1)
        if m.lastgroup == "int":
            tokens.append(("int", m.group("int"), m.start("int")))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _ExprParser:
    """Recursive descent for sums of products of powers, with parentheses."""

    def __init__(self, ctx, tokens):
        self.ctx = ctx
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise InputSyntaxError(message, col=tok[2] + 1)

    def parse(self):
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            self.fail(f"unexpected {tok[1]!r}")
        return p

    def expr(self):
        kind, val, _ = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.take()
            negate = val == "-"
        p = self.term()
        if negate:
            p = -p
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                q = self.term()
                p = p - q if val == "-" else p + q
            else:
                return p

    def term(self):
        p = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                p = p * self.factor()
            else:
                return p

    def factor(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                self.fail("exponent must be a natural number", tok)
            return base ** int(tok[1])
        return base

    def atom(self):
        tok = self.take()
        kind, val, start = tok
        if kind == "int":
            # rational literal: INT or INT/INT
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                den = self.take()
                if den[0] != "int":
                    self.fail("expected integer denominator", den)
                return self.ctx.constant(self.ctx.field.parse(f"{val}/{den[1]}"))
            return self.ctx.constant(self.ctx.field.parse(val))
        if kind == "name":
            if val not in self.ctx.index:
                self.fail(f"unknown variable {val!r}", tok)
            return self.ctx.variable(val)
        if kind == "op" and val == "(":
            p = self.expr()
            close = self.take()
            if close[:2] != ("op", ")"):
                self.fail("expected ')'", close)
            return p
        if kind == "op" and val == "-":
            return -self.factor()
        self.fail(f"unexpected {val!r}" if val else "unexpected end of input", tok)


def parse_polynomial(ctx, text):
    return _ExprParser(ctx, _tokenize(text)).parse()


def context_from_names(names, field=QQ, mode="graded", zvars=()):
    """Convenience constructor from 'x,y,z' style strings."""
    if isinstance(names, str):
        names = tuple(n.strip() for n in names.split(",") if n.strip())
    if isinstance(zvars, str):
        zvars = tuple(n.strip() for n in zvars.split(",") if n.strip())
    if isinstance(field, str):
        field = field_from_name(field)
    return RingContext(field, tuple(names), mode, tuple(zvars))

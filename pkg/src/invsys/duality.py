"""Contraction action of P on its graded dual D and Macaulay duality both ways.

D identifies with a polynomial ring in dual variables; the module structure
is the contraction rule x^n . X^m = X^(m-n) when m >= n and 0 otherwise.
perp_ideal sends an Artinian ideal to its inverse system, perp_module sends a
finitely generated submodule of D back to its annihilator ideal.
"""

from __future__ import annotations

import warnings

from .errors import ContextMismatchError
from .groebner import (
    ArtinianQuotient,
    DEFAULT_CEILING,
    Ideal,
    artinian_form,
    ideal_colon,
)
from .linalg import Echelon, intersect_spans, nullspace
from .ring import GREVLEX, Polynomial, e_divides, e_sub


def _check_dual(p, F):
    if not p.ring.dual.same_as(F.ring):
        raise ContextMismatchError("contraction needs a ring element and a dual element")


def contract(p, F):
    """Bilinear extension of the monomial contraction rule."""
    _check_dual(p, F)
    fld = F.ring.field
    zero = fld.zero
    out = {}
    for n, a in p.terms.items():
        for m, b in F.terms.items():
            if e_divides(n, m):
                w = e_sub(m, n)
                s = fld.add(out.get(w, zero), fld.mul(a, b))
                if s == zero:
                    out.pop(w, None)
                else:
                    out[w] = s
    return Polynomial(F.ring, out, _clean=False)


def contract_exp(e, F):
    """Contraction by the monomial x^e, on term dicts (hot path)."""
    fld = F.ring.field
    out = {}
    for m, b in F.terms.items():
        if e_divides(e, m):
            out[e_sub(m, e)] = b
    return Polynomial(F.ring, out, _clean=False)


def dual_pairing(p, F):
    """<p, F> = constant coefficient of p acting on F."""
    return contract(p, F).constant_coefficient()


def _neg_key(k):
    if isinstance(k, tuple):
        return tuple(_neg_key(x) for x in k)
    return -k


class DualModule:
    """Contraction-closed, degree-bounded P-submodule of D.

    The basis is kept in unique reduced row echelon form with respect to the
    monomial order on dual exponents, so module equality is basis equality.
    """

    __slots__ = ("ring", "degbound", "basis", "order")

    def __init__(self, ring, degbound, elements, order=GREVLEX, _canonical=False):
        self.ring = ring
        self.degbound = degbound
        self.order = order
        if _canonical:
            self.basis = tuple(elements)
            return
        dual = ring.dual
        ech = Echelon(ring.field, order.key)
        for F in elements:
            dual.check_same(F.ring, "dual module elements")
            ech.insert(F.terms)
        self.basis = tuple(Polynomial(dual, row) for row in ech.basis())

    @property
    def dim(self):
        return len(self.basis)

    def is_zero(self):
        return not self.basis

    def _echelon(self):
        ech = Echelon(self.ring.field, self.order.key)
        for F in self.basis:
            ech.rows[max(F.terms, key=self.order.key)] = dict(F.terms)
        return ech

    def contains(self, F):
        return self._echelon().contains(F.terms)

    def reduce(self, F):
        return Polynomial(self.ring.dual, self._echelon().reduce(F.terms))

    def equals(self, other):
        return (
            isinstance(other, DualModule)
            and self.ring.same_as(other.ring)
            and self.basis == other.basis
        )

    def max_degree(self):
        degs = [F.degree for F in self.basis]
        return max(degs) if degs else float("-inf")

    def sum_with(self, other):
        self.ring.check_same(other.ring)
        bound = max(self.degbound, other.degbound)
        return DualModule(self.ring, bound, self.basis + other.basis, self.order)

    def intersect(self, other):
        self.ring.check_same(other.ring)
        rows = intersect_spans(
            self.ring.field,
            self.order.key,
            [F.terms for F in self.basis],
            [F.terms for F in other.basis],
        )
        bound = min(self.degbound, other.degbound)
        dual = self.ring.dual
        return DualModule(self.ring, bound, [Polynomial(dual, r) for r in rows], self.order)

    def contract_by(self, e):
        """Image of the module under contraction by the monomial x^e."""
        drop = sum(e)
        bound = max(self.degbound - drop, 0)
        return DualModule(
            self.ring, bound, [contract_exp(e, F) for F in self.basis], self.order
        )

    @classmethod
    def generate(cls, ring, elements, degbound=None, order=GREVLEX):
        """P-closure of the given dual elements: span of all contractions."""
        dual = ring.dual
        elements = list(elements)
        for F in elements:
            dual.check_same(F.ring, "dual module generators")
        if degbound is None:
            degs = [F.degree for F in elements if not F.is_zero()]
            degbound = int(max(degs)) if degs else 0
        ech = Echelon(ring.field, order.key)
        queue = []
        for F in elements:
            if ech.insert(F.terms) is not None:
                queue.append(F)
        unit = [tuple(1 if j == i else 0 for j in range(ring.nvars)) for i in range(ring.nvars)]
        while queue:
            F = queue.pop()
            for e in unit:
                G = contract_exp(e, F)
                if G and ech.insert(G.terms) is not None:
                    queue.append(G)
        return cls(ring, degbound, [Polynomial(dual, r) for r in ech.basis()], order)

    def __repr__(self):
        head = ", ".join(F.render(self.order) for F in self.basis[:4])
        more = "" if self.dim <= 4 else f", ... ({self.dim} total)"
        return f"DualModule<deg<={self.degbound}: {head}{more}>"


def perp_ideal(I, degbound=None, order=GREVLEX, ceiling=DEFAULT_CEILING):
    """Inverse system of an Artinian ideal inside the bounded dual.

    Solved degree by degree: normal forms of the degree-k monomials extend
    the echelonized slice of the truncated ideal, and the orthogonal
    complement is assembled from its free coordinates.  Closure under the
    module action is verified before returning.
    """
    J, N = artinian_form(I, order, ceiling)
    if degbound is None:
        degbound = max(N - 1, 0)
    if degbound < N - 1:
        raise ValueError(f"degbound {degbound} below the required {N - 1}")
    aq = ArtinianQuotient(J, order)
    ring = I.ring
    dual = ring.dual
    fld = ring.field
    columns = {}  # standard monomial -> accumulating dual coefficient dict
    for v in aq.std:
        columns[v] = {}
    for k in range(degbound + 1):
        for u in ring.exponents_of_degree(k):
            for v, c in aq.monomial_nf(u).items():
                columns[v][u] = c
    basis = [Polynomial(dual, vec) for vec in columns.values()]
    W = DualModule(ring, degbound, basis, order)
    _verify_closed(W)
    return W


def _verify_closed(W):
    ech = W._echelon()
    n = W.ring.nvars
    for F in W.basis:
        for i in range(n):
            e = tuple(1 if j == i else 0 for j in range(n))
            G = contract_exp(e, F)
            if G and not ech.contains(G.terms):
                raise AssertionError("inverse system is not contraction-closed (internal)")


def perp_module(W, order=GREVLEX):
    """Annihilator ideal of a dual module, with certificate m^(degbound+1).

    Conditions come from a minimal generating set only; annihilating the
    generators annihilates their contraction closure.  The internal linear
    algebra runs over a degree-compatible order (which makes the echelonized
    kernel a basis of the annihilator together with the truncation block);
    the returned generator set is independent of the caller's order.
    """
    ring = W.ring
    if W.is_zero():
        warnings.warn("annihilator of the zero module is the unit ideal")
        return Ideal(ring, [ring.one()])
    B = W.degbound
    gens = minimal_cogenerators(W, order)
    columns = list(ring.exponents_upto(B))
    rows = {}
    for fi, F in enumerate(gens):
        for m, c in F.terms.items():
            for u in columns:
                if e_divides(u, m):
                    rows.setdefault((fi, e_sub(m, u)), {})[u] = c
    key = GREVLEX.key
    negkey = lambda e: _neg_key(key(e))
    kernel = nullspace(ring.field, list(rows.values()), columns, negkey)
    # with smallest-monomial pivots each kernel vector leads at its free
    # column, so the set is already echelon; keep the divisibility-minimal
    # ones, which form a minimal basis together with the truncation block
    kernel.sort(key=lambda v: key(max(v, key=key)))
    kept = []
    kept_lms = []
    for vec in kernel:
        lm = max(vec, key=key)
        if any(e_divides(m, lm) for m in kept_lms):
            continue
        kept.append(Polynomial(ring, vec))
        kept_lms.append(lm)
    return Ideal(ring, kept, trunc=B + 1)


def socle_basis(I, order=GREVLEX, ceiling=DEFAULT_CEILING):
    """K-basis of (I : m)/I, reduced residue representatives."""
    J, N = artinian_form(I, order, ceiling)
    aq = ArtinianQuotient(J, order)
    if aq.length == 0:
        return []
    ring = I.ring
    mvars = Ideal(ring, [ring.variable(i) for i in range(ring.nvars)])
    C = ideal_colon(J, mvars, order)
    ech = Echelon(ring.field, order.key)
    for g in C.gens:
        ech.insert(aq.nf_vector(g))
    return [Polynomial(ring, row) for row in ech.basis()]


def minimal_cogenerators(W, order=GREVLEX):
    """Echelon representatives of W modulo the contractions m . W.

    These minimally generate W as a P-module; their number is the type.
    """
    ring = W.ring
    n = ring.nvars
    ech = Echelon(ring.field, order.key)
    for F in W.basis:
        for i in range(n):
            e = tuple(1 if j == i else 0 for j in range(n))
            G = contract_exp(e, F)
            if G:
                ech.insert(G.terms)
    lower = set(ech.rows)
    for F in W.basis:
        ech.insert(F.terms)
    pivots = [p for p in ech.rows if p not in lower]
    pivots.sort(key=order.key, reverse=True)
    return [Polynomial(ring.dual, dict(ech.rows[p])) for p in pivots]

"""Buchberger-based ideal arithmetic and Artinian-quotient linear algebra.

Local (power-series) inputs are handled through explicit truncation: every
Artinian computation happens in P/m^N for an N certified by the Nakayama
stopping rule, where polynomial and power-series arithmetic agree exactly.
A truncated ideal object represents <gens> + m^N.
"""

from __future__ import annotations

import random

from .errors import (
    DegenerateInputError,
    InvalidDivisorError,
    SearchExhaustedError,
    UnboundedQuotientError,
)
from .linalg import Echelon, nullspace
from .ring import (
    GREVLEX,
    Polynomial,
    RingContext,
    e_add,
    e_divides,
    e_lcm,
    e_sub,
    elimination_order,
)

DEFAULT_CEILING = 64
QUOTIENT_DIM_CAP = 100_000


# ---------------------------------------------------------------------------
# division and Buchberger


def reduce_terms(ring, order, terms, reducers, drop=None):
    """Full remainder of a term dict modulo monic reducers [(lm, tail)].

    With drop = N, terms of total degree >= N are discarded; this is exact
    reduction by the monomial block of m^N and is only used for ideals
    containing that power.
    """
    fld = ring.field
    zero = fld.zero
    key = order.key
    if drop is None:
        work = dict(terms)
    else:
        work = {e: c for e, c in terms.items() if sum(e) < drop}
    rem = {}
    while work:
        t = max(work, key=key)
        c = work.pop(t)
        hit = None
        for lm, tail in reducers:
            if e_divides(lm, t):
                hit = (lm, tail)
                break
        if hit is None:
            rem[t] = c
            continue
        lm, tail = hit
        shift = e_sub(t, lm)
        for e2, c2 in tail.items():
            w = e_add(shift, e2)
            if drop is not None and sum(w) >= drop:
                continue
            s = fld.sub(work.get(w, zero), fld.mul(c, c2))
            if s == zero:
                work.pop(w, None)
            else:
                work[w] = s
    return rem


def _as_reducer(poly, order):
    lm, lc = poly.lead(order)
    tail = {e: c for e, c in poly.terms.items() if e != lm}
    return lm, tail


def s_poly_terms(ring, order, f_lm, f_tail, g_lm, g_tail):
    """Term dict of the S-polynomial of two monic polynomials."""
    fld = ring.field
    zero = fld.zero
    L = e_lcm(f_lm, g_lm)
    sf, sg = e_sub(L, f_lm), e_sub(L, g_lm)
    out = {}
    for e, c in f_tail.items():
        out[e_add(sf, e)] = c
    for e, c in g_tail.items():
        w = e_add(sg, e)
        s = fld.sub(out.get(w, zero), c)
        if s == zero:
            out.pop(w, None)
        else:
            out[w] = s
    return out


def _gm_update(order, lms, monos, pairs, t):
    """Gebauer-Moeller pair update after basis element t was appended."""
    lmf = lms[t]
    kept = set()
    for i, j in pairs:
        lij = e_lcm(lms[i], lms[j])
        if (
            not e_divides(lmf, lij)
            or e_lcm(lms[i], lmf) == lij
            or e_lcm(lms[j], lmf) == lij
        ):
            kept.add((i, j))
    classes = {}
    for i in range(t):
        classes.setdefault(e_lcm(lms[i], lmf), []).append(i)
    minimal = []
    for L in sorted(classes, key=order.key):
        if not any(e_divides(M, L) for M in minimal):
            minimal.append(L)
    for L in minimal:
        members = classes[L]
        # product criterion: a coprime member certifies the whole class
        if any(e_lcm(lms[i], lmf) == e_add(lms[i], lmf) for i in members):
            continue
        # two monomials have S-polynomial zero, certifying the class as well
        if monos[t] and any(monos[i] for i in members):
            continue
        kept.add((min(members), t))
    return kept


def _truncation_block(ring, trunc):
    return [ring.monomial(e) for e in ring.exponents_of_degree(trunc)]


def buchberger(ring, gens, order=GREVLEX, trunc=None):
    """The unique reduced Groebner basis of <gens> (+ m^trunc when given).

    Normal pair selection, Gebauer-Moeller pruning, deterministic queue.
    """
    seen = set()
    polys = []
    for g in gens:
        if trunc is not None:
            g = g.truncate(trunc)
        if g.is_zero():
            continue
        g = g.monic(order)
        fp = frozenset(g.terms.items())
        if fp not in seen:
            seen.add(fp)
            polys.append(g)
    blocks = []
    if trunc is not None:
        blocks = [b for b in _truncation_block(ring, trunc) if frozenset(b.terms.items()) not in seen]

    lms = []
    monos = []
    entries = []  # (lm, tail) or None for truncation monomials
    reducers = []  # live view of non-block entries used in division
    pairs = set()

    def append(poly, is_block):
        idx = len(lms)
        lm, tail = _as_reducer(poly, order)
        lms.append(lm)
        monos.append(len(poly.terms) == 1)
        if is_block:
            entries.append(None)
        else:
            entries.append((lm, tail))
            reducers.append((lm, tail))
        return idx

    for g in polys:
        i = append(g, False)
        pairs = _gm_update(order, lms, monos, pairs, i)
    for b in blocks:
        i = append(b, True)
        pairs = _gm_update(order, lms, monos, pairs, i)

    while pairs:
        i, j = min(pairs, key=lambda p: (order.key(e_lcm(lms[p[0]], lms[p[1]])), p))
        pairs.remove((i, j))
        fi = entries[i] if entries[i] is not None else (lms[i], {})
        fj = entries[j] if entries[j] is not None else (lms[j], {})
        s = s_poly_terms(ring, order, fi[0], fi[1], fj[0], fj[1])
        rem = reduce_terms(ring, order, s, reducers, drop=trunc)
        if rem:
            p = Polynomial(ring, rem, _clean=False).monic(order)
            k = append(p, False)
            pairs = _gm_update(order, lms, monos, pairs, k)

    # minimalize: keep elements whose lead monomial is not divisible by another's
    order_idx = sorted(range(len(lms)), key=lambda i: order.key(lms[i]))
    kept = []
    kept_lms = []
    for i in order_idx:
        if not any(e_divides(m, lms[i]) for m in kept_lms):
            kept.append(i)
            kept_lms.append(lms[i])
    # interreduce to the canonical reduced basis (honest division, no drop)
    final = []
    kept_polys = []
    for i in kept:
        if entries[i] is None:
            kept_polys.append((lms[i], {}))
        else:
            kept_polys.append(entries[i])
    for pos in range(len(kept)):
        others = [kept_polys[q] for q in range(len(kept)) if q != pos]
        lm, tail = kept_polys[pos]
        terms = dict(tail)
        terms[lm] = ring.field.one
        rem = reduce_terms(ring, order, terms, others)
        final.append(Polynomial(ring, rem, _clean=False).monic(order))
    final.sort(key=lambda p: order.key(p.lead(order)[0]))
    return tuple(final)


# ---------------------------------------------------------------------------
# ideals


class Ideal:
    """Generators plus ring context, with a cached reduced basis per order.

    trunc = N means the object represents <generators> + m^N; that is the
    computational form of an Artinian local quotient.
    """

    __slots__ = ("ring", "gens", "trunc", "_cache", "_bound")

    def __init__(self, ring, gens, trunc=None):
        self.ring = ring
        cleaned = []
        for g in gens:
            if not isinstance(g, Polynomial):
                raise TypeError(f"ideal generator {g!r} is not a polynomial")
            ring.check_same(g.ring, "ideal generators")
            if not g.is_zero():
                cleaned.append(g)
        self.gens = tuple(cleaned)
        self.trunc = trunc
        self._cache = {}
        self._bound = None
        if trunc is not None and trunc < 0:
            raise ValueError("negative truncation degree")

    def groebner(self, order=GREVLEX):
        key = order.signature()
        gb = self._cache.get(key)
        if gb is None:
            gb = buchberger(self.ring, self.gens, order, trunc=self.trunc)
            self._cache[key] = gb
        return gb

    def normal_form(self, p, order=GREVLEX):
        """Unique remainder of p modulo the reduced basis; 0 iff p in I."""
        self.ring.check_same(p.ring)
        gb = self.groebner(order)
        reducers = [_as_reducer(g, order) for g in gb]
        rem = reduce_terms(self.ring, order, p.terms, reducers)
        return Polynomial(self.ring, rem, _clean=False)

    def contains(self, p, order=GREVLEX):
        return self.normal_form(p, order).is_zero()

    def is_unit(self, order=GREVLEX):
        gb = self.groebner(order)
        return len(gb) == 1 and gb[0].terms == self.ring.one().terms

    def plus(self, extra):
        """Sum with another ideal or iterable of polynomials."""
        if isinstance(extra, Ideal):
            self.ring.check_same(extra.ring)
            tr = _merge_trunc(self.trunc, extra.trunc)
            return Ideal(self.ring, self.gens + extra.gens, trunc=tr)
        return Ideal(self.ring, self.gens + tuple(extra), trunc=self.trunc)

    def truncated(self, bound):
        """The ideal <gens> + m^bound, generators truncated accordingly."""
        tr = bound if self.trunc is None else min(self.trunc, bound)
        return Ideal(self.ring, [g.truncate(tr) for g in self.gens], trunc=tr)

    def generators_with_truncation(self):
        gens = list(self.gens)
        if self.trunc is not None:
            gens.extend(_truncation_block(self.ring, self.trunc))
        return gens

    def equals(self, other, order=GREVLEX):
        if not self.ring.same_as(other.ring):
            return False
        return self.groebner(order) == other.groebner(order)

    def __repr__(self):
        tail = f" + m^{self.trunc}" if self.trunc is not None else ""
        return f"Ideal<{', '.join(g.render() for g in self.gens)}{tail}>"


def _merge_trunc(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


# ---------------------------------------------------------------------------
# Artinian quotients: standard monomials and normal-form vectors


class ArtinianQuotient:
    """Monomial basis and normal-form tables for a finite quotient P/I."""

    def __init__(self, ideal, order=GREVLEX, cap=QUOTIENT_DIM_CAP):
        self.ideal = ideal
        self.order = order
        self.ring = ideal.ring
        gb = ideal.groebner(order)
        self.lms = [g.lead(order)[0] for g in gb]
        self.std = self._standard_monomials(cap)
        self.std_set = set(self.std)
        self._mono_nf = {e: {e: self.ring.field.one} for e in self.std}
        self._step = [dict() for _ in range(self.ring.nvars)]

    def _standard_monomials(self, cap):
        n = self.ring.nvars
        origin = (0,) * n
        if any(m == origin for m in self.lms):
            return []
        out = []
        seen = {origin}
        queue = [origin]
        while queue:
            e = queue.pop()
            if any(e_divides(m, e) for m in self.lms):
                continue
            out.append(e)
            if len(out) > cap:
                raise UnboundedQuotientError(
                    "quotient dimension exceeds cap; ideal is not Artinian enough"
                )
            for i in range(n):
                child = e[:i] + (e[i] + 1,) + e[i + 1 :]
                if child not in seen:
                    seen.add(child)
                    queue.append(child)
        out.sort(key=self.order.key)
        return out

    @property
    def length(self):
        return len(self.std)

    def _step_vector(self, i, w):
        """Normal-form vector of x_i * w for a standard monomial w."""
        table = self._step[i]
        vec = table.get(w)
        if vec is None:
            e = w[:i] + (w[i] + 1,) + w[i + 1 :]
            if e in self.std_set:
                vec = {e: self.ring.field.one}
            else:
                gb = self.ideal.groebner(self.order)
                reducers = [_as_reducer(g, self.order) for g in gb]
                rem = reduce_terms(self.ring, self.order, {e: self.ring.field.one}, reducers)
                vec = rem
            table[w] = vec
        return vec

    def monomial_nf(self, e):
        """Normal-form vector (dict over standard monomials) of x^e."""
        if not self.std:
            return {}
        memo = self._mono_nf
        vec = memo.get(e)
        if vec is not None:
            return vec
        i = next(k for k, x in enumerate(e) if x > 0)
        parent = e[:i] + (e[i] - 1,) + e[i + 1 :]
        pvec = self.monomial_nf(parent)
        fld = self.ring.field
        zero = fld.zero
        out = {}
        for w, c in pvec.items():
            for u, d in self._step_vector(i, w).items():
                s = fld.add(out.get(u, zero), fld.mul(c, d))
                if s == zero:
                    out.pop(u, None)
                else:
                    out[u] = s
        memo[e] = out
        return out

    def nf_vector(self, p):
        fld = self.ring.field
        zero = fld.zero
        out = {}
        for e, c in p.terms.items():
            for u, d in self.monomial_nf(e).items():
                s = fld.add(out.get(u, zero), fld.mul(c, d))
                if s == zero:
                    out.pop(u, None)
                else:
                    out[u] = s
        return out

    def poly_from_vector(self, vec):
        return Polynomial(self.ring, dict(vec))


# ---------------------------------------------------------------------------
# the Nakayama-certified truncation bound


def _pure_powers_in_lt(aq):
    """Check LT(I) contains a power of every variable (finite quotient)."""
    n = aq.ring.nvars
    for i in range(n):
        if not any(all(m[k] == 0 for k in range(n) if k != i) and m[i] > 0 for m in aq.lms):
            if aq.length == 0:
                continue  # unit ideal
            return False
    return True


def _degree_vanishes(aq, ring, N):
    # cheap pure-power probe first, then the full sweep
    for i in range(ring.nvars):
        e = tuple(N if k == i else 0 for k in range(ring.nvars))
        if aq.monomial_nf(e):
            return False
    for e in ring.exponents_of_degree(N):
        if aq.monomial_nf(e):
            return False
    return True


def artinian_bound(ideal, order=GREVLEX, ceiling=DEFAULT_CEILING, hint=None):
    """Smallest verified N with m^N inside the ideal.

    Graded mode tests membership directly.  Local mode certifies
    m^N <= I + m^(N+1) by linear algebra, which suffices by Nakayama in the
    complete local ring; the computation runs inside one truncation of I.
    """
    if ideal._bound is not None:
        return ideal._bound
    ring = ideal.ring
    if ideal.is_unit(order):
        ideal._bound = 0
        return 0
    if ring.mode == "graded" and ideal.trunc is None:
        aq = ArtinianQuotient(ideal, order)
        if not _pure_powers_in_lt(aq):
            raise UnboundedQuotientError("quotient has infinitely many standard monomials")
        for N in range(1, ceiling + 1):
            if _degree_vanishes(aq, ring, N):
                ideal._bound = N
                return N
        raise UnboundedQuotientError(
            f"no power of the maximal ideal below {ceiling} lies in the ideal"
        )
    if ideal.trunc is not None:
        aq = ArtinianQuotient(ideal, order)
        for N in range(1, ideal.trunc + 1):
            if _degree_vanishes(aq, ring, N):
                ideal._bound = N
                return N
        ideal._bound = ideal.trunc
        return ideal.trunc
    # local, untruncated: doubling guesses, capped so the truncation block
    # of the failure path stays affordable
    import math

    G = 4 if hint is None else max(2, hint + 1)
    while True:
        if math.comb(G + ring.nvars - 1, ring.nvars - 1) > 1200:
            raise UnboundedQuotientError(
                f"no power of the maximal ideal up to {G - 1} could be certified "
                "and larger truncations are not affordable; quotient looks non-Artinian"
            )
        J = ideal.truncated(G)
        aq = ArtinianQuotient(J, order)
        if _degree_vanishes(aq, ring, G - 1):
            for N in range(1, G):
                if _degree_vanishes(aq, ring, N):
                    ideal._bound = N
                    return N
        nextG = min(2 * G, ceiling + 1)
        if nextG <= G:
            raise UnboundedQuotientError(
                f"no power of the maximal ideal below {ceiling} could be certified; "
                "quotient looks non-Artinian"
            )
        G = nextG


def artinian_form(ideal, order=GREVLEX, ceiling=DEFAULT_CEILING, hint=None):
    """(truncation-exact ideal, bound N): local ideals get trunc = N."""
    N = artinian_bound(ideal, order, ceiling, hint)
    if ideal.ring.mode == "local" and ideal.trunc is None:
        J = ideal.truncated(N)
        J._bound = N
        return J, N
    return ideal, N


# ---------------------------------------------------------------------------
# Hilbert data


class HilbertData(tuple):
    """Dimension sequence of the m-adic associated graded of P/I."""

    __slots__ = ()

    def __new__(cls, values):
        return super().__new__(cls, tuple(values))

    @property
    def values(self):
        return tuple(self)

    @property
    def length(self):
        return sum(self)

    @property
    def socle_degree(self):
        return len(self) - 1


def hilbert_data(ideal, order=GREVLEX, ceiling=DEFAULT_CEILING):
    """values[k] = dim of (m^k + I)/(m^(k+1) + I), exact over the field."""
    J, N = artinian_form(ideal, order, ceiling)
    if N == 0:
        return HilbertData(())
    aq = ArtinianQuotient(J, order)
    ech = Echelon(ideal.ring.field, order.key)
    ranks = [0]  # ranks[j] = dim of span of degrees >= N - j
    for k in range(N - 1, -1, -1):
        for e in ideal.ring.exponents_of_degree(k):
            ech.insert(aq.monomial_nf(e))
        ranks.append(ech.rank)
    dims = []
    for k in range(N):
        hi = ranks[N - k - 1]  # degrees >= k + 1
        lo = ranks[N - k]  # degrees >= k
        dims.append(lo - hi)
    while dims and dims[-1] == 0:
        dims.pop()
    return HilbertData(dims)


# ---------------------------------------------------------------------------
# intersection, colon, regularity


def _fresh_name(names):
    base = "t"
    k = 0
    while f"{base}{k}" in names:
        k += 1
    return f"{base}{k}"


def ideal_intersect(I, J, order=GREVLEX):
    """I & J via one auxiliary variable and block elimination."""
    I.ring.check_same(J.ring)
    ring = I.ring
    if order.kind not in ("grevlex", "lex"):
        raise ValueError("intersection needs a grevlex or lex base order")
    tname = _fresh_name(ring.names)
    ext = RingContext(ring.field, (tname,) + ring.names, "graded", ())
    eorder = elimination_order(1, base=order.kind)

    def lift(p, tdeg):
        return Polynomial(ext, {(tdeg,) + e: c for e, c in p.terms.items()})

    t = ext.variable(0)
    one = ext.one()
    gens = [lift(g, 1) for g in I.generators_with_truncation()]
    gens += [(one - t) * lift(h, 0) for h in J.generators_with_truncation()]
    gb = buchberger(ext, gens, eorder)
    out = []
    for g in gb:
        if all(e[0] == 0 for e in g.terms):
            out.append(Polynomial(ring, {e[1:]: c for e, c in g.terms.items()}))
    return Ideal(ring, out)


def exact_divide(p, f, order=GREVLEX):
    """Quotient p/f when f divides p in the polynomial ring."""
    ring = p.ring
    fld = ring.field
    lm, lc = f.lead(order)
    work = dict(p.terms)
    quot = {}
    key = order.key
    while work:
        t = max(work, key=key)
        if not e_divides(lm, t):
            raise ValueError("division is not exact")
        c = fld.div(work.pop(t), lc)
        sh = e_sub(t, lm)
        quot[sh] = c
        for e2, c2 in f.terms.items():
            if e2 == lm:
                continue
            w = e_add(sh, e2)
            s = fld.sub(work.get(w, fld.zero), fld.mul(c, c2))
            if s == fld.zero:
                work.pop(w, None)
            else:
                work[w] = s
    return Polynomial(ring, quot, _clean=False)


def _finite_quotient_ready(I, order):
    """True when the multiplication-kernel colon is valid for I."""
    if I.trunc is not None:
        return True
    if I.ring.mode != "graded":
        return False
    try:
        aq = ArtinianQuotient(I, order)
    except UnboundedQuotientError:
        return False
    return _pure_powers_in_lt(aq)


def _kernel_colon(I, divisors, order):
    """(I : <divisors>) on a finite quotient via multiplication kernels."""
    aq = ArtinianQuotient(I, order)
    if aq.length == 0:
        return Ideal(I.ring, [I.ring.one()])
    rows = {}  # condition rows over standard-monomial columns
    for fi, f in enumerate(divisors):
        for w in aq.std:
            vec = aq.nf_vector(f * aq.poly_from_vector({w: I.ring.field.one}))
            for u, c in vec.items():
                rows.setdefault((fi, u), {})[w] = c
    kernel = nullspace(I.ring.field, rows.values(), aq.std, order.key)
    reps = [aq.poly_from_vector(v) for v in kernel]
    return Ideal(I.ring, list(I.gens) + reps, trunc=I.trunc)


def ideal_colon(I, divisor, order=GREVLEX):
    """(I : f) = {p : p f in I}, or the intersection over an ideal's generators."""
    if isinstance(divisor, Ideal):
        I.ring.check_same(divisor.ring)
        gens = list(divisor.gens)
        if not gens:
            raise InvalidDivisorError("colon by the zero ideal")
        if _finite_quotient_ready(I, order):
            return _kernel_colon(I, gens, order)
        result = None
        for g in gens:
            c = ideal_colon(I, g, order)
            result = c if result is None else ideal_intersect(result, c, order)
        return result
    f = divisor
    I.ring.check_same(f.ring)
    if f.is_zero():
        raise InvalidDivisorError("colon by zero")
    if _finite_quotient_ready(I, order):
        return _kernel_colon(I, [f], order)
    T = ideal_intersect(I, Ideal(I.ring, [f]), order)
    gens = [exact_divide(g, f, order) for g in T.groebner(order)]
    return Ideal(I.ring, gens)


def is_regular(f, I, order=GREVLEX):
    """Nonzerodivisor test: (I : f) = I.

    In local mode this is the polynomial-representative test; components away
    from the origin can cause a false negative, never a false positive on the
    Artinian-reduction pipeline.
    """
    I.ring.check_same(f.ring)
    if f.is_zero() or I.contains(f, order):
        raise DegenerateInputError("regularity test of an element of the ideal")
    C = ideal_colon(I, f, order)
    return all(I.contains(g, order) for g in C.groebner(order))


def find_linear_regular_sequence(I, d, trials=300, seed=0, order=GREVLEX):
    """d linear forms, each regular modulo I plus the previous ones.

    Deterministic given the seed: plain variables are probed first, then
    seeded random small-integer combinations.  Failure raises
    SearchExhaustedError and proves nothing.
    """
    ring = I.ring
    rng = random.Random(seed)
    found = []
    current = I

    def candidates():
        for i in range(ring.nvars):
            yield ring.variable(i)
        bound = 1
        count = 0
        while True:
            coeffs = [rng.randint(-bound, bound) for _ in range(ring.nvars)]
            if any(coeffs):
                p = ring.zero()
                for i, c in enumerate(coeffs):
                    p = p + ring.variable(i) * c
                yield p
            count += 1
            if count % (3 * ring.nvars) == 0:
                bound += 1

    used = 0
    for f in candidates():
        if used >= trials:
            break
        used += 1
        if len(found) == d:
            break
        try:
            ok = is_regular(f, current, order)
        except DegenerateInputError:
            continue
        if ok:
            found.append(f)
            current = current.plus([f])
    if len(found) < d:
        raise SearchExhaustedError(
            f"no regular sequence of length {d} found in {trials} trials (not a proof of nonexistence)"
        )
    return found


def equal_as_artinian(A, B, order=GREVLEX, ceiling=DEFAULT_CEILING):
    """Equality of the Artinian quotients defined by two ideals."""
    if not A.ring.same_as(B.ring):
        return False
    JA, NA = artinian_form(A, order, ceiling)
    JB, NB = artinian_form(B, order, ceiling)
    N = max(NA, NB, JA.trunc or 0, JB.trunc or 0)
    return JA.truncated(N).equals(JB.truncated(N), order)

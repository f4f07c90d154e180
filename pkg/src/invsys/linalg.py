"""Exact row echelon machinery over a field, with arbitrary hashable columns.

Rows are dicts column -> nonzero coefficient.  A sort key on columns fixes
the pivot preference (the largest key in a row is its pivot), which makes
every reduced echelon basis unique and hence directly comparable.
"""

from __future__ import annotations


class Echelon:
    """Mutable reduced row echelon form keyed by pivot column."""

    def __init__(self, field, sortkey):
        self.field = field
        self.sortkey = sortkey
        self.rows = {}  # pivot column -> row dict, pivot coefficient 1

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, vec):
        """Fully reduce a row against the basis; returns a new dict.

        In reduced form no basis row contains another's pivot, so every
        elimination only touches free columns and one pass suffices.
        """
        fld = self.field
        zero = fld.zero
        out = dict(vec)
        for hit in list(out.keys() & self.rows.keys()):
            coef = out[hit]
            for c, v in self.rows[hit].items():
                s = fld.sub(out.get(c, zero), fld.mul(coef, v))
                if s == zero:
                    out.pop(c, None)
                else:
                    out[c] = s
        return out

    def insert(self, vec):
        """Reduce and insert; returns the new pivot column or None."""
        red = self.reduce(vec)
        if not red:
            return None
        fld = self.field
        pivot = max(red, key=self.sortkey)
        inv = fld.inv(red[pivot])
        row = {c: fld.mul(v, inv) for c, v in red.items()}
        # keep reduced form: clear the new pivot from existing rows
        for p, other in self.rows.items():
            if pivot in other:
                coef = other[pivot]
                for c, v in row.items():
                    s = fld.sub(other.get(c, fld.zero), fld.mul(coef, v))
                    if s == fld.zero:
                        other.pop(c, None)
                    else:
                        other[c] = s
        self.rows[pivot] = row
        return pivot

    def extend(self, vecs):
        for v in vecs:
            self.insert(v)
        return self

    def contains(self, vec):
        return not self.reduce(vec)

    def basis(self):
        """Rows in decreasing pivot order; canonical for a fixed column key."""
        return [self.rows[p] for p in sorted(self.rows, key=self.sortkey, reverse=True)]


def echelon_basis(field, sortkey, vecs):
    ech = Echelon(field, sortkey).extend(vecs)
    return ech.basis()


def span_equal(field, sortkey, vecs_a, vecs_b):
    ea = Echelon(field, sortkey).extend(vecs_a)
    eb = Echelon(field, sortkey).extend(vecs_b)
    if ea.rank != eb.rank:
        return False
    return all(eb.contains(r) for r in ea.basis())


def solve_in_span(field, sortkey, rows, target):
    """Coefficients c with sum(c_i * rows_i) = target, or None.

    The solution is the canonical one obtained by echelon reduction with the
    rows taken in the given order (free coefficients are zero).
    """
    # combination-tracking columns sort below every real column
    def augkey(col):
        tag, payload = col
        if tag == "v":
            return (1, sortkey(payload))
        return (0, -payload)

    ech = Echelon(field, augkey)
    for i, row in enumerate(rows):
        aug = {("v", c): v for c, v in row.items()}
        aug[("c", i)] = field.one
        ech.insert(aug)
    red = ech.reduce({("v", c): v for c, v in target.items()})
    combo = {}
    for col, v in red.items():
        if col[0] == "v":
            return None
        combo[col[1]] = field.neg(v)
    return [combo.get(i, field.zero) for i in range(len(rows))]


def nullspace(field, rows, columns, sortkey):
    """Canonical basis of {x : row . x = 0 for every row}.

    `columns` lists the coordinate universe.  Free columns are scanned in
    decreasing key order; each yields one basis vector with unit coordinate
    there and back-substituted pivot coordinates.
    """
    ech = Echelon(field, sortkey).extend(rows)
    pivots = set(ech.rows)
    out = []
    for c in sorted(columns, key=sortkey, reverse=True):
        if c in pivots:
            continue
        vec = {c: field.one}
        for p, row in ech.rows.items():
            if c in row:
                vec[p] = field.neg(row[c])
        out.append(vec)
    return out


def intersect_spans(field, sortkey, vecs_a, vecs_b):
    """Basis of span(A) & span(B) by the Zassenhaus double-block trick."""

    def key2(col):
        block, payload = col
        return (1 if block == "L" else 0, sortkey(payload))

    ech = Echelon(field, key2)
    for a in vecs_a:
        row = {("L", c): v for c, v in a.items()}
        row.update({("R", c): v for c, v in a.items()})
        ech.insert(row)
    for b in vecs_b:
        ech.insert({("L", c): v for c, v in b.items()})
    out = []
    for piv, row in ech.rows.items():
        if piv[0] == "R":
            out.append({c[1]: v for c, v in row.items()})
    return echelon_basis(field, sortkey, out)

"""Cyclic trace quotients tr (l = 1), str (l = 2) and qtr (general l),
realized by canonical forms on q-cyclic words, plus the induced action of
tangential derivations.

Rotating the first letter of a word to the end multiplies its class by q,
so a word w equals q^r times its rotation by r.  The canonical
representative of a class is the lexicographically minimal rotation taken
at the smallest shift; a word whose minimal period p has q^p != 1 spans a
zero class and is dropped.  A brute-force realization of the same
quotient by relation-span linear algebra lives alongside as the oracle.
"""

from .exactla import ExactMatrix, cyclotomic_field, format_scalar, rank_of
from .freealg import (NcPoly, all_words, default_names, derive_tangential,
                      word_to_string)


def canonical_rotation(word):
    """(canonical word, shift, minimal period) of a nonempty word."""
    rots = [word[r:] + word[:r] for r in range(len(word))]
    wmin = min(rots)
    rmin = rots.index(wmin)
    period = next(r for r in range(1, len(word) + 1) if rots[r % len(word)] == word)
    return wmin, rmin, period


class TraceElem:
    """Finitely supported map from canonical q-cyclic classes to scalars."""

    __slots__ = ("n", "l", "field", "terms")

    def __init__(self, n, l, terms=None):
        self.n = n
        self.l = l
        self.field = cyclotomic_field(l)
        self.terms = {}
        if terms:
            for w, v in terms.items():
                if v:
                    self.terms[w] = v

    @classmethod
    def zero(cls, n, l):
        return cls(n, l)

    def _check(self, other):
        if self.n != other.n or self.l != other.l:
            raise ValueError("trace spaces differ")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for w, v in other.terms.items():
            nv = out.get(w, 0) + v
            if nv:
                out[w] = nv
            else:
                out.pop(w, None)
        return TraceElem(self.n, self.l, out)

    def __sub__(self, other):
        self._check(other)
        return self + (-other)

    def __neg__(self):
        return TraceElem(self.n, self.l, {w: -v for w, v in self.terms.items()})

    def __mul__(self, scalar):
        scalar = self.field.coerce(scalar)
        if not scalar:
            return TraceElem(self.n, self.l)
        return TraceElem(self.n, self.l, {w: v * scalar for w, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, TraceElem) and self.n == other.n
                and self.l == other.l and self.terms == other.terms)

    def __hash__(self):
        return hash((self.n, self.l, frozenset(self.terms)))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def component(self, weight=None, bidegree=None):
        if (weight is None) == (bidegree is None):
            raise ValueError("give exactly one of weight, bidegree")
        if weight is not None:
            keep = lambda w: len(w) == weight
        else:
            p, t = bidegree
            keep = lambda w: len(w) == p + t and w.count(2) == t
        return TraceElem(self.n, self.l, {w: v for w, v in self.terms.items() if keep(w)})

    def weights(self):
        return sorted({len(w) for w in self.terms})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: (len(item[0]), item[0]))

    def __repr__(self):
        names = default_names(self.n)
        parts = [f"({format_scalar(v)})*{self.l}tr({word_to_string(w, names)})"
                 for w, v in self.sorted_terms()]
        return " + ".join(parts) if parts else "0"


def trace_terms_json(t, names=None):
    names = names or default_names(t.n)
    return [{"class": word_to_string(w, names), "coeff": format_scalar(v), "l": t.l}
            for w, v in t.sorted_terms()]


def qtr_project(a, l):
    """Natural projection of an NcPoly onto the order-l trace quotient.

    For l > 1 every word must have length divisible by l (the quotient is
    only defined on that subalgebra); a word at rotation shift r picks up
    the phase q^r, and periodic words with q^period != 1 vanish.
    """
    field = cyclotomic_field(l)
    if not (a.field.is_rational_field() or a.field.l == l):
        raise ValueError("polynomial field does not embed in the trace field")
    if a.constant_term():
        raise ValueError("trace projection needs zero constant term")
    q = field.q
    out = {}
    for w, v in a.terms.items():
        if l > 1 and len(w) % l:
            raise ValueError(f"word of weight {len(w)} with order l={l}")
        canon, shift, period = canonical_rotation(w)
        if l > 1 and period % l:
            continue  # q^period != 1 forces the class to zero
        coeff = field.from_rational(v) if a.field.is_rational_field() else v
        if shift:
            coeff = coeff * q ** shift
        nv = out.get(canon, 0) + coeff
        if nv:
            out[canon] = nv
        else:
            out.pop(canon, None)
    return TraceElem(a.n, l, out)


def trace_act(u, t):
    """Action of a tangential derivation on a trace class: lift to any
    representative, derive, project back; independent of the lift."""
    comps = [c.poly if hasattr(c, "poly") else c for c in u.components]
    if t.l > 1:
        for comp in comps:
            bad = [m for m in comp.weights() if m % t.l]
            if bad:
                raise ValueError(f"component weight {bad[0]} not divisible by l={t.l}")
    field = cyclotomic_field(t.l)
    lift = NcPoly(t.n, field, dict(t.terms))
    comps = [c.map_field(field) for c in comps]
    return qtr_project(derive_tangential(lift, comps), t.l)


# ---------------------------------------------------------------------------
# brute-force oracle: the quotient as Ass^m / span{x_i a - q a x_i}

def relation_matrix(n, m, l):
    """Rows span the weight-m relation subspace {x_i a - q a x_i}."""
    field = cyclotomic_field(l)
    words = all_words(n, m)
    index = {w: i for i, w in enumerate(words)}
    entries = {}
    for r, w in enumerate(words):
        rot = w[1:] + w[:1]
        entries[(r, index[w])] = entries.get((r, index[w]), field.zero) + field.one
        prev = entries.get((r, index[rot]), field.zero)
        entries[(r, index[rot])] = prev - field.q
    return ExactMatrix(len(words), len(words), field, entries)


def quotient_dimension_bruteforce(n, m, l):
    """dim of Ass^m modulo the trace relations, by exact rank."""
    if l > 1 and m % l:
        raise ValueError("weight not divisible by the order")
    words = all_words(n, m)
    return len(words) - rank_of(relation_matrix(n, m, l))


def canonical_classes(n, m, l):
    """Sorted list of the nonzero canonical classes in weight m."""
    if l > 1 and m % l:
        raise ValueError("weight not divisible by the order")
    seen = set()
    for w in all_words(n, m):
        canon, _, period = canonical_rotation(w)
        if l > 1 and period % l:
            continue
        seen.add(canon)
    return sorted(seen)

"""Words and noncommutative polynomials of the free associative algebra
on n letters, with the right-factor decomposition, substitution
homomorphisms and the (weight, bidegree, y-degree) grading.

Words are tuples of generator indices in 1..n; for n = 2 the letters are
x = 1 and y = 2 and the lexicographic order has x < y.  Coefficients are
exact scalars from :mod:`liediv.exactla`.  Total weight of any stored
word is bounded by a configurable cap (default 12); operations whose
result would exceed the cap raise instead of truncating.
"""

import contextlib
import itertools

from .exactla import cyclotomic_field, fields_compatible, format_scalar

_WEIGHT_CAP = 12

QQ = cyclotomic_field(1)


def get_weight_cap():
    return _WEIGHT_CAP


def set_weight_cap(cap):
    global _WEIGHT_CAP
    if cap < 1:
        raise ValueError("weight cap must be positive")
    _WEIGHT_CAP = cap


@contextlib.contextmanager
def weight_cap(cap):
    """Temporarily raise (never lower) the weight cap."""
    global _WEIGHT_CAP
    old = _WEIGHT_CAP
    _WEIGHT_CAP = max(old, cap)
    try:
        yield
    finally:
        _WEIGHT_CAP = old


def default_names(n):
    if n == 1:
        return ("x",)
    if n == 2:
        return ("x", "y")
    return tuple(f"x{i}" for i in range(1, n + 1))


def word_weight(word):
    return len(word)


def word_from_string(text, names=None, n=2):
    names = names or default_names(n)
    if any(len(s) > 1 for s in names):
        raise ValueError("string words need single-character letter names")
    lookup = {s: i + 1 for i, s in enumerate(names)}
    return tuple(lookup[ch] for ch in text)


def word_to_string(word, names=None, n=None):
    names = names or default_names(n or (max(word) if word else 2))
    return "".join(names[g - 1] for g in word)


class NcPoly:
    """Finitely supported map word -> scalar; no zero coefficients stored."""

    __slots__ = ("n", "field", "terms")

    def __init__(self, n, field=None, terms=None):
        self.n = n
        self.field = field or QQ
        self.terms = {}
        if terms:
            cap = _WEIGHT_CAP
            for w, v in terms.items():
                if len(w) > cap:
                    raise ValueError(f"word of weight {len(w)} exceeds cap {cap}")
                if any(not (1 <= g <= n) for g in w):
                    raise ValueError(f"letter outside alphabet of size {n}")
                if v:
                    self.terms[w] = v

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, n, field=None):
        return cls(n, field)

    @classmethod
    def unit(cls, n, field=None):
        field = field or QQ
        return cls(n, field, {(): field.one})

    @classmethod
    def from_word(cls, n, word, field=None, coeff=None):
        field = field or QQ
        return cls(n, field, {tuple(word): field.one if coeff is None else field.coerce(coeff)})

    @classmethod
    def generator(cls, n, k, field=None):
        if not 1 <= k <= n:
            raise ValueError(f"generator index {k} outside 1..{n}")
        return cls.from_word(n, (k,), field)

    # -- linear structure ----------------------------------------------
    def _check_compatible(self, other):
        if self.n != other.n:
            raise ValueError("alphabet size mismatch")
        if not fields_compatible(self.field, other.field):
            raise ValueError("scalar field mismatch")

    def __add__(self, other):
        self._check_compatible(other)
        out = dict(self.terms)
        for w, v in other.terms.items():
            nv = out.get(w, 0) + v
            if nv:
                out[w] = nv
            else:
                out.pop(w, None)
        return NcPoly(self.n, self.field, out)

    def __sub__(self, other):
        self._check_compatible(other)
        out = dict(self.terms)
        for w, v in other.terms.items():
            nv = out.get(w, 0) - v
            if nv:
                out[w] = nv
            else:
                out.pop(w, None)
        return NcPoly(self.n, self.field, out)

    def __neg__(self):
        return NcPoly(self.n, self.field, {w: -v for w, v in self.terms.items()})

    def __mul__(self, scalar):
        if isinstance(scalar, NcPoly):
            raise TypeError("use nc_mul for the concatenation product")
        scalar = self.field.coerce(scalar)
        if not scalar:
            return NcPoly(self.n, self.field)
        return NcPoly(self.n, self.field, {w: v * scalar for w, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, NcPoly) and self.n == other.n
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    # -- grading accessors ----------------------------------------------
    def constant_term(self):
        return self.terms.get((), self.field.zero)

    def weights(self):
        return sorted({len(w) for w in self.terms})

    def max_weight(self):
        return max((len(w) for w in self.terms), default=0)

    def min_y_degree(self):
        """Depth: minimal y-degree (letter 2 count) over the support."""
        if self.n != 2:
            raise ValueError("depth is defined for the two-letter alphabet")
        return min((w.count(2) for w in self.terms), default=None)

    def sorted_terms(self):
        """Terms ordered by weight then lexicographically (x < y)."""
        return sorted(self.terms.items(), key=lambda item: (len(item[0]), item[0]))

    def map_field(self, field):
        """Embed rational coefficients into `field` (or re-tag same order)."""
        if field is self.field:
            return self
        if not self.field.is_rational_field():
            if field.l == self.field.l:
                return NcPoly(self.n, field, dict(self.terms))
            raise ValueError("no embedding between distinct cyclotomic orders")
        return NcPoly(self.n, field, {w: field.from_rational(v) for w, v in self.terms.items()})

    def __repr__(self):
        return f"NcPoly({format_poly(self)})"


def format_poly(a, names=None):
    names = names or default_names(a.n)
    parts = []
    for w, v in a.sorted_terms():
        word = word_to_string(w, names)
        coeff = format_scalar(v)
        if not word:
            text = f"({coeff})" if " " in coeff else coeff
        elif coeff == "1":
            text = word
        elif coeff == "-1":
            text = "-" + word
        elif " " in coeff:
            text = f"({coeff})*{word}"
        else:
            text = f"{coeff}*{word}"
        if parts and not text.startswith("-"):
            parts.append("+ " + text)
        elif parts:
            parts.append("- " + text[1:])
        else:
            parts.append(text)
    return " ".join(parts) if parts else "0"


def poly_terms_json(a, names=None):
    """JSON term list [{"word": "xxy", "coeff": "1"}, ...] in stable order."""
    names = names or default_names(a.n)
    return [{"word": word_to_string(w, names), "coeff": format_scalar(v)}
            for w, v in a.sorted_terms()]


def nc_mul(a, b):
    """Bilinear concatenation product of Ass_n."""
    a._check_compatible(b)
    out = {}
    for wa, va in a.terms.items():
        for wb, vb in b.terms.items():
            w = wa + wb
            nv = out.get(w, 0) + va * vb
            if nv:
                out[w] = nv
            else:
                out.pop(w, None)
    return NcPoly(a.n, a.field, out)


def partial(a, k):
    """Right-factor component d_k a: strip the last letter of every word
    ending in x_k, so that a = a_0 + sum_k nc_mul(partial(a, k), x_k)."""
    out = {}
    for w, v in a.terms.items():
        if w and w[-1] == k:
            stem = w[:-1]
            nv = out.get(stem, 0) + v
            if nv:
                out[stem] = nv
            else:
                out.pop(stem, None)
    return NcPoly(a.n, a.field, out)


def nc_substitute(a, images):
    """Algebra homomorphism sending generator k to images[k].

    Every image must have zero constant term so the weight grading is
    respected; images share one target alphabet and field.
    """
    used = {g for w in a.terms for g in w}
    missing = used - set(images)
    if missing:
        raise ValueError(f"no image for generators {sorted(missing)}")
    target_n, target_field = a.n, a.field
    for img in images.values():
        if img.constant_term():
            raise ValueError("substitution image has nonzero constant term")
        target_n, target_field = img.n, img.field
    out = NcPoly(target_n, target_field)
    word_cache = {(): NcPoly.unit(target_n, target_field)}

    def substitute_word(w):
        if w not in word_cache:
            word_cache[w] = nc_mul(substitute_word(w[:-1]), images[w[-1]])
        return word_cache[w]

    for w, v in a.terms.items():
        out = out + substitute_word(w) * v
    return out


def component(a, weight=None, bidegree=None, y_degree=None):
    """Exact graded projection by weight, bidegree (p, t) or y-degree."""
    if sum(sel is not None for sel in (weight, bidegree, y_degree)) != 1:
        raise ValueError("give exactly one of weight, bidegree, y_degree")
    if weight is not None:
        keep = lambda w: len(w) == weight
    elif bidegree is not None:
        if a.n != 2:
            raise ValueError("bidegree projection needs the two-letter alphabet")
        p, t = bidegree
        keep = lambda w: len(w) == p + t and w.count(2) == t
    else:
        if a.n != 2:
            raise ValueError("y-degree projection needs the two-letter alphabet")
        keep = lambda w: w.count(2) == y_degree
    return NcPoly(a.n, a.field, {w: v for w, v in a.terms.items() if keep(w)})


def derive_tangential(a, components):
    """Apply the tangential derivation x_i -> [x_i, components[i-1]] to a,
    extended to words by the Leibniz rule."""
    n = a.n
    if len(components) != n:
        raise ValueError(f"need {n} derivation components")
    field = a.field
    for comp in components:
        if comp is not None and not fields_compatible(field, comp.field):
            raise ValueError("scalar field mismatch")
    # precompute [x_i, a_i] once per generator
    bracket = {}
    for i in range(1, n + 1):
        comp = components[i - 1]
        xi = NcPoly.generator(n, i, field)
        if comp is None or comp.is_zero():
            bracket[i] = None
        else:
            bracket[i] = nc_mul(xi, comp) - nc_mul(comp, xi)
    out = {}
    for w, v in a.terms.items():
        for pos, g in enumerate(w):
            br = bracket[g]
            if br is None:
                continue
            head, tail = w[:pos], w[pos + 1:]
            for wb, vb in br.terms.items():
                nw = head + wb + tail
                nv = out.get(nw, 0) + v * vb
                if nv:
                    out[nw] = nv
                else:
                    out.pop(nw, None)
    return NcPoly(n, field, out)


def all_words(n, m):
    """All words of weight m over 1..n, lexicographic order."""
    return [tuple(w) for w in itertools.product(range(1, n + 1), repeat=m)]

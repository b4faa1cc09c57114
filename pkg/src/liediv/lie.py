"""The free Lie algebra lie_n inside Ass_n: brackets, ad-powers, Lyndon
bases, Dynkin certification, Lie substitution and the two hardcoded
weight-3 / weight-5 generators of the Grothendieck-Teichmuller algebra.

Lie elements are stored as their expanded noncommutative polynomials with
the convention [a, b] = ab - ba; bracket trees appear only in the input
format (nested arrays) and in Lyndon standard factorizations.
"""

import functools
import os

from .exactla import Rational, cyclotomic_field
from .freealg import NcPoly, component, default_names, nc_mul, nc_substitute

QQ = cyclotomic_field(1)

# re-run Dynkin certification on every construction when set
DEBUG_CERTIFY = bool(os.environ.get("LIEDIV_DEBUG_CERTIFY"))


class LieElem:
    """An NcPoly certified to be primitive (a Lie element).

    `certified` records that the Dynkin criterion was checked explicitly
    or that the element was produced by operations that preserve the Lie
    property (brackets, Lie substitution, graded projection).
    """

    __slots__ = ("poly", "certified")

    def __init__(self, poly, certified=False):
        self.poly = poly
        self.certified = certified

    @classmethod
    def from_poly(cls, poly, check=True):
        if check and not is_lie(poly):
            raise ValueError("polynomial fails the Dynkin criterion")
        return cls(poly, certified=check)

    @classmethod
    def zero(cls, n, field=None):
        return cls(NcPoly.zero(n, field), certified=True)

    @classmethod
    def generator(cls, n, k, field=None):
        return cls(NcPoly.generator(n, k, field), certified=True)

    @property
    def n(self):
        return self.poly.n

    @property
    def field(self):
        return self.poly.field

    def __add__(self, other):
        return LieElem(self.poly + other.poly, self.certified and other.certified)

    def __sub__(self, other):
        return LieElem(self.poly - other.poly, self.certified and other.certified)

    def __neg__(self):
        return LieElem(-self.poly, self.certified)

    def __mul__(self, scalar):
        return LieElem(self.poly * scalar, self.certified)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, LieElem):
            return self.poly == other.poly
        return NotImplemented

    def __hash__(self):
        return hash(self.poly)

    def __bool__(self):
        return bool(self.poly)

    def is_zero(self):
        return self.poly.is_zero()

    def weights(self):
        return self.poly.weights()

    def max_weight(self):
        return self.poly.max_weight()

    def depth(self):
        return self.poly.min_y_degree()

    def component(self, **kwargs):
        # graded projections of Lie elements stay Lie
        return LieElem(component(self.poly, **kwargs), self.certified)

    def map_field(self, field):
        return LieElem(self.poly.map_field(field), self.certified)

    def __repr__(self):
        return f"LieElem({self.poly!r})"


def _as_poly(a):
    return a.poly if isinstance(a, LieElem) else a


def bracket(a, b):
    """[a, b] = ab - ba; bilinear, antisymmetric, satisfies Jacobi."""
    pa, pb = _as_poly(a), _as_poly(b)
    out = nc_mul(pa, pb) - nc_mul(pb, pa)
    e = LieElem(out, certified=True)
    if DEBUG_CERTIFY:
        assert is_lie(out)
    return e


def _bracket_letter(p, g):
    # [p, x_g] on raw term dicts; the hot path inside dynkin
    out = {}
    for w, v in p.terms.items():
        right = w + (g,)
        nv = out.get(right, 0) + v
        if nv:
            out[right] = nv
        else:
            out.pop(right, None)
        left = (g,) + w
        nv = out.get(left, 0) - v
        if nv:
            out[left] = nv
        else:
            out.pop(left, None)
    return NcPoly(p.n, p.field, out)


def dynkin(a):
    """Left-nested bracketing map: g1 g2 ... gm -> [[..[g1,g2],..],gm].

    On a homogeneous weight-m Lie element p it satisfies dynkin(p) = m*p
    (Dynkin-Specht-Wever); that identity is the certification criterion.
    """
    a = _as_poly(a)
    if a.constant_term():
        raise ValueError("dynkin needs zero constant term")
    cache = {}

    def nested(w):
        if w not in cache:
            if len(w) == 1:
                cache[w] = NcPoly.from_word(a.n, w, a.field)
            else:
                cache[w] = _bracket_letter(nested(w[:-1]), w[-1])
        return cache[w]

    out = NcPoly.zero(a.n, a.field)
    for w, v in a.terms.items():
        out = out + nested(w) * v
    return out


def is_lie(a):
    """True iff every weight component p of a satisfies dynkin(p) = m*p."""
    a = _as_poly(a)
    if a.constant_term():
        return False
    for m in a.weights():
        p = component(a, weight=m)
        if dynkin(p) != p * Rational(m):
            return False
    return True


def ad_power(k, field=None):
    """ad_x^k y in lie_2; bidegree (k, 1)."""
    if k < 0:
        raise ValueError("ad power needs k >= 0")
    out = LieElem.generator(2, 2, field)
    x = LieElem.generator(2, 1, field)
    for _ in range(k):
        out = bracket(x, out)
    return out


def lie_substitute(psi, images):
    """Lie algebra substitution: generators map to Lie elements, so the
    homomorphic image of a Lie element is again Lie."""
    imgs = {}
    for k, img in images.items():
        if isinstance(img, LieElem):
            imgs[k] = img.poly
        else:
            raise ValueError("substitution images must be Lie elements")
        if imgs[k].constant_term():
            raise ValueError("substitution image has nonzero constant term")
    out = nc_substitute(_as_poly(psi), imgs)
    e = LieElem(out, certified=True)
    if DEBUG_CERTIFY:
        assert is_lie(out)
    return e


# ---------------------------------------------------------------------------
# Lyndon words and bases

def lyndon_words(n, m):
    """Lyndon words of length exactly m over 1..n, in lexicographic order."""
    if m < 1:
        raise ValueError("weight must be >= 1")
    return list(_lyndon_cache(n, m))


def _lyndon_words_duval(n, m):
    # classic Duval algorithm: generate all Lyndon words of length <= m,
    # keep those of length exactly m
    out = []
    w = [1]
    while True:
        if len(w) == m:
            out.append(tuple(w))
        # extend w periodically to length m
        ext = [w[i % len(w)] for i in range(m)]
        # trim letters equal to the largest and bump the last remaining one
        while ext and ext[-1] == n:
            ext.pop()
        if not ext:
            return out
        ext[-1] += 1
        w = ext


def standard_factorization(word):
    """Split a Lyndon word w = uv with v its lexicographically smallest
    proper suffix (equivalently the longest proper Lyndon suffix)."""
    if len(word) < 2:
        raise ValueError("letters have no factorization")
    v = min(word[i:] for i in range(1, len(word)))
    return word[:len(word) - len(v)], v


@functools.cache
def standard_bracketing(word):
    """Bracket tree of a Lyndon word: nested pairs with integer leaves."""
    if len(word) == 1:
        return word[0]
    u, v = standard_factorization(word)
    return (standard_bracketing(u), standard_bracketing(v))


def bracket_tree_weight(tree):
    if isinstance(tree, int):
        return 1
    return bracket_tree_weight(tree[0]) + bracket_tree_weight(tree[1])


def bracket_tree_to_lie(tree, n, field=None):
    """Expand a bracket tree (nested pairs, integer leaves) in Ass_n."""
    if isinstance(tree, int):
        return LieElem.generator(n, tree, field)
    left = bracket_tree_to_lie(tree[0], n, field)
    right = bracket_tree_to_lie(tree[1], n, field)
    return bracket(left, right)


def witt_number(n, m):
    """dim lie^m(x_1..x_n) = (1/m) sum_{d | m} mu(d) n^(m/d)."""
    total = 0
    for d in range(1, m + 1):
        if m % d == 0:
            total += _mobius(d) * n ** (m // d)
    assert total % m == 0
    return total // m


def _mobius(d):
    if d == 1:
        return 1
    out, p = 1, 2
    while p * p <= d:
        if d % p == 0:
            d //= p
            if d % p == 0:
                return 0
            out = -out
        p += 1
    if d > 1:
        out = -out
    return out


@functools.cache
def _lyndon_cache(n, m):
    return tuple(_lyndon_words_duval(n, m))


def lyndon_basis(n, m, field=None):
    """Standard bracketings of the Lyndon words of length m; the list has
    exactly witt_number(n, m) linearly independent elements."""
    words = _lyndon_cache(n, m)
    return [bracket_tree_to_lie(standard_bracketing(w), n, field) for w in words]


# ---------------------------------------------------------------------------
# hardcoded low-weight generators

def _gen2(field=None):
    return LieElem.generator(2, 1, field), LieElem.generator(2, 2, field)


@functools.cache
def soule(m):
    """The normalized integer-coefficient generators of weights 3 and 5.

    Higher odd weights are produced by the grt solver instead, normalized
    by their depth-1 leading coefficient.
    """
    x, y = _gen2()
    if m == 3:
        return bracket(x, bracket(x, y)) - bracket(y, bracket(y, x))
    if m == 5:
        b = bracket
        t1 = b(x, b(x, b(x, b(x, y))))
        t2 = b(y, b(y, b(y, b(y, x))))
        t3 = b(x, b(x, b(y, b(x, y))))
        t4 = b(y, b(y, b(x, b(y, x))))
        t5 = b(b(x, y), b(x, b(x, y)))
        t6 = b(b(y, x), b(y, b(y, x)))
        return (t1 * Rational(2) - t2 * Rational(2) + t3 * Rational(4)
                - t4 * Rational(4) - t5 * Rational(3) + t6 * Rational(3))
    raise ValueError("only the weight-3 and weight-5 elements are hardcoded")


# ---------------------------------------------------------------------------
# bracket-tree input format (nested JSON arrays) and term-list output

def parse_lie(obj, n=2, field=None, names=None):
    """Lie element from nested arrays, e.g. ["x", ["x", "y"]], or from a
    scalar-weighted sum {"terms": [{"coeff": "2", "bracket": ...}, ...]}."""
    field = field or QQ
    names = names or default_names(n)
    lookup = {s: i + 1 for i, s in enumerate(names)}

    def parse_term(t):
        if isinstance(t, str):
            if t not in lookup:
                raise ValueError(f"unknown generator {t!r}")
            return LieElem.generator(n, lookup[t], field)
        if isinstance(t, (list, tuple)) and len(t) == 2:
            return bracket(parse_term(t[0]), parse_term(t[1]))
        raise ValueError("bracket terms are generator names or pairs")

    if isinstance(obj, dict):
        out = LieElem.zero(n, field)
        for item in obj["terms"]:
            coeff = Rational(item.get("coeff", 1))
            out = out + parse_term(item["bracket"]) * coeff
        return out
    return parse_term(obj)


def lie_terms_json(e, names=None):
    """Expanded term list of a Lie element, in stable order."""
    from .freealg import poly_terms_json
    return poly_terms_json(_as_poly(e), names)

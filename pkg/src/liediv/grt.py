"""The braid Lie algebras t_3, t_4 in semidirect normal form, the three
defining relations of the Grothendieck-Teichmuller algebra (antisymmetry,
hexagon, pentagon), and a linear solver for its graded components.

Normal form: t_4 = free-Lie(t14, t24, t34) semidirect t_3 with
t_3 = free-Lie(t12, t23) + K*c, where c = t12 + t13 + t23 is central in
t_3 and t13 = c - t12 - t23 is the derived generator.  An element of t_3
acts on the free part through tangential derivations; the action table is
derived from the defining relations once and locked by the relation
validation test, which is the source of truth.

Pentagon checks run at the Lie level in this normal form (graded
dimensions stay in the thousands at weight 9) instead of in the
universal envelope; that is what makes weight-9 solving tractable.
All grt computations are over Q.
"""

import functools

from .exactla import ExactMatrix, Rational, cyclotomic_field, nullspace, solve
from .freealg import all_words, get_weight_cap
from .lie import (LieElem, bracket, lie_substitute, lyndon_words,
                  standard_bracketing)
from .tder import TDer, tder_apply, tder_bracket

QQ = cyclotomic_field(1)

F_NAMES = ("t14", "t24", "t34")  # free-part alphabet
G_NAMES = ("t12", "t23")         # t_3 free alphabet

# rho(tij) sends t(i4) -> [t(i4), t(j4)], t(j4) -> [t(j4), t(i4)], rest -> 0;
# as tangential derivations of free-Lie(t14, t24, t34):
_RHO_TABLE = {
    "t12": (2, 1, None),
    "t13": (3, None, 1),
    "t23": (None, 3, 2),
}


def _rho_generator(name):
    comps = tuple(LieElem.zero(3) if g is None else LieElem.generator(3, g)
                  for g in _RHO_TABLE[name])
    return TDer(comps)


@functools.cache
def _rho_c():
    return (_rho_generator("t12") + _rho_generator("t13") + _rho_generator("t23"))


@functools.cache
def _rho_nested(word):
    """rho of the left-nested bracket of a word over (t12, t23)."""
    if len(word) == 1:
        return _rho_generator(G_NAMES[word[0] - 1])
    return tder_bracket(_rho_nested(word[:-1]), _rho_generator(G_NAMES[word[-1] - 1]))


def _rho_apply(g_elem, central, target):
    """Apply the derivation of the t_3 element g + central*c to a free-part
    Lie element, via the Dynkin rebracketing of g."""
    out = LieElem.zero(3)
    if central:
        out = out + tder_apply(_rho_c(), target) * central
    if g_elem.is_zero() or target.is_zero():
        return out
    for m in g_elem.weights():
        gm = g_elem.component(weight=m)
        inv_m = Rational(1, m)
        for w, v in gm.poly.terms.items():
            out = out + tder_apply(_rho_nested(w), target) * (v * inv_m)
    return out


class T4Elem:
    """Element of t_4: (free part f, t_3 free part g, coefficient of c)."""

    __slots__ = ("f", "g", "central")

    def __init__(self, f=None, g=None, central=None):
        self.f = f if f is not None else LieElem.zero(3)
        self.g = g if g is not None else LieElem.zero(2)
        self.central = central if central is not None else QQ.zero
        if not self.f.field.is_rational_field() or not self.g.field.is_rational_field():
            raise ValueError("t_4 computations run over Q")

    def __add__(self, other):
        return T4Elem(self.f + other.f, self.g + other.g, self.central + other.central)

    def __sub__(self, other):
        return T4Elem(self.f - other.f, self.g - other.g, self.central - other.central)

    def __neg__(self):
        return T4Elem(-self.f, -self.g, -self.central)

    def __mul__(self, scalar):
        return T4Elem(self.f * scalar, self.g * scalar, self.central * scalar)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, T4Elem) and self.f == other.f
                and self.g == other.g and self.central == other.central)

    def __bool__(self):
        return bool(self.f) or bool(self.g) or bool(self.central)

    def is_zero(self):
        return not self

    def coordinates(self):
        """Stable coordinate dict for linear algebra over t_4 components."""
        out = {}
        for w, v in self.f.poly.terms.items():
            out[(0, w)] = v
        for w, v in self.g.poly.terms.items():
            out[(1, w)] = v
        if self.central:
            out[(2, ())] = self.central
        return out

    def to_json(self):
        from .exactla import format_scalar
        from .freealg import poly_terms_json
        return {"free": poly_terms_json(self.f.poly, F_NAMES),
                "t3": poly_terms_json(self.g.poly, G_NAMES),
                "central": format_scalar(self.central)}

    def __repr__(self):
        return f"T4Elem(f={self.f.poly!r}, g={self.g.poly!r}, c={self.central})"


@functools.cache
def t4_embed(name):
    """Embedded generator t^{i,j} of t_4 in normal form."""
    if name in F_NAMES:
        return T4Elem(f=LieElem.generator(3, F_NAMES.index(name) + 1))
    if name in G_NAMES:
        return T4Elem(g=LieElem.generator(2, G_NAMES.index(name) + 1))
    if name == "t13":
        g = -(LieElem.generator(2, 1) + LieElem.generator(2, 2))
        return T4Elem(g=g, central=QQ.one)
    raise ValueError(f"unknown generator {name!r}")


def t4_bracket(e1, e2):
    """Bracket in the semidirect normal form:
    [(f1,h1), (f2,h2)] = ([f1,f2] + rho(h1) f2 - rho(h2) f1, [h1,h2])."""
    f = bracket(e1.f, e2.f)
    f = f + _rho_apply(e1.g, e1.central, e2.f)
    f = f - _rho_apply(e2.g, e2.central, e1.f)
    g = bracket(e1.g, e2.g)
    return T4Elem(f, g, QQ.zero)


def t4_generator_names():
    return ("t12", "t13", "t14", "t23", "t24", "t34")


def t4_defining_relations():
    """All 15 defining relations, evaluated in the normal form; every
    returned element must be zero (this test, not the derivation of the
    action table, is the source of truth)."""
    out = []
    gens = {name: t4_embed(name) for name in t4_generator_names()}
    disjoint = (("t12", "t34"), ("t13", "t24"), ("t14", "t23"))
    for a, b in disjoint:
        out.append((f"[{a},{b}]", t4_bracket(gens[a], gens[b])))
    import itertools
    for tri in itertools.combinations((1, 2, 3, 4), 3):
        for pivot in tri:
            b, c = [i for i in tri if i != pivot]
            tab = gens[f"t{min(pivot, b)}{max(pivot, b)}"]
            tac = gens[f"t{min(pivot, c)}{max(pivot, c)}"]
            tbc = gens[f"t{min(b, c)}{max(b, c)}"]
            out.append((f"[t{pivot}{b}+t{pivot}{c}, t{b}{c}]",
                        t4_bracket(tab + tac, tbc)))
    return out


def t4_full_center():
    """Sum of all six generators; commutes with everything in t_4."""
    total = t4_embed("t12")
    for name in t4_generator_names()[1:]:
        total = total + t4_embed(name)
    return total


# ---------------------------------------------------------------------------
# evaluation of Lie elements on pairs of t_4 elements

class _TreeEvaluator:
    """Evaluate bracket trees on a fixed argument pair, caching subtrees
    (subtrees of Lyndon bracketings are again Lyndon bracketings, so the
    cache is shared across the whole weight)."""

    def __init__(self, a, b):
        self.cache = {1: a, 2: b}

    def __call__(self, tree):
        got = self.cache.get(tree)
        if got is None:
            got = t4_bracket(self(tree[0]), self(tree[1]))
            self.cache[tree] = got
        return got


def lyndon_coordinates(psi):
    """Coordinates of a homogeneous Lie element over the Lyndon basis of
    its weight, solved exactly from the word expansion."""
    weights = psi.weights()
    if len(weights) != 1:
        raise ValueError("need a homogeneous element")
    m = weights[0]
    words = lyndon_words(2, m)
    basis = [_lyndon_expansion(w) for w in words]
    support = all_words(2, m)
    index = {w: i for i, w in enumerate(support)}
    entries = {}
    for c, e in enumerate(basis):
        for w, v in e.poly.terms.items():
            entries[(index[w], c)] = v
    matrix = ExactMatrix(len(support), len(words), QQ, entries)
    rhs = [psi.poly.terms.get(w, QQ.zero) for w in support]
    sol = solve(matrix, rhs)
    if sol is None:
        raise ValueError("element is not Lie: no Lyndon coordinates")
    return words, sol


@functools.cache
def _lyndon_expansion(word):
    from .lie import bracket_tree_to_lie
    return bracket_tree_to_lie(standard_bracketing(word), 2)


_PENTAGON_PAIRS = (
    # psi(t^{1,2}, t^{2,34}) + psi(t^{12,3}, t^{3,4})
    #   = psi(t^{2,3}, t^{3,4}) + psi(t^{1,23}, t^{23,4}) + psi(t^{1,2}, t^{2,3})
    (("t12",), ("t23", "t24"), 1),
    (("t13", "t23"), ("t34",), 1),
    (("t23",), ("t34",), -1),
    (("t12", "t13"), ("t24", "t34"), -1),
    (("t12",), ("t23",), -1),
)


def _pentagon_evaluators():
    evs = []
    for a_names, b_names, sign in _PENTAGON_PAIRS:
        a = t4_embed(a_names[0])
        for name in a_names[1:]:
            a = a + t4_embed(name)
        b = t4_embed(b_names[0])
        for name in b_names[1:]:
            b = b + t4_embed(name)
        evs.append((_TreeEvaluator(a, b), sign))
    return evs


def _pentagon_defect_trees(trees):
    """Pentagon defects for a list of bracket trees, sharing caches."""
    evs = _pentagon_evaluators()
    out = []
    for tree in trees:
        total = T4Elem()
        for ev, sign in evs:
            val = ev(tree)
            total = total + (val if sign > 0 else -val)
        out.append(total)
    return out


def pentagon_defect(psi):
    """LHS minus RHS of the pentagon relation, evaluated in t_4."""
    if psi.is_zero():
        return T4Elem()
    words, coords = lyndon_coordinates(psi)
    trees = [standard_bracketing(w) for w in words]
    defects = _pentagon_defect_trees(trees)
    total = T4Elem()
    for c, d in zip(coords, defects):
        if c:
            total = total + d * c
    return total


def antisymmetry_defect(psi):
    """psi(x,y) + psi(y,x)."""
    x = LieElem.generator(2, 1, psi.field)
    y = LieElem.generator(2, 2, psi.field)
    return psi + lie_substitute(psi, {1: y, 2: x})


def hexagon_defect(psi):
    """psi(x,y) + psi(y,z) + psi(z,x) with z = -x-y."""
    x = LieElem.generator(2, 1, psi.field)
    y = LieElem.generator(2, 2, psi.field)
    z = -(x + y)
    return (psi + lie_substitute(psi, {1: y, 2: z})
            + lie_substitute(psi, {1: z, 2: x}))


def grt_check(psi):
    """(antisymmetry, hexagon, pentagon) verdicts for a homogeneous psi."""
    if psi.max_weight() > get_weight_cap():
        raise ValueError("weight above the configured cap")
    anti = antisymmetry_defect(psi).is_zero()
    hexa = hexagon_defect(psi).is_zero()
    pent = pentagon_defect(psi.map_field(QQ)).is_zero()
    return anti, hexa, pent


# ---------------------------------------------------------------------------
# the graded solver

class GrtSolution:
    """Solution space of the three relations in one weight."""

    __slots__ = ("weight", "lyndon_words", "coordinates", "elements")

    def __init__(self, weight, words, coordinates, elements):
        self.weight = weight
        self.lyndon_words = words
        self.coordinates = coordinates
        self.elements = elements

    @property
    def dimension(self):
        return len(self.elements)

    def to_json(self):
        from .exactla import format_scalar
        from .freealg import word_to_string
        from .lie import lie_terms_json
        return {
            "weight": self.weight,
            "dimension": self.dimension,
            "lyndon_words": [word_to_string(w) for w in self.lyndon_words],
            "coordinates": [[format_scalar(v) for v in vec] for vec in self.coordinates],
            "elements": [lie_terms_json(e) for e in self.elements],
        }


def grt_solve(weight):
    """Exact basis of the relation solutions in one weight, written over
    the Lyndon basis; when the depth-1 component is nonzero the basis
    element is normalized so ad_x^(m-1) y has coefficient 1."""
    if weight < 2:
        raise ValueError("the relations start in weight 2")
    if weight > get_weight_cap():
        raise ValueError("weight above the configured cap")
    words = lyndon_words(2, weight)
    basis = [_lyndon_expansion(w) for w in words]
    trees = [standard_bracketing(w) for w in words]

    rows = {}  # row key -> {col: value}; keys sorted at the end per block
    def add_block(block, keyed_vectors):
        for col, vec in enumerate(keyed_vectors):
            for key, v in vec.items():
                rows.setdefault((block, key), {})[col] = v

    add_block(0, [antisymmetry_defect(e).poly.terms for e in basis])
    add_block(1, [hexagon_defect(e).poly.terms for e in basis])
    add_block(2, [d.coordinates() for d in _pentagon_defect_trees(trees)])

    keys = sorted(rows, key=lambda k: (k[0], k[1]))
    entries = {}
    for r, key in enumerate(keys):
        for c, v in rows[key].items():
            entries[(r, c)] = v
    matrix = ExactMatrix(len(keys), len(words), QQ, entries)
    _, kernel = nullspace(matrix)

    lead = words.index((1,) * (weight - 1) + (2,)) if weight >= 2 else None
    coords, elements = [], []
    for vec in kernel:
        if lead is not None and vec[lead]:
            vec = tuple(v / vec[lead] for v in vec)
        elem = LieElem.zero(2)
        for c, e in zip(vec, basis):
            if c:
                elem = elem + e * c
        coords.append(vec)
        elements.append(elem)
    return GrtSolution(weight, words, coords, elements)

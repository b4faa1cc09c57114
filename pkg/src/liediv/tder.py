"""Tangential derivations of the free Lie algebra, their bracket, the
divergence family div / sdiv / qdiv, the Ihara bracket, the embedding nu
of the Grothendieck-Teichmuller algebra, and the Kashiwara-Vergne
membership tests in both presentations.

The duflo coefficient convention: condition two of the membership test
holds at weight m iff the weight-m divergence lies on the line spanned by
delta_m = tr((x+y)^m - x^m - y^m), and c_m is defined by
div(u)_m = c_m * delta_m.
"""

import json

from .exactla import ExactMatrix, cyclotomic_field, format_scalar, solve
from .freealg import NcPoly, component, derive_tangential, nc_mul
from .lie import LieElem, bracket, lie_substitute, lyndon_basis
from .traces import TraceElem, qtr_project

QQ = cyclotomic_field(1)


class TDer:
    """Tangential derivation x_i -> [x_i, a_i], stored as the tuple of
    certified Lie components (a_1, ..., a_n)."""

    __slots__ = ("components",)

    def __init__(self, components):
        comps = []
        for c in components:
            if not isinstance(c, LieElem):
                raise TypeError("components must be Lie elements")
            comps.append(c)
        if not comps:
            raise ValueError("need at least one component")
        n = comps[0].n
        if any(c.n != n for c in comps):
            raise ValueError("components over different alphabets")
        self.components = tuple(comps)

    @classmethod
    def zero(cls, n, field=None):
        return cls(tuple(LieElem.zero(n, field) for _ in range(n)))

    @property
    def n(self):
        return self.components[0].n

    @property
    def field(self):
        return self.components[0].field

    def __add__(self, other):
        return TDer(tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other):
        return TDer(tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self):
        return TDer(tuple(-a for a in self.components))

    def __mul__(self, scalar):
        return TDer(tuple(a * scalar for a in self.components))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, TDer) and self.components == other.components

    def __bool__(self):
        return any(self.components)

    def is_zero(self):
        return not any(self.components)

    def map_field(self, field):
        return TDer(tuple(c.map_field(field) for c in self.components))

    def __repr__(self):
        return f"TDer({', '.join(repr(c.poly) for c in self.components)})"


def tder_apply(u, a):
    """Apply the derivation; NcPoly in, NcPoly out (LieElem stays Lie)."""
    if isinstance(a, LieElem):
        return LieElem(tder_apply(u, a.poly), certified=True)
    return derive_tangential(a, [c.poly for c in u.components])


def tder_bracket(u, v):
    """[u, v] has components u(b_k) - v(a_k) + [a_k, b_k]."""
    if u.n != v.n:
        raise ValueError("alphabet size mismatch")
    comps = []
    for a_k, b_k in zip(u.components, v.components):
        comps.append(tder_apply(u, b_k) - tder_apply(v, a_k) + bracket(a_k, b_k))
    return TDer(tuple(comps))


def qdiv(u, l=1):
    """The order-l divergence sum_k qtr(x_k (d_k a_k)); l = 1 is the
    plain divergence and l = 2 the super-divergence."""
    comps = [c.poly for c in u.components]
    if l > 1:
        for comp in comps:
            bad = [m for m in comp.weights() if m % l]
            if bad:
                raise ValueError(f"component weight {bad[0]} not divisible by l={l}")
    out = TraceElem.zero(u.n, l)
    from .freealg import partial
    for k, comp in enumerate(comps, start=1):
        xk = NcPoly.generator(u.n, k, comp.field)
        term = nc_mul(xk, partial(comp, k))
        if term:
            out = out + qtr_project(term, l)
    return out


def div(u):
    return qdiv(u, 1)


def sdiv(u):
    return qdiv(u, 2)


# ---------------------------------------------------------------------------
# Ihara bracket and the map nu

def _one_slot(psi):
    """(0, psi): the derivation x -> 0, y -> [y, psi]."""
    return TDer((LieElem.zero(2, psi.field), psi))


def ihara(psi1, psi2):
    """{psi1, psi2} = (0,psi1)(psi2) - (0,psi2)(psi1) + [psi1, psi2]."""
    if psi1.n != 2 or psi2.n != 2:
        raise ValueError("the Ihara bracket lives on lie_2")
    return (tder_apply(_one_slot(psi1), psi2)
            - tder_apply(_one_slot(psi2), psi1)
            + bracket(psi1, psi2))


def nu(psi):
    """psi -> (psi(-x-y, x), psi(-x-y, y)), an injection into tder_2."""
    x = LieElem.generator(2, 1, psi.field)
    y = LieElem.generator(2, 2, psi.field)
    minus_xy = -(x + y)
    return TDer((lie_substitute(psi, {1: minus_xy, 2: x}),
                 lie_substitute(psi, {1: minus_xy, 2: y})))


# ---------------------------------------------------------------------------
# membership tests

def _span_coefficient(target, base):
    """Scalar c with target = c * base, or None if target is off the line.

    Exact rank-style membership: both arguments are trace elements over
    one quotient; zero target gives c = 0, zero base only admits zero."""
    if target.is_zero():
        return target.field.zero
    if base.is_zero():
        return None
    w = min(base.terms, key=lambda w: (len(w), w))
    tv = target.terms.get(w)
    if tv is None:
        return None
    c = tv / base.terms[w]
    return c if target == base * c else None


def duflo_line_element(m, n=2, field=None):
    """delta_m = tr((x+y)^m - x^m - y^m), the weight-m duflo direction."""
    field = field or QQ
    x = NcPoly.generator(n, 1, field)
    y = NcPoly.generator(n, 2, field)
    s = x + y
    power = NcPoly.unit(n, field)
    xp = NcPoly.unit(n, field)
    yp = NcPoly.unit(n, field)
    for _ in range(m):
        power = nc_mul(power, s)
        xp = nc_mul(xp, x)
        yp = nc_mul(yp, y)
    return qtr_project(power - xp - yp, 1)


class KrvReport:
    """Weight-by-weight verdicts for the two defining conditions, plus the
    recovered duflo coefficients where condition two holds."""

    __slots__ = ("max_weight", "bracket_ok", "divergence_ok", "duflo")

    def __init__(self, max_weight):
        self.max_weight = max_weight
        self.bracket_ok = {}
        self.divergence_ok = {}
        self.duflo = {}

    @property
    def passed(self):
        return all(self.bracket_ok.values()) and all(self.divergence_ok.values())

    def to_json(self):
        return {
            "max_weight": self.max_weight,
            "passed": self.passed,
            "weights": [
                {
                    "weight": m,
                    "bracket_condition": self.bracket_ok[m],
                    "divergence_condition": self.divergence_ok[m],
                    "duflo_coefficient": (format_scalar(self.duflo[m])
                                          if m in self.duflo else None),
                }
                for m in sorted(self.bracket_ok)
            ],
        }

    def __repr__(self):
        return json.dumps(self.to_json())


def krv_check(u, max_weight):
    """Membership test for the Kashiwara-Vergne algebra on tder_2.

    Condition one: [x, a] + [y, b] = 0, checked exactly per weight.
    Condition two: the weight-m divergence lies on the duflo line
    spanned by delta_m; the ratio c_m is reported."""
    if u.n != 2:
        raise ValueError("membership is defined on tder_2")
    a, b = u.components
    x = LieElem.generator(2, 1, u.field)
    y = LieElem.generator(2, 2, u.field)
    defect = bracket(x, a) + bracket(y, b)
    d = div(u)
    report = KrvReport(max_weight)
    for m in range(1, max_weight + 1):
        report.bracket_ok[m] = component(defect.poly, weight=m + 1).is_zero()
        dm = d.component(weight=m)
        c = _span_coefficient(dm, duflo_line_element(m, field=u.field))
        report.divergence_ok[m] = c is not None
        if c is not None:
            report.duflo[m] = c
    return report


# ---------------------------------------------------------------------------
# the one-slot presentation (variables z, y)

def krvprime_transform(u):
    """psi(z, y) = b(-y-z, y): the one-slot form of u = (a, b) after the
    change of variables z = -x-y."""
    _, b = u.components
    z = LieElem.generator(2, 1, u.field)  # slot 1 plays z
    y = LieElem.generator(2, 2, u.field)
    return lie_substitute(b, {1: -(y + z), 2: y})


class KrvPrimeReport:
    __slots__ = ("max_weight", "image_ok", "trace_ok", "duflo", "degree_one_coeff")

    def __init__(self, max_weight):
        self.max_weight = max_weight
        self.image_ok = {}
        self.trace_ok = {}
        self.duflo = {}
        self.degree_one_coeff = None

    @property
    def passed(self):
        return all(self.image_ok.values()) and all(self.trace_ok.values())

    def to_json(self):
        return {
            "max_weight": self.max_weight,
            "passed": self.passed,
            "degree_one_coefficient": (None if self.degree_one_coeff is None
                                       else format_scalar(self.degree_one_coeff)),
            "weights": [
                {
                    "weight": m,
                    "image_condition": self.image_ok[m],
                    "trace_condition": self.trace_ok.get(m),
                    "duflo_coefficient": (format_scalar(self.duflo[m])
                                          if m in self.duflo else None),
                }
                for m in sorted(self.image_ok)
            ],
        }

    def __repr__(self):
        return json.dumps(self.to_json())


def _ad_sum_image_contains(target, m, field):
    """Exact test [y, psi_m] in ad_{y+z}(lie^m), by spanning the image of
    a Lyndon basis and comparing ranks with and without the target."""
    basis = lyndon_basis(2, m, field)
    z = LieElem.generator(2, 1, field)
    y = LieElem.generator(2, 2, field)
    s = y + z
    images = [bracket(s, e).poly for e in basis]
    words = sorted({w for img in images for w in img.terms} | set(target.terms))
    index = {w: i for i, w in enumerate(words)}
    entries = {}
    for c, img in enumerate(images):
        for w, v in img.terms.items():
            entries[(index[w], c)] = v
    span = ExactMatrix(len(words), len(images), field, entries)
    if target.is_zero():
        return True
    rhs = [target.terms.get(w, field.zero) for w in words]
    return solve(span, rhs) is not None


def krvprime_check(psi, max_weight):
    """Membership test in the one-slot presentation over lie(z, y):
    [y, psi_m] must lie in the image of ad_{y+z}, the weight-1 part must
    be proportional to z + y, and tr(y d_y psi_m) must lie on the
    transformed duflo line for every m >= 2."""
    if psi.n != 2:
        raise ValueError("membership is defined on lie_2 in variables (z, y)")
    field = psi.field
    report = KrvPrimeReport(max_weight)
    y = LieElem.generator(2, 2, field)
    from .freealg import partial
    z_poly = NcPoly.generator(2, 1, field)
    y_poly = NcPoly.generator(2, 2, field)
    s_poly = z_poly + y_poly
    for m in range(1, max_weight + 1):
        psi_m = psi.component(weight=m)
        target = bracket(y, psi_m).poly
        report.image_ok[m] = _ad_sum_image_contains(target, m, field)
        if m == 1:
            # psi_1 = c (z + y); anything else fails the trace condition
            cz = psi_m.poly.terms.get((1,), field.zero)
            cy = psi_m.poly.terms.get((2,), field.zero)
            ok = cz == cy
            report.trace_ok[m] = ok
            if ok:
                report.degree_one_coeff = cz
            continue
        t_m = qtr_project(nc_mul(y_poly, partial(psi_m.poly, 2)), 1)
        # tr(-f(-z) + f(-y-z) + f(y)) at weight m, with f = sum c_m t^m
        zp = NcPoly.unit(2, field)
        sp = NcPoly.unit(2, field)
        yp = NcPoly.unit(2, field)
        for _ in range(m):
            zp = nc_mul(zp, z_poly)
            sp = nc_mul(sp, s_poly)
            yp = nc_mul(yp, y_poly)
        sign = field.one if m % 2 == 0 else -field.one
        line = qtr_project(zp * (-sign) + sp * sign + yp, 1)
        c = _span_coefficient(t_m, line)
        report.trace_ok[m] = c is not None
        if c is not None:
            report.duflo[m] = c
    return report

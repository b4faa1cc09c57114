"""Named verification suites driven by the CLI `verify` command.

Every check is a module-level function returning a small JSON-friendly
dict, so suites can be dispatched to a process pool; randomized checks
take an explicit seed and echo it for exact replay.
"""

import random
from concurrent.futures import ProcessPoolExecutor

from .depth2 import (chi13_multiplicity, d12_characters, d12_group_check,
                     depth2_coordinates, dims_row, f_seq, kernel_dim)
from .exactla import Rational, cyclotomic_field
from .freealg import NcPoly, all_words
from .lie import LieElem, ad_power, lyndon_basis, soule
from .grt import grt_check, grt_solve, t4_defining_relations, t4_embed, \
    t4_bracket, t4_full_center, t4_generator_names
from .tder import TDer, div, ihara, krv_check, krvprime_check, \
    krvprime_transform, nu, qdiv, tder_bracket
from .traces import canonical_classes, qtr_project, \
    quotient_dimension_bruteforce, trace_act

SCHEMA_VERSION = 1


def random_lie(rng, weights, field=None):
    """Random integer combination of Lyndon elements of the given weights."""
    out = LieElem.zero(2, field)
    for m in weights:
        for e in lyndon_basis(2, m, field):
            c = rng.randint(-3, 3)
            if c:
                out = out + e * Rational(c)
    return out


def random_tder(rng, weights, field=None):
    return TDer((random_lie(rng, weights, field), random_lie(rng, weights, field)))


# ---------------------------------------------------------------------------
# individual checks

def check_cocycle(l, trials, seed):
    """u.qdiv(v) - v.qdiv(u) = qdiv([u,v]) on seeded random pairs."""
    rng = random.Random(seed)
    weights = (l, 2 * l)
    for trial in range(trials):
        u = random_tder(rng, weights)
        v = random_tder(rng, weights)
        lhs = trace_act(u, qdiv(v, l)) - trace_act(v, qdiv(u, l))
        rhs = qdiv(tder_bracket(u, v), l)
        if lhs != rhs:
            return {"name": f"qdiv-cocycle-identity-l{l}", "pass": False,
                    "detail": f"failed at trial {trial} (seed {seed})"}
    return {"name": f"qdiv-cocycle-identity-l{l}", "pass": True,
            "detail": f"{trials} random pairs, component weights {weights}, seed {seed}"}


def check_divergence_contrast():
    """div vanishes on the bracket image while qdiv does not."""
    u = nu(ihara(soule(3), soule(5)))
    if not div(u).is_zero():
        return {"name": "divergence-kernel-contrast", "pass": False,
                "detail": "div(nu({s3,s5})) != 0"}
    for l in (2, 4, 8):
        if qdiv(u, l).is_zero():
            return {"name": "divergence-kernel-contrast", "pass": False,
                    "detail": f"qdiv at l={l} unexpectedly zero"}
    return {"name": "divergence-kernel-contrast", "pass": True,
            "detail": "div = 0, qdiv != 0 for l in (2, 4, 8)"}


def check_depth2_trace_formula():
    """qdiv(nu(psi)) and qtr(y d_y psi) agree on the depth-2 component."""
    from .freealg import component, nc_mul, partial
    psi = ihara(soule(3), soule(5))
    part = component(psi.poly, bidegree=(6, 2))
    y = NcPoly.generator(2, 2)
    for l in (1, 2, 4, 8):
        lhs = qdiv(nu(psi), l).component(bidegree=(6, 2))
        rhs = qtr_project(nc_mul(y, partial(part, 2)).map_field(cyclotomic_field(l)), l)
        if lhs != rhs:
            return {"name": "depth2-divergence-formula", "pass": False,
                    "detail": f"mismatch at l={l}"}
    return {"name": "depth2-divergence-formula", "pass": True,
            "detail": "checked for l in (1, 2, 4, 8) on the weight-8 bracket"}


def check_traces_oracle(l, max_weight=6):
    """Canonical classes realize the brute-force relation quotient."""
    field = cyclotomic_field(l)
    for m in range(1, max_weight + 1):
        if l > 1 and m % l:
            continue
        classes = canonical_classes(2, m, l)
        brute = quotient_dimension_bruteforce(2, m, l)
        if len(classes) != brute:
            return {"name": f"traces-oracle-l{l}", "pass": False,
                    "detail": f"weight {m}: {len(classes)} classes vs quotient dim {brute}"}
        for w in all_words(2, m):
            rel = (NcPoly.from_word(2, w).map_field(field)
                   - NcPoly.from_word(2, w[1:] + w[:1], field=field, coeff=field.q))
            if not qtr_project(rel, l).is_zero():
                return {"name": f"traces-oracle-l{l}", "pass": False,
                        "detail": f"relation at word {w} survives projection"}
    return {"name": f"traces-oracle-l{l}", "pass": True,
            "detail": f"weights <= {max_weight}: dimensions match, relations vanish"}


def check_t4_relations(seed):
    for name, val in t4_defining_relations():
        if not val.is_zero():
            return {"name": "t4-defining-relations", "pass": False, "detail": name}
    center = t4_full_center()
    for name in t4_generator_names():
        if not t4_bracket(center, t4_embed(name)).is_zero():
            return {"name": "t4-defining-relations", "pass": False,
                    "detail": f"center fails against {name}"}
    rng = random.Random(seed)
    gens = [t4_embed(name) for name in t4_generator_names()]
    for trial in range(10):
        elems = []
        for _ in range(3):
            e = gens[0] * Rational(0)
            for g in gens:
                e = e + g * Rational(rng.randint(-2, 2))
            a, b = rng.sample(gens, 2)
            e = e + t4_bracket(a, b) * Rational(rng.randint(-1, 1))
            elems.append(e)
        a, b, c = elems
        jac = (t4_bracket(a, t4_bracket(b, c)) + t4_bracket(b, t4_bracket(c, a))
               + t4_bracket(c, t4_bracket(a, b)))
        if not jac.is_zero():
            return {"name": "t4-defining-relations", "pass": False,
                    "detail": f"Jacobi failed at trial {trial} (seed {seed})"}
    return {"name": "t4-defining-relations", "pass": True,
            "detail": "15 relations, center, Jacobi on random triples"}


def check_grt_membership(m):
    psi = soule(m)
    anti, hexa, pent = grt_check(psi)
    ok = anti and hexa and pent
    return {"name": f"grt-relations-weight{m}", "pass": ok,
            "detail": f"antisymmetry={anti} hexagon={hexa} pentagon={pent}"}


def check_grt_solve_dimension(m, expected):
    dim = grt_solve(m).dimension
    return {"name": f"grt-solve-weight{m}", "pass": dim == expected,
            "detail": f"dimension {dim}, expected {expected}"}


def check_grt_closure():
    psi = ihara(soule(3), soule(5))
    anti, hexa, pent = grt_check(psi)
    ok = anti and hexa and pent
    return {"name": "grt-ihara-closure", "pass": ok,
            "detail": f"weight-8 bracket: antisymmetry={anti} hexagon={hexa} pentagon={pent}"}


def check_krv_members():
    x = LieElem.generator(2, 1)
    y = LieElem.generator(2, 2)
    t = TDer((y, x))
    rep = krv_check(t, 6)
    if not (rep.passed and all(not c for c in rep.duflo.values())):
        return {"name": "krv-membership", "pass": False, "detail": "t = (y, x)"}
    for m, elem in ((3, soule(3)), (5, soule(5)), (8, ihara(soule(3), soule(5)))):
        rep = krv_check(nu(elem), 8)
        if not rep.passed:
            return {"name": "krv-membership", "pass": False,
                    "detail": f"nu of the weight-{m} element fails"}
    bad = TDer((LieElem.zero(2), ad_power(1)))
    if krv_check(bad, 3).passed:
        return {"name": "krv-membership", "pass": False,
                "detail": "negative control (0, [x,y]) passed"}
    return {"name": "krv-membership", "pass": True,
            "detail": "(y,x), nu(s3), nu(s5), nu({s3,s5}) pass; control fails"}


def check_krvprime():
    z = LieElem.generator(2, 1)
    y = LieElem.generator(2, 2)
    psi = krvprime_transform(nu(soule(3)))
    if psi != soule(3):
        return {"name": "krv-one-slot", "pass": False,
                "detail": "transform of nu(s3) is not s3(z, y)"}
    if not krvprime_check(psi, 4).passed:
        return {"name": "krv-one-slot", "pass": False, "detail": "s3(z, y) fails"}
    rep = krvprime_check(z + y, 2)
    if not (rep.passed and rep.degree_one_coeff == 1):
        return {"name": "krv-one-slot", "pass": False, "detail": "z + y fails"}
    # [y, [z,y]] lies outside the ad_{y+z} image of the 1-dim lie^2
    if krvprime_check(ad_power(1), 3).image_ok[2]:
        return {"name": "krv-one-slot", "pass": False,
                "detail": "negative control [z,y] passed the image test"}
    return {"name": "krv-one-slot", "pass": True,
            "detail": "transform, membership and negative control agree"}


def check_dims_agreement(n, orders):
    for l in orders:
        row = dims_row(n, l)
        if row["agree"] is False:
            return {"name": f"depth2-dims-n{n}", "pass": False,
                    "detail": f"disagreement at l={l}: {row}"}
        if l == 1:
            expected = n // 6 if n % 2 == 0 else 0
            if row["kernel_dim"] != expected:
                return {"name": f"depth2-dims-n{n}", "pass": False,
                        "detail": f"kernel dim {row['kernel_dim']} != floor-formula {expected}"}
        elif row["kernel_dim"] not in (None, 0):
            return {"name": f"depth2-dims-n{n}", "pass": False,
                    "detail": f"nontrivial q-kernel at l={l}"}
    return {"name": f"depth2-dims-n{n}", "pass": True,
            "detail": f"orders {tuple(orders)} agree"}


def check_depth2_golden_line():
    dim, basis = kernel_dim(6, 1)
    if dim != 1:
        return {"name": "depth2-golden-line", "pass": False, "detail": f"dim {dim}"}
    v = basis[0]
    w = depth2_coordinates(ihara(soule(3), soule(5)).component(y_degree=2), 6)
    ok = w is not None and all(v[i] * w[j] == v[j] * w[i]
                               for i in range(len(v)) for j in range(len(v)))
    return {"name": "depth2-golden-line", "pass": bool(ok),
            "detail": "kernel line equals the bracket line at n = 6"}


def check_appendix_characters(n_max):
    if not d12_group_check():
        return {"name": "appendix-characters", "pass": False, "detail": "group order"}
    for n in range(n_max + 1):
        chi = d12_characters(n)  # internally cross-checks traces vs closed form
        mult = chi13_multiplicity(n)
        expected = n // 6 if n % 2 == 0 else 0
        if mult != expected:
            return {"name": "appendix-characters", "pass": False,
                    "detail": f"multiplicity {mult} at n={n}"}
    return {"name": "appendix-characters", "pass": True,
            "detail": f"matrix traces match closed forms up to n={n_max}"}


def check_f_recursion(n_max):
    f_seq(n_max)  # asserts the recursion and 6-periodicity internally
    return {"name": "appendix-f-recursion", "pass": True,
            "detail": f"f_n = f_(n-1) - f_(n-2), period 6, n <= {n_max}"}


# ---------------------------------------------------------------------------
# suite assembly

def _suite_cocycle(seed, max_weight):
    checks = [(check_cocycle, {"l": l, "trials": 50, "seed": seed + l}) for l in (1, 2, 3)]
    checks.append((check_divergence_contrast, {}))
    checks.append((check_depth2_trace_formula, {}))
    return checks


def _suite_traces_oracle(seed, max_weight):
    return [(check_traces_oracle, {"l": l, "max_weight": min(max_weight, 6)})
            for l in (1, 2, 3)]


def _suite_grt(seed, max_weight):
    checks = [(check_t4_relations, {"seed": seed})]
    checks += [(check_grt_membership, {"m": m}) for m in (3, 5)]
    # weight 8 is spanned by the bracket of the weight-3 and weight-5 elements
    expected = {2: 0, 3: 1, 4: 0, 5: 1, 6: 0, 7: 1, 8: 1, 9: 1}
    for m in sorted(expected):
        if m <= max_weight:
            checks.append((check_grt_solve_dimension, {"m": m, "expected": expected[m]}))
    if max_weight >= 8:
        checks.append((check_grt_closure, {}))
    return checks


def _suite_krv(seed, max_weight):
    return [(check_krv_members, {}), (check_krvprime, {})]


def _suite_depth2(seed, max_weight, n_max=30):
    orders = (1, 2, 3, 4, 6, 8, 12)
    checks = [(check_dims_agreement, {"n": n, "orders": orders})
              for n in range(1, n_max + 1)]
    checks.append((check_depth2_golden_line, {}))
    return checks


def _suite_appendix(seed, max_weight):
    return [(check_appendix_characters, {"n_max": 40}),
            (check_f_recursion, {"n_max": 100})]


SUITES = {
    "cocycle": _suite_cocycle,
    "traces-oracle": _suite_traces_oracle,
    "grt": _suite_grt,
    "krv": _suite_krv,
    "depth2": _suite_depth2,
    "appendix": _suite_appendix,
}


def _run_check(item):
    func, kwargs = item
    return func(**kwargs)


def run_suite(name, seed=0, max_weight=12, jobs=1):
    """Execute one named suite (or "all"); returns the JSON report."""
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise ValueError(f"unknown suite {name!r}; choose from "
                         f"{', '.join(['all'] + list(SUITES))}")
    items, owners = [], []
    for suite_name in names:
        for item in SUITES[suite_name](seed, max_weight):
            items.append(item)
            owners.append(suite_name)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_check, items))
    else:
        results = [_run_check(item) for item in items]
    checks = [{"suite": owner, **result} for owner, result in zip(owners, results)]
    return {
        "schema": SCHEMA_VERSION,
        "suite": name,
        "seed": seed,
        "max_weight": max_weight,
        "pass": all(c["pass"] for c in checks),
        "checks": checks,
    }

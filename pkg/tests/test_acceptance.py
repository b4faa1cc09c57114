"""Acceptance gate: one test per criterion, each printing a PASS line.

Shared heavyweight artifacts (the solver outputs of weights 7 and 9) are
computed once per session.  Stated runtime budgets are asserted.
"""

import random
import time

from liediv.depth2 import (chi13_multiplicity, d12_characters,
                           depth2_coordinates, f_seq, kernel_dim,
                           poly_space_dim)
from liediv.exactla import ExactMatrix, Rational, cyclotomic_field, rank_of
from liediv.freealg import NcPoly, all_words
from liediv.lie import LieElem, ad_power, bracket, lyndon_basis, soule
from liediv.grt import grt_check, grt_solve
from liediv.tder import TDer, div, ihara, krv_check, nu, qdiv, tder_bracket
from liediv.traces import (canonical_classes, qtr_project,
                           quotient_dimension_bruteforce, trace_act)

Q_ORDERS = (2, 3, 4, 6, 8, 12)


def _report(cid, elapsed, detail=""):
    print(f"ACCEPTANCE {cid}: PASS ({elapsed:.1f}s){'  ' + detail if detail else ''}")


def test_criterion_01_depth2_dimension_theorem():
    start = time.time()
    for n in range(1, 31):
        expected = n // 6 if n % 2 == 0 else 0
        assert kernel_dim(n, 1)[0] == expected, n
    elapsed = time.time() - start
    assert elapsed < 60
    _report(1, elapsed, "kernel dims equal floor(n/6) for even n <= 30")


def test_criterion_02_trivial_q_kernel():
    start = time.time()
    checked = 0
    for l in Q_ORDERS:
        for n in range(1, 31):
            if (n + 2) % l:
                continue
            assert kernel_dim(n, l)[0] == 0, (n, l)
            checked += 1
    elapsed = time.time() - start
    assert elapsed < 120
    _report(2, elapsed, f"{checked} valid (n, l) cells all trivial")


def test_criterion_03_three_way_agreement():
    start = time.time()
    for n in range(1, 31):
        k = kernel_dim(n, 1)[0]
        p = poly_space_dim(n, 1, "full")[0]
        m = chi13_multiplicity(n)
        assert k == p == m, (n, k, p, m)
    _report(3, time.time() - start, "kernel = polynomial = character count")


def test_criterion_04_appendix_reproduction():
    start = time.time()
    residue_table = {
        0: lambda n: (n + 1, 1, 1, 1, n + 1, 1),
        1: lambda n: (n + 1, 0, 1, -1, -(n + 1), 0),
        2: lambda n: (n + 1, 1, 0, 0, n + 1, 1),
        3: lambda n: (n + 1, 0, -1, 1, -(n + 1), 0),
        4: lambda n: (n + 1, 1, -1, -1, n + 1, 1),
        5: lambda n: (n + 1, 0, 0, 0, -(n + 1), 0),
    }
    for n in range(41):
        # d12_characters internally equates matrix traces with closed forms
        assert d12_characters(n) == residue_table[n % 6](n), n
    fs = f_seq(100)
    pattern = (1, 1, 0, -1, -1, 0)
    for n in range(101):
        assert fs[n] == pattern[n % 6]
        if n >= 2:
            assert fs[n] == fs[n - 1] - fs[n - 2]
    elapsed = time.time() - start
    assert elapsed < 10
    _report(4, elapsed, "characters n <= 40, recursion n <= 100")


def test_criterion_05_golden_bracket():
    start = time.time()
    golden = (bracket(ad_power(4), ad_power(2)) * Rational(5)
              + bracket(ad_power(5), ad_power(1)) * Rational(2))
    # the quoted formula normalizes both generators to leading coefficient
    # one; the integer-normalized weight-5 element scales it by -2
    monic5 = soule(5) * Rational(1, 2)
    d2_monic = ihara(soule(3), monic5).component(y_degree=2)
    assert d2_monic == golden or d2_monic == -golden
    d2_full = ihara(soule(3), soule(5)).component(y_degree=2)
    assert d2_full == golden * Rational(-2)
    # same line as the kernel basis at n = 6
    _, basis = kernel_dim(6, 1)
    v = basis[0]
    w = depth2_coordinates(d2_full, 6)
    assert all(v[i] * w[j] == v[j] * w[i] for i in range(3) for j in range(3))
    _report(5, time.time() - start,
            "5[ad^4, ad^2] + 2[ad^5, ad] up to sign (monic); kernel line matches")


def test_criterion_06_cocycle_identities():
    start = time.time()
    for l in (1, 2, 3):
        rng = random.Random(1000 + l)
        weights = (l, 2 * l)
        for trial in range(50):
            u = _random_tder(rng, weights)
            v = _random_tder(rng, weights)
            lhs = trace_act(u, qdiv(v, l)) - trace_act(v, qdiv(u, l))
            assert lhs == qdiv(tder_bracket(u, v), l), (l, trial)
    elapsed = time.time() - start
    assert elapsed < 60
    _report(6, elapsed, "div, sdiv, qdiv(l=3) on 50 seeded pairs each")


def _random_tder(rng, weights):
    def rnd():
        out = LieElem.zero(2)
        for m in weights:
            for e in lyndon_basis(2, m):
                c = rng.randint(-3, 3)
                if c:
                    out = out + e * Rational(c)
        return out
    return TDer((rnd(), rnd()))


def test_criterion_07_divergence_kernel_contrast():
    start = time.time()
    u = nu(ihara(soule(3), soule(5)))
    assert div(u).is_zero()
    for l in (2, 4, 8):
        assert not qdiv(u, l).is_zero(), l
    _report(7, time.time() - start, "div = 0 on the bracket image, qdiv != 0")


def test_criterion_08_grt_membership_and_discovery():
    start = time.time()
    assert grt_check(soule(3)) == (True, True, True)
    assert grt_check(soule(5)) == (True, True, True)
    dims = {m: grt_solve(m).dimension for m in (2, 3, 4, 5, 7)}
    assert dims == {2: 0, 3: 1, 4: 0, 5: 1, 7: 1}
    assert grt_solve(3).elements[0] == soule(3)
    assert grt_solve(5).elements[0] * Rational(2) == soule(5)
    elapsed = time.time() - start
    assert elapsed < 300
    _report(8, elapsed, "relations pass; solve dims (0,1,0,1,1) at (2,3,4,5,7)")


def test_criterion_09_krv_membership():
    start = time.time()
    x = LieElem.generator(2, 1)
    y = LieElem.generator(2, 2)
    rep = krv_check(TDer((y, x)), 8)
    assert rep.passed and all(c == 0 for c in rep.duflo.values())
    for elem in (soule(3), soule(5), ihara(soule(3), soule(5))):
        assert krv_check(nu(elem), 8).passed
    _report(9, time.time() - start, "(y,x), nu(s3), nu(s5), nu({s3,s5}) up to weight 8")


def test_criterion_10_weight12_relation_count(solver_element):
    start = time.time()
    s7 = solver_element(7)
    s9 = solver_element(9)
    parts = [ihara(soule(3), s9).component(y_degree=2),
             ihara(soule(5), s7).component(y_degree=2)]
    vectors = [depth2_coordinates(p, 10) for p in parts]
    assert all(v is not None and any(v) for v in vectors)
    entries = {}
    for r, vec in enumerate(vectors):
        for c, val in enumerate(vec):
            if val:
                entries[(r, c)] = val
    span_rank = rank_of(ExactMatrix(2, len(vectors[0]), cyclotomic_field(1), entries))
    assert span_rank == 1
    assert span_rank == (12 - 2) // 6
    relations = (12 - 4) // 4 - (12 - 2) // 6
    assert relations == 1 and 2 - relations == span_rank
    elapsed = time.time() - start
    assert elapsed < 1800
    _report(10, elapsed, "span of {s3,s9}, {s5,s7} depth-2 parts has rank 1")


def test_criterion_11_trace_oracle_equivalence():
    start = time.time()
    for l in (1, 2, 3):
        field = cyclotomic_field(l)
        for m in range(1, 7):
            if l > 1 and m % l:
                continue
            classes = canonical_classes(2, m, l)
            assert len(classes) == quotient_dimension_bruteforce(2, m, l), (l, m)
            for w in all_words(2, m):
                rel = (NcPoly.from_word(2, w).map_field(field)
                       - NcPoly.from_word(2, w[1:] + w[:1], field=field,
                                          coeff=field.q))
                assert qtr_project(rel, l).is_zero(), (l, w)
    _report(11, time.time() - start,
            "canonical forms realize the brute-force quotient, l in (1,2,3)")

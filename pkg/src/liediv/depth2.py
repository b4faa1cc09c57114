"""Depth-2 kernel spaces of the divergence family, the equivalent
polynomial functional equations, and the dihedral-group character count
that pins their dimensions.

Three independent routes to one number: kernel_dim assembles the trace
operator on the bracket basis [ad_x^k y, ad_x^(n-k) y] and computes an
exact nullity; poly_space_dim solves the functional equations
p(v,w) = -p(w,v), p(v,w) = -q p(v+w, (q-1)v-w) on degree-n coefficient
vectors; chi13_multiplicity (q = 1 only) decomposes the order-12 dihedral
action on those polynomials.  For even n at q = 1 all three give
floor(n/6); for q a nontrivial root of unity the kernel is trivial.
"""

import functools
import math

from .exactla import ExactMatrix, Rational, cyclotomic_field, nullspace, solve
from .freealg import NcPoly, nc_mul, partial, weight_cap
from .lie import ad_power, bracket
from .traces import qtr_project

QQ = cyclotomic_field(1)


# ---------------------------------------------------------------------------
# the bracket basis and the kernel of the trace operator

def depth2_basis(n, field=None):
    """e_k = [ad_x^k y, ad_x^(n-k) y] for 0 <= k < n-k; linearly
    independent, with e_(n-k) = -e_k and the middle element zero."""
    with weight_cap(n + 2):
        return [bracket(ad_power(k, field), ad_power(n - k, field))
                for k in range((n + 1) // 2)]


def kernel_matrix(n, l):
    """Matrix of psi -> qtr(y d_y psi) from the bracket basis into the
    bidegree-(n, 2) trace component, over Q(zeta_l)."""
    if n < 1:
        raise ValueError("x-degree must be positive")
    if l > 1 and (n + 2) % l:
        raise ValueError(f"order {l} does not divide the weight {n + 2}")
    field = cyclotomic_field(l)
    with weight_cap(n + 2):
        basis = depth2_basis(n)
        y = NcPoly.generator(2, 2)
        images = [qtr_project(nc_mul(y, partial(e.poly, 2)).map_field(field), l)
                  for e in basis]
        # classes outside the image support are zero rows of the operator
        classes = sorted({w for img in images for w in img.terms})
        index = {w: i for i, w in enumerate(classes)}
        entries = {}
        for c, img in enumerate(images):
            for w, v in img.terms.items():
                entries[(index[w], c)] = v
        return ExactMatrix(len(classes), len(basis), field, entries)


def kernel_dim(n, l=1):
    """(nullity, kernel basis in bracket-basis coordinates)."""
    _, basis = nullspace(kernel_matrix(n, l))
    return len(basis), basis


def depth2_coordinates(psi, n):
    """Coordinates of a bidegree-(n, 2) Lie element over the bracket
    basis, or None if it lies outside the span."""
    with weight_cap(n + 2):
        basis = depth2_basis(n, psi.field)
        words = sorted({w for e in basis for w in e.poly.terms} | set(psi.poly.terms))
        index = {w: i for i, w in enumerate(words)}
        entries = {}
        for c, e in enumerate(basis):
            for w, v in e.poly.terms.items():
                entries[(index[w], c)] = v
        matrix = ExactMatrix(len(words), len(basis), psi.field, entries)
        rhs = [psi.poly.terms.get(w, psi.field.zero) for w in words]
        return solve(matrix, rhs)


# ---------------------------------------------------------------------------
# homogeneous polynomial functional equations

def substitution_matrix(n, transform, field=None):
    """Matrix of p(v, w) -> p(av+bw, cv+dw) on degree-n coefficient
    vectors (a_0 ... a_n), ordered by descending v-degree."""
    field = field or QQ
    (a, b), (c, d) = transform
    a, b, c, d = (field.coerce(v) for v in (a, b, c, d))
    entries = {}
    for j in range(n + 1):
        # expand (av+bw)^(n-j) (cv+dw)^j
        acc = {0: field.one}  # v-degree -> coefficient, within weight n
        for _ in range(n - j):
            nxt = {}
            for t, v in acc.items():
                if a:
                    nxt[t + 1] = nxt.get(t + 1, field.zero) + v * a
                if b:
                    nxt[t] = nxt.get(t, field.zero) + v * b
            acc = nxt
        for _ in range(j):
            nxt = {}
            for t, v in acc.items():
                if c:
                    nxt[t + 1] = nxt.get(t + 1, field.zero) + v * c
                if d:
                    nxt[t] = nxt.get(t, field.zero) + v * d
            acc = nxt
        for t, v in acc.items():
            if v:
                entries[(n - t, j)] = v
    return ExactMatrix(n + 1, n + 1, field, entries)


POLY_SYSTEMS = ("full", "single-b", "single-composed")


def poly_space_dim(n, l=1, system="full"):
    """(dimension, basis) of the homogeneous degree-n solutions of the
    requested functional system over Q(zeta_l):

    - "full": p = -p(w, v) and p = -q p(v+w, (q-1)v-w);
    - "single-b": the second equation alone;
    - "single-composed": p = q p((q-1)v-w, v+w) alone.
    """
    if system not in POLY_SYSTEMS:
        raise ValueError(f"unknown system {system!r}")
    field = cyclotomic_field(l)
    q = field.q
    eye = {(i, i): field.one for i in range(n + 1)}
    swap = substitution_matrix(n, ((0, 1), (1, 0)), field)
    bmat = substitution_matrix(n, ((1, 1), (q - 1, -1)), field)
    cmat = substitution_matrix(n, ((q - 1, -1), (1, 1)), field)

    blocks = []
    if system == "full":
        blocks.append({k: v for k, v in _mat_sum(eye, swap.entries, field.one).items()})
        blocks.append(_mat_sum(eye, bmat.entries, q))
    elif system == "single-b":
        blocks.append(_mat_sum(eye, bmat.entries, q))
    else:
        blocks.append(_mat_sum(eye, cmat.entries, -q))
    entries = {}
    for bi, block in enumerate(blocks):
        for (r, c), v in block.items():
            entries[(bi * (n + 1) + r, c)] = v
    stacked = ExactMatrix(len(blocks) * (n + 1), n + 1, field, entries)
    _, basis = nullspace(stacked)
    return len(basis), basis


def _mat_sum(eye, other, scale):
    out = dict(eye)
    for k, v in other.items():
        nv = out.get(k, 0) + scale * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def poly_from_coeffs(vec, names=("v", "w")):
    parts = []
    n = len(vec) - 1
    for t, c in enumerate(vec):
        if not c:
            continue
        mono = []
        if n - t:
            mono.append(names[0] + (f"^{n - t}" if n - t > 1 else ""))
        if t:
            mono.append(names[1] + (f"^{t}" if t > 1 else ""))
        body = "*".join(mono) if mono else "1"
        parts.append(body if c == 1 and mono else f"{c}*{body}")
    return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# the dihedral group of order 12 on degree-n polynomials

D12_CLASSES = ("e", "s", "r", "r2", "r3", "rs")
D12_CLASS_SIZES = {"e": 1, "s": 3, "r": 2, "r2": 2, "r3": 1, "rs": 3}
# the sign character with chi(s) = chi(rs) = -1, chi(r) = 1
CHI13 = {"e": 1, "s": -1, "r": 1, "r2": 1, "r3": 1, "rs": -1}

_GEN_A = ((0, 1), (1, 0))            # swap (v, w)
_GEN_B = ((1, 1), (0, -1))           # (v, w) -> (v+w, -w)


def _mat2_mul(m1, m2):
    return tuple(tuple(sum(m1[i][k] * m2[k][j] for k in range(2)) for j in range(2))
                 for i in range(2))


def _mat2_inv(m):
    (a, b), (c, d) = m
    det = a * d - b * c
    if det not in (1, -1):
        raise ValueError("group matrices are unimodular")
    return ((d // det, -b // det), (-c // det, a // det))


@functools.cache
def _d12_word(g):
    r = _mat2_mul(_GEN_B, _GEN_A)
    table = {
        "e": ((1, 0), (0, 1)),
        "s": _GEN_A,
        "r": r,
        "r2": _mat2_mul(r, r),
        "r3": _mat2_mul(_mat2_mul(r, r), r),
        "rs": _mat2_mul(r, _GEN_A),
    }
    return table[g]


def d12_matrix_action(n, g):
    """Representing matrix of g on degree-n polynomials computed directly
    from the group action p -> p(g^{-1}(v, w))."""
    return substitution_matrix(n, _mat2_inv(_d12_word(g)))


def _binom(a, b):
    if b < 0 or b > a or a < 0:
        return 0
    return math.comb(a, b)


def d12_matrix(n, g):
    """Closed-form representing matrix; always equal to the matrix of the
    polynomial action (the action route is the cross-check)."""
    field = QQ
    if g == "e":
        entries = {(i, i): field.one for i in range(n + 1)}
    elif g == "s":
        entries = {(i, n - i): field.one for i in range(n + 1)}
    elif g == "r3":
        sign = field.one if n % 2 == 0 else -field.one
        entries = {(i, i): sign for i in range(n + 1)}
    elif g == "rs":
        entries = {}
        for i in range(1, n + 2):
            for j in range(1, n + 2):
                v = (-1) ** (j - 1) * _binom(n - j + 1, n - i + 1)
                if v:
                    entries[(i - 1, j - 1)] = Rational(v)
    elif g == "r":
        entries = {}
        for i in range(1, n + 2):
            for j in range(1, n + 2):
                v = (-1) ** (n + 1 - j) * _binom(j - 1, n + 1 - i)
                if v:
                    entries[(i - 1, j - 1)] = Rational(v)
    elif g == "r2":
        entries = {}
        for i in range(1, n + 2):
            for j in range(1, n + 2):
                v = (-1) ** (n + 1 - j) * _binom(n - j + 1, i - 1)
                if v:
                    entries[(i - 1, j - 1)] = Rational(v)
    else:
        raise ValueError(f"unknown class representative {g!r}")
    return ExactMatrix(n + 1, n + 1, field, entries)


def f_seq(n_max):
    """f_n = sum_k (-1)^k C(n-k, k), by direct binomial sums; satisfies
    f_n = f_(n-1) - f_(n-2) and is 6-periodic (1, 1, 0, -1, -1, 0)."""
    out = []
    for n in range(n_max + 1):
        out.append(sum((-1) ** k * _binom(n - k, k) for k in range(n // 2 + 1)))
    pattern = (1, 1, 0, -1, -1, 0)
    for n, v in enumerate(out):
        assert v == pattern[n % 6]
        if n >= 2:
            assert v == out[n - 1] - out[n - 2]
    return out


@functools.cache
def _closed_form_character(n):
    f_n = (1, 1, 0, -1, -1, 0)[n % 6]
    chi_s = 1 if n % 2 == 0 else 0
    chi_r3 = n + 1 if n % 2 == 0 else -(n + 1)
    return (n + 1, chi_s, f_n, (-1) ** n * f_n, chi_r3, chi_s)


def d12_characters(n):
    """Character of the degree-n representation on (e, s, r, r2, r3, rs),
    computed both from matrix traces and from the closed form."""
    traced = []
    for g in D12_CLASSES:
        m = d12_matrix(n, g)
        assert m.entries == d12_matrix_action(n, g).entries, (n, g)
        tr = sum((m.entries.get((i, i), QQ.zero) for i in range(n + 1)), QQ.zero)
        traced.append(int(tr))
    traced = tuple(traced)
    assert traced == _closed_form_character(n), n
    return traced


def chi13_multiplicity(n):
    """Multiplicity of the sign character chi13 in the degree-n action:
    floor(n/6) for even n, zero for odd n."""
    chi = d12_characters(n)
    total = sum(D12_CLASS_SIZES[g] * chi[i] * CHI13[g]
                for i, g in enumerate(D12_CLASSES))
    assert total % 12 == 0
    return total // 12


def d12_group_check():
    """Enumerate the matrix group generated by the two substitutions and
    verify the dihedral presentation of order 12."""
    seen = {((1, 0), (0, 1))}
    frontier = [((1, 0), (0, 1))]
    while frontier:
        nxt = []
        for m in frontier:
            for g in (_GEN_A, _GEN_B):
                p = _mat2_mul(m, g)
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
        frontier = nxt
    r = _d12_word("r")
    a = _GEN_A
    ok = len(seen) == 12
    ok = ok and _mat2_mul(a, a) == ((1, 0), (0, 1))
    ok = ok and _mat2_mul(_GEN_B, _GEN_B) == ((1, 0), (0, 1))
    r6 = ((1, 0), (0, 1))
    for _ in range(6):
        r6 = _mat2_mul(r6, r)
    ok = ok and r6 == ((1, 0), (0, 1))
    ok = ok and _d12_word("r3") == ((-1, 0), (0, -1))
    # s r s^-1 = r^-1
    ok = ok and _mat2_mul(_mat2_mul(a, r), a) == _mat2_inv(r)
    return ok


# ---------------------------------------------------------------------------
# the (n, l) dimension table

def dims_row(n, l):
    """One table row: kernel, polynomial-system and character dimensions
    with the agreement flag; divisibility-invalid cells carry None."""
    weight = n + 2
    valid = l == 1 or weight % l == 0
    row = {"n": n, "l": l, "weight": weight}
    row["poly_dim"] = poly_space_dim(n, l, "full")[0]
    if valid:
        row["kernel_dim"] = kernel_dim(n, l)[0]
    else:
        row["kernel_dim"] = None
    row["chi13_multiplicity"] = chi13_multiplicity(n) if l == 1 else None
    if not valid:
        row["agree"] = None
    elif l == 1:
        row["agree"] = row["kernel_dim"] == row["poly_dim"] == row["chi13_multiplicity"]
    else:
        row["agree"] = row["kernel_dim"] == row["poly_dim"]
    return row

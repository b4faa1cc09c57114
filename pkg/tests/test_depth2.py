"""Depth-2 kernels, polynomial functional equations, and the dihedral
character count."""

import pytest

from liediv.exactla import ExactMatrix, Rational, cyclotomic_field, nullspace
from liediv.depth2 import (CHI13, D12_CLASS_SIZES, D12_CLASSES,
                           chi13_multiplicity, d12_characters, d12_group_check,
                           d12_matrix, d12_matrix_action, depth2_basis,
                           depth2_coordinates, dims_row, f_seq, kernel_dim,
                           kernel_matrix, poly_space_dim, substitution_matrix)
from liediv.lie import soule
from liediv.tder import ihara


def test_depth2_basis_rank():
    for n in (4, 5, 6, 9):
        basis = depth2_basis(n)
        assert len(basis) == (n // 2 if n % 2 == 0 else (n + 1) // 2)
        words = sorted({w for e in basis for w in e.poly.terms})
        index = {w: i for i, w in enumerate(words)}
        entries = {}
        for c, e in enumerate(basis):
            for w, v in e.poly.terms.items():
                entries[(index[w], c)] = v
        m = ExactMatrix(len(words), len(basis), cyclotomic_field(1), entries)
        rank, kernel = nullspace(m)
        assert rank == len(basis) and not kernel


def test_kernel_dim_examples():
    assert kernel_dim(5, 1)[0] == 0
    assert kernel_dim(6, 1)[0] == 1
    assert kernel_dim(12, 1)[0] == 2
    for l in (2, 4, 8):
        assert kernel_dim(6, l)[0] == 0
    for l in (2, 3, 4, 6, 12):
        assert kernel_dim(10, l)[0] == 0


def test_kernel_matrix_nullity_example():
    rank, basis = nullspace(kernel_matrix(6, 1))
    assert len(basis) == 1


def test_kernel_divisibility_precondition():
    with pytest.raises(ValueError):
        kernel_dim(5, 3)  # weight 7 not divisible by 3


def test_kernel_line_matches_ihara_bracket():
    _, basis = kernel_dim(6, 1)
    part = ihara(soule(3), soule(5)).component(y_degree=2)
    coords = depth2_coordinates(part, 6)
    v, w = basis[0], coords
    assert w is not None
    assert all(v[i] * w[j] == v[j] * w[i] for i in range(3) for j in range(3))


def test_poly_space_full_system_matches_floor_formula():
    for n in range(0, 31):
        expected = n // 6 if n % 2 == 0 else 0
        assert poly_space_dim(n, 1, "full")[0] == expected, n


def test_poly_space_single_composed_superdivergence():
    dim, basis = poly_space_dim(2, 2, "single-composed")
    assert dim == 1
    assert basis[0] == (Rational(1), Rational(3), Rational(1))  # v^2 + 3vw + w^2
    for n in (4, 8, 12, 16):
        assert poly_space_dim(n, 2, "single-composed")[0] == 0, n
    for n in (6, 10):
        assert poly_space_dim(n, 2, "single-composed")[0] == 1, n


def test_poly_space_trivial_for_higher_orders():
    for l in (3, 4, 6):
        for n in range(0, 25):
            assert poly_space_dim(n, l, "full")[0] == 0, (n, l)


def test_full_solutions_are_antisymmetric_and_b_invariant():
    swap = lambda n: substitution_matrix(n, ((0, 1), (1, 0)))
    bmat = lambda n: substitution_matrix(n, ((1, 1), (0, -1)))
    for n in (6, 12, 18):
        _, basis = poly_space_dim(n, 1, "full")
        assert basis
        for vec in basis:
            assert swap(n).matvec(vec) == tuple(-v for v in vec)
            assert bmat(n).matvec(vec) == tuple(-v for v in vec)


def test_d12_matrix_examples():
    m = d12_matrix(1, "rs")
    assert m.entries == {(0, 0): Rational(1), (1, 0): Rational(1),
                         (1, 1): Rational(-1)}
    for n in (2, 3, 4, 7):
        r3 = d12_matrix(n, "r3")
        sign = Rational(1) if n % 2 == 0 else Rational(-1)
        assert r3.entries == {(i, i): sign for i in range(n + 1)}


def test_d12_closed_forms_match_action():
    for n in range(0, 13):
        for g in D12_CLASSES:
            assert d12_matrix(n, g).entries == d12_matrix_action(n, g).entries


def test_d12_group_law():
    # rho(r) rho(s) = rho(rs) in every degree
    for n in (1, 2, 5):
        r = d12_matrix(n, "r")
        s = d12_matrix(n, "s")
        rs = d12_matrix(n, "rs")
        prod = {}
        for (i, k), v in r.entries.items():
            for (k2, j), w in s.entries.items():
                if k == k2:
                    prod[(i, j)] = prod.get((i, j), Rational(0)) + v * w
        prod = {k: v for k, v in prod.items() if v}
        assert prod == rs.entries


def test_d12_group_check():
    assert d12_group_check()


def test_f_sequence():
    fs = f_seq(100)
    assert fs[:7] == [1, 1, 0, -1, -1, 0, 1]
    for n in range(2, 101):
        assert fs[n] == fs[n - 1] - fs[n - 2]


def test_characters():
    assert d12_characters(6) == (7, 1, 1, 1, 7, 1)
    chi8 = d12_characters(8)
    assert chi8[2] == 0 and chi8[3] == 0
    fs = f_seq(40)
    for n in range(41):
        chi = d12_characters(n)
        assert chi[0] == n + 1
        assert chi[2] == fs[n]
        assert chi[3] == (-1) ** n * fs[n]


def test_chi13_multiplicities():
    assert chi13_multiplicity(6) == 1
    assert chi13_multiplicity(8) == 1
    assert chi13_multiplicity(12) == 2
    for n in range(1, 31, 2):
        assert chi13_multiplicity(n) == 0
    # the sign character columns really are orthogonal to the trivial one
    total = sum(D12_CLASS_SIZES[g] * CHI13[g] for g in D12_CLASSES)
    assert total == 0


def test_three_way_agreement_small():
    for n in range(1, 15):
        row = dims_row(n, 1)
        assert row["agree"] is True
        assert row["kernel_dim"] == row["poly_dim"] == row["chi13_multiplicity"]


def test_dims_row_invalid_cell():
    row = dims_row(5, 3)
    assert row["kernel_dim"] is None and row["agree"] is None
    assert row["poly_dim"] == 0

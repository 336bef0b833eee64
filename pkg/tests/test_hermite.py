from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hermite2d.exact import I, ExactScalar
from hermite2d.hermite import (
    TEST_G_SET,
    GMatrix,
    complex_hermite,
    complex_hermite_operator,
    complex_to_real_expand,
    deformation_matrix,
    deformed_rodrigues,
    deformed_sum,
    deformed_via_matrix,
    gf_table,
    hermite_at_zero,
    real_basis_matrix,
    real_hermite,
    real_hermite_rodrigues,
    sandwich_route,
)
from hermite2d.polyring import SparsePoly

from oracle import deformed_bruteforce, hermite_recurrence

P = SparsePoly
z1, z2, x = P.var("z1"), P.var("z2"), P.var("x")
IDENT = GMatrix.identity()
SWAP = GMatrix.swap()
UPPER = GMatrix(1, 1, 0, 1)


def as_oracle(p: SparsePoly) -> dict:
    out = {}
    for e, c in p.items():
        re, im, rr, ri = c.components()
        assert rr == ri == 0
        out[(e[0], e[1])] = (re, im)
    return out


def g_tuple(g: GMatrix):
    return tuple((c.components()[0], c.components()[1]) for c in (g.g11, g.g12, g.g21, g.g22))


def test_gmatrix_parse_and_render():
    g = GMatrix.parse("1+i, 1/2-i; 1/2+i, 1-i")
    assert str(g) == "1+i,1/2-i;1/2+i,1-i"
    assert g.is_hermitian_pair()
    assert not UPPER.is_hermitian_pair()
    assert g.det() == ExactScalar(Fraction(3, 4))
    assert g @ g.inverse() == IDENT
    with pytest.raises(ValueError):
        GMatrix.parse("1,2,3")


def test_g_set_shape():
    names = [name for name, _ in TEST_G_SET]
    assert names == ["identity", "swap", "diagonal", "upper", "hermitian-pair"]
    assert sum(g.is_hermitian_pair() for _, g in TEST_G_SET) >= 2


def test_real_hermite_examples():
    assert real_hermite(0) == P.constant(1)
    assert real_hermite(2) == x ** 2 * 4 - 2
    assert real_hermite(3) == x ** 3 * 8 - x * 12
    assert real_hermite_rodrigues(1) == x * 2
    assert real_hermite_rodrigues(2) == x ** 2 * 4 - 2
    assert real_hermite_rodrigues(5) == real_hermite(5)


def test_complex_hermite_examples():
    assert complex_hermite(0, 4) == z2 ** 4
    assert complex_hermite(1, 1) == z1 * z2 - 1
    assert complex_hermite(2, 1) == z1 ** 2 * z2 - z1 * 2
    assert complex_hermite_operator(0, 0) == P.constant(1)
    assert complex_hermite_operator(1, 1) == z1 * z2 - 1
    assert complex_hermite_operator(3, 2) == complex_hermite(3, 2)


@pytest.mark.parametrize("m", range(7))
def test_complex_hermite_matches_recurrence_oracle(m):
    for n in range(7):
        assert as_oracle(complex_hermite(m, n)) == hermite_recurrence(m, n)


def test_deformed_examples():
    assert deformed_rodrigues(IDENT, 1, 1) == z1 * z2 - 1
    assert deformed_rodrigues(SWAP, 2, 1) == z1 * z2 ** 2 - z2 * 2
    assert deformed_sum(GMatrix.diag(1, 2), 1, 1) == z1 * z2 * 2 - 2
    assert deformed_sum(GMatrix(I, 0, 0, 1), 1, 1) == (z1 * z2 - 1).scale(I)
    assert sandwich_route(SWAP, 1, 0) == z2
    assert sandwich_route(GMatrix.diag(2, 3), 1, 1) == z1 * z2 * 6 - 6


@pytest.mark.parametrize("name, g", TEST_G_SET)
def test_deformed_sum_matches_bruteforce_oracle(name, g):
    gt = g_tuple(g)
    for m in range(5):
        for n in range(5):
            assert as_oracle(deformed_sum(g, m, n)) == deformed_bruteforce(gt, m, n), (name, m, n)


@pytest.mark.parametrize("name, g", TEST_G_SET)
def test_routes_agree(name, g):
    table = gf_table(g, 8)
    for m in range(5):
        for n in range(5):
            ref = deformed_sum(g, m, n)
            assert deformed_rodrigues(g, m, n) == ref
            assert sandwich_route(g, m, n) == ref
            assert deformed_via_matrix(g, m, m + n) == ref
            assert table[(m, n)] == ref


def test_identity_deformation_is_trivial():
    for m in range(7):
        for n in range(7):
            assert deformed_rodrigues(IDENT, m, n) == complex_hermite(m, n)
            assert sandwich_route(IDENT, m, n) == complex_hermite(m, n)


def test_deformation_matrix_examples():
    for L in range(4):
        M = deformation_matrix(IDENT, L)
        assert all(M[r, k] == (1 if r == k else 0) for r in range(L + 1) for k in range(L + 1))
    S = deformation_matrix(SWAP, 1)
    assert [[S[r, k] for k in range(2)] for r in range(2)] == [[0, 1], [1, 0]]
    U = deformation_matrix(UPPER, 1)
    assert [[U[r, k] for k in range(2)] for r in range(2)] == [[1, 0], [1, 1]]
    assert deformed_via_matrix(IDENT, 1, 2) == complex_hermite(1, 1)
    assert deformed_via_matrix(SWAP, 0, 1) == complex_hermite(1, 0)
    assert deformed_via_matrix(UPPER, 1, 2) == deformed_sum(UPPER, 1, 1)
    with pytest.raises(IndexError):
        deformed_via_matrix(IDENT, 3, 2)


def test_gf_table_examples():
    herm = GMatrix(1, I, -I, 1)
    for g in (IDENT, herm, UPPER):
        assert gf_table(g, 0)[(0, 0)] == P.constant(1)
    assert all(p == complex_hermite(*mn) for mn, p in gf_table(IDENT, 4).items())
    assert all(p == deformed_sum(herm, *mn) for mn, p in gf_table(herm, 3).items())


def test_real_basis_examples():
    M0 = real_basis_matrix(0)
    assert M0[0, 0] == 1
    M1 = real_basis_matrix(1)
    assert M1.column(0) == [ExactScalar(0, Fraction(-1, 2)), ExactScalar(Fraction(1, 2))]
    assert M1.column(1) == [ExactScalar(0, Fraction(1, 2)), ExactScalar(Fraction(1, 2))]
    assert real_basis_matrix(2)[0, 0] == ExactScalar(Fraction(-1, 4))


def test_complex_to_real_examples():
    assert complex_to_real_expand(0, 0) == [1]
    assert complex_to_real_expand(1, 0) == [ExactScalar(0, Fraction(1, 2)), ExactScalar(Fraction(1, 2))]
    assert complex_to_real_expand(1, 1) == real_basis_matrix(2).column(1)


@pytest.mark.parametrize("L", range(7))
def test_real_basis_closed_form_matches_solve(L):
    M = real_basis_matrix(L)
    for m in range(L + 1):
        assert complex_to_real_expand(m, L - m) == M.column(m)


def test_hermite_at_zero_examples():
    assert hermite_at_zero(2, 2) == 2
    assert hermite_at_zero(3, 2) == 0
    assert hermite_at_zero(1, 1) == -1


@given(st.integers(0, 8), st.integers(0, 8))
def test_hermite_at_zero_closed_form(m, n):
    expected = (-1) ** n * factorial(n) if m == n else 0
    assert hermite_at_zero(m, n) == expected


@given(st.integers(0, 6), st.integers(0, 6))
def test_swap_identity(m, n):
    assert deformed_sum(SWAP, m, n) == complex_hermite(n, m)
    assert complex_hermite(m, n).swap_variables("z1", "z2") == complex_hermite(n, m)


@given(st.integers(0, 10))
def test_real_hermite_derivative_relation(n):
    # H_n' = 2n H_{n-1}
    if n:
        assert real_hermite(n).diff("x") == real_hermite(n - 1).scale(2 * n)


def test_negative_indices_rejected():
    with pytest.raises(ValueError):
        complex_hermite(-1, 0)
    with pytest.raises(ValueError):
        real_hermite(-2)
    with pytest.raises(ValueError):
        deformation_matrix(IDENT, -1)

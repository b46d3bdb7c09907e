import random
from fractions import Fraction

import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from fkalg.linalg import (Echelon, Q, RatMatrix, Subspace, dense_rank_mod_p, inverse, kernel, random_matrix,
                          rank, rank_mod_p, rref, solve)

small = st.integers(-4, 4)


@st.composite
def matrices(draw, max_rows=6, max_cols=6):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = [[Q(draw(small)) for _ in range(c)] for _ in range(r)]
    return RatMatrix.from_rows(rows, c)


def to_sympy(m: RatMatrix) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(int(a.numerator), int(a.denominator)) for a in row] for row in m.to_rows()])


def test_rational_coercion():
    assert Q("6/4") == mpq(3, 2)
    assert Q(Fraction(-2, 6)) == mpq(-1, 3)
    assert Q("-3/9").denominator == 3
    with pytest.raises(TypeError):
        Q(0.5)
    with pytest.raises(ValueError):
        Q("")


@given(st.integers(-10**30, 10**30), st.integers(1, 10**30))
def test_rationals_are_lowest_terms(p, q):
    a = Q(f"{p}/{q}")
    assert a.denominator > 0
    assert sympy.gcd(int(a.numerator), int(a.denominator)) == 1
    assert a * q == p


def test_stored_entries_nonzero():
    m = RatMatrix.from_rows([[0, 1], [0, 0]])
    assert all(a != 0 for row in m.data.values() for a in row.values())
    assert (m - m).is_zero() and not (m - m).data


@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == to_sympy(m).rank()


@given(matrices())
def test_kernel_vectors_are_killed(m):
    ker = kernel(m)
    assert len(ker) + rank(m) == m.cols
    for v in ker:
        assert not m.apply(v)


@given(matrices())
def test_rref_is_idempotent_and_matches_sympy(m):
    R, piv = rref(m)
    R2, piv2 = rref(R)
    assert R == R2 and piv == piv2
    S, spiv = to_sympy(m).rref()
    assert list(spiv) == piv


@given(matrices(), st.lists(small, min_size=6, max_size=6))
def test_solve_is_consistent_with_a_known_rhs(m, x):
    x = {i: Q(a) for i, a in enumerate(x[:m.cols]) if a}
    b = m.apply(x)
    sol = solve(m, b)
    assert sol.consistent
    assert m.apply(sol.particular) == b


def test_solve_detects_inconsistency():
    m = RatMatrix.from_rows([[1, 1], [2, 2]])
    assert not solve(m, [1, 3]).consistent


@given(st.integers(0, 10**6))
def test_inverse_of_random_matrix(seed):
    rng = random.Random(seed)
    m = random_matrix(4, 4, rng, density=0.8)
    if rank(m) < 4:
        with pytest.raises(ArithmeticError):
            inverse(m)
        return
    assert m * inverse(m) == RatMatrix.identity(4)


@given(matrices())
def test_modular_rank_never_exceeds_rational_rank(m):
    rows = [m.row(i) for i in range(m.rows)]
    assert rank_mod_p(rows) <= rank(m)
    r, sel = dense_rank_mod_p(rows, m.cols)
    assert r == len(sel)
    # rows independent mod p are independent over Q
    sub = RatMatrix.from_sparse_rows([rows[i] for i in sel], m.cols)
    assert rank(sub) == r


def test_modular_rank_can_drop_at_the_prime():
    p = 7
    m = [{0: Q(1), 1: Q(0)}, {0: Q(0), 1: Q(p)}]
    assert rank_mod_p(m, p) == 1
    assert rank(RatMatrix.from_sparse_rows(m, 2)) == 2


@given(st.lists(st.lists(small, min_size=5, max_size=5), max_size=8))
def test_subspace_and_echelon_agree(rows):
    vecs = [{i: Q(a) for i, a in enumerate(r) if a} for r in rows]
    S, E = Subspace(5), Echelon(5)
    for v in vecs:
        S.add(v)
        E.add(v)
    m = RatMatrix.from_sparse_rows(vecs, 5) if vecs else RatMatrix.zero(0, 5)
    assert len(S) == len(E) == (rank(m) if vecs else 0)
    for v in vecs:
        assert S.contains(v) and E.contains(v)
        c = S.coordinates(v)
        back: dict = {}
        for k, a in c.items():
            for j, b in S.rows[k].items():
                back[j] = back.get(j, 0) + a * b
        assert {j: a for j, a in back.items() if a} == v


@given(st.lists(st.lists(small, min_size=5, max_size=5), max_size=8))
def test_full_reduction_keeps_the_span(rows):
    vecs = [{i: Q(a) for i, a in enumerate(r) if a} for r in rows]
    E = Echelon(5)
    for v in vecs:
        E.add(v)
    before = [dict(r) for r in E.basis()]
    E.reduce_fully()
    after = E.basis()
    piv = E.pivots()
    for p, r in zip(piv, after):
        assert r[p] == 1 and not any(c in r for c in piv if c != p)
    F = Echelon(5)
    for r in after:
        F.add(r)
    assert len(F) == len(after) and all(F.contains(v) for v in before + vecs)

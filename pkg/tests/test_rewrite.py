import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fkalg.free_algebra import NCPolynomial, named_alphabet, parse_poly, present_D, present_E
from fkalg.linalg import RatMatrix, rank
from fkalg.rewrite import (CompletionError, FiniteAlgebra, InfiniteBasisError, certify, complete, enumerate_basis,
                           hilbert_profile)


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def qint(k):
    return [1] * k


def fk_hilbert(n):
    """Hilbert series of E_3 and E_4: [2]^2[3] and [2]^2[3]^2[4]^2."""
    factors = {3: [2, 2, 3], 4: [2, 2, 3, 3, 4, 4]}[n]
    out = [1]
    for k in factors:
        out = poly_mul(out, qint(k))
    return tuple(out)


def degree_dims_by_linear_algebra(rels, nletters, top):
    """dim of (free algebra / ideal) in each degree, for homogeneous quadratic relations."""
    dims = []
    for d in range(top + 1):
        words = list(itertools.product(range(nletters), repeat=d))
        index = {w: k for k, w in enumerate(words)}
        rows = []
        for i in range(d - 1):
            for u in itertools.product(range(nletters), repeat=i):
                for v in itertools.product(range(nletters), repeat=d - 2 - i):
                    for r in rels:
                        p = NCPolynomial.word(u) * r * NCPolynomial.word(v)
                        rows.append({index[w]: c for w, c in p.terms.items()})
        r = rank(RatMatrix.from_sparse_rows(rows, len(words))) if rows else 0
        dims.append(len(words) - r)
    return tuple(dims)


@pytest.fixture(scope="module")
def d3():
    rs = complete(present_D(3, 1, -1), 7)
    return rs, enumerate_basis(rs, "D3")


@pytest.fixture(scope="module")
def d4():
    rs = complete(present_D(4, 1, 1), 13)
    return rs, enumerate_basis(rs, "D4")


def test_E3_profile_against_linear_algebra():
    pres = present_E(3)
    A = enumerate_basis(complete(pres, 7))
    assert hilbert_profile(A) == fk_hilbert(3)
    assert degree_dims_by_linear_algebra(pres.relations, 3, 5) == fk_hilbert(3) + (0,)


def test_E4_profile():
    A = enumerate_basis(complete(present_E(4), 13))
    assert A.dim == 576
    assert hilbert_profile(A) == fk_hilbert(4)


def test_nil_coxeter_of_S3_and_S4():
    alph = named_alphabet(["a", "b"])
    rels = [parse_poly(r, alph) for r in ("a*a", "b*b", "a*b*a - b*a*b")]
    A = enumerate_basis(complete(rels, 8, alphabet=alph))
    assert hilbert_profile(A) == (1, 2, 2, 1)
    alph = named_alphabet(["a", "b", "c"])
    rels = [parse_poly(r, alph) for r in
            ("a*a", "b*b", "c*c", "a*c - c*a", "a*b*a - b*a*b", "b*c*b - c*b*c")]
    A = enumerate_basis(complete(rels, 10, alphabet=alph))
    assert hilbert_profile(A) == (1, 3, 5, 6, 5, 3, 1)


def test_deformations_have_the_same_dimension():
    for a in [(1, 1), (1, 2), (2, 1), (1, -1), (1, 3), ("1/2", "-3/7")]:
        assert enumerate_basis(complete(present_D(3, *a), 7)).dim == 12


def test_infinite_algebra_is_flagged():
    alph = named_alphabet(["a", "b"])
    rs = complete([parse_poly("a*b - b*a", alph)], 6, alphabet=alph)
    with pytest.raises(InfiniteBasisError):
        enumerate_basis(rs)


def test_rule_ceiling():
    with pytest.raises(CompletionError):
        complete(present_D(4, 1, 1), 13, max_rules=5)
    with pytest.raises(ValueError):
        complete(present_D(3, 1, 1), 1)


def test_certified(d3, d4):
    assert certify(d3[0], 7)
    assert certify(d4[0], 13)


def test_relations_reduce_to_zero(d4):
    rs, _ = d4
    for r in present_D(4, 1, 1).relations:
        assert not rs.normal_form(r)


@given(st.lists(st.integers(0, 5), min_size=1, max_size=9), st.integers(0, 2**32))
def test_confluence_spot_check(d4, w, seed):
    rs, _ = d4
    p = NCPolynomial.word(tuple(w))
    assert rs.normal_form(p) == rs.normal_form_randomized(p, random.Random(seed))


@given(st.lists(st.integers(0, 2), max_size=6), st.lists(st.integers(0, 2), max_size=6))
def test_normal_form_is_multiplicative(d3, u, v):
    rs, _ = d3
    pu, pv = NCPolynomial.word(tuple(u)), NCPolynomial.word(tuple(v))
    assert rs.normal_form(rs.normal_form(pu) * rs.normal_form(pv)) == rs.normal_form(pu * pv)


def test_basis_is_subword_closed(d4):
    _, A = d4
    basis = set(A.basis)
    for w in A.basis:
        for i in range(len(w)):
            for j in range(i, len(w) + 1):
                assert w[i:j] in basis


@given(st.data())
def test_structure_constants_are_associative(d4, data):
    _, A = d4
    idx = st.integers(0, A.dim - 1)
    a, b, c = ({data.draw(idx): 1} for _ in range(3))
    assert A.mul(A.mul(a, b), c) == A.mul(a, A.mul(b, c))


def test_json_round_trip(d3):
    _, A = d3
    B = FiniteAlgebra.from_json(A.to_json(), A.alphabet)
    assert B.basis == A.basis and B.L == A.L and B.R == A.R
    with pytest.raises(ValueError):
        FiniteAlgebra.from_json({**A.to_json(), "schema": 99})

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fkalg.free_algebra import (NCPolynomial, act, emit_relations, fk_alphabet, fk_pairs, format_poly,
                                make_generator, parse_poly, parse_relations, present_D, present_E,
                                presentation_from_text, relation_counts, x, xword)
from fkalg.linalg import Q
from fkalg.perm import Permutation

N = 4
NL = len(fk_pairs(N))

words = st.lists(st.integers(0, NL - 1), max_size=4).map(tuple)
coeffs = st.integers(-5, 5).map(Q)
polys = st.dictionaries(words, coeffs, max_size=5).map(NCPolynomial)
perms = st.permutations(range(1, N + 1)).map(lambda p: Permutation(tuple(p)))


def test_antisymmetric_symbols():
    assert make_generator(2, 1)[1] == -1
    assert x(4, 3, 1) == -x(4, 1, 3)
    with pytest.raises(ValueError):
        make_generator(2, 2)
    with pytest.raises(ValueError):
        make_generator(1, 5, 4)


def test_zero_terms_are_dropped():
    p = NCPolynomial({(0,): Q(1), (1,): Q(0)})
    assert p.words() == [(0,)] and not (p - p)


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p + q) * r == p * r + q * r
    assert p + q == q + p
    assert p - p == NCPolynomial.zero()


@given(polys)
def test_format_parse_round_trip(p):
    alph = fk_alphabet(N)
    assert parse_poly(format_poly(p, alph), alph) == p


def test_parse_accepts_reversed_indices_and_rationals():
    alph = fk_alphabet(4)
    assert parse_poly("x21*x13 + 3/2", alph) == -xword(4, (1, 2), (1, 3)) + Q("3/2")
    for bad in ("x12 x13", "+", "2 x12", "x99"):
        with pytest.raises(ValueError):
            parse_poly(bad, alph)


@given(polys, polys, perms)
def test_action_is_multiplicative(p, q, s):
    assert act(s, p * q, N) == act(s, p, N) * act(s, q, N)


@given(polys, perms, perms)
def test_action_composes(p, s, t):
    assert act(s * t, p, N) == act(s, act(t, p, N), N)


@given(perms)
def test_relations_are_permuted(s):
    pres = present_D(N, 1, -1)
    rels = set(pres.relations)
    for r in pres.relations:
        moved = act(s, r, N)
        assert moved in rels or -moved in rels


def test_relation_counts():
    assert relation_counts(present_D(4, 1, 1)) == {"square": 6, "commute": 3, "triangle": 8}
    assert relation_counts(present_D(3, 1, 1)) == {"square": 3, "commute": 0, "triangle": 2}
    assert len(present_E(5).relations) == 10 + 15 + 20


def test_E_is_D_at_zero():
    assert present_E(4).relations == present_D(4, 0, 0).relations
    with pytest.raises(ValueError):
        present_D(2, 1, 1)


def test_presentation_text_round_trip():
    pres = present_D(4, Q("1/3"), -2)
    text = emit_relations(pres)
    back = presentation_from_text(text, 4)
    assert back.relations == pres.relations
    assert parse_relations("# comment\nx12*x12 - 1\n\n", fk_alphabet(4)) == [xword(4, (1, 2), (1, 2)) - 1]

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fkalg.ext import (coboundary, ext1, ext1_reduced_one_dim, ext_dim, leibniz_check, named_representatives,
                       printed_f2, transport_cocycle)
from fkalg.free_algebra import present_D
from fkalg.linalg import RatMatrix
from fkalg.perm import Permutation, all_perms, klein_four
from fkalg.representations import act_on_rep, sign_rep, two_dim_rep
from fkalg.rewrite import complete

D3 = present_D(3, 1, -1)
D4 = present_D(4, 1, 1)
perms3 = st.sampled_from(all_perms(3))
perms4 = st.sampled_from(all_perms(4))
entries = st.integers(-3, 3)


@pytest.fixture(scope="module")
def rs4():
    return complete(D4, 13)


@given(perms3, perms3)
def test_small_ext_rule(s, t):
    expected = 1 if t * s.inverse() == Permutation.parse("(1 3)", 3) else 0
    assert ext_dim(D3, sign_rep(s), sign_rep(t)) == expected


def test_reduced_system_for_a_transposition():
    r = ext1_reduced_one_dim(4, Permutation.parse("(1 3)", 4))
    assert (r.rank, len(r.solutions), r.dim) == (4, 2, 1)
    assert ext1_reduced_one_dim(4, Permutation.parse("(1 2)", 4)).dim == 0


@settings(max_examples=20)
@given(perms4, st.lists(entries, min_size=4, max_size=4))
def test_coboundaries_are_cocycles(t, m):
    rho, rho2 = two_dim_rep(Permutation.identity(4)), two_dim_rep(t)
    M = RatMatrix.from_rows([m[:2], m[2:]])
    assert coboundary(rho, rho2, M).is_cocycle(D4)


def test_ext_space_bookkeeping():
    e, s2 = Permutation.identity(4), Permutation.parse("(2 3)", 4)
    E = ext1(D4, two_dim_rep(e), two_dim_rep(s2), e, s2)
    assert E.dim == len(E.representatives) == 2
    assert all(z.is_cocycle(D4) for z in E.Z1)
    for b in E.B1:
        assert E.is_coboundary(b)
    f = E.representatives[0] * 3 - E.representatives[1]
    assert [int(c) for c in E.class_coordinates(f)] == [3, -1]


@settings(max_examples=15)
@given(st.sampled_from(["f1", "f2", "f3"]), perms4)
def test_group_transport_keeps_cocycles(name, mu):
    c = named_representatives()[name]
    moved = transport_cocycle(mu, c)
    assert moved.is_cocycle(D4)
    assert moved.source == act_on_rep(mu, c.source)
    assert transport_cocycle(mu.inverse(), moved).values == c.values


@pytest.mark.parametrize("nu", klein_four())
def test_conjugation_transport_keeps_cocycles(nu):
    for c in named_representatives().values():
        assert transport_cocycle(nu, c, "conjugation").is_cocycle(D4)


def test_conjugation_outside_klein_is_refused():
    with pytest.raises(ValueError):
        transport_cocycle(Permutation.parse("(1 2)", 4), named_representatives()["f1"], "conjugation")


def test_named_cocycles_are_nontrivial(rs4):
    reps = named_representatives()
    for name, c in reps.items():
        assert c.is_cocycle(D4), name
        E = ext1(D4, c.source, c.target)
        assert not E.is_coboundary(c), name
        assert leibniz_check(c, rs4, random.Random(0), trials=80)


def test_printed_f2_is_a_coboundary_in_this_direction():
    f = printed_f2()
    assert f.is_cocycle(D4)
    assert ext1(D4, f.source, f.target).is_coboundary(f)
    g = named_representatives()["f2"]
    assert not ext1(D4, g.source, g.target).is_coboundary(g)

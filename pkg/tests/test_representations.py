from hypothesis import given
from hypothesis import strategies as st

from fkalg.free_algebra import fk_pairs, present_D
from fkalg.linalg import RatMatrix, inverse
from fkalg.perm import Permutation, all_perms, coset_reps_mod_klein, klein_four, klein_rep
from fkalg.representations import (act_on_rep, classify_one_dim, find_intertwiner, intertwiner_matrix,
                                   is_isomorphic, is_simple, recover_permutation, sign_rep, sign_value,
                                   two_dim_rep, two_dim_simples)


def perms(n):
    return st.permutations(range(1, n + 1)).map(lambda p: Permutation(tuple(p)))


def test_sign_values_follow_the_order():
    s = Permutation.parse("(1 3)", 4)
    assert sign_value(s, 1, 2) == -1  # s(1)=3 > s(2)=2
    assert sign_value(s, 2, 4) == 1


@given(perms(4))
def test_sign_characters_satisfy_the_relations(s):
    assert sign_rep(s).satisfies(present_D(4, 1, -1))
    assert not sign_rep(s).satisfies(present_D(4, 1, 1))


@given(perms(4))
def test_two_dim_images_satisfy_the_relations(s):
    assert two_dim_rep(s).satisfies(present_D(4, 1, 1))


def test_one_dim_counts():
    assert len(classify_one_dim(4, 1, -1)) == 24
    assert len(classify_one_dim(3, 1, -1)) == 6
    assert classify_one_dim(4, 1, 1) == []
    assert classify_one_dim(4, 2, -2) == []  # no rational square root


@given(perms(4))
def test_recover_round_trip(s):
    assert recover_permutation(sign_rep(s)) == s


@given(perms(5))
def test_recover_round_trip_n5(s):
    assert recover_permutation(sign_rep(s)) == s


def test_recover_by_position_formula():
    # sigma(i) = i + r_i - l_i where r_i counts j > i with sigma(j) < sigma(i) and l_i the reverse
    for s in all_perms(4):
        for i in range(1, 5):
            r = sum(1 for j in range(i + 1, 5) if s(j) < s(i))
            lft = sum(1 for j in range(1, i) if s(j) > s(i))
            assert s(i) == i + r - lft


@given(perms(4), perms(4))
def test_action_on_sign_characters(s, t):
    assert act_on_rep(t, sign_rep(s)) == sign_rep(s * t.inverse())


@given(perms(4), perms(4))
def test_action_on_two_dim(s, t):
    assert act_on_rep(t, two_dim_rep(s)).images == two_dim_rep(s * t.inverse()).images


def test_two_dim_simples():
    S = two_dim_simples()
    assert all(is_simple(x) for x in S)
    for i, a in enumerate(S):
        for j, b in enumerate(S):
            assert is_isomorphic(a, b) == (i == j)
            assert len(find_intertwiner(a, b)) == (1 if i == j else 0)


@given(perms(4))
def test_klein_cosets_give_isomorphic_simples(s):
    k = klein_rep(s)
    assert k in coset_reps_mod_klein()
    assert is_isomorphic(two_dim_rep(s), two_dim_rep(k))


def test_klein_intertwiners():
    e = two_dim_rep(Permutation.identity(4))
    for nu in klein_four():
        m = intertwiner_matrix(nu)
        moved = act_on_rep(nu, e)
        assert all(m * a * inverse(m) == b for a, b in zip(e.images, moved.images))
    assert intertwiner_matrix(klein_four()[3]) * intertwiner_matrix(klein_four()[3]) == -RatMatrix.identity(2)


def test_letter_count():
    assert len(two_dim_rep(Permutation.identity(4)).images) == len(fk_pairs(4))

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fkalg.free_algebra import present_D, present_E
from fkalg.linalg import ONE, Q
from fkalg.perm import all_perms
from fkalg.rewrite import complete, enumerate_basis
from fkalg.structure import (Automorphisms, TableAlgebra, generated_ideal, is_semisimple, lift_idempotent,
                             nilpotency_index, radical, radical_filtration, radical_of, radical_powers, whole)


def e(i):
    return {i: ONE}


def upper_triangular():
    """Basis e11, e12, e22 of upper triangular 2x2 matrices."""
    z = {}
    table = [[e(0), e(1), z], [z, z, e(1)], [z, z, e(2)]]
    return TableAlgebra(table, {0: ONE, 2: ONE})


def dual_numbers(k):
    """k[x]/x^k on the basis 1, x, ..., x^{k-1}."""
    return TableAlgebra([[e(i + j) if i + j < k else {} for j in range(k)] for i in range(k)], e(0))


@pytest.fixture(scope="module", params=[(1, -1), (1, 1), (0, 0), (1, 2)], ids=str)
def d3(request):
    return request.param, enumerate_basis(complete(present_D(3, *request.param), 7))


def test_toy_radicals():
    T = upper_triangular()
    assert T.is_associative([(i, j, k) for i in range(3) for j in range(3) for k in range(3)])
    R = radical_of(T)
    assert R.dim == 1 and e(1) in R
    for k in (2, 3, 5):
        R = radical_of(dual_numbers(k))
        assert R.dim == k - 1 and e(0) not in R


def test_D3_radicals(d3):
    a, A = d3
    expected = {(1, -1): (6, 2), (1, 1): (0, 0), (0, 0): (11, 5), (1, 2): (0, 0)}[a]
    J = radical(A).ideal
    assert J.dim == expected[0]
    assert is_semisimple(A) == (J.dim == 0)
    if J.dim:
        assert nilpotency_index(radical_powers(A, J)) == expected[1]


def test_modular_precheck_agrees(d3):
    _, A = d3
    assert radical(A, True).ideal == radical(A, False).ideal


def test_radical_is_an_ideal(d3):
    _, A = d3
    J = radical(A).ideal
    if J.dim:
        assert generated_ideal(A, J.basis) == J
        assert not J.contains_ideal(whole(A))


def test_nil_coxeter_radical_is_the_augmentation_ideal():
    A = enumerate_basis(complete(present_E(3), 7))
    J = radical(A).ideal
    assert J.dim == A.dim - 1
    assert J == generated_ideal(A, [e(j) for j, w in enumerate(A.basis) if len(w) == 1])


def test_filtration_dims_add_up(d3):
    _, A = d3
    if is_semisimple(A):
        return
    G = radical_filtration(A)
    assert sum(G.dims) == A.dim


@pytest.fixture(scope="module")
def d3_autos():
    pres = present_D(3, 1, -1)
    A = enumerate_basis(complete(pres, 7))
    return A, Automorphisms(A, 3, pres.relations)


@given(st.sampled_from(all_perms(3)), st.sampled_from(all_perms(3)), st.data())
def test_automorphisms_are_multiplicative_and_compose(d3_autos, g, h, data):
    A, aut = d3_autos
    i = data.draw(st.integers(0, A.dim - 1))
    j = data.draw(st.integers(0, A.dim - 1))
    a, b = e(i), e(j)
    assert aut.apply(g, A.mul(a, b)) == A.mul(aut.apply(g, a), aut.apply(g, b))
    assert aut.apply(g * h, a) == aut.apply(g, aut.apply(h, a))


def test_idempotent_lifting(d3_autos):
    A, _ = d3_autos
    J = radical(A).ideal
    one, x = A.basis.index(()), A.basis.index((0,))
    e0 = {one: Q("1/2"), x: Q("1/2")}
    for k, c in J.basis[0].items():
        e0[k] = e0.get(k, Q(0)) + 3 * c
    f = lift_idempotent(A, e0)
    assert A.mul(f, f) == f and f
    diff = {k: f.get(k, Q(0)) - e0.get(k, Q(0)) for k in set(f) | set(e0)}
    assert {k: c for k, c in diff.items() if c} in J

import pytest

from fkalg.free_algebra import named_alphabet, parse_poly
from fkalg.quiver import (IOTA, NIL_COXETER, Arrow, Quiver, QuiverMismatch, act_on_path, bound_quiver_basis,
                          gabriel_quiver, kernel_upto_degree, quiver_bound_algebra)
from fkalg.rewrite import complete
from fkalg.suite import _type_names, simple_ext_table

S = named_alphabet(["s1", "s2", "s3"])


def test_quiver_bookkeeping():
    q = Quiver(["a", "b", "c"], [Arrow(0, 1, "x"), Arrow(1, 0, "y"), Arrow(0, 1, "z")])
    assert q.multiplicity(0, 1) == 2 and q.multiplicities()[1][0] == 1
    assert q.out_degree(0) == 2 and q.out_degree(2) == 0
    assert q.components() == [[0, 1], [2]] and not q.is_connected()
    dot = q.to_dot()
    assert dot.startswith("digraph") and dot.count("->") == 3
    assert q.to_json()["arrows"][1] == {"source": "b", "target": "a", "label": "y"}


def test_one_vertex_bound_algebras():
    nil = bound_quiver_basis([parse_poly(r, S) for r in NIL_COXETER], S, bound=9)
    assert (nil.dim, nil.profile) == (24, (1, 3, 5, 6, 5, 3, 1))
    iota = bound_quiver_basis([parse_poly(r, S) for r in IOTA], S, bound=9)
    assert (iota.dim, iota.profile) == (24, (1, 3, 5, 6, 5, 3, 1))


def test_preprojective_A2_by_guards():
    # vertices 0, 1; arrows a: 0 -> 1, b: 1 -> 0; relations ab = ba = 0 leave 2 + 2 paths
    alph = named_alphabet(["a", "b"])
    guards = [parse_poly(g, alph) for g in ("a*a", "b*b")]
    rels = [parse_poly("a*b", alph), parse_poly("b*a", alph)]
    bb = bound_quiver_basis(rels, alph, bound=4, vertices=2, guards=guards)
    assert (bb.dim, bb.profile) == (4, (2, 2))


@pytest.fixture(scope="module")
def d3(ws):
    lp = ws.picture(3, 1, -1)
    fr, rels = ws.frame(3, 1, -1)
    Q = gabriel_quiver(lp.local, simple_ext_table(ws, 3, 1, -1), _type_names(fr))
    return lp.local, fr, rels, Q


def test_D3_quiver_and_relations(d3):
    local, fr, rels, Q = d3
    assert len(Q.vertices) == 6 and len(Q.arrows) == 6
    assert len(Q.components()) == 3
    news = {d.degree: len(d.new) for d in kernel_upto_degree(local, fr, 3)}
    assert news == {1: 0, 2: 1, 3: 0}
    bqa = quiver_bound_algebra(local, fr, Q, [parse_poly(x, fr.alphabet) for x in rels])
    bqa.check_parallel()
    bb = bound_quiver_basis(bqa.relations, bqa.alphabet, bound=6, vertices=6, guards=bqa.guards())
    assert bb.dim == 12


def test_mismatched_ext_table_is_refused(d3):
    local, fr, _, _ = d3
    wrong = [[0] * 6 for _ in range(6)]
    with pytest.raises(QuiverMismatch):
        gabriel_quiver(local, wrong, _type_names(fr))


def test_translation_preserves_the_relations(d3):
    local, fr, rels, Q = d3
    bqa = quiver_bound_algebra(local, fr, Q, [parse_poly(x, fr.alphabet) for x in rels])
    rs = complete(bqa.relations + bqa.guards(), 6, alphabet=bqa.alphabet)
    for g in range(local.nvertices):
        for r in bqa.relations:
            assert not rs.normal_form(act_on_path(local, fr, Q, g, r))

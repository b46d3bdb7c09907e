"""Gabriel quivers, arrow normalization, kernel relations degree by degree,
bound quiver algebras, and the filtered deformation of the local algebra.

Everything here works on :class:`LocalAlgebra`, the algebra of paths leaving
the base vertex (the orbit algebra of the basic algebra) together with the
vertex bookkeeping needed to follow a path around the quiver. A word
s_{t1} ... s_{tk} in the arrow types is the path that starts at the base
vertex and takes an arrow of type t1, then t2, and so on; arrows at other
vertices are the transports of the base arrows, optionally rescaled by the
sign of the vertex (the ``twist``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .free_algebra import Alphabet, NCPolynomial, format_poly, named_alphabet, parse_poly
from .linalg import ONE, ZERO, Q, RatMatrix, Subspace, kernel, solve, vec_iadd, vec_scale
from .rewrite import FiniteAlgebra, complete, enumerate_basis
from .structure import (GradedAlgebra, OrbitAlgebra, TableAlgebra, graded_from_filtration,
                        radical_powers, table_radical)


class QuiverMismatch(ArithmeticError):
    """Two independent arrow counts disagree."""


class NormalizationError(ArithmeticError):
    """No arrow normalization satisfies the target relations."""


class DeformationError(ArithmeticError):
    """A filtered correction is not supported where it should be."""


# -- the local algebra ----------------------------------------------------------

@dataclass
class LocalAlgebra:
    """Paths from the base vertex modulo relations, as a table algebra.

    ``gamma.labels[i]`` is the end vertex of basis element i; products of
    elements ending at u and w end at ``vertex_product[u][w]``.
    """

    gamma: TableAlgebra
    vertex_product: list
    vertex_sign: list
    vertex_names: list
    _graded: GradedAlgebra | None = field(default=None, repr=False)
    _gr_table: TableAlgebra | None = field(default=None, repr=False)

    @classmethod
    def from_orbit(cls, orbit: OrbitAlgebra, vertex_names: list) -> "LocalAlgebra":
        return cls(orbit.algebra, orbit.vertex_product, orbit.vertex_sign, list(vertex_names))

    @property
    def nvertices(self) -> int:
        return len(self.vertex_product)

    @property
    def graded(self) -> GradedAlgebra:
        """Radical filtration of gamma with an adapted basis."""
        if self._graded is None:
            J = table_radical(self.gamma)
            self._graded = graded_from_filtration(self.gamma, radical_powers(self.gamma, J))
        return self._graded

    @property
    def gr(self) -> TableAlgebra:
        if self._gr_table is None:
            self._gr_table = self.graded.to_table()
        return self._gr_table

    def label_of(self, v: dict) -> int:
        labels = {self.gamma.labels[k] for k in v}
        if len(labels) != 1:
            raise ValueError("vector is not homogeneous for the vertex grading")
        return labels.pop()

    def to_json(self) -> dict:
        return {
            "gamma": self.gamma.to_json(),
            "labels": list(self.gamma.labels),
            "vertex_product": self.vertex_product,
            "vertex_sign": self.vertex_sign,
            "vertex_names": self.vertex_names,
        }

    @classmethod
    def from_json(cls, data: dict) -> "LocalAlgebra":
        g = data["gamma"]
        table = [[{k: Q(a) for k, a in cell} for cell in row] for row in g["table"]]
        unit = {k: Q(a) for k, a in g["unit"]}
        gamma = TableAlgebra(table, unit, g["names"], data["labels"])
        return cls(gamma, data["vertex_product"], data["vertex_sign"], data["vertex_names"])


# -- quivers ------------------------------------------------------------------

@dataclass(frozen=True)
class Arrow:
    source: int
    target: int
    label: str


@dataclass
class Quiver:
    vertices: list  # names
    arrows: list  # list[Arrow]

    def multiplicity(self, u: int, v: int) -> int:
        return sum(1 for a in self.arrows if a.source == u and a.target == v)

    def multiplicities(self) -> list:
        n = len(self.vertices)
        m = [[0] * n for _ in range(n)]
        for a in self.arrows:
            m[a.source][a.target] += 1
        return m

    def out_degree(self, v: int) -> int:
        return sum(1 for a in self.arrows if a.source == v)

    def components(self) -> list:
        """Connected components of the underlying undirected graph."""
        parent = list(range(len(self.vertices)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in self.arrows:
            parent[find(a.source)] = find(a.target)
        groups: dict = {}
        for v in range(len(self.vertices)):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"source": self.vertices[a.source], "target": self.vertices[a.target], "label": a.label}
                       for a in self.arrows],
        }

    def to_dot(self) -> str:
        lines = ["digraph Q {"]
        for k, name in enumerate(self.vertices):
            lines.append(f'  v{k} [label="{name}"];')
        for a in self.arrows:
            lines.append(f'  v{a.source} -> v{a.target} [label="{a.label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def quiver_from_multiplicities(mult: list, vertex_names: list, type_names: dict | None = None) -> Quiver:
    """Arrows u -> v with the given multiplicities. ``type_names[(u, v)]``
    optionally names the parallel arrows."""
    arrows = []
    for u, row in enumerate(mult):
        for v, m in enumerate(row):
            names = (type_names or {}).get((u, v))
            for k in range(m):
                t = names[k] if names else f"a{k + 1}"
                arrows.append(Arrow(u, v, f"{t}({vertex_names[u]}; {vertex_names[v]})"))
    return Quiver(list(vertex_names), arrows)


def radical_layer_counts(local: LocalAlgebra) -> dict:
    """dim of (J / J^2) at each end vertex, J the radical of gamma."""
    G = local.graded
    counts: dict = {}
    for v, d in zip(G.adapted, G.degrees):
        if d == 1:
            lab = local.label_of(v)
            counts[lab] = counts.get(lab, 0) + 1
    return counts


def corner_multiplicities(local: LocalAlgebra) -> list:
    """Arrow counts u -> v from rad / rad^2, translating the base row around.

    The piece of rad/rad^2 from u to v is the image of the base piece ending
    at w under the automorphism moving the base to u, where v is the
    product of u and w.
    """
    counts = radical_layer_counts(local)
    n = local.nvertices
    mult = [[0] * n for _ in range(n)]
    for u in range(n):
        for w, m in counts.items():
            mult[u][local.vertex_product[u][w]] += m
    return mult


def gabriel_quiver(local: LocalAlgebra, ext_table: list | None = None, type_names: dict | None = None) -> Quiver:
    """Quiver from the radical layers, cross-checked against Ext dimensions.

    ``type_names`` maps a base end vertex w to names of the arrows ending
    there; the names are carried along the translations.
    """
    mult = corner_multiplicities(local)
    if ext_table is not None:
        for u, row in enumerate(mult):
            for v, m in enumerate(row):
                if ext_table[u][v] != m:
                    raise QuiverMismatch(f"arrows {local.vertex_names[u]} -> {local.vertex_names[v]}: "
                                         f"radical layer gives {m}, Ext gives {ext_table[u][v]}")
    names = None
    if type_names:
        names = {}
        for u in range(local.nvertices):
            for w, nm in type_names.items():
                names[(u, local.vertex_product[u][w])] = list(nm)
    return quiver_from_multiplicities(mult, local.vertex_names, names)


def arrow_lifts(local: LocalAlgebra) -> dict:
    """End vertex -> gamma elements whose classes span rad/rad^2 there.

    These are the degree-one vectors of the adapted basis, which come from
    fully reduced echelon rows and so are deterministic.
    """
    G = local.graded
    out: dict = {}
    for v, d in zip(G.adapted, G.degrees):
        if d == 1:
            out.setdefault(local.label_of(v), []).append(v)
    return out


# -- arrow frames and word evaluation -----------------------------------------

@dataclass
class ArrowFrame:
    """A choice of arrow at the base vertex for each arrow type.

    ``coefficients[t]`` expresses arrow t in the degree-one adapted vectors
    ending at ``ends[t]``; ``twist[t]`` = 1 multiplies the arrows of type t
    leaving vertex v by the sign of v.
    """

    names: tuple
    ends: tuple
    coefficients: tuple  # per type: dict adapted index -> coefficient
    twist: tuple

    @property
    def alphabet(self) -> Alphabet:
        return named_alphabet(self.names)

    def graded_vectors(self) -> list:
        return [dict(c) for c in self.coefficients]

    def lifts(self, local: LocalAlgebra) -> list:
        """The arrows as elements of gamma itself."""
        adapted = local.graded.adapted
        out = []
        for c in self.coefficients:
            v: dict = {}
            for i, a in c.items():
                vec_iadd(v, adapted[i], a)
            out.append(v)
        return out

    def to_json(self, local: LocalAlgebra | None = None) -> dict:
        d = {
            "types": list(self.names),
            "ends": [local.vertex_names[e] if local else e for e in self.ends],
            "coefficients": [[[i, str(a)] for i, a in sorted(c.items())] for c in self.coefficients],
            "twist": list(self.twist),
        }
        return d


class WordEvaluator:
    """Evaluate words in the arrow types inside gamma or gr(gamma)."""

    def __init__(self, local: LocalAlgebra, frame: ArrowFrame, graded: bool = True, arrows: list | None = None):
        self.local = local
        self.frame = frame
        self.algebra = local.gr if graded else local.gamma
        if arrows is None:
            arrows = frame.graded_vectors() if graded else frame.lifts(local)
        self.arrows = arrows
        self._memo: dict = {(): (self.algebra.one(), 0)}

    def end_vertex(self, w) -> int:
        v = 0
        for t in w:
            v = self.local.vertex_product[v][self.frame.ends[t]]
        return v

    def word(self, w) -> dict:
        w = tuple(w)
        hit = self._memo.get(w)
        if hit is None:
            prev, v = self._memo.get(w[:-1]) or (self.word(w[:-1]), self.end_vertex(w[:-1]))
            t = w[-1]
            val = self.algebra.mul(prev, self.arrows[t]) if prev else {}
            if self.frame.twist[t] and self.local.vertex_sign[v] < 0:
                val = vec_scale(val, -1)
            hit = (val, self.local.vertex_product[v][self.frame.ends[t]])
            self._memo[w] = hit
        return hit[0]

    def poly(self, p: NCPolynomial) -> dict:
        out: dict = {}
        for w, c in p.terms.items():
            vec_iadd(out, self.word(w), c)
        return out


def twist_parity(frame: ArrowFrame, w) -> int:
    return sum(frame.twist[t] for t in w) % 2


def transport_poly(local: LocalAlgebra, frame: ArrowFrame, p: NCPolynomial, v: int) -> NCPolynomial:
    """The relation p, read at vertex v instead of the base, in base words:
    a path from v of type word w equals sign(v)^parity(w) times the
    transported base path."""
    if local.vertex_sign[v] > 0:
        return p
    return NCPolynomial({w: (-c if twist_parity(frame, w) else c) for w, c in p.terms.items()})


def check_relation(local: LocalAlgebra, frame: ArrowFrame, rel: NCPolynomial, graded: bool = True,
                   evaluator: WordEvaluator | None = None) -> tuple:
    """(vanishes, residual) for a relation evaluated through the arrows.

    In the graded case the relation must be homogeneous; its value is the
    component of that degree in gr(gamma).
    """
    ev = evaluator or WordEvaluator(local, frame, graded)
    res = ev.poly(rel)
    return (not res, res)


# -- normalization ------------------------------------------------------------

def _sym(a):
    import sympy
    return sympy.Rational(int(a.numerator), int(a.denominator))


def normalize_arrows(local: LocalAlgebra, names: list, ends: list, relations: list, fixed: int | None = None,
                     twists: list | None = None) -> ArrowFrame:
    """Choose arrows at the base so that the given homogeneous relations hold
    in gr(gamma).

    Arrow t is an unknown combination of the degree-one adapted vectors ending
    at ``ends[t]``; the first type whose end has a one-dimensional arrow
    space (or ``fixed``) is pinned to its adapted vector. Twists are tried
    in lexicographic order and the first with a rational solution wins; among
    its solutions the one whose arrows have positive leading coefficients,
    then the smallest coefficient tuple, is taken. The result is re-verified
    in exact arithmetic.
    """
    import sympy

    G = local.graded
    T = local.gr
    ntypes = len(names)
    space = {}
    for i, d in enumerate(G.degrees):
        if d == 1:
            space.setdefault(local.label_of(G.adapted[i]), []).append(i)
    for e in ends:
        if e not in space:
            raise NormalizationError(f"no arrows end at vertex {local.vertex_names[e]}")
    if fixed is None:
        fixed = next((t for t in range(ntypes) if len(space[ends[t]]) == 1), 0)
    syms, unknowns = [], []
    for t in range(ntypes):
        row = {}
        for k, i in enumerate(space[ends[t]]):
            if t == fixed:
                row[i] = sympy.Integer(1) if k == 0 else sympy.Integer(0)
            else:
                s = sympy.Symbol(f"c{t}_{k}")
                row[i] = s
                unknowns.append(s)
        syms.append(row)
    alph = named_alphabet(names)
    rels = [r if isinstance(r, NCPolynomial) else parse_poly(r, alph) for r in relations]
    table = [[{k: _sym(a) for k, a in cell.items()} for cell in row] for row in T.table]

    def smul(a, b):
        out: dict = {}
        for i, x in a.items():
            if x == 0:
                continue
            row = table[i]
            for j, y in b.items():
                if y == 0:
                    continue
                for k, c in row[j].items():
                    out[k] = out.get(k, 0) + x * y * c
        return out

    if twists is None:
        twists = list(itertools.product((0, 1), repeat=ntypes))
    for twist in twists:
        memo: dict = {}

        def word(w):
            if w in memo:
                return memo[w]
            if len(w) == 1:
                val, v = dict(syms[w[0]]), local.vertex_product[0][ends[w[0]]]
            else:
                prev, u = word(w[:-1])
                t = w[-1]
                val = smul(prev, syms[t])
                if twist[t] and local.vertex_sign[u] < 0:
                    val = {k: -a for k, a in val.items()}
                v = local.vertex_product[u][ends[t]]
            memo[w] = (val, v)
            return memo[w]

        eqs = []
        for r in rels:
            acc: dict = {}
            for w, c in r.terms.items():
                for k, a in word(w)[0].items():
                    acc[k] = acc.get(k, 0) + _sym(c) * a
            eqs.extend(e for e in (sympy.expand(a) for a in acc.values()) if e != 0)
        if any(e.free_symbols == set() for e in eqs):
            continue
        sols = sympy.solve(eqs, unknowns, dict=True) if eqs else [{}]
        cands = []
        for sol in sols:
            if any(s not in sol for s in unknowns):
                continue  # positive-dimensional family: not pinned down
            vals = {s: sol[s] for s in unknowns}
            if not all(v.is_rational for v in vals.values()):
                continue
            coeffs = []
            for t in range(ntypes):
                c = {}
                for i, a in syms[t].items():
                    a = a.subs(vals) if hasattr(a, "subs") else a
                    if a != 0:
                        c[i] = Q(f"{sympy.Rational(a).p}/{sympy.Rational(a).q}")
                coeffs.append(c)
            if not _frame_ok(coeffs, ends):
                continue
            lead = tuple(0 if c[min(c)] > 0 else 1 for c in coeffs)
            flat = tuple(a for c in coeffs for _, a in sorted(c.items()))
            cands.append((lead, flat, coeffs))
        if not cands:
            continue
        cands.sort(key=lambda x: (x[0], x[1]))
        frame = ArrowFrame(tuple(names), tuple(ends), tuple(cands[0][2]), tuple(twist))
        ev = WordEvaluator(local, frame, graded=True)
        for r in rels:
            if ev.poly(r):
                raise NormalizationError("normalized arrows fail a relation in exact arithmetic")
        return frame
    raise NormalizationError("no twist admits a rational normalization")


def _frame_ok(coeffs: list, ends: list) -> bool:
    """Arrows are nonzero and independent within each end vertex."""
    if any(not c for c in coeffs):
        return False
    by_end: dict = {}
    for c, e in zip(coeffs, ends):
        by_end.setdefault(e, []).append(c)
    for group in by_end.values():
        S = Subspace()
        for c in group:
            if S.add(c) is None:
                return False
    return True


# -- kernel relations degree by degree -------------------------------------------

@dataclass
class DegreeRelations:
    degree: int
    words: int
    image_dim: int
    kernel_dim: int
    consequence_dim: int
    new: list  # list[NCPolynomial]
    kernel: list = field(repr=False, default_factory=list)  # basis over word coordinates
    consequences: Subspace | None = field(repr=False, default=None)

    def to_json(self, alphabet: Alphabet) -> dict:
        return {
            "degree": self.degree,
            "words": self.words,
            "image_dim": self.image_dim,
            "kernel_dim": self.kernel_dim,
            "consequence_dim": self.consequence_dim,
            "new": [format_poly(p, alphabet) for p in self.new],
        }


def all_words(ntypes: int, d: int) -> list:
    return list(itertools.product(range(ntypes), repeat=d))


def kernel_upto_degree(local: LocalAlgebra, frame: ArrowFrame, D: int, graded: bool = True) -> list:
    """Per degree d <= D, the paths of length d killed in gr(gamma), and a
    basis of those not already consequences of shorter relations.

    Consequences of a relation r of length d-1 are r followed by an arrow
    and an arrow followed by r read at that arrow's end vertex.
    """
    ev = WordEvaluator(local, frame, graded)
    ntypes = len(frame.names)
    out = []
    prev_kernel: list = []
    prev_words: list = []
    for d in range(1, D + 1):
        words = all_words(ntypes, d)
        index = {w: k for k, w in enumerate(words)}
        cols = [ev.word(w) for w in words]
        data: dict = {}
        for j, col in enumerate(cols):
            for i, a in col.items():
                data.setdefault(i, {})[j] = a
        M = RatMatrix(ev.algebra.dim, len(words), data)
        K = kernel(M)
        image_dim = len(words) - len(K)
        Kspace = Subspace(len(words))
        for k in K:
            Kspace.add(k)
        C = Subspace(len(words))
        for r in prev_kernel:
            rpoly = NCPolynomial({prev_words[i]: c for i, c in r.items()})
            for t in range(ntypes):
                right = {index[w + (t,)]: c for w, c in rpoly.terms.items()}
                C.add(right)
                moved = transport_poly(local, frame, rpoly, local.vertex_product[0][frame.ends[t]])
                C.add({index[(t,) + w]: c for w, c in moved.terms.items()})
        for b in C.basis():
            if not Kspace.contains(b):
                raise ArithmeticError("a consequence of a relation does not vanish")
        new = []
        for k in Kspace.basis():
            r = C.add(k)
            if r is not None:
                new.append(NCPolynomial({words[i]: c for i, c in r.items()}))
        out.append(DegreeRelations(d, len(words), image_dim, len(Kspace), len(Kspace) - len(new), new,
                                   Kspace.basis(), C))
        prev_kernel, prev_words = Kspace.basis(), words
    return out


def relations_match(result: list, expected: dict, alphabet: Alphabet) -> dict:
    """Compare discovered relations with expected ones per degree.

    ``expected[d]`` lists relations of degree d. Degree d matches when the
    expected relations vanish and, together with the consequences of lower
    degrees, span the whole kernel in that degree.
    """
    report = {}
    for dr in result:
        exp = [r if isinstance(r, NCPolynomial) else parse_poly(r, alphabet) for r in expected.get(dr.degree, [])]
        index = {w: k for k, w in enumerate(all_words(len(alphabet), dr.degree))}
        K = Subspace(dr.words)
        for k in dr.kernel:
            K.add(k)
        S = dr.consequences.copy() if dr.consequences is not None else Subspace(dr.words)
        inside = True
        for r in exp:
            v = {index[w]: c for w, c in r.terms.items()}
            inside &= K.contains(v)
            S.add(v)
        report[dr.degree] = inside and len(S) == len(K)
    return report


# -- bound quiver algebras ----------------------------------------------------

@dataclass
class BoundQuiverAlgebra:
    """Path algebra modulo relations, as a rewrite problem over the arrows.

    Non-composable products are added as monomial relations, so normal words
    of positive length are exactly the nonzero paths; the trivial paths are
    counted separately (one per vertex).
    """

    quiver: Quiver
    relations: list  # NCPolynomial over the arrow alphabet
    alphabet: Alphabet

    def guards(self) -> list:
        arrows = self.quiver.arrows
        return [NCPolynomial.word((i, j)) for i, a in enumerate(arrows) for j, b in enumerate(arrows)
                if a.target != b.source]

    def check_parallel(self) -> None:
        arrows = self.quiver.arrows
        for r in self.relations:
            ends = {(arrows[w[0]].source, arrows[w[-1]].target) for w in r.terms}
            if len(ends) != 1:
                raise ValueError("relation mixes paths with different endpoints")


@dataclass
class BoundBasis:
    algebra: FiniteAlgebra
    dim: int
    profile: tuple
    words: list


def bound_quiver_basis(relations: list, alphabet: Alphabet, bound: int = 12, vertices: int = 1,
                       guards: list | None = None) -> BoundBasis:
    """Normal words of the arrow algebra modulo the relations.

    For a one-vertex quiver the quotient of the free algebra is the bound
    quiver algebra. With several vertices the guards kill non-composable
    pairs and the trivial paths replace the single empty word.
    """
    rels = list(relations) + list(guards or [])
    rs = complete(rels, bound, alphabet=alphabet)
    A = enumerate_basis(rs)
    prof = A.profile()
    dim = A.dim - 1 + vertices
    prof = (vertices,) + tuple(prof[1:])
    return BoundBasis(A, dim, prof, list(A.basis))


def quiver_bound_algebra(local: LocalAlgebra, frame: ArrowFrame, quiver: Quiver, base_relations: list) -> BoundQuiverAlgebra:
    """Transport relations at the base vertex to every vertex of the quiver.

    Arrow (u, t) is the arrow of type t leaving u; the quiver arrows must be
    named so that their type can be read off (``type(u; v)``).
    """
    by_source = {}
    for k, a in enumerate(quiver.arrows):
        t = frame.names.index(a.label.split("(")[0])
        by_source[(a.source, t)] = k
    alph = named_alphabet([a.label for a in quiver.arrows])
    rels = []
    for u in range(local.nvertices):
        for r in base_relations:
            moved = transport_poly(local, frame, r, u)
            terms = {}
            for w, c in moved.terms.items():
                path, v = [], u
                for t in w:
                    path.append(by_source[(v, t)])
                    v = local.vertex_product[v][frame.ends[t]]
                terms[tuple(path)] = terms.get(tuple(path), ZERO) + c
            p = NCPolynomial(terms)
            if p:
                rels.append(p)
    return BoundQuiverAlgebra(quiver, rels, alph)


def act_on_path(local: LocalAlgebra, frame: ArrowFrame, quiver: Quiver, g: int, p: NCPolynomial) -> NCPolynomial:
    """Move a path polynomial by the automorphism taking the base to vertex g.

    An arrow of type t at u goes to the arrow of type t at the product of g
    and u, with the twist sign of g when type t is twisted.
    """
    lookup = {}
    for k, a in enumerate(quiver.arrows):
        t = frame.names.index(a.label.split("(")[0])
        lookup[(a.source, t)] = (k, t)
    inv = {k: key for key, (k, _) in lookup.items()}
    neg = local.vertex_sign[g] < 0
    terms = {}
    for w, c in p.terms.items():
        path, flips = [], 0
        for k in w:
            u, t = inv[k]
            path.append(lookup[(local.vertex_product[g][u], t)][0])
            flips += frame.twist[t]
        if neg and flips % 2:
            c = -c
        terms[tuple(path)] = terms.get(tuple(path), ZERO) + c
    return NCPolynomial(terms)


# -- named relation sets ------------------------------------------------------

NIL_COXETER = [
    "s1*s1", "s2*s2", "s3*s3", "s1*s3 - s3*s1",
    "s1*s2*s1 - s2*s1*s2", "s3*s2*s3 - s2*s3*s2",
]

IOTA = [
    "s1*s1", "s2*s2", "s3*s3", "s1*s3 - s3*s1",
    "s2*s1*s2 - s1*s2*s3 - s3*s2*s1",
    "s2*s3*s2 - s1*s2*s1 + s3*s2*s3",
]


def relations_by_degree(rels: list, alphabet: Alphabet) -> dict:
    out: dict = {}
    for r in rels:
        p = r if isinstance(r, NCPolynomial) else parse_poly(r, alphabet)
        out.setdefault(p.degree(), []).append(p)
    return out


# -- the filtered deformation -------------------------------------------------

@dataclass
class Deformation:
    """Filtered relations of gamma in corrected generators t1, t2, t3.

    ``raw[name]`` gives the coefficients (on u1, u2) of each of the first four
    relations evaluated at the normalized lifts; ``q1`` and ``q2`` are the
    constants in t3^2 + q1 u2 and t1 t3 - t3 t1 + q2 u2.
    """

    raw: dict
    corrections: dict  # generator name -> polynomial added to it
    final: dict  # relation name -> polynomial over t's that vanishes in gamma
    q1: object
    q2: object
    checks: dict
    log: list

    def to_json(self, alphabet: Alphabet) -> dict:
        return {
            "raw": {k: {"u1": str(a), "u2": str(b)} for k, (a, b) in self.raw.items()},
            "corrections": {k: format_poly(p, alphabet) for k, p in self.corrections.items()},
            "final": {k: format_poly(p, alphabet) for k, p in self.final.items()},
            "q1": str(self.q1),
            "q2": str(self.q2),
            "checks": self.checks,
            "log": self.log,
        }


U1 = "s2*s3*s1*s2"
U2 = "s3*s1*s2*s3*s1*s2"


def _coords_on(ev: WordEvaluator, vec: dict, basis: list) -> list | None:
    """Coordinates of vec on the given vectors, or None if outside the span."""
    if not vec:
        return [ZERO] * len(basis)
    data: dict = {}
    for j, b in enumerate(basis):
        for i, a in b.items():
            data.setdefault(i, {})[j] = a
    M = RatMatrix(ev.algebra.dim, len(basis), data)
    sol = solve(M, vec)
    if not sol.consistent:
        return None
    return [sol.particular.get(j, ZERO) for j in range(len(basis))]


def solve_deformation(local: LocalAlgebra, frame: ArrowFrame) -> Deformation:
    """Lift the graded presentation to gamma and normalize the corrections.

    With the normalized arrows as lifts, each of s_t^2 and s1 s3 - s3 s1 is a
    combination of u1 and u2 in gamma. The generators are then corrected,
    t1 = s1 + a s3 s2 s3 s1 s2 and t2 = s2 + b s3 s1 s2 + c s3 s1 s2 s3 s1,
    with a, b, c solved so that t1^2 = t2^2 = 0 exactly; t3 = s3. The last
    two relations need no correction and are checked exactly.
    """
    alph = frame.alphabet
    lifts = frame.lifts(local)
    ev = WordEvaluator(local, frame, graded=False, arrows=lifts)
    P = lambda s: parse_poly(s, alph)
    u1, u2 = P(U1), P(U2)
    log = []

    def uv(e):
        return [e.word(w) for w in (tuple(u1.words())[0], tuple(u2.words())[0])]

    base_u = uv(ev)
    if not all(base_u):
        raise DeformationError("u1 or u2 vanishes in gamma")
    rel_names = ["iota1", "iota2", "iota3", "iota4"]
    first = [P(s) for s in IOTA[:4]]
    raw = {}
    for name, r in zip(rel_names, first):
        c = _coords_on(ev, ev.poly(r), base_u)
        if c is None:
            raise DeformationError(f"{name} is not a combination of u1 and u2 in gamma")
        raw[name] = (c[0], c[1])
        log.append(f"{name} = {c[0]} u1 + {c[1]} u2 at the normalized lifts")
    checks = {
        "q1=0 (u1 in iota1)": raw["iota1"][0] == 0,
        "q5=0 (u1 in iota3)": raw["iota3"][0] == 0,
        "q7=0 (u1 in iota4)": raw["iota4"][0] == 0,
    }
    for r in (P(IOTA[4]), P(IOTA[5])):
        checks[f"exact: {format_poly(r, alph)}"] = not ev.poly(r)

    # the substitution identities, for a generic scalar
    w1 = P("s3*s2*s3*s1*s2")
    x1 = ev.poly(P("s1*s3*s2*s3*s1*s2") + P("s3*s2*s3*s1*s2*s1"))
    sq1 = ev.poly(w1 * w1)
    checks["t1 = s1 + q w implies t1^2 = s1^2 + 2q u2"] = (
        not sq1 and _coords_on(ev, x1, base_u) == [ZERO, Q(2)])
    # exactly, s2 w + w s2 = u1 + s3 s1 s2^2, and s2^2 = q3 u1 + q4 u2 is not zero
    w2 = P("s3*s1*s2")
    x2 = ev.poly(P("s2*s3*s1*s2") + P("s3*s1*s2*s2"))
    extra = ev.poly(P("s3*s1*s2*s2"))
    checks["t2 = s2 + q w implies t2^2 = s2^2 + q u1 + q^2 u2 (up to q s3 s1 s2^2)"] = (
        _coords_on(ev, x2, base_u) == [ONE, _coords_on(ev, extra, base_u)[1]]
        and _coords_on(ev, ev.poly(w2 * w2), base_u) == [ZERO, ONE])
    log.append(f"s3 s1 s2^2 = {_coords_on(ev, extra, base_u)[1]} u2, the term dropped from t2^2 = s2^2 + q u1 + q^2 u2")

    # corrections: unknowns a (t1), b and c (t2), solved degree by degree
    s = [P(n) for n in frame.names]
    w3 = P("s3*s1*s2*s3*s1")

    def final_polys(a, b, c):
        t1 = s[0] + w1 * a
        t2 = s[1] + w2 * b + w3 * c
        t3 = s[2]
        return t1, t2, t3

    def coords(p):
        v = _coords_on(ev, ev.poly(p), base_u)
        if v is None:
            raise DeformationError("corrected relation left span(u1, u2)")
        return v

    # t2^2 = s2^2 + b(s2 w2 + w2 s2) + b^2 w2^2 + c(s2 w3 + w3 s2) in gamma
    A2 = coords(s[1] * w2 + w2 * s[1])
    B2 = coords(w2 * w2)
    C2 = coords(s[1] * w3 + w3 * s[1])
    q3, q4 = raw["iota2"]
    if A2[0] == 0:
        raise DeformationError("u1 part of t2^2 cannot be corrected")
    b = -q3 / A2[0]
    rest = q4 + b * A2[1] + b * b * B2[1]
    if rest and C2[1] == 0:
        raise DeformationError("u2 part of t2^2 cannot be corrected")
    c = -rest / C2[1] if rest else ZERO
    A1 = coords(s[0] * w1 + w1 * s[0])
    q2_raw = raw["iota1"][1]
    if q2_raw and A1[1] == 0:
        raise DeformationError("u2 part of t1^2 cannot be corrected")
    a = -q2_raw / A1[1] if q2_raw else ZERO
    log.append(f"corrections: t1 = s1 + ({a}) s3 s2 s3 s1 s2, t2 = s2 + ({b}) s3 s1 s2 + ({c}) s3 s1 s2 s3 s1")
    t1, t2, t3 = final_polys(a, b, c)

    sq = {"t1^2": t1 * t1, "t2^2": t2 * t2, "t3^2": t3 * t3, "[t1,t3]": t1 * t3 - t3 * t1}
    vals = {k: coords(p) for k, p in sq.items()}
    if vals["t3^2"][0] or vals["[t1,t3]"][0]:
        raise DeformationError("u1 survives in t3^2 or t1 t3 - t3 t1")
    q1 = -vals["t3^2"][1]
    q2 = -vals["[t1,t3]"][1]
    checks["t1^2 = 0"] = vals["t1^2"] == [ZERO, ZERO]
    checks["t2^2 = 0"] = vals["t2^2"] == [ZERO, ZERO]
    log.append(f"t3^2 + ({q1}) u2 = 0 and t1 t3 - t3 t1 + ({q2}) u2 = 0 in gamma")

    # final relations, in the t alphabet, rewritten as polynomials in the s letters to evaluate
    tnames = ("t1", "t2", "t3")
    talph = named_alphabet(tnames)
    T = lambda x: parse_poly(x, talph)
    final = {
        "t1^2": T("t1*t1"),
        "t2^2": T("t2*t2"),
        "t3^2 + q1 u2": T("t3*t3") + T("t3*t1*t2*t3*t1*t2") * q1,
        "t1t3 - t3t1 + q2 u2": T("t1*t3 - t3*t1") + T("t3*t1*t2*t3*t1*t2") * q2,
        "iota5": T("t2*t1*t2 - t1*t2*t3 - t3*t2*t1"),
        "iota6": T("t2*t3*t2 - t1*t2*t1 + t3*t2*t3"),
    }
    subst = (t1, t2, t3)
    for k, p in final.items():
        val = ev.poly(_substitute(p, subst))
        checks[f"exact: {k}"] = not val
    corrections = {"t1": w1 * a, "t2": w2 * b + w3 * c, "t3": NCPolynomial.zero()}
    return Deformation(raw, corrections, final, q1, q2, checks, log)


def _substitute(p: NCPolynomial, images: tuple) -> NCPolynomial:
    out = NCPolynomial.zero()
    for w, c in p.terms.items():
        term = NCPolynomial.const(c)
        for a in w:
            term = term * images[a]
        out = out + term
    return out

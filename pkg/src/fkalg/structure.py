"""Radical, radical filtration, associated graded algebra, ideals, and idempotents.

The radical is the kernel of the trace form (a, b) -> tr(L_{ab}), which is
valid in characteristic zero. All heavy loops act through the sparse
generator multiplication matrices of :class:`FiniteAlgebra`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .free_algebra import NCPolynomial
from .linalg import (DEFAULT_PRIME, ONE, ZERO, RatMatrix, Subspace, dense_rank_mod_p, kernel,
                     vec_add, vec_dot, vec_iadd, vec_scale)
from .rewrite import FiniteAlgebra


# -- subspaces and ideals -----------------------------------------------------

@dataclass
class Ideal:
    """A two-sided ideal, stored as a fully reduced echelon basis."""

    ambient: FiniteAlgebra
    space: Subspace
    generators: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.space)

    @property
    def basis(self) -> list:
        return self.space.basis()

    def __contains__(self, v) -> bool:
        return self.space.contains(v)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.space.contains(v) for v in other.basis)

    def __eq__(self, other) -> bool:
        return isinstance(other, Ideal) and self.dim == other.dim and self.contains_ideal(other)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "basis": [[[k, str(a)] for k, a in sorted(v.items())] for v in self.basis],
        }


def _closure(A: FiniteAlgebra, space: Subspace, seeds: list, left: bool, right: bool) -> None:
    """Grow ``space`` to the smallest subspace containing seeds and stable
    under left and/or right multiplication by the generators."""
    # Breadth-first keeps the echelon rows short. The queue holds the actual
    # products rather than their reduced forms: partial spans are then always
    # spanned by small vectors, which keeps the rational entries small.
    queue = deque()
    for v in seeds:
        if space.add(v) is not None:
            queue.append(v)
    while queue:
        v = queue.popleft()
        for x in range(A.nletters):
            if left:
                w = A.lmul_gen(x, v)
                if space.add(w) is not None:
                    queue.append(w)
            if right:
                w = A.rmul_gen(v, x)
                if space.add(w) is not None:
                    queue.append(w)


def generated_ideal(A: FiniteAlgebra, gens) -> Ideal:
    """Smallest two-sided ideal containing ``gens`` (polynomials or vectors)."""
    vecs = [A.poly_vec(g) if isinstance(g, NCPolynomial) else dict(g) for g in gens]
    space = Subspace(A.dim)
    _closure(A, space, vecs, True, True)
    return Ideal(A, space, vecs)


def right_ideal(A: FiniteAlgebra, gens) -> Subspace:
    space = Subspace(A.dim)
    _closure(A, space, list(gens), False, True)
    return space


def left_ideal(A: FiniteAlgebra, gens) -> Subspace:
    space = Subspace(A.dim)
    _closure(A, space, list(gens), True, False)
    return space


def ideal_generators(A: FiniteAlgebra, I: Ideal) -> list:
    """A small generating set of I as a two-sided ideal, chosen greedily
    from its echelon basis in order of pivot."""
    if I.generators and generated_ideal(A, I.generators).dim == I.dim:
        return list(I.generators)
    space = Subspace(A.dim)
    gens = []
    for v in I.basis:
        if not space.contains(v):
            gens.append(v)
            _closure(A, space, [v], True, True)
    return gens


# -- trace form and radical -------------------------------------------------

def trace_vector(A: FiniteAlgebra) -> list:
    """t[j] = trace of left multiplication by the basis element b_j."""
    t = [ZERO] * A.dim
    words = A.basis
    for i in range(A.dim):
        memo = {(): {i: ONE}}
        for j, w in enumerate(words):  # basis is deglex sorted, so suffixes come first
            if w:
                memo[w] = A.lmul_gen(w[0], memo[w[1:]])
            c = memo[w].get(i)
            if c:
                t[j] += c
    return t


def gram_rows(A: FiniteAlgebra, t: list | None = None) -> list:
    """Rows of the trace form: row u maps v to t(b_u b_v)."""
    if t is None:
        t = trace_vector(A)
    tv = {j: c for j, c in enumerate(t) if c}
    memo = {(): tv}
    rows = []
    for w in A.basis:  # prefixes come first
        if w:
            memo[w] = A.ltranspose_apply(w[-1], memo[w[:-1]])
        rows.append(memo[w])
    return rows


@dataclass
class RadicalResult:
    ideal: Ideal
    trace: list
    gram_rank: int


def radical(A: FiniteAlgebra, modular_precheck: bool = True, p: int = DEFAULT_PRIME) -> RadicalResult:
    """Jacobson radical as the kernel of the trace form.

    With the modular pre-check, a maximal set of rows independent mod p is
    selected first; independence mod p implies rational independence, and
    every kernel vector is then checked exactly against all rows, so the
    result never depends on the prime.
    """
    t = trace_vector(A)
    rows = gram_rows(A, t)
    if modular_precheck:
        r, sel = dense_rank_mod_p(rows, A.dim, p)
        basis_rows = [rows[i] for i in sel]
    else:
        basis_rows = rows
    ker = kernel(RatMatrix.from_sparse_rows(basis_rows, A.dim)) if basis_rows else [
        {j: ONE} for j in range(A.dim)]
    for k in ker:
        # symmetric form: G k is a combination of the rows indexed by k
        acc: dict = {}
        for v, c in k.items():
            vec_iadd(acc, rows[v], c)
        if acc:
            raise ArithmeticError("modular row selection missed rational rank")
    space = Subspace(A.dim)
    for k in ker:
        space.add(k)
    return RadicalResult(Ideal(A, space), t, A.dim - len(space))


def is_semisimple(A: FiniteAlgebra, modular_precheck: bool = True) -> bool:
    if modular_precheck:
        rows = gram_rows(A)
        r, _ = dense_rank_mod_p(rows, A.dim)
        if r == A.dim:
            return True  # full rank mod p certifies full rational rank
    return radical(A, modular_precheck).ideal.dim == 0


# -- powers and filtration ---------------------------------------------------

def ideal_product(A: FiniteAlgebra, I: Ideal, gens: list) -> Ideal:
    """I * J where J is the two-sided ideal generated by ``gens``:
    the right ideal generated by {i g}."""
    seeds = [A.mul(v, g) for v in I.basis for g in gens]
    space = right_ideal(A, [s for s in seeds if s])
    return Ideal(A, space)


def radical_powers(A: FiniteAlgebra, J: Ideal, gens: list | None = None, limit: int = 64) -> list:
    """[A, J, J^2, ..., 0]. Raises if J is not nilpotent within ``limit``."""
    if gens is None:
        gens = ideal_generators(A, J)
    full = Subspace(A.dim)
    for j in range(A.dim):
        full.add({j: ONE})
    powers = [Ideal(A, full), J]
    cur = J
    while cur.dim:
        if len(powers) > limit:
            raise ArithmeticError("ideal is not nilpotent within the limit")
        nxt = ideal_product(A, cur, gens)
        if nxt.dim == cur.dim:
            raise ArithmeticError("ideal is not nilpotent")
        powers.append(nxt)
        cur = nxt
    return powers


def nilpotency_index(powers: list) -> int:
    """Smallest r with J^r = 0, from the output of :func:`radical_powers`."""
    return len(powers) - 1


# -- small algebras given by structure constants -----------------------------

class TableAlgebra:
    """Finite-dimensional algebra with an explicit multiplication table.

    ``table[i][j]`` is the vector of ``b_i * b_j``. Every basis element acts
    as a generator for ideal closures, so the generic routines above apply.
    ``labels`` optionally attaches a grading label to each basis element.
    """

    def __init__(self, table: list, unit: dict, names: list | None = None, labels: list | None = None):
        self.table = table
        self.dim = len(table)
        self.unit_vec = dict(unit)
        self.names = names or [f"b{i}" for i in range(self.dim)]
        self.labels = labels

    @property
    def nletters(self) -> int:
        return self.dim

    def one(self) -> dict:
        return dict(self.unit_vec)

    def mul(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for i, x in a.items():
            row = self.table[i]
            for j, y in b.items():
                vec_iadd(out, row[j], x * y)
        return out

    def lmul_gen(self, i: int, v: dict) -> dict:
        return self.mul({i: ONE}, v)

    def rmul_gen(self, v: dict, i: int) -> dict:
        return self.mul(v, {i: ONE})

    def power(self, a: dict, k: int) -> dict:
        out = self.one()
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def left_matrix(self, a: dict) -> RatMatrix:
        """Matrix of b -> a b (column j is a * b_j)."""
        cols = [self.mul(a, {j: ONE}) for j in range(self.dim)]
        data: dict = {}
        for j, col in enumerate(cols):
            for i, c in col.items():
                data.setdefault(i, {})[j] = c
        return RatMatrix(self.dim, self.dim, data)

    def is_associative(self, triples) -> bool:
        for i, j, k in triples:
            a, b, c = {i: ONE}, {j: ONE}, {k: ONE}
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                return False
        return True

    @classmethod
    def from_finite(cls, A: FiniteAlgebra) -> "TableAlgebra":
        table = [[A.mult(i, j) for j in range(A.dim)] for i in range(A.dim)]
        names = ["*".join(A.alphabet.names[a] for a in w) or "1" for w in A.basis]
        return cls(table, A.one(), names)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "names": self.names,
            "unit": [[k, str(a)] for k, a in sorted(self.unit_vec.items())],
            "table": [[[[k, str(a)] for k, a in sorted(self.table[i][j].items())] for j in range(self.dim)]
                      for i in range(self.dim)],
        }


def table_trace_vector(T: TableAlgebra) -> list:
    return [sum((T.table[k][m].get(m, ZERO) for m in range(T.dim)), ZERO) for k in range(T.dim)]


def table_radical(T: TableAlgebra) -> Ideal:
    t = table_trace_vector(T)
    rows = []
    for i in range(T.dim):
        row = {}
        for j in range(T.dim):
            c = vec_dot(T.table[i][j], {k: a for k, a in enumerate(t) if a})
            if c:
                row[j] = c
        rows.append(row)
    space = Subspace(T.dim)
    for k in kernel(RatMatrix.from_sparse_rows(rows, T.dim)):
        space.add(k)
    return Ideal(T, space)


def radical_of(A) -> Ideal:
    """Radical of either kind of algebra."""
    if isinstance(A, TableAlgebra):
        return table_radical(A)
    return radical(A).ideal


def whole(A) -> Ideal:
    full = Subspace(A.dim)
    for j in range(A.dim):
        full.add({j: ONE})
    return Ideal(A, full)


@dataclass
class GradedAlgebra:
    """Associated graded algebra of a filtration A = F_0 ⊇ F_1 ⊇ ... ⊇ 0.

    ``adapted`` lists ambient vectors whose classes form bases of the layers
    F_d / F_{d+1}, layer by layer; ``degrees`` gives the layer of each. The
    graded product of two adapted elements is the ambient product expressed
    in the adapted basis and truncated to the summed degree.
    """

    ambient: object
    filtration: list  # list[Subspace]
    adapted: list
    degrees: list
    _inv: RatMatrix | None = None

    @property
    def dims(self) -> tuple:
        top = max(self.degrees, default=-1)
        return tuple(self.degrees.count(d) for d in range(top + 1))

    @property
    def dim(self) -> int:
        return len(self.adapted)

    def layer(self, d: int) -> list:
        return [i for i, g in enumerate(self.degrees) if g == d]

    def coordinates(self, v: dict) -> dict:
        """Coordinates of an ambient vector in the adapted basis."""
        if self._inv is None:
            from .linalg import inverse
            m = RatMatrix.from_sparse_rows(self.adapted, self.ambient.dim).transpose()
            self._inv = inverse(m)
        return self._inv.apply(v)

    def degree_of(self, v: dict) -> int:
        """Largest d with v in F_d; the length of the filtration for zero."""
        d = 0
        while d + 1 < len(self.filtration) and self.filtration[d + 1].contains(v):
            d += 1
        return d

    def leading(self, v: dict, d: int) -> dict:
        """Class of v in F_d / F_{d+1}, as adapted coordinates of degree d."""
        c = self.coordinates(v)
        if any(self.degrees[i] < d for i in c):
            raise ValueError(f"vector is not in filtration step {d}")
        return {i: a for i, a in c.items() if self.degrees[i] == d}

    def to_table(self) -> TableAlgebra:
        """The graded algebra itself, on the adapted basis."""
        A = self.ambient
        n = self.dim
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                d = self.degrees[i] + self.degrees[j]
                p = A.mul(self.adapted[i], self.adapted[j])
                c = self.coordinates(p) if p else {}
                row.append({k: a for k, a in c.items() if self.degrees[k] == d})
            table.append(row)
        unit = self.coordinates(A.one())
        unit = {k: a for k, a in unit.items() if self.degrees[k] == 0}
        return TableAlgebra(table, unit, labels=list(self.degrees))


def graded_from_filtration(A, powers: list) -> GradedAlgebra:
    """Adapt a basis to the filtration given by ``powers`` (Ideals or Subspaces)."""
    filt = [P.space if isinstance(P, Ideal) else P for P in powers]
    adapted, degrees = [], []
    for d in range(len(filt)):
        upper = filt[d]
        acc = Subspace(A.dim)
        if d + 1 < len(filt):
            for v in filt[d + 1].basis():
                acc.add(v)
        for v in upper.basis():
            if acc.add(v) is not None:
                adapted.append(v)
                degrees.append(d)
    return GradedAlgebra(A, filt, adapted, degrees)


def radical_filtration(A) -> GradedAlgebra:
    J = radical_of(A)
    return graded_from_filtration(A, radical_powers(A, J))


# -- tables of products with a fixed element ----------------------------------

def left_table(A: FiniteAlgebra, e: dict) -> list:
    """[e * b_j for every basis word b_j], by extending prefixes."""
    out = [None] * A.dim
    memo = {(): dict(e)}
    for j, w in enumerate(A.basis):
        if w:
            memo[w] = A.rmul_gen(memo[w[:-1]], w[-1])
        out[j] = memo[w]
    return out


def right_table(A: FiniteAlgebra, e: dict) -> list:
    """[b_j * e for every basis word b_j], by extending suffixes."""
    out = [None] * A.dim
    memo = {(): dict(e)}
    for j, w in enumerate(A.basis):
        if w:
            memo[w] = A.lmul_gen(w[0], memo[w[1:]])
        out[j] = memo[w]
    return out


def combine(table: list, y: dict) -> dict:
    """sum_j y_j table[j]."""
    out: dict = {}
    for j, c in y.items():
        vec_iadd(out, table[j], c)
    return out


def left_mul(A: FiniteAlgebra, e: dict, y: dict) -> dict:
    return combine(left_table(A, e), y)


# -- symmetric-group automorphisms ------------------------------------------

class Automorphisms:
    """Letter permutations x_ij -> x_{g(i) g(j)} acting on a FiniteAlgebra.

    The images of basis words are cached per permutation as sparse columns.
    Construction checks that every permuted relation vanishes, so each map
    really is an algebra automorphism.
    """

    def __init__(self, A: FiniteAlgebra, n: int, relations=None):
        from .free_algebra import act, fk_pairs
        self.A = A
        self.n = n
        self.pairs = fk_pairs(n)
        self._cols: dict = {}
        self._relations = list(relations or [])
        self._checked: set = set()
        self._act = act

    def _letter(self, g, a):
        from .free_algebra import letter
        i, j = self.pairs[a]
        return letter(self.n, g(i), g(j))

    def columns(self, g) -> list:
        cols = self._cols.get(g)
        if cols is None:
            if g not in self._checked and self._relations:
                for r in self._relations:
                    if self.A.poly_vec(self._act(g, r, self.n)):
                        raise ValueError(f"{g} does not preserve the relations")
                self._checked.add(g)
            A = self.A
            memo = {(): A.one()}
            cols = [None] * A.dim
            for j, w in enumerate(A.basis):
                if w:
                    k, s = self._letter(g, w[0])
                    memo[w] = vec_scale(A.lmul_gen(k, memo[w[1:]]), s)
                cols[j] = memo[w]
            self._cols[g] = cols
        return cols

    def apply(self, g, v: dict) -> dict:
        return combine(self.columns(g), v)


# -- idempotents --------------------------------------------------------------

def rep_images(A: FiniteAlgebra, rho) -> list:
    """rho(b_j) for every basis word."""
    out = [None] * A.dim
    memo = {(): RatMatrix.identity(rho.dim)}
    for j, w in enumerate(A.basis):
        if w:
            memo[w] = memo[w[:-1]] * rho.images[w[-1]]
        out[j] = memo[w]
    return out


def evaluate(images: list, v: dict) -> RatMatrix:
    d = images[0].rows
    out = RatMatrix.zero(d, d)
    for j, c in v.items():
        out = out + images[j] * c
    return out


def preimage(A: FiniteAlgebra, images: list, targets: list) -> dict:
    """An element a with rho_k(a) = targets[k] for every simple k.

    ``images[k]`` is :func:`rep_images` of the k-th simple. Basis columns are
    taken greedily in order until the evaluation map is onto, so the result is
    supported on few short words.
    """
    entries = [(k, r, c) for k, im in enumerate(images) for r in range(im[0].rows) for c in range(im[0].cols)]
    chosen, span = [], Subspace()
    for j in range(A.dim):
        col = {e: images[k][j][r, c] for e, (k, r, c) in enumerate(entries) if images[k][j][r, c]}
        if span.add(col) is not None:
            chosen.append(j)
        if len(chosen) == len(entries):
            break
    m = RatMatrix.from_rows([[images[k][j][r, c] for j in chosen] for (k, r, c) in entries])
    from .linalg import solve
    rhs = [targets[k][r, c] for (k, r, c) in entries]
    sol = solve(m, rhs)
    if not sol.consistent:
        raise ArithmeticError("evaluation map is not onto the semisimple quotient")
    return {chosen[i]: a for i, a in sol.particular.items()}


class LiftingError(ArithmeticError):
    pass


def lift_idempotent(A: FiniteAlgebra, e: dict, max_iter: int = 64) -> dict:
    """Refine e (idempotent modulo the radical) by e <- 3e^2 - 2e^3."""
    for _ in range(max_iter):
        lt = left_table(A, e)
        e2 = combine(lt, e)
        if e2 == e:
            return e
        e3 = combine(lt, e2)
        e = vec_add(vec_scale(e2, 3), e3, -2)
    raise LiftingError("idempotent lifting did not converge")


def equivariant_idempotents(A: FiniteAlgebra, e0: dict, group: list, autos: Automorphisms,
                            max_iter: int = 64) -> dict:
    """Exact idempotents {g(e)} that are orthogonal and sum to 1.

    ``e0`` must lift a primitive idempotent of a commutative semisimple
    quotient whose idempotents ``group`` permutes freely and transitively.
    The step e <- e + e^2 - T e, with T = sum_g g(e^2) invariant, keeps the
    family equivariant and pushes the defect one radical layer deeper.
    Returns the mapping g -> g(e).
    """
    e = dict(e0)
    for _ in range(max_iter):
        e2 = combine(left_table(A, e), e)
        T: dict = {}
        for g in group:
            vec_iadd(T, autos.apply(g, e2))
        new = vec_add(vec_add(e, e2), combine(right_table(A, e), T), -1)
        if new == e:
            break
        e = new
    else:
        raise LiftingError("equivariant lifting did not converge")
    fam = {g: autos.apply(g, e) for g in group}
    check_orthogonal_family(A, e, fam)
    return fam


def check_orthogonal_family(A: FiniteAlgebra, e: dict, fam: dict) -> None:
    """e f = delta(e, f) e for every member f, and the members sum to 1.

    By equivariance this covers every pair of the family.
    """
    lt = left_table(A, e)
    total: dict = {}
    for f in fam.values():
        vec_iadd(total, f)
        p = combine(lt, f)
        if f == e:
            if p != e:
                raise LiftingError("not idempotent")
        elif p:
            raise LiftingError("members are not orthogonal")
    if total != A.one():
        raise LiftingError("members do not sum to one")


# -- basic algebra and the orbit algebra --------------------------------------

def intersect(S: Subspace, vectors: list) -> list:
    """Basis of span(vectors) ∩ S (as ambient vectors)."""
    residues = [S.reduce(v) for v in vectors]
    if not residues:
        return []
    cols = sorted({c for r in residues for c in r})
    rows = [{l: r[c] for l, r in enumerate(residues) if r.get(c)} for c in cols]
    m = RatMatrix.from_sparse_rows(rows, len(vectors)) if rows else RatMatrix.zero(0, len(vectors))
    out = []
    for k in kernel(m):
        v: dict = {}
        for l, c in k.items():
            vec_iadd(v, vectors[l], c)
        out.append(v)
    return out


@dataclass
class BasicAlgebra:
    """A complete family of orthogonal primitive idempotents, one per simple.

    ``vertices`` are simple indices; ``idempotent[v]`` is e_v; ``mover[v]`` is
    the group element g with g(e_base) = e_v. ``peirce[(u, v)]`` is
    dim e_u A e_v, so the basic algebra fAf (f the sum of the e_v) has
    dimension ``dim``.
    """

    A: FiniteAlgebra
    simple_dims: list
    blocks: dict
    idempotent: dict
    mover: dict
    peirce: dict
    projective: dict  # v -> Subspace e_v A
    costandard: dict  # v -> Subspace A e_v
    base: int = 0

    @property
    def vertices(self) -> list:
        return sorted(self.idempotent)

    @property
    def dim(self) -> int:
        return sum(self.peirce.values())

    @property
    def f(self) -> dict:
        out: dict = {}
        for e in self.idempotent.values():
            vec_iadd(out, e)
        return out

    def morita_total(self) -> int:
        """sum over u, v of d_u d_v dim e_u A e_v, which must equal dim A."""
        return sum(self.simple_dims[u] * self.simple_dims[v] * d for (u, v), d in self.peirce.items())

    def projective_dim(self, v: int) -> int:
        """dim e_v B = sum over u of dim e_v A e_u."""
        return sum(d for (a, b), d in self.peirce.items() if a == v)


def simple_index(images: list, v: dict) -> int:
    """The unique simple on which v evaluates to nonzero."""
    hits = [k for k, im in enumerate(images) if not evaluate(im, v).is_zero()]
    if len(hits) != 1:
        raise LiftingError("element is not supported on a single block")
    return hits[0]


def basic_algebra(A: FiniteAlgebra, simples: list, group: list, autos: Automorphisms,
                  radical_dim: int | None = None, full_peirce: bool = False) -> BasicAlgebra:
    """Lift block and primitive idempotents and measure the Peirce pieces.

    ``group`` must permute the simples freely and transitively through the
    automorphisms; simple 0 is the base vertex. Only the base row of Peirce
    dimensions is computed unless ``full_peirce``; the other rows are images
    of it under the automorphisms and are filled in from them.
    """
    images = [rep_images(A, rho) for rho in simples]
    dims = [rho.dim for rho in simples]
    if radical_dim is not None and sum(d * d for d in dims) != A.dim - radical_dim:
        raise ValueError("simples do not account for the semisimple quotient")
    zero = [RatMatrix.zero(d, d) for d in dims]
    targets = list(zero)
    targets[0] = RatMatrix.identity(dims[0])
    eps0 = preimage(A, images, targets)
    blocks_by_g = equivariant_idempotents(A, eps0, group, autos)
    ident = next(g for g in group if g.is_identity())
    eps = blocks_by_g[ident]
    if dims[0] > 1:
        t = list(zero)
        t[0] = RatMatrix(dims[0], dims[0], {0: {0: ONE}})
        a = preimage(A, images, t)
        a = combine(left_table(A, eps), combine(right_table(A, eps), a))
        base = lift_idempotent(A, a)
    else:
        base = eps
    idem, mover, blocks = {}, {}, {}
    for g in group:
        v = simple_index(images, blocks_by_g[g])
        if v in idem:
            raise ValueError("group does not act freely on the simples")
        blocks[v] = blocks_by_g[g]
        idem[v] = autos.apply(g, base)
        mover[v] = g
    if len(idem) != len(simples):
        raise ValueError("group does not act transitively on the simples")
    # e_v A = g(e_0 A) and A e_v = g(A e_0), so only the base closures are needed
    proj0, costd0 = right_ideal(A, [idem[0]]), left_ideal(A, [idem[0]])
    proj, costd = {}, {}
    for v, g in mover.items():
        proj[v] = _transport(autos, g, proj0)
        costd[v] = _transport(autos, g, costd0)
    peirce = {}
    rows = idem if full_peirce else [0]
    for u in rows:
        for v in idem:
            S = proj[u].copy()
            for q in costd[v].basis():
                S.add(q)
            peirce[(u, v)] = len(proj[u]) + len(costd[v]) - len(S)
    if not full_peirce:
        # e_u A e_v = g(e_0 A e_w) where g(e_0) = e_u and g(e_w) = e_v
        inv = {g: v for v, g in mover.items()}
        for u in idem:
            g = mover[u]
            for w in idem:
                v = inv[_compose(g, mover[w])]
                peirce[(u, v)] = peirce[(0, w)]
    return BasicAlgebra(A, dims, blocks, idem, mover, peirce, proj, costd)


def _compose(g, h):
    return g * h


def _transport(autos: Automorphisms, g, S: Subspace) -> Subspace:
    out = Subspace(S.cols)
    for b in S.basis():
        out.add(autos.apply(g, b))
    return out


@dataclass
class OrbitAlgebra:
    """The projective P = e A f at the base vertex, with the product
    a * b = a g_v(b) for a in e A e_v, where g_v(e) = e_v.

    Its basis is the union of the Peirce pieces e A e_v (``labels`` records v),
    so the multiplication is graded by the group acting on the vertices:
    a product of pieces at u and w lies at ``vertex_product[u][w]``.
    ``vertex_sign[v]`` is the sign of the permutation moving the base to v.
    """

    basic: BasicAlgebra
    algebra: TableAlgebra
    components: dict  # v -> list of ambient vectors
    ambient_basis: list
    vertex_product: list
    vertex_sign: list


def orbit_algebra(red: BasicAlgebra, autos: Automorphisms) -> OrbitAlgebra:
    A = red.A
    e = red.idempotent[0]
    P = red.projective[0]
    pivots = P.pivots()
    pidx = {p: k for k, p in enumerate(pivots)}
    prow = [P.rows[p] for p in pivots]

    def pcoords(v: dict) -> dict:
        if not P.contains(v):
            raise ArithmeticError("vector left the projective")
        return {pidx[c]: a for c, a in v.items() if c in pidx}

    def ambient(c: dict) -> dict:
        out: dict = {}
        for k, a in c.items():
            vec_iadd(out, prow[k], a)
        return out

    # right action of the generators on P, in P coordinates
    R = [[pcoords(A.rmul_gen(prow[k], x)) for k in range(len(prow))] for x in range(A.nletters)]

    def act_word_table(c: dict) -> list:
        out = [None] * A.dim
        memo = {(): c}
        for j, w in enumerate(A.basis):
            if w:
                prev = memo[w[:-1]]
                nxt: dict = {}
                for k, a in prev.items():
                    vec_iadd(nxt, R[w[-1]][k], a)
                memo[w] = nxt
            out[j] = memo[w]
        return out

    comps, comp_spaces, basis, labels = {}, {}, [], []
    for v in red.vertices:
        vecs = intersect(P, red.costandard[v].basis())
        S = Subspace(len(prow))
        for x in vecs:
            S.add(pcoords(x))
        comp_spaces[v] = S
        comps[v] = [ambient(r) for r in S.basis()]
        for r in S.basis():
            basis.append(r)
            labels.append(v)
    offset, k = {}, 0
    for v in red.vertices:
        offset[v] = k
        k += len(comp_spaces[v])
    inv = {g: v for v, g in red.mover.items()}

    def gamma_coords(c: dict, v: int) -> dict:
        S = comp_spaces[v]
        if not S.contains(c):
            raise ArithmeticError("product left its graded component")
        piv = S.pivots()
        return {offset[v] + i: c[p] for i, p in enumerate(piv) if c.get(p)}

    amb = [ambient(b) for b in basis]
    n = len(basis)
    table = [[None] * n for _ in range(n)]
    for i in range(n):
        v = labels[i]
        g = red.mover[v]
        acts = act_word_table(basis[i])
        for j in range(n):
            y = autos.apply(g, amb[j])
            prod = combine(acts, y)
            target = inv[g * red.mover[labels[j]]]
            table[i][j] = gamma_coords(prod, target) if prod else {}
    unit = gamma_coords(pcoords(e), 0)
    names = [f"{labels[i]}.{i - offset[labels[i]]}" for i in range(n)]
    vprod = [[inv[red.mover[u] * red.mover[w]] for w in red.vertices] for u in red.vertices]
    signs = [red.mover[v].sign() for v in red.vertices]
    return OrbitAlgebra(red, TableAlgebra(table, unit, names, labels), comps, amb, vprod, signs)

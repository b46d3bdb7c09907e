"""First extension groups between representations, via cocycles modulo coboundaries.

A cocycle f between representations rho (sub) and rho2 (quotient) satisfies
f(xy) = rho(x) f(y) + f(x) rho2(y); it is determined by its values on the
generators, and the defining relations give linear constraints on those values.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .free_algebra import NCPolynomial, Presentation, fk_pairs, letter
from .linalg import ONE, ZERO, Echelon, Q, RatMatrix, inverse, kernel, solve, vec_iadd
from .perm import Permutation, klein_four
from .representations import (MatrixRep, act_on_rep, intertwiner_matrix, sign_value,
                              two_dim_rep)


@dataclass(frozen=True)
class Cocycle:
    source: MatrixRep
    target: MatrixRep
    values: tuple  # RatMatrix per letter, shape source.dim x target.dim
    sigma: Permutation | None = None
    tau: Permutation | None = None

    def of_word(self, w) -> RatMatrix:
        rho, rho2 = self.source, self.target
        out = RatMatrix.zero(rho.dim, rho2.dim)
        for i, a in enumerate(w):
            out = out + rho.of_word(w[:i]) * self.values[a] * rho2.of_word(w[i + 1:])
        return out

    def of_poly(self, p: NCPolynomial) -> RatMatrix:
        out = RatMatrix.zero(self.source.dim, self.target.dim)
        for w, c in p.terms.items():
            if w:
                out = out + self.of_word(w) * c
        return out

    def vector(self) -> dict:
        d2 = self.source.dim * self.target.dim
        v = {}
        for k, m in enumerate(self.values):
            for r, row in m.data.items():
                for c, a in row.items():
                    v[k * d2 + r * self.target.dim + c] = a
        return v

    def is_cocycle(self, pres: Presentation) -> bool:
        return all(self.of_poly(r).is_zero() for r in pres.relations)

    def __add__(self, other: "Cocycle") -> "Cocycle":
        return Cocycle(self.source, self.target, tuple(a + b for a, b in zip(self.values, other.values)), self.sigma, self.tau)

    def __mul__(self, c) -> "Cocycle":
        return Cocycle(self.source, self.target, tuple(a * c for a in self.values), self.sigma, self.tau)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)


def cocycle_from_vector(rho: MatrixRep, rho2: MatrixRep, v: dict, sigma=None, tau=None) -> Cocycle:
    d1, d2 = rho.dim, rho2.dim
    nl = len(rho.images)
    data = [dict() for _ in range(nl)]
    for idx, a in v.items():
        k, rem = divmod(idx, d1 * d2)
        r, c = divmod(rem, d2)
        data[k].setdefault(r, {})[c] = a
    return Cocycle(rho, rho2, tuple(RatMatrix(d1, d2, m) for m in data), sigma, tau)


def coboundary(rho: MatrixRep, rho2: MatrixRep, M: RatMatrix) -> Cocycle:
    """a -> rho(a) M - M rho2(a)."""
    return Cocycle(rho, rho2, tuple(A * M - M * B for A, B in zip(rho.images, rho2.images)))


@dataclass
class ExtSpace:
    source: MatrixRep
    target: MatrixRep
    Z1: list
    B1: list
    representatives: list
    _bech: Echelon = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.Z1) - len(self.B1)

    def _b_echelon(self) -> Echelon:
        if self._bech is None:
            e = Echelon()
            for b in self.B1:
                e.add(b.vector())
            e.reduce_fully()
            self._bech = e
        return self._bech

    def is_coboundary(self, f: Cocycle) -> bool:
        return self._b_echelon().contains(f.vector())

    def class_coordinates(self, f: Cocycle) -> list:
        """Coordinates of the class of f in the chosen representatives."""
        b = self._b_echelon()
        r = b.reduce(f.vector())
        reps = [b.reduce(x.vector()) for x in self.representatives]
        # solve r = sum c_i reps_i
        cols = sorted({k for v in reps for k in v} | set(r))
        m = RatMatrix.from_sparse_rows([{i: v.get(k, ZERO) for i, v in enumerate(reps) if v.get(k)} for k in cols], len(reps))
        s = solve(m, [r.get(k, ZERO) for k in cols])
        if not s.consistent:
            raise ValueError("not a cocycle of this space")
        return [s.particular.get(i, ZERO) for i in range(len(reps))]

    def cohomologous(self, f: Cocycle, g: Cocycle) -> bool:
        return self.is_coboundary(f - g)


def constraint_rows(pres: Presentation, rho: MatrixRep, rho2: MatrixRep) -> list:
    """Linear constraints on generator values imposed by the relations."""
    d1, d2 = rho.dim, rho2.dim
    blk = d1 * d2
    rows = []
    cache: dict = {}

    def left(w):
        if ("L", w) not in cache:
            cache[("L", w)] = rho.of_word(w)
        return cache[("L", w)]

    def right(w):
        if ("R", w) not in cache:
            cache[("R", w)] = rho2.of_word(w)
        return cache[("R", w)]

    for rel in pres.relations:
        acc = [dict() for _ in range(blk)]  # output entry -> {unknown: coeff}
        for w, coef in rel.terms.items():
            for i, k in enumerate(w):
                P, S = left(w[:i]), right(w[i + 1:])
                for r in range(d1):
                    prow = P.data.get(r)
                    if not prow:
                        continue
                    for a, pa in prow.items():
                        for b in range(d2):
                            srow = S.data.get(b)
                            if not srow:
                                continue
                            for c, sb in srow.items():
                                var = k * blk + a * d2 + b
                                vec_iadd(acc[r * d2 + c], {var: coef * pa * sb})
        rows.extend(a for a in acc if a)
    return rows


def ext1(pres: Presentation, rho: MatrixRep, rho2: MatrixRep, sigma=None, tau=None) -> ExtSpace:
    d1, d2 = rho.dim, rho2.dim
    nvar = len(rho.images) * d1 * d2
    rows = constraint_rows(pres, rho, rho2)
    m = RatMatrix.from_sparse_rows(rows, nvar) if rows else RatMatrix.zero(0, nvar)
    Z = [cocycle_from_vector(rho, rho2, v, sigma, tau) for v in kernel(m)]
    bech = Echelon()
    B = []
    for a in range(d1):
        for b in range(d2):
            cb = coboundary(rho, rho2, RatMatrix(d1, d2, {a: {b: ONE}}))
            if bech.add(cb.vector()):
                B.append(Cocycle(rho, rho2, cb.values, sigma, tau))
    bech.reduce_fully()
    # representatives: Z modulo B, normalized by full reduction
    q = Echelon()
    for z in Z:
        q.add(bech.reduce(z.vector()))
    q.reduce_fully()
    reps = [cocycle_from_vector(rho, rho2, bech.reduce(v), sigma, tau) for v in q.basis()]
    return ExtSpace(rho, rho2, Z, B, reps, bech)


def ext_dim(pres: Presentation, rho: MatrixRep, rho2: MatrixRep) -> int:
    return ext1(pres, rho, rho2).dim


def ext_table(pres: Presentation, simples: list) -> list:
    return [[ext_dim(pres, a, b) for b in simples] for a in simples]


# -- the scalar system for characters ---------------------------------------

def reduced_system_rows(n: int, tau: Permutation) -> list:
    """Constraint rows in the unknowns f_ij (i<j) for Ext(rho_e, rho_tau).

    Four families: squares, disjoint pairs, and two per triple i<j<k.
    """
    pairs = fk_pairs(n)
    idx = {p: k for k, p in enumerate(pairs)}

    def r(i, j):
        k, s = letter(n, i, j)
        return sign_value(tau, *pairs[k]) * s

    def f(i, j):
        return idx[(i, j)]

    rows = []

    def add(row):
        row = {k: Q(v) for k, v in row.items() if v}
        if row:
            rows.append(row)

    for i, j in pairs:
        add({f(i, j): 1 + r(i, j)})
    for (i, j), (k, l) in _disjoint_pair_pairs(n):
        row: dict = {}
        vec_iadd(row, {f(i, j): Q(1 - r(k, l))})
        vec_iadd(row, {f(k, l): Q(-(1 - r(i, j)))})
        add(row)
    for i, j, k in _triples(n):
        row = {}
        vec_iadd(row, {f(i, j): Q(r(j, k) - 1)})
        vec_iadd(row, {f(j, k): Q(1 - r(i, k))})
        vec_iadd(row, {f(i, k): Q(-(1 + r(i, j)))})
        add(row)
        row = {}
        vec_iadd(row, {f(i, j): Q(1 - r(i, k))})
        vec_iadd(row, {f(j, k): Q(r(i, j) - 1)})
        vec_iadd(row, {f(i, k): Q(-(r(j, k) + 1))})
        add(row)
    return rows


def _disjoint_pair_pairs(n):
    pairs = fk_pairs(n)
    for a in pairs:
        for b in pairs:
            if a < b and not set(a) & set(b):
                yield a, b


def _triples(n):
    return itertools.combinations(range(1, n + 1), 3)


@dataclass
class ReducedExt:
    tau: Permutation
    rows: list
    solutions: list
    coboundary: dict
    dim: int

    @property
    def rank(self) -> int:
        return len(fk_pairs(self.tau.n)) - len(self.solutions)


def ext1_reduced_one_dim(n: int, tau: Permutation) -> ReducedExt:
    pairs = fk_pairs(n)
    rows = reduced_system_rows(n, tau)
    m = RatMatrix.from_sparse_rows(rows, len(pairs))
    sols = kernel(m)
    cob = {k: Q(1 - sign_value(tau, i, j)) for k, (i, j) in enumerate(pairs) if 1 - sign_value(tau, i, j)}
    e = Echelon()
    for v in sols:
        e.add(v)
    cob_in = bool(cob) and e.contains(cob)
    dim = len(sols) - (1 if cob_in else 0)
    return ReducedExt(tau, rows, sols, cob, dim)


# -- transport of cocycles --------------------------------------------------

def transport_cocycle(mu: Permutation, c: Cocycle, mode: str = "group") -> Cocycle:
    """Move a cocycle along mu.

    ``group``: (mu f)(x) = f(mu^{-1} x), a cocycle between mu.rho and mu.rho2.
    ``conjugation``: f(x) -> m f(x) m2^{-1} with the Klein-group intertwiners
    m = m(sigma mu sigma^{-1}), m2 = m(tau mu tau^{-1}), in the direction in
    which rho_nu = m rho_e m^{-1}; requires mu in V and the permutation labels
    of the two representations.
    """
    n = c.source.n
    new_src = act_on_rep(mu, c.source)
    new_tgt = act_on_rep(mu, c.target)
    sig2 = c.sigma * mu.inverse() if c.sigma is not None else None
    tau2 = c.tau * mu.inverse() if c.tau is not None else None
    if mode == "group":
        inv = mu.inverse()
        vals = []
        for i, j in fk_pairs(n):
            k, s = letter(n, inv(i), inv(j))
            vals.append(c.values[k] * s)
        return Cocycle(new_src, new_tgt, tuple(vals), sig2, tau2)
    if mode == "conjugation":
        if mu not in klein_four():
            raise ValueError("conjugation transport needs mu in the Klein four-group")
        if c.sigma is None or c.tau is None:
            raise ValueError("conjugation transport needs permutation labels")
        m1 = intertwiner_matrix(c.sigma * mu * c.sigma.inverse())
        m2 = intertwiner_matrix(c.tau * mu * c.tau.inverse())
        m1i, m2i = inverse(m1), inverse(m2)
        src = tuple(m1 * a * m1i for a in c.source.images)
        tgt = tuple(m2 * a * m2i for a in c.target.images)
        if src != new_src.images or tgt != new_tgt.images:
            raise ValueError("intertwiners do not realize the transported representations")
        vals = tuple(m1 * v * m2i for v in c.values)
        return Cocycle(new_src, new_tgt, vals, sig2, tau2)
    raise ValueError(f"unknown transport mode {mode!r}")


# -- named cocycles for D_4(1,1) --------------------------------------------

def _cocycle_on(rho, rho2, assign: dict, sigma=None, tau=None) -> Cocycle:
    vals = []
    for i, j in fk_pairs(4):
        m = assign.get((i, j))
        vals.append(RatMatrix.from_rows(m) if m is not None else RatMatrix.zero(rho.dim, rho2.dim))
    return Cocycle(rho, rho2, tuple(vals), sigma, tau)


def named_representatives() -> dict:
    """The cocycles f1, f2, f3 (from rho_e) and g1, g3 (from nu1 . rho_e) of D_4(1,1)."""
    e = Permutation.identity(4)
    s2 = Permutation.parse("(2 3)", 4)
    s3 = Permutation.parse("(3 4)", 4)
    nu1 = Permutation.parse("(1 3)(2 4)", 4)
    re_, rs2, rs3 = two_dim_rep(e), two_dim_rep(s2), two_dim_rep(s3)
    I = [[1, 0], [0, 1]]
    D = [[1, 0], [0, -1]]
    J = [[0, -1], [1, 0]]  # with [[0, 1], [-1, 0]] the map is a coboundary, see printed_f2
    out = {
        "f1": _cocycle_on(re_, rs2, {(1, 4): D}, e, s2),
        "f3": _cocycle_on(re_, rs2, {(2, 3): I}, e, s2),
        "f2": _cocycle_on(re_, rs3, {(1, 2): J, (3, 4): I}, e, s3),
    }
    src, tgt = act_on_rep(nu1, re_), act_on_rep(nu1, rs2)
    sig, tau = e * nu1.inverse(), s2 * nu1.inverse()
    out["g1"] = _cocycle_on(src, tgt, {(1, 4): I}, sig, tau)
    out["g3"] = _cocycle_on(src, tgt, {(2, 3): D}, sig, tau)
    return out


def printed_f2() -> Cocycle:
    """x12 -> [[0, 1], [-1, 0]], x34 -> identity on Ext(rho_e, rho_s3).

    Under f(xy) = rho(x) f(y) + f(x) rho2(y) this is a cocycle but also a
    coboundary; the same matrices give a nonzero class read as Ext(rho_s3, rho_e).
    """
    e, s3 = Permutation.identity(4), Permutation.parse("(3 4)", 4)
    return _cocycle_on(two_dim_rep(e), two_dim_rep(s3), {(1, 2): [[0, 1], [-1, 0]], (3, 4): [[1, 0], [0, 1]]}, e, s3)


def leibniz_check(c: Cocycle, rs, rng: random.Random, trials: int = 500, max_len: int = 6) -> bool:
    """f(nf(uv)) == rho(u) f(v) + f(u) rho2(v) for random words u, v."""
    nl = len(c.values)
    for _ in range(trials):
        u = tuple(rng.randrange(nl) for _ in range(rng.randint(0, max_len)))
        v = tuple(rng.randrange(nl) for _ in range(rng.randint(0, max_len)))
        lhs = c.of_poly(rs.normal_form(NCPolynomial.word(u + v)))
        rhs = c.source.of_word(u) * c.of_poly(rs.normal_form(NCPolynomial.word(v))) + \
            c.of_poly(rs.normal_form(NCPolynomial.word(u))) * c.target.of_word(v)
        if lhs != rhs:
            return False
    return True

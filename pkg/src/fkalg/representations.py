"""Explicit matrix representations: sign characters, their classification,
the two-dimensional simples of D_4(1,1), the symmetric-group action on
representations, and intertwiners."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import is_square, isqrt, mpq

from .free_algebra import (NCPolynomial, Presentation, fk_alphabet, fk_pairs, letter,
                           present_D)
from .linalg import ZERO, Q, RatMatrix, kernel, rank
from .perm import Permutation, all_perms, coset_reps_mod_klein, klein_four


@dataclass(frozen=True)
class MatrixRep:
    """Generator images (indexed by letter) as square rational matrices."""

    n: int
    dim: int
    images: tuple  # tuple[RatMatrix, ...], one per letter
    name: str = ""

    def image(self, letter_index: int) -> RatMatrix:
        return self.images[letter_index]

    def of_word(self, w) -> RatMatrix:
        m = RatMatrix.identity(self.dim)
        for a in w:
            m = m * self.images[a]
        return m

    def of_poly(self, p: NCPolynomial) -> RatMatrix:
        out = RatMatrix.zero(self.dim, self.dim)
        for w, c in p.terms.items():
            out = out + self.of_word(w) * c
        return out

    def satisfies(self, pres: Presentation) -> bool:
        return all(self.of_poly(r).is_zero() for r in pres.relations)

    def signs(self) -> tuple:
        """Scalar images of a one-dimensional representation."""
        if self.dim != 1:
            raise ValueError("not one-dimensional")
        return tuple(m[0, 0] for m in self.images)

    def __eq__(self, other):
        return isinstance(other, MatrixRep) and (self.n, self.dim, self.images) == (other.n, other.dim, other.images)

    def __hash__(self):
        return hash((self.n, self.dim, self.images))

    def to_json(self) -> dict:
        alph = fk_alphabet(self.n)
        return {
            "dim": self.dim,
            "name": self.name,
            "images": {alph.names[k]: [[str(a) for a in row] for row in m.to_rows()] for k, m in enumerate(self.images)},
        }


def scalar(c) -> RatMatrix:
    return RatMatrix.from_rows([[Q(c)]])


DIAG = RatMatrix.from_rows([[1, 0], [0, -1]])
SWAP = RatMatrix.from_rows([[0, 1], [1, 0]])


# -- one-dimensional representations ----------------------------------------

def sign_value(sigma: Permutation, i: int, j: int) -> int:
    return 1 if sigma(i) < sigma(j) else -1


def sign_rep(sigma: Permutation, n: int | None = None) -> MatrixRep:
    """x_ij -> +1 if sigma(i) < sigma(j), else -1."""
    n = n or sigma.n
    imgs = tuple(scalar(sign_value(sigma, i, j)) for i, j in fk_pairs(n))
    return MatrixRep(n, 1, imgs, sigma.cycle_string())


def _rational_sqrts(a: mpq) -> list:
    if a == 0:
        return [ZERO]
    if a < 0:
        return []
    p, q = a.numerator, a.denominator
    if is_square(p) and is_square(q):
        r = mpq(isqrt(p), isqrt(q))
        return [r, -r]
    return []


def classify_one_dim(n: int, a1, a2) -> list:
    """All one-dimensional representations of D_n(a1, a2), by brute force."""
    if n > 5:
        raise ValueError("brute force limited to n <= 5")
    pres = present_D(n, a1, a2)
    vals = _rational_sqrts(Q(a1))
    out = []
    m = len(fk_pairs(n))
    for combo in itertools.product(vals, repeat=m):
        if _scalar_ok(pres, combo):
            out.append(MatrixRep(n, 1, tuple(scalar(c) for c in combo)))
    return out


def _scalar_ok(pres: Presentation, values) -> bool:
    for r in pres.relations:
        s = ZERO
        for w, c in r.terms.items():
            t = c
            for a in w:
                t *= values[a]
            s += t
        if s:
            return False
    return True


def recover_permutation(rho: MatrixRep) -> Permutation:
    """sigma(i) = i + r_i - l_i from the sign pattern of a character."""
    n = rho.n
    signs = rho.signs()
    val = {}
    for k, (i, j) in enumerate(fk_pairs(n)):
        val[(i, j)] = signs[k]
    images = []
    for i in range(1, n + 1):
        l_i = sum(1 for j in range(1, i) if val[(j, i)] == -1)
        r_i = sum(1 for j in range(i + 1, n + 1) if val[(i, j)] == -1)
        images.append(i + r_i - l_i)
    try:
        sigma = Permutation(tuple(images))
    except ValueError as exc:
        raise ValueError("sign vector is not a valid character") from exc
    if sign_rep(sigma, n).images != rho.images:
        raise ValueError("sign vector is not a valid character")
    return sigma


# -- two-dimensional simples of D_4(1,1) ------------------------------------

_DIAG_PAIRS = {(1, 3), (4, 2)}
_SWAP_PAIRS = {(4, 1), (1, 2), (2, 3), (3, 4)}


def two_dim_image(a: int, b: int) -> RatMatrix:
    """Image of x_ij when (sigma(i), sigma(j)) = (a, b)."""
    if (a, b) in _DIAG_PAIRS:
        return DIAG
    if (b, a) in _DIAG_PAIRS:
        return -DIAG
    if (a, b) in _SWAP_PAIRS:
        return SWAP
    if (b, a) in _SWAP_PAIRS:
        return -SWAP
    raise ValueError(f"no image for pair {(a, b)}")


def two_dim_rep(sigma: Permutation) -> MatrixRep:
    if sigma.n != 4:
        raise ValueError("two-dimensional simples are defined for n = 4")
    imgs = tuple(two_dim_image(sigma(i), sigma(j)) for i, j in fk_pairs(4))
    return MatrixRep(4, 2, imgs, sigma.cycle_string())


def two_dim_simples() -> list:
    """The six pairwise non-isomorphic simples, indexed by coset representatives."""
    return [two_dim_rep(s) for s in coset_reps_mod_klein()]


def intertwiner_matrix(nu: Permutation) -> RatMatrix:
    """The conjugating matrices attached to the Klein four-group elements."""
    v = klein_four()
    table = {
        v[0]: RatMatrix.identity(2),
        v[1]: RatMatrix.from_rows([[0, 1], [1, 0]]),
        v[2]: RatMatrix.from_rows([[1, 0], [0, -1]]),
        v[3]: RatMatrix.from_rows([[0, 1], [-1, 0]]),
    }
    if nu not in table:
        raise ValueError(f"{nu} is not in the Klein four-group")
    return table[nu]


# -- group action -----------------------------------------------------------

def act_on_rep(tau: Permutation, rho: MatrixRep) -> MatrixRep:
    """(tau . rho)(x) = rho(tau^{-1} . x)."""
    inv = tau.inverse()
    imgs = []
    for i, j in fk_pairs(rho.n):
        k, s = letter(rho.n, inv(i), inv(j))
        imgs.append(rho.images[k] * s)
    return MatrixRep(rho.n, rho.dim, tuple(imgs))


# -- intertwiners and simplicity -------------------------------------------

def find_intertwiner(rho: MatrixRep, rho2: MatrixRep) -> list:
    """Basis of {M : rho(x) M = M rho2(x) for every generator x}."""
    d, e = rho.dim, rho2.dim
    nvar = d * e

    def var(r, c):
        return r * e + c

    rows = []
    for A, B in zip(rho.images, rho2.images):
        for r in range(d):
            for c in range(e):
                row = {}
                for k in range(d):
                    a = A[r, k]
                    if a:
                        row[var(k, c)] = row.get(var(k, c), ZERO) + a
                for k in range(e):
                    b = B[k, c]
                    if b:
                        row[var(r, k)] = row.get(var(r, k), ZERO) - b
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    m = RatMatrix.from_sparse_rows(rows, nvar) if rows else RatMatrix.zero(0, nvar)
    out = []
    for v in kernel(m):
        data = {}
        for k, a in v.items():
            data.setdefault(k // e, {})[k % e] = a
        out.append(RatMatrix(d, e, data))
    return out


def span_dimension(mats) -> int:
    rows = []
    for m in mats:
        d = {}
        for r, row in m.data.items():
            for c, a in row.items():
                d[r * m.cols + c] = a
        rows.append(d)
    if not rows:
        return 0
    return rank(RatMatrix.from_sparse_rows(rows, mats[0].rows * mats[0].cols))


def is_simple(rho: MatrixRep) -> bool:
    """The images generate the full matrix algebra (Burnside)."""
    d = rho.dim
    if d == 1:
        return True
    mats = [RatMatrix.identity(d)] + list(rho.images)
    mats += [a * b for a in rho.images for b in rho.images]
    dim = span_dimension(mats)
    frontier = list(mats)
    while dim < d * d:
        new = [a * g for a in frontier for g in rho.images]
        mats += new
        nd = span_dimension(mats)
        if nd == dim:
            return False
        dim, frontier = nd, new
    return True


def is_isomorphic(rho: MatrixRep, rho2: MatrixRep) -> bool:
    if rho.dim != rho2.dim:
        return False
    basis = find_intertwiner(rho, rho2)
    if not basis:
        return False
    # for simples any nonzero intertwiner is invertible; test a generic combination
    m = RatMatrix.zero(rho.dim, rho.dim)
    for k, b in enumerate(basis):
        m = m + b * (k + 1)
    return rank(m) == rho.dim


@lru_cache(maxsize=None)
def one_dim_simples(n: int) -> tuple:
    """Sign characters of D_n(1,-1) indexed by S_n in lexicographic order."""
    return tuple(sign_rep(s, n) for s in all_perms(n))

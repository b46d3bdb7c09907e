"""Exact rational linear algebra.

Scalars are ``gmpy2.mpq`` (always in lowest terms, positive denominator).
Vectors are sparse ``dict[int, mpq]`` with no stored zeros; matrices are
:class:`RatMatrix`, a row-major sparse container.

The elimination routines pick, inside each pivot column, the candidate row
whose pivot entry has the smallest bit length (ties: fewest nonzeros), which
keeps coefficient growth in check on the larger trace forms.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
from gmpy2 import mpq

Rational = type(mpq(0))
Vec = dict  # dict[int, mpq]

ZERO = mpq(0)
ONE = mpq(1)


def Q(x) -> mpq:
    """Coerce ``x`` (int, mpq, Fraction or ``"p/q"`` string) to an exact rational."""
    if isinstance(x, Rational):
        return x
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty rational literal")
        return mpq(s)
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact scalars")
    try:
        return mpq(x)
    except (TypeError, ValueError):
        return mpq(x.numerator, x.denominator)


def bitlen(a: mpq) -> int:
    return a.numerator.bit_length() + a.denominator.bit_length()


# -- sparse vectors ---------------------------------------------------------

def vec_add(u: Mapping[int, mpq], v: Mapping[int, mpq], c=ONE) -> Vec:
    """Return ``u + c*v``."""
    out = dict(u)
    for k, b in v.items():
        s = out.get(k, ZERO) + c * b
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vec_iadd(out: Vec, v: Mapping[int, mpq], c=ONE) -> Vec:
    for k, b in v.items():
        s = out.get(k, ZERO) + c * b
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vec_scale(v: Mapping[int, mpq], c) -> Vec:
    if not c:
        return {}
    return {k: c * a for k, a in v.items()}


def vec_dot(u: Mapping[int, mpq], v: Mapping[int, mpq]) -> mpq:
    if len(u) > len(v):
        u, v = v, u
    s = ZERO
    for k, a in u.items():
        b = v.get(k)
        if b is not None:
            s += a * b
    return s


def unit_vec(i: int) -> Vec:
    return {i: ONE}


# -- matrices ---------------------------------------------------------------

@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    data: dict = field(default_factory=dict)  # row -> {col: mpq}, nonzero only

    def __post_init__(self):
        for r, row in self.data.items():
            if not 0 <= r < self.rows:
                raise IndexError(f"row {r} out of range")
            for c, a in row.items():
                if not 0 <= c < self.cols:
                    raise IndexError(f"col {c} out of range")
                if not a:
                    raise ValueError("stored zero entry")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        nrows = len(rows)
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        data = {}
        for r, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            d = {c: Q(a) for c, a in enumerate(row) if a}
            if d:
                data[r] = d
        return cls(nrows, ncols, data)

    @classmethod
    def from_sparse_rows(cls, rows: Sequence[Mapping[int, mpq]], cols: int) -> "RatMatrix":
        data = {r: {c: a for c, a in row.items() if a} for r, row in enumerate(rows)}
        return cls(len(rows), cols, {r: d for r, d in data.items() if d})

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, {i: {i: ONE} for i in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, {})

    def __getitem__(self, rc):
        r, c = rc
        return self.data.get(r, {}).get(c, ZERO)

    def row(self, r: int) -> Vec:
        return dict(self.data.get(r, {}))

    def to_rows(self) -> list[list[mpq]]:
        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for r, row in self.data.items():
            for c, a in row.items():
                out[r][c] = a
        return out

    def transpose(self) -> "RatMatrix":
        data: dict = {}
        for r, row in self.data.items():
            for c, a in row.items():
                data.setdefault(c, {})[r] = a
        return RatMatrix(self.cols, self.rows, data)

    def __mul__(self, other):
        if isinstance(other, RatMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            data = {}
            for r, row in self.data.items():
                acc: Vec = {}
                for k, a in row.items():
                    orow = other.data.get(k)
                    if orow:
                        vec_iadd(acc, orow, a)
                if acc:
                    data[r] = acc
            return RatMatrix(self.rows, other.cols, data)
        c = Q(other)
        if not c:
            return RatMatrix.zero(self.rows, self.cols)
        return RatMatrix(self.rows, self.cols, {r: vec_scale(row, c) for r, row in self.data.items()})

    __rmul__ = __mul__

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        data = {r: dict(row) for r, row in self.data.items()}
        for r, row in other.data.items():
            d = vec_iadd(data.get(r, {}), row)
            if d:
                data[r] = d
            else:
                data.pop(r, None)
        return RatMatrix(self.rows, self.cols, data)

    def __neg__(self) -> "RatMatrix":
        return self * -1

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.data) == (other.rows, other.cols, other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(sorted((r, tuple(sorted(row.items()))) for r, row in self.data.items()))))

    def is_zero(self) -> bool:
        return not self.data

    def apply(self, v: Mapping[int, mpq]) -> Vec:
        """Matrix times column vector."""
        out: Vec = {}
        for r, row in self.data.items():
            s = vec_dot(row, v)
            if s:
                out[r] = s
        return out

    def __repr__(self):
        return f"RatMatrix({self.rows}x{self.cols}, {self.to_rows()})"


# -- elimination ------------------------------------------------------------

class Echelon:
    """Incrementally maintained row-echelon basis of a subspace of Q^cols.

    Each stored row is keyed by its pivot column (its smallest column), has
    pivot entry 1, and contains no other stored pivot column once
    :meth:`reduce_fully` has run.
    """

    def __init__(self, cols: int | None = None):
        self.cols = cols
        self.rows: dict[int, Vec] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: Mapping[int, mpq]) -> Vec:
        v = dict(v)
        rows = self.rows
        heap = [c for c in v if c in rows]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            a = v.get(c)
            if not a:
                continue
            for j, b in rows[c].items():
                nv = v.get(j, ZERO) - a * b
                if nv:
                    if j not in v and j in rows:
                        heapq.heappush(heap, j)
                    v[j] = nv
                else:
                    v.pop(j, None)
        return v

    def add(self, v: Mapping[int, mpq]) -> bool:
        """Insert ``v``; return True iff it enlarged the span."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        self.rows[p] = {k: a * inv for k, a in r.items()}
        return True

    def contains(self, v: Mapping[int, mpq]) -> bool:
        return not self.reduce(v)

    def reduce_fully(self) -> None:
        for p in sorted(self.rows, reverse=True):
            row = self.rows[p]
            others = [c for c in row if c != p and c in self.rows]
            if not others:
                continue
            rest = dict(row)
            for c in others:
                vec_iadd(rest, self.rows[c], -row[c])
            self.rows[p] = rest

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def basis(self) -> list[Vec]:
        return [self.rows[p] for p in sorted(self.rows)]

    def coordinates(self, v: Mapping[int, mpq]) -> dict[int, mpq] | None:
        """Coordinates of ``v`` w.r.t. the fully reduced basis (keyed by pivot), or None."""
        self.reduce_fully()
        coords = {p: v[p] for p in v if p in self.rows}
        rest = dict(v)
        for p, a in coords.items():
            vec_iadd(rest, self.rows[p], -a)
        return None if rest else coords


class Subspace:
    """Span kept in fully reduced echelon form under insertion.

    Rows are keyed by pivot (smallest column, entry 1) and never contain
    another row's pivot, so membership is a single pass and fill-in on
    insertion touches only the rows that mention the new pivot.
    """

    def __init__(self, cols: int | None = None):
        self.cols = cols
        self.rows: dict[int, Vec] = {}
        self._users: dict[int, set[int]] = {}  # column -> pivots whose row uses it

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: Mapping[int, mpq]) -> Vec:
        out = dict(v)
        rows = self.rows
        for c in [c for c in v if c in rows]:
            a = out.pop(c)
            for k, b in rows[c].items():
                if k == c:
                    continue
                s = out.get(k, ZERO) - a * b
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out

    def contains(self, v: Mapping[int, mpq]) -> bool:
        return not self.reduce(v)

    def add(self, v: Mapping[int, mpq]) -> Vec | None:
        """Insert ``v``; return the new reduced row, or None if already spanned."""
        r = self.reduce(v)
        if not r:
            return None
        p = min(r)
        inv = 1 / r[p]
        r = {k: a * inv for k, a in r.items()}
        users = self._users
        for q in list(users.get(p, ())):
            row = self.rows[q]
            f = row.pop(p)
            for k, b in r.items():
                if k == p:
                    continue
                s = row.get(k, ZERO) - f * b
                if s:
                    if k not in row:
                        users.setdefault(k, set()).add(q)
                    row[k] = s
                else:
                    row.pop(k)
                    users[k].discard(q)
        users.pop(p, None)
        self.rows[p] = r
        for k in r:
            if k != p:
                users.setdefault(k, set()).add(p)
        return r

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def basis(self) -> list[Vec]:
        return [self.rows[p] for p in sorted(self.rows)]

    def coordinates(self, v: Mapping[int, mpq]) -> dict[int, mpq] | None:
        """Coordinates keyed by pivot, or None when ``v`` is outside the span."""
        coords = {p: v[p] for p in v if p in self.rows}
        return None if self.reduce(v) else coords

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def copy(self) -> "Subspace":
        other = Subspace(self.cols)
        other.rows = {p: dict(r) for p, r in self.rows.items()}
        other._users = {c: set(s) for c, s in self._users.items()}
        return other


def _pick_pivot(cands: list[int], rows: dict[int, Vec], col: int) -> int:
    return min(cands, key=lambda r: (bitlen(rows[r][col]), len(rows[r]), r))


def rref(m: RatMatrix) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form and pivot columns of ``m``."""
    rows = {r: {c: a for c, a in row.items() if a} for r, row in m.data.items()}
    rows = {r: row for r, row in rows.items() if row}
    by_col: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            by_col.setdefault(c, set()).add(r)
    done: list[tuple[int, Vec]] = []
    for col in range(m.cols):
        cands = [r for r in by_col.get(col, ()) if r in rows and rows[r].get(col)]
        if not cands:
            continue
        pr = _pick_pivot(cands, rows, col)
        prow = rows.pop(pr)
        inv = 1 / prow[col]
        prow = {c: a * inv for c, a in prow.items()}
        for r in cands:
            if r == pr:
                continue
            row = rows[r]
            f = row[col]
            for c, a in prow.items():
                s = row.get(c, ZERO) - f * a
                if s:
                    if c not in row:
                        by_col.setdefault(c, set()).add(r)
                    row[c] = s
                else:
                    row.pop(c, None)
            if not row:
                del rows[r]
        done.append((col, prow))
    # back substitution
    for i in range(len(done) - 1, -1, -1):
        col, prow = done[i]
        for j in range(i):
            _, other = done[j]
            f = other.get(col)
            if f:
                vec_iadd(other, prow, -f)
    data = {i: row for i, (_, row) in enumerate(done)}
    return RatMatrix(m.rows, m.cols, data), [c for c, _ in done]


def rank(m: RatMatrix) -> int:
    e = Echelon(m.cols)
    for row in m.data.values():
        e.add(row)
    return len(e)


def kernel(m: RatMatrix) -> list[Vec]:
    """Basis of the right null space {v : m v = 0}."""
    r, piv = rref(m)
    pivset = set(piv)
    basis = []
    prow = {piv[i]: r.data[i] for i in range(len(piv))}
    for f in range(m.cols):
        if f in pivset:
            continue
        v = {f: ONE}
        for p, row in prow.items():
            a = row.get(f)
            if a:
                v[p] = -a
        basis.append(v)
    return basis


def kernel_of_rows(rows: Iterable[Mapping[int, mpq]], cols: int) -> list[Vec]:
    return kernel(RatMatrix.from_sparse_rows(list(rows), cols))


@dataclass
class Solution:
    consistent: bool
    particular: Vec | None
    kernel: list[Vec]


def solve(m: RatMatrix, rhs: Sequence | Mapping[int, mpq]) -> Solution:
    """Affine solution set of ``m x = rhs``."""
    if not isinstance(rhs, Mapping):
        if len(rhs) != m.rows:
            raise ValueError("rhs length must equal row count")
        rhs = {i: Q(a) for i, a in enumerate(rhs) if a}
    aug_cols = m.cols + 1
    data = {}
    for r in range(m.rows):
        row = dict(m.data.get(r, {}))
        b = rhs.get(r)
        if b:
            row[m.cols] = Q(b)
        if row:
            data[r] = row
    red, piv = rref(RatMatrix(m.rows, aug_cols, data))
    ker = kernel(m)
    if m.cols in piv:
        return Solution(False, None, ker)
    x: Vec = {}
    for i, p in enumerate(piv):
        a = red.data[i].get(m.cols)
        if a:
            x[p] = a
    return Solution(True, x, ker)


def inverse(m: RatMatrix) -> RatMatrix:
    if m.rows != m.cols:
        raise ValueError("not square")
    n = m.rows
    cols = []
    for j in range(n):
        s = solve(m, {j: ONE})
        if not s.consistent or s.kernel:
            raise ZeroDivisionError("singular matrix")
        cols.append(s.particular)
    data: dict = {}
    for j, col in enumerate(cols):
        for i, a in col.items():
            data.setdefault(i, {})[j] = a
    return RatMatrix(n, n, data)


# -- modular pre-check ------------------------------------------------------

DEFAULT_PRIME = 2_147_483_629  # largest prime below 2**31


def rank_mod_p(rows: Iterable[Mapping[int, mpq]], p: int = DEFAULT_PRIME) -> int:
    """Rank over GF(p). Never larger than the rational rank; a pre-check only."""
    piv: dict[int, dict[int, int]] = {}
    for row in rows:
        v = {}
        for c, a in row.items():
            x = to_mod_p(a, p)
            if x:
                v[c] = x
        while v:
            c = min(v)
            if c not in piv:
                inv = pow(v[c], -1, p)
                piv[c] = {k: x * inv % p for k, x in v.items()}
                break
            f = v[c]
            for k, x in piv[c].items():
                y = (v.get(k, 0) - f * x) % p
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
    return len(piv)


def to_mod_p(a: mpq, p: int) -> int:
    num, den = int(a.numerator), int(a.denominator)
    if den % p == 0:
        raise ZeroDivisionError("denominator divisible by p")
    return num * pow(den, -1, p) % p


def dense_rank_mod_p(rows: Sequence[Mapping[int, mpq]], cols: int, p: int = DEFAULT_PRIME) -> tuple[int, list[int]]:
    """Rank over GF(p) of a dense matrix and the indices of a maximal independent set of rows.

    Rows independent mod p are independent over the rationals, so a full
    modular rank certifies full rational rank.
    """
    if p >= 2**31:
        raise ValueError("prime must stay below 2**31 for int64 products")
    a = np.zeros((len(rows), cols), dtype=np.int64)
    for i, row in enumerate(rows):
        for c, x in row.items():
            a[i, c] = to_mod_p(x, p)
    order = np.arange(len(rows))
    r = 0
    for c in range(cols):
        if r == len(rows):
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
            order[[r, k]] = order[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = a[r] * inv % p
        below = a[r + 1:, c].copy()
        mask = below != 0
        if mask.any():
            idx = np.nonzero(mask)[0] + r + 1
            a[idx] = (a[idx] - np.outer(below[mask], a[r]) % p) % p
        r += 1
    return r, sorted(int(i) for i in order[:r])


def random_matrix(rows: int, cols: int, rng: random.Random, density: float = 0.5, span: int = 5) -> RatMatrix:
    data = []
    for _ in range(rows):
        data.append([Q(rng.randint(-span, span)) if rng.random() < density else ZERO for _ in range(cols)])
    return RatMatrix.from_rows(data, cols)

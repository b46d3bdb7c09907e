"""Noncommutative rewriting: deglex completion, normal forms, normal-word bases.

A rule ``lead -> rest`` says that the word ``lead`` equals the polynomial
``rest`` (all of whose words are deglex-smaller).  Completion resolves every
overlap ambiguity up to a degree bound, processing ambiguities by combined
degree and then deglex, and keeps the system interreduced.
"""

from __future__ import annotations

import heapq
import json
import sys
from dataclasses import dataclass, field
from typing import Iterable

from gmpy2 import mpq

from .free_algebra import Alphabet, NCPolynomial, Presentation, format_poly, word_key
from .linalg import ONE, ZERO, vec_iadd

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class CompletionError(RuntimeError):
    """Raised when completion exceeds its rule ceiling."""


class InfiniteBasisError(RuntimeError):
    """Raised when normal words persist up to the degree bound."""


@dataclass(frozen=True)
class MonomialOrder:
    """Deglex on words over letters 0 < 1 < ... (the generator order)."""

    nletters: int

    @staticmethod
    def key(w):
        return word_key(w)

    def less(self, u, v) -> bool:
        return word_key(u) < word_key(v)


def _neg_key(w):
    # max-heap on deglex via a min-heap
    return (-len(w), tuple(-a for a in w))


@dataclass
class RewriteSystem:
    alphabet: Alphabet
    rules: dict  # lead word -> rest (dict word -> mpq)
    degree_bound: int
    certified_degree: int
    order: MonomialOrder = None
    _nf: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.order is None:
            self.order = MonomialOrder(len(self.alphabet))
        self._lengths = sorted({len(w) for w in self.rules})

    @property
    def nletters(self) -> int:
        return len(self.alphabet)

    def leads(self) -> list:
        return sorted(self.rules, key=word_key)

    def find(self, w, start: int = 0):
        """First (position, lead) with a rule lead occurring in ``w`` at or after ``start``."""
        rules = self.rules
        n = len(w)
        for i in range(start, n):
            for L in self._lengths:
                if i + L > n:
                    break
                s = w[i:i + L]
                if s in rules:
                    return i, s
        return None

    def is_normal(self, w) -> bool:
        return self.find(w) is None

    def nf_word(self, w) -> dict:
        """Normal form of a single word, memoized."""
        memo = self._nf
        r = memo.get(w)
        if r is not None:
            return r
        hit = self.find(w)
        if hit is None:
            r = {w: ONE}
        else:
            i, lead = hit
            a, b = w[:i], w[i + len(lead):]
            r = {}
            for u, c in self.rules[lead].items():
                vec_iadd(r, self.nf_word(a + u + b), c)
        memo[w] = r
        return r

    def normal_form(self, p) -> NCPolynomial:
        terms = p.terms if isinstance(p, NCPolynomial) else p
        out: dict = {}
        for w, c in terms.items():
            vec_iadd(out, self.nf_word(tuple(w)), c)
        return NCPolynomial._raw(out)

    def normal_form_randomized(self, p, rng) -> NCPolynomial:
        """Reduce applying rules at randomly chosen occurrences (confluence checks)."""
        work = dict(p.terms if isinstance(p, NCPolynomial) else p)
        out: dict = {}
        while work:
            w = rng.choice(sorted(work, key=word_key))
            c = work.pop(w)
            hits = [(i, w[i:i + L]) for i in range(len(w)) for L in self._lengths if w[i:i + L] in self.rules]
            if not hits:
                vec_iadd(out, {w: c})
                continue
            i, lead = rng.choice(hits)
            a, b = w[:i], w[i + len(lead):]
            for u, d in self.rules[lead].items():
                vec_iadd(work, {a + u + b: c * d})
        return NCPolynomial._raw(out)

    def emit(self) -> str:
        lines = []
        for lead in self.leads():
            poly = NCPolynomial._raw({lead: ONE}) - NCPolynomial._raw(dict(self.rules[lead]))
            lines.append(format_poly(poly, self.alphabet))
        return "".join(line + "\n" for line in lines)


# -- completion -------------------------------------------------------------

def _reduce(rules: dict, lengths: list, p: dict) -> dict:
    """Fully reduce the polynomial ``p`` (dict) by ``rules``; largest words first."""
    work = dict(p)
    heap = [(_neg_key(w), w) for w in work]
    heapq.heapify(heap)
    out: dict = {}
    while heap:
        _, w = heapq.heappop(heap)
        c = work.pop(w, None)
        if c is None:
            continue
        hit = None
        n = len(w)
        for i in range(n):
            for L in lengths:
                if i + L > n:
                    break
                if w[i:i + L] in rules:
                    hit = (i, w[i:i + L])
                    break
            if hit:
                break
        if hit is None:
            out[w] = c
            continue
        i, lead = hit
        a, b = w[:i], w[i + len(lead):]
        for u, d in rules[lead].items():
            v = a + u + b
            old = work.get(v)
            s = (old if old is not None else ZERO) + c * d
            if s:
                if old is None:
                    heapq.heappush(heap, (_neg_key(v), v))
                work[v] = s
            else:
                del work[v]
    return out


def _lead_of(p: dict):
    return max(p, key=word_key)


def _contains(big, small) -> bool:
    L = len(small)
    return any(big[i:i + L] == small for i in range(len(big) - L + 1))


def complete(pres: Presentation | Iterable[NCPolynomial], bound: int, alphabet: Alphabet | None = None,
             max_rules: int = 20000, log=None) -> RewriteSystem:
    """Deglex completion of the relations, resolving all ambiguities of degree <= bound."""
    if bound < 2:
        raise ValueError("bound must be at least 2")
    if isinstance(pres, Presentation):
        rels = list(pres.relations)
        alphabet = pres.alphabet
    else:
        rels = list(pres)
        if alphabet is None:
            raise ValueError("alphabet required for bare relation lists")

    rules: dict = {}
    ids: dict = {}  # lead -> rule id (to detect stale pairs)
    next_id = [0]
    lengths: list = []
    pairs: list = []
    pending: list = [dict(r.terms) for r in rels if r]

    def set_lengths():
        lengths[:] = sorted({len(w) for w in rules})

    def push_pairs(lead):
        rid = ids[lead]
        for other, oid in list(ids.items()):
            for a, ai, b, bi in ((lead, rid, other, oid), (other, oid, lead, rid)):
                m = min(len(a), len(b))
                for k in range(1, m):
                    if a[-k:] == b[:k]:
                        deg = len(a) + len(b) - k
                        if deg <= bound:
                            amb = a + b[k:]
                            heapq.heappush(pairs, (deg, amb, k, a, ai, b, bi))
                if a == b:
                    break

    def insert(p: dict):
        p = _reduce(rules, lengths, p)
        if not p:
            return
        lead = _lead_of(p)
        inv = 1 / p[lead]
        rest = {w: -c * inv for w, c in p.items() if w != lead}
        # rules whose lead contains the new lead are retired and re-queued
        for old in [w for w in rules if _contains(w, lead)]:
            orest = rules.pop(old)
            del ids[old]
            q = dict(orest)
            vec_iadd(q, {old: ONE}, -1)
            pending.append({w: -c for w, c in q.items()})
        rules[lead] = rest
        ids[lead] = next_id[0]
        next_id[0] += 1
        set_lengths()
        if len(rules) > max_rules:
            raise CompletionError(f"rule count exceeded {max_rules}")
        push_pairs(lead)

    def drain():
        while pending:
            pending.sort(key=lambda p: word_key(_lead_of(p)) if p else (0, ()))
            insert(pending.pop(0))

    drain()
    while pairs:
        deg, amb, k, a, ai, b, bi = heapq.heappop(pairs)
        if ids.get(a) != ai or ids.get(b) != bi:
            continue
        # a * b[k:] - a[:-k] * b, with leads cancelling
        s: dict = {}
        tail, head = b[k:], a[:-k]
        for u, c in rules[a].items():
            vec_iadd(s, {u + tail: c})
        for u, c in rules[b].items():
            vec_iadd(s, {head + u: c}, -1)
        if s:
            pending.append(s)
            drain()
        if log and len(pairs) % 5000 == 0:
            log(f"pairs={len(pairs)} rules={len(rules)} deg={deg}")

    # tidy: fully reduce every rest
    final = {}
    for lead in sorted(rules, key=word_key):
        final[lead] = _reduce(rules, lengths, rules[lead])
    rs = RewriteSystem(alphabet, final, bound, bound)
    if not certify(rs, bound):
        raise AssertionError("completion left an unresolved ambiguity")
    return rs


def certify(rs: RewriteSystem, bound: int) -> bool:
    """Recheck that every ambiguity of degree <= bound resolves."""
    rules = rs.rules
    lengths = sorted({len(w) for w in rules})
    leads = list(rules)
    for a in leads:
        for b in leads:
            if a != b and _contains(a, b):
                return False
            m = min(len(a), len(b))
            for k in range(1, m):
                if a[-k:] == b[:k] and len(a) + len(b) - k <= bound:
                    s: dict = {}
                    for u, c in rules[a].items():
                        vec_iadd(s, {u + b[k:]: c})
                    for u, c in rules[b].items():
                        vec_iadd(s, {a[:-k] + u: c}, -1)
                    if _reduce(rules, lengths, s):
                        return False
    return True


# -- finite algebras --------------------------------------------------------

class FiniteAlgebra:
    """Quotient algebra with a basis of normal words.

    Multiplication is stored through the left and right multiplication
    matrices of the generators (``L[x][j]`` is the vector of ``x * b_j``);
    products of arbitrary elements are assembled from these, which is what
    keeps dimension 576 tractable without a full structure-constant table.
    """

    def __init__(self, alphabet: Alphabet, basis: list, L: list, R: list, label: str = "", certified_degree: int | None = None):
        self.alphabet = alphabet
        self.basis = [tuple(w) for w in basis]
        self.index = {w: i for i, w in enumerate(self.basis)}
        self.dim = len(self.basis)
        self.unit = self.index[()]
        self.L = L
        self.R = R
        self.label = label
        self.certified_degree = certified_degree
        self._LT = None
        self._RT = None
        self._pair_cache: dict = {}

    @property
    def nletters(self) -> int:
        return len(self.alphabet)

    # generator actions
    def lmul_gen(self, x: int, v: dict) -> dict:
        out: dict = {}
        col = self.L[x]
        for j, c in v.items():
            vec_iadd(out, col[j], c)
        return out

    def rmul_gen(self, v: dict, x: int) -> dict:
        out: dict = {}
        col = self.R[x]
        for j, c in v.items():
            vec_iadd(out, col[j], c)
        return out

    def transpose_left(self, x: int) -> list:
        """Rows of L_x: ``LT[x][i]`` maps j -> (L_x)_{ij}."""
        if self._LT is None:
            self._LT = [_transpose_cols(self.L[y], self.dim) for y in range(self.nletters)]
        return self._LT[x]

    def transpose_right(self, x: int) -> list:
        if self._RT is None:
            self._RT = [_transpose_cols(self.R[y], self.dim) for y in range(self.nletters)]
        return self._RT[x]

    def ltranspose_apply(self, x: int, v: dict) -> dict:
        """``L_x^T v``."""
        out: dict = {}
        rows = self.transpose_left(x)
        for i, c in v.items():
            vec_iadd(out, rows[i], c)
        return out

    def rtranspose_apply(self, x: int, v: dict) -> dict:
        out: dict = {}
        rows = self.transpose_right(x)
        for i, c in v.items():
            vec_iadd(out, rows[i], c)
        return out

    # elements
    def basis_vec(self, i: int) -> dict:
        return {i: ONE}

    def one(self) -> dict:
        return {self.unit: ONE}

    def word_vec(self, w) -> dict:
        v = self.one()
        for x in reversed(w):
            v = self.lmul_gen(x, v)
        return v

    def poly_vec(self, p: NCPolynomial) -> dict:
        out: dict = {}
        for w, c in p.terms.items():
            vec_iadd(out, self.word_vec(w), c)
        return out

    def vec_poly(self, v: dict) -> NCPolynomial:
        return NCPolynomial._raw({self.basis[i]: c for i, c in v.items()})

    def word_times(self, w, v: dict) -> dict:
        for x in reversed(w):
            v = self.lmul_gen(x, v)
        return v

    def times_word(self, v: dict, w) -> dict:
        for x in w:
            v = self.rmul_gen(v, x)
        return v

    def mult(self, i: int, j: int) -> dict:
        """Structure constants: the vector of ``b_i * b_j``."""
        key = (i, j)
        r = self._pair_cache.get(key)
        if r is None:
            r = self.word_times(self.basis[i], {j: ONE})
            if len(self._pair_cache) < 200000:
                self._pair_cache[key] = r
        return r

    def mul(self, a: dict, b: dict) -> dict:
        """Product of two elements; shares work along common suffixes/prefixes."""
        if not a or not b:
            return {}
        if len(a) <= len(b):
            # a*b = sum a_u (u*b); u*b = x * (u[1:]*b)
            memo: dict = {(): dict(b)}

            def left(u):
                r = memo.get(u)
                if r is None:
                    r = self.lmul_gen(u[0], left(u[1:]))
                    memo[u] = r
                return r

            out: dict = {}
            for i, c in a.items():
                vec_iadd(out, left(self.basis[i]), c)
            return out
        memo = {(): dict(a)}

        def right(u):
            r = memo.get(u)
            if r is None:
                r = self.rmul_gen(right(u[:-1]), u[-1])
                memo[u] = r
            return r

        out = {}
        for j, c in b.items():
            vec_iadd(out, right(self.basis[j]), c)
        return out

    def left_mult_rows(self, a: dict) -> list:
        """Columns of the left multiplication by ``a``: entry j is ``a * b_j``."""
        return [self.mul(a, {j: ONE}) for j in range(self.dim)]

    def profile(self) -> tuple:
        top = max(len(w) for w in self.basis)
        counts = [0] * (top + 1)
        for w in self.basis:
            counts[len(w)] += 1
        return tuple(counts)

    # serialization
    def to_json(self) -> dict:
        def mat(cols):
            return [[j, i, str(c)] for j, col in enumerate(cols) for i, c in sorted(col.items())]

        return {
            "schema": 1,
            "label": self.label,
            "alphabet": list(self.alphabet.names),
            "certified_degree": self.certified_degree,
            "basis": [list(w) for w in self.basis],
            "left": [mat(c) for c in self.L],
            "right": [mat(c) for c in self.R],
        }

    @classmethod
    def from_json(cls, data: dict, alphabet: Alphabet | None = None) -> "FiniteAlgebra":
        if data.get("schema") != 1:
            raise ValueError("unsupported algebra schema")
        basis = [tuple(w) for w in data["basis"]]
        dim = len(basis)
        alph = alphabet or Alphabet(tuple(data["alphabet"]))

        def unmat(triples):
            cols = [dict() for _ in range(dim)]
            for j, i, c in triples:
                cols[j][i] = mpq(c)
            return cols

        L = [unmat(t) for t in data["left"]]
        R = [unmat(t) for t in data["right"]]
        return cls(alph, basis, L, R, data.get("label", ""), data.get("certified_degree"))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"), sort_keys=True)


def _transpose_cols(cols: list, dim: int) -> list:
    rows = [dict() for _ in range(dim)]
    for j, col in enumerate(cols):
        for i, c in col.items():
            rows[i][j] = c
    return rows


def normal_words(rs: RewriteSystem, max_len: int | None = None) -> list:
    """All normal words in deglex order; raises if they persist to the bound."""
    limit = rs.degree_bound if max_len is None else max_len
    lengths = sorted({len(w) for w in rs.rules})
    rules = rs.rules
    layer = [()]
    out = [()]
    d = 0
    while layer:
        d += 1
        if d > limit:
            raise InfiniteBasisError(f"normal words persist at length {limit}; possibly infinite-dimensional")
        nxt = []
        for w in layer:
            for x in range(rs.nletters):
                v = w + (x,)
                if not any(L <= len(v) and v[len(v) - L:] in rules for L in lengths):
                    nxt.append(v)
        nxt.sort()
        out.extend(nxt)
        layer = nxt
    return out


def enumerate_basis(rs: RewriteSystem, label: str = "") -> FiniteAlgebra:
    basis = normal_words(rs)
    index = {w: i for i, w in enumerate(basis)}

    def vec(p: dict) -> dict:
        return {index[w]: c for w, c in p.items()}

    L = [[vec(rs.nf_word((x,) + w)) for w in basis] for x in range(rs.nletters)]
    R = [[vec(rs.nf_word(w + (x,))) for w in basis] for x in range(rs.nletters)]
    return FiniteAlgebra(rs.alphabet, basis, L, R, label, rs.certified_degree)


def hilbert_profile(fa: FiniteAlgebra) -> tuple:
    return fa.profile()

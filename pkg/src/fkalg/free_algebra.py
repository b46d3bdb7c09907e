"""Free associative algebra on antisymmetric generators x_ij and the
Fomin-Kirillov presentations E_n and D_n(a1, a2).

Words are tuples of letter indices.  For the x_ij alphabet the letters are the
pairs i < j in lexicographic order, so ``x12 < x13 < ... < x_{n-1,n}``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

from gmpy2 import mpq

from .linalg import ONE, ZERO, Echelon, Q
from .perm import Permutation

Word = tuple  # tuple[int, ...]


def word_key(w: Word):
    """Deglex sort key: degree first, then lexicographic on letters."""
    return (len(w), w)


# -- polynomials ------------------------------------------------------------

class NCPolynomial:
    """Sparse rational combination of words; no zero coefficients are stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, object] | None = None):
        t = {}
        if terms:
            for w, c in terms.items():
                c = Q(c)
                if c:
                    t[tuple(w)] = c
        self.terms: dict[Word, mpq] = t

    @classmethod
    def _raw(cls, terms: dict) -> "NCPolynomial":
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def word(cls, w: Word, c=ONE) -> "NCPolynomial":
        return cls({tuple(w): c})

    @classmethod
    def const(cls, c) -> "NCPolynomial":
        return cls({(): c})

    @classmethod
    def zero(cls) -> "NCPolynomial":
        return cls._raw({})

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __eq__(self, other):
        if isinstance(other, NCPolynomial):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coeff(self, w: Word) -> mpq:
        return self.terms.get(tuple(w), ZERO)

    def __add__(self, other):
        other = _as_poly(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            s = t.get(w, ZERO) + c
            if s:
                t[w] = s
            else:
                t.pop(w, None)
        return NCPolynomial._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return NCPolynomial._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, NCPolynomial):
            t: dict = {}
            for u, a in self.terms.items():
                for v, b in other.terms.items():
                    w = u + v
                    s = t.get(w, ZERO) + a * b
                    if s:
                        t[w] = s
                    else:
                        t.pop(w, None)
            return NCPolynomial._raw(t)
        c = Q(other)
        if not c:
            return NCPolynomial.zero()
        return NCPolynomial._raw({w: a * c for w, a in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, NCPolynomial):
            return other * self
        return self * other

    def __pow__(self, k: int):
        out = NCPolynomial.const(1)
        for _ in range(k):
            out = out * self
        return out

    def words(self):
        return sorted(self.terms, key=word_key, reverse=True)

    def leading(self) -> Word:
        return max(self.terms, key=word_key)

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def homogeneous_part(self, d: int) -> "NCPolynomial":
        return NCPolynomial._raw({w: c for w, c in self.terms.items() if len(w) == d})

    def map_letters(self, f) -> "NCPolynomial":
        """Apply a letter substitution ``f(letter) -> (letter, sign)`` letterwise."""
        t: dict = {}
        for w, c in self.terms.items():
            sign = 1
            nw = []
            for a in w:
                b, s = f(a)
                nw.append(b)
                sign *= s
            nw = tuple(nw)
            v = t.get(nw, ZERO) + c * sign
            if v:
                t[nw] = v
            else:
                t.pop(nw, None)
        return NCPolynomial._raw(t)

    def __repr__(self):
        return f"NCPolynomial({self.terms!r})"


def _as_poly(x) -> NCPolynomial:
    if isinstance(x, NCPolynomial):
        return x
    return NCPolynomial.const(x)


# -- alphabets and generators ----------------------------------------------

@dataclass(frozen=True)
class Generator:
    i: int
    j: int

    def __post_init__(self):
        if not self.i < self.j:
            raise ValueError("canonical generators have i < j")

    @property
    def name(self) -> str:
        return fk_name(self.i, self.j)


def fk_name(i: int, j: int) -> str:
    if i < 10 and j < 10:
        return f"x{i}{j}"
    return f"x{i}_{j}"


def make_generator(i: int, j: int, n: int | None = None) -> tuple[Generator, int]:
    """Canonical generator for the symbol x_ij together with the sign it carries.

    >>> make_generator(2, 1)
    (Generator(i=1, j=2), -1)
    """
    if i == j:
        raise ValueError("x_ii is not a generator")
    if min(i, j) < 1 or (n is not None and max(i, j) > n):
        raise ValueError(f"index out of range 1..{n}")
    if i < j:
        return Generator(i, j), 1
    return Generator(j, i), -1


@dataclass(frozen=True)
class Alphabet:
    names: tuple[str, ...]
    # extra spellings, e.g. "x21" -> (index of x12, -1)
    aliases: tuple[tuple[str, int, int], ...] = ()

    def lookup(self, name: str) -> tuple[int, int]:
        table = self._table()
        if name not in table:
            raise ValueError(f"unknown generator {name!r}")
        return table[name]

    def _table(self):
        t = getattr(self, "_t", None)
        if t is None:
            t = {nm: (k, 1) for k, nm in enumerate(self.names)}
            for nm, k, s in self.aliases:
                t[nm] = (k, s)
            object.__setattr__(self, "_t", t)
        return t

    def __len__(self):
        return len(self.names)


@lru_cache(maxsize=None)
def fk_pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(itertools.combinations(range(1, n + 1), 2))


@lru_cache(maxsize=None)
def fk_alphabet(n: int) -> Alphabet:
    pairs = fk_pairs(n)
    aliases = tuple((fk_name(j, i) if (i < 10 and j < 10) else f"x{j}_{i}", k, -1) for k, (i, j) in enumerate(pairs))
    return Alphabet(tuple(fk_name(i, j) for i, j in pairs), aliases)


@lru_cache(maxsize=None)
def _pair_index(n: int) -> dict:
    return {p: k for k, p in enumerate(fk_pairs(n))}


def letter(n: int, i: int, j: int) -> tuple[int, int]:
    """(letter index, sign) of the symbol x_ij in the rank-n alphabet."""
    g, s = make_generator(i, j, n)
    return _pair_index(n)[(g.i, g.j)], s


def x(n: int, i: int, j: int) -> NCPolynomial:
    k, s = letter(n, i, j)
    return NCPolynomial({(k,): s})


def xword(n: int, *pairs) -> NCPolynomial:
    """Product x_{p1} x_{p2} ... as a signed single-word polynomial."""
    out = NCPolynomial.const(1)
    for i, j in pairs:
        out = out * x(n, i, j)
    return out


# -- presentations ----------------------------------------------------------

@dataclass(frozen=True)
class Presentation:
    n: int
    alphabet: Alphabet
    relations: tuple[NCPolynomial, ...]
    params: tuple[mpq, mpq] | None = None
    family: str = "custom"
    kinds: tuple[str, ...] = field(default=())

    @property
    def nletters(self) -> int:
        return len(self.alphabet)

    def label(self) -> str:
        if self.family == "E":
            return f"E{self.n}"
        if self.family == "D":
            a1, a2 = self.params
            return f"D{self.n}({a1},{a2})"
        return self.family

    def key(self) -> str:
        """Stable textual identity used for cache keys."""
        return self.label() + "\n" + emit_relations(self)


def _triangle(n: int, i: int, j: int, k: int, a2) -> NCPolynomial:
    return xword(n, (i, j), (j, k)) + xword(n, (j, k), (k, i)) + xword(n, (k, i), (i, j)) - a2


def triangle_relations(n: int, i: int, j: int, k: int, a2=0) -> list[NCPolynomial]:
    """The two canonical triangle relations for the triple i < j < k.

    All six orderings are generated and their span is checked to be
    two-dimensional; the orderings (i,j,k) and (i,k,j) represent it.
    """
    polys = [_triangle(n, *o, a2) for o in itertools.permutations((i, j, k))]
    index: dict = {}
    ech = Echelon()
    for p in polys:
        ech.add({index.setdefault(w, len(index)): c for w, c in p})
    if len(ech) != 2:
        raise AssertionError("triangle span is not two-dimensional")
    return [_triangle(n, i, j, k, a2), _triangle(n, i, k, j, a2)]


def present_D(n: int, a1, a2) -> Presentation:
    """D_n(a1, a2): x_ij^2 = a1, far commutativity, triangle sums = a2."""
    if n < 3:
        raise ValueError("n must be at least 3")
    a1, a2 = Q(a1), Q(a2)
    rels, kinds = [], []
    for i, j in fk_pairs(n):
        rels.append(xword(n, (i, j), (i, j)) - a1)
        kinds.append("square")
    for quad in itertools.combinations(range(1, n + 1), 4):
        a, b, c, d = quad
        for (p, q), (r, s) in (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))):
            rels.append(xword(n, (p, q), (r, s)) - xword(n, (r, s), (p, q)))
            kinds.append("commute")
    for i, j, k in itertools.combinations(range(1, n + 1), 3):
        for r in triangle_relations(n, i, j, k, a2):
            rels.append(r)
            kinds.append("triangle")
    return Presentation(n, fk_alphabet(n), tuple(rels), (a1, a2), "D", tuple(kinds))


def present_E(n: int) -> Presentation:
    """E_n: D_n(0, 0) under its own family label."""
    if n < 3:
        raise ValueError("n must be at least 3")
    d = present_D(n, 0, 0)
    return Presentation(n, d.alphabet, d.relations, None, "E", d.kinds)


def relation_counts(p: Presentation) -> dict[str, int]:
    out = {"square": 0, "commute": 0, "triangle": 0}
    for k in p.kinds:
        out[k] = out.get(k, 0) + 1
    return out


# -- symmetric group action -------------------------------------------------

def act(sigma: Permutation, p: NCPolynomial, n: int | None = None) -> NCPolynomial:
    """Apply x_ij -> x_{sigma(i) sigma(j)} letterwise, resolving signs."""
    n = n or sigma.n
    pairs = fk_pairs(n)

    def f(a):
        i, j = pairs[a]
        return letter(n, sigma(i), sigma(j))

    return p.map_letters(f)


# -- text format ------------------------------------------------------------

def format_coeff_term(c: mpq, w: Word, alphabet: Alphabet) -> str:
    sign = "-" if c < 0 else "+"
    a = abs(c)
    body = "*".join(alphabet.names[k] for k in w)
    if not w:
        return f"{sign} {a}"
    if a == 1:
        return f"{sign} {body}"
    return f"{sign} {a}*{body}"


def format_poly(p: NCPolynomial, alphabet: Alphabet) -> str:
    """Terms in descending deglex order, e.g. ``+ x12*x23 - x13*x12 - 1``."""
    if not p:
        return "0"
    return " ".join(format_coeff_term(p.terms[w], w, alphabet) for w in p.words())


_TERM = re.compile(r"\s*([+-])?\s*((?:\d+(?:/\d+)?)?)\s*(\*?)\s*([A-Za-z][A-Za-z0-9_]*(?:\s*\*\s*[A-Za-z][A-Za-z0-9_]*)*)?\s*")


def parse_poly(text: str, alphabet: Alphabet) -> NCPolynomial:
    s = text.strip()
    if s == "0":
        return NCPolynomial.zero()
    pos = 0
    out = NCPolynomial.zero()
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        sign, num, star, body = m.groups()
        if sign is None and not first:
            raise ValueError(f"missing sign near {s[pos:]!r}")
        if not num and not body:
            raise ValueError(f"empty term near {s[pos:]!r}")
        if star and not (num and body):
            raise ValueError(f"dangling '*' near {s[pos:]!r}")
        if num and body and not star:
            raise ValueError(f"coefficient needs '*' near {s[pos:]!r}")
        c = Q(num) if num else ONE
        if sign == "-":
            c = -c
        w = []
        if body:
            for nm in re.split(r"\s*\*\s*", body.strip()):
                k, sg = alphabet.lookup(nm)
                w.append(k)
                c = c * sg
        out = out + NCPolynomial({tuple(w): c})
        pos = m.end()
        first = False
    return out


def emit_relations(p: Presentation) -> str:
    return "".join(format_poly(r, p.alphabet) + "\n" for r in p.relations)


def parse_relations(text: str, alphabet: Alphabet) -> list[NCPolynomial]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_poly(line, alphabet))
    return out


def presentation_from_text(text: str, n: int) -> Presentation:
    alph = fk_alphabet(n)
    return Presentation(n, alph, tuple(parse_relations(text, alph)), None, "custom")


def named_alphabet(names: Iterable[str]) -> Alphabet:
    return Alphabet(tuple(names))

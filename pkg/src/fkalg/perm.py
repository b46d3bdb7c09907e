"""Permutations of {1..n}, composed right-to-left: ``(s * t)(i) == s(t(i))``."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]  # images[i-1] == sigma(i)

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, cycles) -> "Permutation":
        img = list(range(1, n + 1))
        seen: set[int] = set()
        for cyc in cycles:
            for a in cyc:
                if not 1 <= a <= n or a in seen:
                    raise ValueError(f"bad cycle entry {a}")
                seen.add(a)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a - 1] = b
        return cls(tuple(img))

    @classmethod
    def parse(cls, text: str, n: int) -> "Permutation":
        """Parse cycle notation such as ``"(1 3)(2 4)"``, ``"(1,3)"`` or ``"e"``."""
        t = text.strip()
        if t in ("e", "id", "()", ""):
            return cls.identity(n)
        if not re.fullmatch(r"(\(\s*\d+(?:[\s,]+\d+)*\s*\)\s*)+", t):
            raise ValueError(f"cannot parse permutation {text!r}")
        cycles = [tuple(int(a) for a in re.split(r"[\s,]+", c.strip())) for c in re.findall(r"\(([^)]*)\)", t)]
        # cycles in a product compose right-to-left
        p = cls.identity(n)
        for cyc in cycles:
            p = p * cls.from_cycles(n, [cyc])
        return p

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.n != other.n:
            raise ValueError("degree mismatch")
        return Permutation(tuple(self.images[other.images[i] - 1] for i in range(self.n)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, a in enumerate(self.images, 1):
            inv[a - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.n + 1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(1, self.n + 1):
            if i in seen or self(i) == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self(i)
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cs = self.cycles()
        if not cs:
            return "e"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)

    def inversions(self) -> int:
        im = self.images
        return sum(1 for a, b in itertools.combinations(range(self.n), 2) if im[a] > im[b])

    def sign(self) -> int:
        return -1 if self.inversions() % 2 else 1

    def __str__(self):
        return self.cycle_string()


def transposition(n: int, a: int, b: int) -> Permutation:
    return Permutation.from_cycles(n, [(a, b)])


@lru_cache(maxsize=None)
def all_perms(n: int) -> tuple[Permutation, ...]:
    """All of S_n in lexicographic order of one-line notation (identity first)."""
    return tuple(Permutation(p) for p in itertools.permutations(range(1, n + 1)))


def klein_four() -> tuple[Permutation, ...]:
    """{e, (13)(24), (14)(23), (12)(34)} inside S_4."""
    return (
        Permutation.identity(4),
        Permutation.parse("(1 3)(2 4)", 4),
        Permutation.parse("(1 4)(2 3)", 4),
        Permutation.parse("(1 2)(3 4)", 4),
    )


def coset_reps_mod_klein() -> tuple[Permutation, ...]:
    """The six permutations of S_4 fixing 1, ordered e, s2, s3, s3s2, s2s3, s2s3s2."""
    s2 = Permutation.parse("(2 3)", 4)
    s3 = Permutation.parse("(3 4)", 4)
    e = Permutation.identity(4)
    return (e, s2, s3, s3 * s2, s2 * s3, s2 * s3 * s2)


def klein_rep(p: Permutation) -> Permutation:
    """The unique element of pV fixing 1."""
    for v in klein_four():
        q = p * v
        if q(1) == 1:
            return q
    raise AssertionError("unreachable")

"""End-to-end constructions shared by the command line and the tests:
presentation -> finite algebra -> basic algebra -> local algebra -> arrow frame.

Two settings are supported for the local picture. When a2 = -a1 (with a1 a
nonzero square) every simple is a sign character and the whole symmetric
group moves the base vertex; for n = 4 and a1 = a2 = 1 the simples are the
six two-dimensional ones and the stabilizer of 1 moves the base vertex.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from .free_algebra import Presentation, present_D, present_E
from .linalg import Q
from .perm import Permutation, all_perms, coset_reps_mod_klein
from .quiver import IOTA, NIL_COXETER, LocalAlgebra, normalize_arrows
from .representations import one_dim_simples, two_dim_simples
from .rewrite import FiniteAlgebra, complete, enumerate_basis
from .structure import Automorphisms, BasicAlgebra, basic_algebra, orbit_algebra

DEFAULT_BOUND = {3: 7, 4: 13}


def presentation(family: str, n: int, a1=None, a2=None) -> Presentation:
    if family == "E":
        return present_E(n)
    if family == "D":
        return present_D(n, a1, a2)
    raise ValueError(f"unknown family {family!r}")


def default_bound(n: int) -> int:
    if n not in DEFAULT_BOUND:
        raise ValueError(f"no default completion bound for n = {n}; pass one explicitly")
    return DEFAULT_BOUND[n]


class CacheCorruption(ValueError):
    pass


class Cache:
    """JSON files under a directory, keyed by a content string."""

    def __init__(self, root: str | os.PathLike | None):
        self.root = Path(root) if root else None

    @classmethod
    def from_env(cls, override: str | None = None) -> "Cache":
        return cls(override or os.environ.get("FK_CACHE_DIR"))

    def _path(self, kind: str, key: str) -> Path | None:
        if self.root is None:
            return None
        import hashlib
        h = hashlib.sha256(key.encode()).hexdigest()[:24]
        return self.root / f"{kind}-{h}.json"

    def load(self, kind: str, key: str):
        p = self._path(kind, key)
        if p is None or not p.exists():
            return None
        try:
            data = json.loads(p.read_text())
            ok = isinstance(data, dict) and data.get("key") == key and "value" in data
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise CacheCorruption(f"cache file {p} is not valid JSON") from exc
        if not ok:
            raise CacheCorruption(f"cache file {p} does not match its key")
        return data["value"]

    def store(self, kind: str, key: str, value) -> None:
        p = self._path(kind, key)
        if p is None:
            return
        p.parent.mkdir(parents=True, exist_ok=True)
        tmp = p.with_suffix(".tmp")
        tmp.write_text(json.dumps({"key": key, "value": value}, sort_keys=True))
        tmp.replace(p)


def _decode(build, kind: str):
    try:
        return build()
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise CacheCorruption(f"cached {kind} entry cannot be decoded: {exc}") from exc


def finite_algebra(pres: Presentation, bound: int | None = None, cache: Cache | None = None) -> FiniteAlgebra:
    bound = bound or default_bound(pres.n)
    key = f"{pres.key()}bound={bound}"
    if cache:
        hit = cache.load("algebra", key)
        if hit is not None:
            return _decode(lambda: FiniteAlgebra.from_json(hit, pres.alphabet), "algebra")
    rs = complete(pres, bound)
    A = enumerate_basis(rs, pres.label())
    if cache:
        cache.store("algebra", key, A.to_json())
    return A


@dataclass
class Setting:
    """Simples, the group moving them, and names for the vertices."""

    simples: list
    group: list
    vertex_names: list
    kind: str  # "sign" or "two-dim"


def setting_for(n: int, a1, a2) -> Setting:
    a1, a2 = Q(a1), Q(a2)
    if a1 == 1 and a2 == -1:
        perms = list(all_perms(n))
        return Setting(list(one_dim_simples(n)), perms, [p.cycle_string() for p in perms], "sign")
    if n == 4 and a1 == 1 and a2 == 1:
        reps = coset_reps_mod_klein()
        group = [p for p in all_perms(4) if p(1) == 1]
        return Setting(list(two_dim_simples()), group, coxeter_names(reps), "two-dim")
    raise ValueError("the local picture is implemented for D_n(1,-1) and D_4(1,1)")


def coxeter_names(reps) -> list:
    """Shortest words in s2 = (2 3), s3 = (3 4) for the given permutations."""
    s = {"s2": Permutation.parse("(2 3)", 4), "s3": Permutation.parse("(3 4)", 4)}
    found = {Permutation.identity(4): "e"}
    layer = [(Permutation.identity(4), "")]
    while len(found) < 6:
        nxt = []
        for p, word in layer:
            for name in ("s2", "s3"):
                q = s[name] * p
                if q not in found:
                    found[q] = name + word
                    nxt.append((q, name + word))
        layer = nxt
    return [found[r] for r in reps]


@dataclass
class LocalPicture:
    algebra: FiniteAlgebra
    setting: Setting
    basic: BasicAlgebra | None
    local: LocalAlgebra


def local_picture(pres: Presentation, A: FiniteAlgebra, cache: Cache | None = None,
                  need_basic: bool = False) -> LocalPicture:
    """Basic algebra and local algebra of D_n(a1, a2) at the base vertex."""
    a1, a2 = pres.params
    st = setting_for(pres.n, a1, a2)
    key = f"{pres.key()}dim={A.dim}"
    if cache and not need_basic:
        hit = cache.load("local", key)
        if hit is not None:
            return LocalPicture(A, st, None, _decode(lambda: LocalAlgebra.from_json(hit), "local"))
    autos = Automorphisms(A, pres.n, pres.relations)
    red = basic_algebra(A, st.simples, st.group, autos)
    orbit = orbit_algebra(red, autos)
    local = LocalAlgebra.from_orbit(orbit, st.vertex_names)
    if cache:
        cache.store("local", key, local.to_json())
    return LocalPicture(A, st, red, local)


def vertex_index(local: LocalAlgebra, name: str) -> int:
    return local.vertex_names.index(name)


def standard_frame(local: LocalAlgebra, n: int, kind: str) -> tuple:
    """(frame, relations) normalizing the arrows to the expected presentation.

    Sign setting, n = 4: s1, s2, s3 end at (1 3), (1 4), (2 4) with the
    nil-Coxeter relations. n = 3: a single loop s ending at (1 3), squaring
    to zero. Two-dimensional setting: s1 and s3 end at s2 and s2 ends at s3,
    with the relations iota.
    """
    if kind == "sign" and n == 4:
        ends = [vertex_index(local, c) for c in ("(1 3)", "(1 4)", "(2 4)")]
        rels = NIL_COXETER
        names = ["s1", "s2", "s3"]
    elif kind == "sign" and n == 3:
        ends = [vertex_index(local, "(1 3)")]
        rels = ["s*s"]
        names = ["s"]
    elif kind == "two-dim":
        s2, s3 = vertex_index(local, "s2"), vertex_index(local, "s3")
        ends = [s2, s3, s2]
        rels = IOTA
        names = ["s1", "s2", "s3"]
    else:
        raise ValueError("no standard frame for this setting")
    return normalize_arrows(local, names, ends, rels), rels

"""Finite groups as Cayley tables.

Every group has its identity at index 0.  Elements are plain ints and all
structure (center, Sylow subgroups, automorphisms, ...) is computed directly
from the multiplication table.
"""
from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass, field
from functools import reduce
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from . import config
from .errors import CapExceeded, InvalidGroup


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    cayley: np.ndarray
    label: str = ""
    inverse: np.ndarray = field(init=False, repr=False)
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        t = np.array(self.cayley, dtype=np.int64)
        t.setflags(write=False)
        object.__setattr__(self, "cayley", t)
        inv = np.argmax(t == 0, axis=1).astype(np.int64)
        inv.setflags(write=False)
        object.__setattr__(self, "inverse", inv)

    @property
    def order(self) -> int:
        return len(self.cayley)

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroup({self.label or '?'}, order={self.order})"

    def _cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def rows(self) -> list[list[int]]:
        """The table as nested lists (faster than numpy for scalar lookups)."""
        return self._cached("rows", lambda: self.cayley.tolist())

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def commutator(self, a: int, b: int) -> int:
        """[a, b] = a b a^-1 b^-1."""
        r = self.rows
        return r[r[r[a][b]][self.inv(a)]][self.inv(b)]

    def conjugate(self, g: int, x: int) -> int:
        """g x g^-1."""
        r = self.rows
        return r[r[g][x]][self.inv(g)]

    def power(self, a: int, k: int) -> int:
        r = self.rows
        out = 0
        for _ in range(k % self.element_orders[a]):
            out = r[out][a]
        return out

    @property
    def element_orders(self) -> list[int]:
        def compute():
            r = self.rows
            orders = []
            for g in range(self.order):
                k, x = 1, g
                while x != 0:
                    x = r[x][g]
                    k += 1
                orders.append(k)
            return orders
        return self._cached("orders", compute)

    @property
    def is_abelian(self) -> bool:
        return self._cached("abelian", lambda: bool((self.cayley == self.cayley.T).all()))

    def closure(self, gens: Iterable[int]) -> list[int]:
        """Sorted element list of the subgroup generated by ``gens``."""
        gens = [g for g in dict.fromkeys(int(g) for g in gens) if g != 0]
        r = self.rows
        seen = {0}
        queue = [0]
        for x in queue:
            for g in gens:
                y = r[x][g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    @property
    def generators(self) -> list[int]:
        """Greedy generating set: repeatedly add the least element not yet generated."""
        def compute():
            gens: list[int] = []
            have = {0}
            for g in range(self.order):
                if g not in have:
                    gens.append(g)
                    have = set(self.closure(gens))
            return gens
        return self._cached("gens", compute)

    @property
    def conjugacy_class_sizes(self) -> list[int]:
        def compute():
            sizes = [0] * self.order
            done = set()
            for x in range(self.order):
                if x in done:
                    continue
                cls = {self.conjugate(g, x) for g in range(self.order)}
                for y in cls:
                    sizes[y] = len(cls)
                done |= cls
            return sizes
        return self._cached("class_sizes", compute)

    def subgroup(self, gens: Iterable[int] = ()) -> "Subgroup":
        gens = list(gens)
        return Subgroup(self, tuple(self.closure(gens)), tuple(gens))

    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)), tuple(self.generators))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, (0,), ())

    def identity_map(self) -> "GroupMap":
        return GroupMap(self, self, tuple(range(self.order)))

    def to_json(self) -> dict:
        return {"name": self.label, "cayley": self.cayley.tolist()}


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    elements: tuple
    generators: tuple = ()
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        els = tuple(sorted(int(e) for e in self.elements))
        object.__setattr__(self, "elements", els)
        if not els or els[0] != 0:
            raise InvalidGroup("subgroup must contain the identity")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order

    def __contains__(self, g) -> bool:
        return g in self.element_set

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and other.elements == self.elements)

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent!r})"

    @property
    def element_set(self) -> frozenset:
        if "set" not in self._cache:
            self._cache["set"] = frozenset(self.elements)
        return self._cache["set"]

    @property
    def local_index(self) -> dict[int, int]:
        if "local" not in self._cache:
            self._cache["local"] = {g: i for i, g in enumerate(self.elements)}
        return self._cache["local"]

    def is_closed(self) -> bool:
        r = self.parent.rows
        s = self.element_set
        return all(r[a][b] in s for a in self.elements for b in self.elements)

    def as_group(self) -> FiniteGroup:
        """The subgroup as a standalone group, elements in increasing parent order."""
        if "group" not in self._cache:
            els = np.array(self.elements)
            loc = np.zeros(self.parent.order, dtype=np.int64)
            loc[els] = np.arange(len(els))
            table = loc[self.parent.cayley[np.ix_(els, els)]]
            label = f"sub({self.parent.label})" if self.parent.label else ""
            self._cache["group"] = FiniteGroup(table, label=label)
        return self._cache["group"]


@dataclass(frozen=True, eq=False)
class GroupMap:
    domain: FiniteGroup
    codomain: FiniteGroup
    image: tuple

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(int(v) for v in self.image))
        if len(self.image) != self.domain.order:
            raise ValueError("image table length must equal the domain order")

    def __call__(self, g: int) -> int:
        return self.image[g]

    def __eq__(self, other):
        return (isinstance(other, GroupMap) and self.domain is other.domain
                and self.codomain is other.codomain and self.image == other.image)

    def __hash__(self):
        return hash(self.image)

    def __lt__(self, other):
        return self.image < other.image

    def __repr__(self):
        return f"GroupMap({list(self.image)})"

    def is_homomorphism(self) -> bool:
        return self.hom_witness() is None

    def hom_witness(self):
        """First pair (a, b) with f(ab) != f(a) f(b), or None."""
        img = np.array(self.image)
        lhs = img[self.domain.cayley]
        rhs = self.codomain.cayley[np.ix_(img, img)]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            return tuple(int(v) for v in bad[0])
        return None

    def is_bijective(self) -> bool:
        return (self.domain.order == self.codomain.order
                and len(set(self.image)) == self.domain.order)

    def is_automorphism(self) -> bool:
        return (self.domain is self.codomain and self.is_bijective()
                and self.is_homomorphism())

    def compose(self, other: "GroupMap") -> "GroupMap":
        """self after other."""
        return GroupMap(other.domain, self.codomain, tuple(self.image[v] for v in other.image))

    def inverse(self) -> "GroupMap":
        inv = [0] * self.domain.order
        for g, v in enumerate(self.image):
            inv[v] = g
        return GroupMap(self.codomain, self.domain, tuple(inv))

    def is_identity(self) -> bool:
        return self.image == tuple(range(len(self.image)))


# ---------------------------------------------------------------- construction

def _validate_table(table: np.ndarray) -> None:
    n = len(table)
    if table.shape != (n, n) or n == 0:
        raise InvalidGroup("Cayley table must be a non-empty square array")
    if table.min() < 0 or table.max() >= n:
        raise InvalidGroup("Cayley table entries out of range")
    idents = [e for e in range(n)
              if (table[e] == np.arange(n)).all() and (table[:, e] == np.arange(n)).all()]
    if not idents:
        raise InvalidGroup("table has no two-sided identity")
    e = idents[0]
    for g in range(n):
        if not ((table[g] == e) & (table[:, g] == e)).any():
            raise InvalidGroup(f"no inverse for element {g}")
    bad = associativity_witness(table)
    if bad is not None:
        raise InvalidGroup(f"table is not associative at {bad}")


def associativity_witness(table) -> tuple | None:
    """First triple (a, b, c) with (ab)c != a(bc), or None."""
    t = np.asarray(table)
    left = t[t]                  # left[a, b, c] = (ab)c
    right = t[:, t]              # right[a, b, c] = a(bc)
    bad = np.argwhere(left != right)
    if len(bad):
        return tuple(int(v) for v in bad[0])
    return None


def _reindex_identity(table: np.ndarray) -> np.ndarray:
    n = len(table)
    e = next(e for e in range(n) if (table[e] == np.arange(n)).all())
    if e == 0:
        return table
    order = [e] + [g for g in range(n) if g != e]
    pos = np.empty(n, dtype=np.int64)
    pos[order] = np.arange(n)
    return pos[table[np.ix_(order, order)]]


def from_table(table, label: str = "") -> FiniteGroup:
    t = np.asarray(table, dtype=np.int64)
    _validate_table(t)
    return FiniteGroup(_reindex_identity(t), label=label)


def from_multiplication(identity, gens: Sequence, mul: Callable, label: str = "",
                        cap: int | None = None) -> FiniteGroup:
    """Breadth-first closure of ``gens`` under ``mul`` (right multiplication)."""
    cap = config.DEFAULT_BUILD_CAP if cap is None else cap
    index = {identity: 0}
    elements = [identity]
    for x in elements:
        for g in gens:
            y = mul(x, g)
            if y not in index:
                index[y] = len(elements)
                elements.append(y)
                if len(elements) > cap:
                    raise CapExceeded("group generation", len(elements), cap)
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i, j] = index[mul(a, b)]
    return FiniteGroup(table, label=label)


def from_permutations(degree: int, perm_gens: Sequence[Sequence[int]], label: str = "",
                      cap: int | None = None) -> FiniteGroup:
    """Permutation group; products compose left to right as maps, (pq)(i) = p(q(i))."""
    gens = []
    for p in perm_gens:
        p = tuple(int(v) for v in p)
        if len(p) != degree or sorted(p) != list(range(degree)):
            raise InvalidGroup(f"{list(p)} is not a permutation of degree {degree}")
        gens.append(p)
    ident = tuple(range(degree))
    return from_multiplication(ident, gens, lambda p, q: tuple(p[i] for i in q),
                               label=label, cap=cap)


def _cyclic(n):
    return from_multiplication(0, [1 % n], lambda a, b: (a + b) % n, label=f"C{n}")


def _metacyclic(n, r, s, label):
    """<a, b | a^n, b^2 = a^s, b a b^-1 = a^r> as pairs (i, j) = a^i b^j."""
    def mul(x, y):
        (i, j), (k, l) = x, y
        i = (i + (r if j else 1) * k) % n
        if j and l:
            return ((i + s) % n, 0)
        return (i, j ^ l)
    return from_multiplication((0, 0), [(1, 0), (0, 1)], mul, label=label)


def _symmetric(n):
    if n <= 1:
        return from_permutations(max(n, 1), [], label=f"S{n}")
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    return from_permutations(n, gens, label=f"S{n}")


def _alternating(n):
    if n <= 2:
        return from_permutations(max(n, 1), [], label=f"A{n}")
    gens = [(1, 2, 0) + tuple(range(3, n))]
    if n == 4:
        gens.append((1, 0, 3, 2))
    elif n >= 5:
        cyc = list(range(1, n)) + [0]
        if n % 2 == 0:
            cyc = [0] + list(range(2, n)) + [1]
        gens.append(tuple(cyc))
    return from_permutations(n, gens, label=f"A{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup, label: str | None = None) -> FiniteGroup:
    """G x H with (g, h) encoded as h * |G| + g."""
    n, m = G.order, H.order
    idx = np.arange(n * m)
    g, h = idx % n, idx // n
    table = H.cayley[np.ix_(h, h)] * n + G.cayley[np.ix_(g, g)]
    return FiniteGroup(table, label=label or f"{G.label}x{H.label}")


_PRESET_RE = [
    (re.compile(r"^C(\d+)\^(\d+)$"), lambda n, k: _power(_cyclic(int(n)), int(k), f"C{n}^{k}")),
    (re.compile(r"^E(\d+)$"), lambda q: _elementary(int(q))),
    (re.compile(r"^C(\d+)$"), lambda n: _cyclic(int(n))),
    (re.compile(r"^D(\d+)$"), lambda n: _dihedral(int(n))),
    (re.compile(r"^Q(\d+)$"), lambda n: _quaternion(int(n))),
    (re.compile(r"^SD(\d+)$"), lambda n: _semidihedral(int(n))),
    (re.compile(r"^S(\d+)$"), lambda n: _small(int(n), _symmetric, "S")),
    (re.compile(r"^A(\d+)$"), lambda n: _small(int(n), _alternating, "A")),
    (re.compile(r"^V4$"), lambda: _relabel(_power(_cyclic(2), 2, ""), "V4")),
]


def _relabel(G, label):
    return FiniteGroup(G.cayley, label=label)


def _power(G, k, label):
    out = G
    for _ in range(k - 1):
        out = direct_product(out, G)
    return _relabel(out, label)


def _elementary(q):
    f = _prime_factorization(q)
    if len(f) != 1:
        raise InvalidGroup(f"E{q}: {q} is not a prime power")
    (p, k), = f.items()
    return _power(_cyclic(p), k, f"E{q}")


def _dihedral(n):
    if n < 2 or n % 2:
        raise InvalidGroup(f"D{n}: dihedral groups are named by their even order")
    if n == 2:
        return _relabel(_cyclic(2), "D2")
    return _metacyclic(n // 2, -1, 0, f"D{n}")


def _quaternion(n):
    if n < 8 or n % 4:
        raise InvalidGroup(f"Q{n}: generalized quaternion order must be a multiple of 4, >= 8")
    return _metacyclic(n // 2, -1, n // 4, f"Q{n}")


def _semidihedral(n):
    if n < 16 or n & (n - 1):
        raise InvalidGroup(f"SD{n}: semidihedral order must be a power of 2, >= 16")
    m = n // 2
    return _metacyclic(m, m // 2 - 1, 0, f"SD{n}")


def _small(n, fn, prefix):
    if n < 1 or n > 5:
        raise InvalidGroup(f"{prefix}{n}: only n <= 5 is available as a preset")
    return fn(n)


def preset(name: str) -> FiniteGroup:
    """Resolve a preset name; ``x`` separates direct factors, e.g. ``D8xC3``.

    Presets are memoised, so repeated lookups return the same object.
    """
    return _preset(name.strip())


@functools.lru_cache(maxsize=None)
def _preset(name: str) -> FiniteGroup:
    parts = [p for p in re.split(r"[x×]", name) if p]
    if len(parts) > 1:
        groups = [preset(p) for p in parts]
        out = reduce(lambda a, b: direct_product(a, b), groups)
        return _relabel(out, name)
    for rx, fn in _PRESET_RE:
        m = rx.match(name)
        if m:
            return fn(*m.groups())
    raise InvalidGroup(f"unknown preset {name!r}")


def build_group(source, label: str = "", cap: int | None = None) -> FiniteGroup:
    """Build a group from a preset name, a Cayley table, or a dict in the group file format."""
    cap = config.DEFAULT_BUILD_CAP if cap is None else cap
    if isinstance(source, FiniteGroup):
        G = source
    elif isinstance(source, str):
        G = preset(source)
    elif isinstance(source, dict):
        label = label or source.get("name", "")
        if "cayley" in source:
            G = from_table(source["cayley"], label=label)
        elif "perm_gens" in source:
            G = from_permutations(int(source["degree"]), source["perm_gens"], label=label, cap=cap)
        else:
            raise InvalidGroup("group dict needs 'cayley' or 'perm_gens'")
    else:
        G = from_table(source, label=label)
    if G.order > cap:
        raise CapExceeded("group", G.order, cap)
    return G


# ---------------------------------------------------------------- structure

def center(G: FiniteGroup) -> Subgroup:
    def compute():
        t = G.cayley
        els = [g for g in range(G.order) if (t[g] == t[:, g]).all()]
        return Subgroup(G, tuple(els))
    return G._cached("center", compute)


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    """Closure of all commutators; ``generators`` holds the commutator set."""
    def compute():
        comms = sorted({G.commutator(a, b) for a in range(G.order) for b in range(G.order)})
        return Subgroup(G, tuple(G.closure(comms)), tuple(comms))
    return G._cached("derived", compute)


def commutator_subgroup(G: FiniteGroup, A: Iterable[int], B: Iterable[int]) -> Subgroup:
    B = list(B)
    comms = {G.commutator(a, b) for a in A for b in B}
    return Subgroup(G, tuple(G.closure(comms)), tuple(sorted(comms)))


def lower_central_series(G: FiniteGroup) -> list[Subgroup]:
    """gamma_1 = G, gamma_{i+1} = [gamma_i, G], until it stabilises."""
    series = [G.whole()]
    while True:
        nxt = commutator_subgroup(G, series[-1].elements, range(G.order))
        if nxt.elements == series[-1].elements:
            return series
        series.append(nxt)


def _prime_factorization(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_divisors(n: int) -> list[int]:
    return sorted(_prime_factorization(n))


@dataclass(frozen=True)
class Structure:
    is_abelian: bool
    is_perfect: bool
    is_centerless: bool
    is_nilpotent: bool
    is_cyclic: bool
    nilpotency_class: int | None
    coclass: int | None


def structure_predicates(G: FiniteGroup) -> Structure:
    def compute():
        series = lower_central_series(G)
        nilpotent = series[-1].order == 1
        cls = len(series) - 1 if nilpotent else None
        coclass = None
        f = _prime_factorization(G.order)
        if nilpotent and len(f) == 1:
            (_, n), = f.items()
            coclass = n - cls
        return Structure(
            is_abelian=G.is_abelian,
            is_perfect=derived_subgroup(G).order == G.order,
            is_centerless=center(G).order == 1,
            is_nilpotent=nilpotent,
            is_cyclic=G.order in G.element_orders,
            nilpotency_class=cls,
            coclass=coclass,
        )
    return G._cached("structure", compute)


def sylow_subgroup(G: FiniteGroup, p: int) -> Subgroup:
    """The Sylow p-subgroup with lexicographically least element list."""
    def compute():
        n = G.order
        target = 1
        while n % p == 0:
            n //= p
            target *= p
        if target == 1:
            return G.trivial()
        orders = G.element_orders
        p_elems = [g for g in range(G.order) if _is_power_of(orders[g], p)]
        current = [0]
        gens: list[int] = []
        while len(current) < target:
            have = set(current)
            for x in p_elems:
                if x in have:
                    continue
                cand = G.closure(gens + [x])
                if _is_power_of(len(cand), p):
                    gens.append(x)
                    current = cand
                    break
            else:  # pragma: no cover - Sylow's theorem guarantees progress
                raise RuntimeError("Sylow search stalled")
        best = tuple(current)
        for g in range(G.order):
            conj = tuple(sorted(G.conjugate(g, x) for x in current))
            if conj < best:
                best = conj
        return Subgroup(G, best)
    return G._cached(("sylow", p), compute)


def _is_power_of(k: int, p: int) -> bool:
    while k % p == 0:
        k //= p
    return k == 1


# ---------------------------------------------------------------- maps

def _extend(src_rows, dst_rows, gens, imgs) -> dict | None:
    """Extend generator images along right multiplication; None on inconsistency."""
    phi = {0: 0}
    queue = [0]
    for x in queue:
        px = phi[x]
        rx, rpx = src_rows[x], dst_rows[px]
        for g, ig in zip(gens, imgs):
            y, py = rx[g], rpx[ig]
            got = phi.get(y)
            if got is None:
                phi[y] = py
                queue.append(y)
            elif got != py:
                return None
    return phi


def _search_maps(src: FiniteGroup, dst: FiniteGroup, candidates: Sequence[Sequence[int]],
                 bijective: bool, gens: Sequence[int] | None = None) -> Iterator[tuple]:
    """Yield homomorphism image tables in lexicographic order of generator images."""
    gens = list(src.generators if gens is None else gens)
    sr, dr = src.rows, dst.rows
    k = len(gens)

    def rec(j, imgs):
        if j == k:
            phi = _extend(sr, dr, gens, imgs)
            if phi is None or len(phi) != src.order:
                return
            if bijective and len(set(phi.values())) != src.order:
                return
            yield tuple(phi[x] for x in range(src.order))
            return
        for c in candidates[j]:
            nxt = imgs + [c]
            if j + 1 < k:
                phi = _extend(sr, dr, gens[:j + 1], nxt)
                if phi is None:
                    continue
                if bijective and len(set(phi.values())) != len(phi):
                    continue
            yield from rec(j + 1, nxt)

    yield from rec(0, [])


def _check_cap(G: FiniteGroup, cap: int | None, what: str):
    limit = config.max_order(cap)
    if G.order > limit:
        raise CapExceeded(what, G.order, limit)


def _iso_candidates(G: FiniteGroup, H: FiniteGroup, gens: Sequence[int]) -> list[list[int]]:
    og, oh = G.element_orders, H.element_orders
    cg, ch = G.conjugacy_class_sizes, H.conjugacy_class_sizes
    return [[h for h in range(H.order) if oh[h] == og[g] and ch[h] == cg[g]] for g in gens]


def automorphisms(G: FiniteGroup, cap: int | None = None) -> list[GroupMap]:
    """All automorphisms, sorted by image table."""
    _check_cap(G, cap, "automorphisms")

    def compute():
        cands = _iso_candidates(G, G, G.generators)
        maps = [GroupMap(G, G, img) for img in _search_maps(G, G, cands, bijective=True)]
        return sorted(maps)
    return G._cached("aut", compute)


def inner_automorphism(G: FiniteGroup, g: int) -> GroupMap:
    return GroupMap(G, G, tuple(G.conjugate(g, x) for x in range(G.order)))


def commuting_automorphisms(G: FiniteGroup, cap: int | None = None) -> list[GroupMap]:
    r = G.rows
    return [a for a in automorphisms(G, cap)
            if all(r[a(x)][x] == r[x][a(x)] for x in range(G.order))]


def central_automorphisms(G: FiniteGroup, cap: int | None = None) -> list[GroupMap]:
    z = center(G).element_set
    r = G.rows
    return [a for a in automorphisms(G, cap)
            if all(r[a(x)][G.inv(x)] in z for x in range(G.order))]


def isomorphic_oracle(G: FiniteGroup, H: FiniteGroup, cap: int | None = None) -> GroupMap | None:
    """First isomorphism G -> H in lexicographic search order, or None."""
    _check_cap(G, cap, "isomorphism search")
    _check_cap(H, cap, "isomorphism search")
    if G.order != H.order:
        return None
    if sorted(G.element_orders) != sorted(H.element_orders):
        return None
    if center(G).order != center(H).order:
        return None
    if derived_subgroup(G).order != derived_subgroup(H).order:
        return None
    if sorted(G.conjugacy_class_sizes) != sorted(H.conjugacy_class_sizes):
        return None
    cands = _iso_candidates(G, H, G.generators)
    for img in _search_maps(G, H, cands, bijective=True):
        return GroupMap(G, H, img)
    return None


def isomorphisms(G: FiniteGroup, H: FiniteGroup, gens: Sequence[int] | None = None,
                 candidates: Sequence[Sequence[int]] | None = None,
                 cap: int | None = None) -> Iterator[GroupMap]:
    """Lazily enumerate isomorphisms G -> H (optionally with restricted generator images)."""
    _check_cap(G, cap, "isomorphism search")
    _check_cap(H, cap, "isomorphism search")
    if G.order != H.order:
        return
    gens = list(G.generators if gens is None else gens)
    if candidates is None:
        candidates = _iso_candidates(G, H, gens)
    for img in _search_maps(G, H, candidates, bijective=True, gens=gens):
        yield GroupMap(G, H, img)


def homomorphisms(G: FiniteGroup, H: FiniteGroup, targets: Iterable[int] | None = None) -> list[GroupMap]:
    """All homomorphisms G -> H whose image lies in ``targets`` (default: all of H)."""
    allowed = sorted(set(range(H.order) if targets is None else targets))
    og, oh = G.element_orders, H.element_orders
    cands = [[h for h in allowed if og[g] % oh[h] == 0] for g in G.generators]
    allowed_set = set(allowed)
    out = []
    for img in _search_maps(G, H, cands, bijective=False):
        if all(v in allowed_set for v in img):
            out.append(GroupMap(G, H, img))
    return sorted(out)


def hom_set(A: FiniteGroup, B: FiniteGroup, cap: int | None = None) -> list[GroupMap]:
    if not (A.is_abelian and B.is_abelian):
        raise InvalidGroup("hom_set is only defined here for abelian groups")
    _check_cap(A, cap, "hom_set")
    _check_cap(B, cap, "hom_set")
    return homomorphisms(A, B)


def is_isomorphic(G: FiniteGroup, H: FiniteGroup, cap: int | None = None) -> bool:
    return isomorphic_oracle(G, H, cap) is not None


def exponent(G: FiniteGroup) -> int:
    return math.lcm(*G.element_orders)


__all__ = [
    "FiniteGroup", "Subgroup", "GroupMap", "Structure",
    "build_group", "preset", "from_table", "from_permutations", "from_multiplication",
    "direct_product", "associativity_witness",
    "center", "derived_subgroup", "lower_central_series", "structure_predicates",
    "sylow_subgroup", "prime_divisors",
    "automorphisms", "inner_automorphism", "commuting_automorphisms", "central_automorphisms",
    "isomorphic_oracle", "isomorphisms", "homomorphisms", "hom_set", "is_isomorphic", "exponent",
]

"""Normalized 2-cochains with trivial action, and Z^2, B^2, SZ^2, H^2.

Coefficients are written additively; a cochain is an (n, n, k) array of
coefficient vectors with zero identity row and column.

The linear algebra is done one cyclic factor and one prime power at a time
(``_Local``).  Inside a component a cocycle is coordinatised by its values
c(x, s) on the generators s of the base group: walking a spanning tree of the
Cayley graph, c(h, ys) = c(h, y) + c(hy, s) - c(y, s) determines every other
entry, and the remaining (non-tree) edges give the linear constraints.  The
cocycle identity for all triples is equivalent to the identity with the third
argument restricted to generators, so nothing is lost.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import config
from .errors import BoundExceeded, CapExceeded, NotACocycle
from .groups import FiniteGroup, GroupMap, Subgroup, _prime_factorization, automorphisms
from .modlinalg import (
    AbelianModule, ModMatrix, crt_idempotent, elementary_to_invariant, howell_local,
    primary_part, quotient_invariants_mod, reduce_vector, span_size,
)


# ---------------------------------------------------------------- cochains

@dataclass(frozen=True, eq=False)
class Cochain2:
    base: FiniteGroup
    coeffs: AbelianModule
    table: np.ndarray

    def __post_init__(self):
        n, k = self.base.order, self.coeffs.rank
        t = np.asarray(self.table, dtype=np.int64)
        if k == 0:
            t = t.reshape(n, n, 0)
        if t.shape != (n, n, k):
            raise ValueError(f"cochain table must have shape {(n, n, k)}, got {t.shape}")
        t = t % self.coeffs.moduli if k else t
        if t[0].any() or t[:, 0].any():
            raise NotACocycle("cochain is not normalized: identity row/column must be zero")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    def _check(self, other):
        if other.base is not self.base or other.coeffs != self.coeffs:
            raise ValueError("cochains over different base groups or coefficients")

    def __add__(self, other):
        self._check(other)
        return Cochain2(self.base, self.coeffs, self.table + other.table)

    def __sub__(self, other):
        self._check(other)
        return Cochain2(self.base, self.coeffs, self.table - other.table)

    def __neg__(self):
        return Cochain2(self.base, self.coeffs, -self.table)

    def __rmul__(self, k: int):
        return Cochain2(self.base, self.coeffs, int(k) * self.table)

    def __eq__(self, other):
        return (isinstance(other, Cochain2) and other.base is self.base
                and other.coeffs == self.coeffs and bool((other.table == self.table).all()))

    __hash__ = None

    def __repr__(self):
        return f"Cochain2({self.base.label} -> {self.coeffs.label})"

    def is_trivial(self) -> bool:
        return not self.table.any()

    def value(self, g: int, h: int) -> np.ndarray:
        return self.table[g, h]

    def image(self) -> list[int]:
        """Module element indices hit by the cochain (as a sorted list)."""
        return sorted(set(self.coeffs.indices(self.table).ravel().tolist()))

    def index_table(self) -> np.ndarray:
        return self.coeffs.indices(self.table)


@dataclass(frozen=True, eq=False)
class OneCochain:
    base: FiniteGroup
    coeffs: AbelianModule
    table: np.ndarray

    def __post_init__(self):
        n, k = self.base.order, self.coeffs.rank
        t = np.asarray(self.table, dtype=np.int64).reshape(n, k)
        t = t % self.coeffs.moduli if k else t
        if t[0].any():
            raise ValueError("one-cochain must vanish at the identity")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    def __eq__(self, other):
        return (isinstance(other, OneCochain) and other.base is self.base
                and other.coeffs == self.coeffs and bool((other.table == self.table).all()))

    __hash__ = None

    def __repr__(self):
        return f"OneCochain({self.table.tolist()})"


def trivial_cochain(G: FiniteGroup, M: AbelianModule) -> Cochain2:
    return Cochain2(G, M, np.zeros((G.order, G.order, M.rank), dtype=np.int64))


def cochain_from_indices(G: FiniteGroup, M: AbelianModule, idx) -> Cochain2:
    return Cochain2(G, M, M.vectors[np.asarray(idx, dtype=np.int64)])


def cocycle_defect(c: Cochain2) -> np.ndarray:
    """d c(h, g, k) = c(h, g) + c(hg, k) - c(g, k) - c(h, gk), as an (n, n, n, r) array."""
    T, M = c.table, c.base.cayley
    n = c.base.order
    hg_k = T[M]                                   # [h, g, k] -> T[hg, k]
    h_gk = T[np.arange(n)[:, None, None], M[None, :, :]]
    d = T[:, :, None, :] + hg_k - T[None, :, :, :] - h_gk
    return d % c.coeffs.moduli if c.coeffs.rank else d


def cocycle_witness(c: Cochain2):
    """First triple (h, g, k) violating the cocycle identity, or None."""
    bad = np.argwhere(cocycle_defect(c).any(axis=-1))
    if len(bad):
        return tuple(int(v) for v in bad[0])
    return None


def is_cocycle(c: Cochain2) -> bool:
    return cocycle_witness(c) is None


def is_symmetric(c: Cochain2) -> bool:
    return bool((c.table == c.table.transpose(1, 0, 2)).all())


def coboundary_of(eta: OneCochain) -> Cochain2:
    """psi(y, y') = eta(y) + eta(y') - eta(y y')."""
    t, M = eta.table, eta.base.cayley
    psi = t[:, None, :] + t[None, :, :] - t[M]
    return Cochain2(eta.base, eta.coeffs, psi)


def _require_cocycle(c: Cochain2):
    w = cocycle_witness(c)
    if w is not None:
        raise NotACocycle(f"not a 2-cocycle: identity fails at (h, g, k) = {w}", witness=w)


# ---------------------------------------------------------------- one component

class _Local:
    """Z^2 / B^2 of a base group with coefficients Z/p^e."""

    def __init__(self, G: FiniteGroup, p: int, e: int):
        self.G, self.p, self.e = G, p, e
        self.q = q = p ** e
        n = self.n = G.order
        S = self.gens = list(G.generators)
        ns = len(S)
        U = self.U = (n - 1) * ns
        rows = G.rows

        def uvec(x, si):
            v = np.zeros(U, dtype=np.int64)
            if x:
                v[(x - 1) * ns + si] = 1
            return v

        # u_at[x, si] one-hot, zero row for x = 0
        u_at = np.zeros((n, ns, U), dtype=np.int64)
        for x in range(1, n):
            for si in range(ns):
                u_at[x, si, (x - 1) * ns + si] = 1

        E = np.zeros((n, n, U), dtype=np.int64)     # E[h, y] = c(h, y) in u-coordinates
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        order = [0]
        cons = []
        for y in order:
            for si, s in enumerate(S):
                y2 = rows[y][s]
                hy = G.cayley[:, y]
                expr = (E[:, y] + u_at[hy, si] - u_at[y, si][None, :]) % q
                if not seen[y2]:
                    seen[y2] = True
                    order.append(y2)
                    E[:, y2] = expr
                else:
                    cons.append((E[:, y2] - expr)[1:] % q)
        E[0] = 0
        self.E = E % q
        K = np.vstack(cons) if cons else np.zeros((0, U), dtype=np.int64)
        self.K = K[K.any(axis=1)] if len(K) else K

        self.z2 = howell_local(self._kernel(self.K), p, e) if U else np.zeros((0, 0), dtype=np.int64)

        # u-coordinates of the coboundary of the unit one-cochain at y, for y = 1..n-1
        D = np.zeros((U, n - 1), dtype=np.int64)
        for x in range(1, n):
            for si, s in enumerate(S):
                r = (x - 1) * ns + si
                D[r, x - 1] += 1
                D[r, s - 1] += 1
                xs = rows[x][s]
                if xs:
                    D[r, xs - 1] -= 1
        self.D = D % q
        self.b2 = howell_local(self.D.T, p, e) if U else np.zeros((0, 0), dtype=np.int64)
        aug = np.hstack([self.D, np.eye(U, dtype=np.int64)]) if U else None
        # solver for D eta = b: Howell form of [D^T | I]
        if U:
            H = howell_local(np.hstack([self.D.T, np.eye(n - 1, dtype=np.int64)]), p, e)
            left = H[:, :U].any(axis=1)
            self._solve_top = H[left]
        del aug
        self.h2 = quotient_invariants_mod(self.z2.reshape(-1, U), self.b2.reshape(-1, U), q) if U else ()

    def _kernel(self, K: np.ndarray) -> np.ndarray:
        p, e, q, U = self.p, self.e, self.q, self.U
        if len(K) == 0:
            return np.eye(U, dtype=np.int64)
        H = howell_local(np.hstack([K.T % q, np.eye(U, dtype=np.int64)]), p, e)
        r = K.shape[0]
        return H[~H[:, :r].any(axis=1)][:, r:]

    # coordinates --------------------------------------------------------
    def u_of(self, T: np.ndarray) -> np.ndarray:
        """u-coordinates of a (n, n) residue table (cocycle component)."""
        return (T[1:, self.gens] % self.q).reshape(-1)

    def full_of(self, u: np.ndarray) -> np.ndarray:
        """(n, n) table of the cocycle with u-coordinates u."""
        return (self.E @ (np.asarray(u, dtype=np.int64) % self.q)) % self.q

    def canonical(self, u: np.ndarray) -> np.ndarray:
        return reduce_vector(self.b2, u, self.q) if self.U else u

    def solve(self, u: np.ndarray) -> np.ndarray | None:
        """eta values on 1..n-1 with coboundary u, or None."""
        if not self.U:
            return np.zeros(0, dtype=np.int64)
        U = self.U
        vec = np.concatenate([u % self.q, np.zeros(self.n - 1, dtype=np.int64)])
        red = reduce_vector(self._solve_top, vec, self.q)
        if red[:U].any():
            return None
        return (-red[U:]) % self.q

    def symmetric_kernel(self) -> np.ndarray:
        n = self.n
        rows = [(self.E[g, h] - self.E[h, g]) % self.q
                for g in range(1, n) for h in range(g + 1, n)]
        extra = np.array(rows, dtype=np.int64).reshape(-1, self.U)
        K = np.vstack([self.K, extra]) if len(self.K) else extra
        K = K[K.any(axis=1)] if len(K) else K
        return howell_local(self._kernel(K), self.p, self.e) if self.U else np.zeros((0, 0), dtype=np.int64)

    def class_reps(self) -> list[tuple]:
        """Canonical u-vectors of all classes, sorted."""
        if not self.U:
            return [()]
        zero = tuple(self.canonical(np.zeros(self.U, dtype=np.int64)).tolist())
        seen = {zero}
        frontier = [zero]
        while frontier:
            nxt = []
            for v in frontier:
                for g in self.z2:
                    w = tuple(self.canonical(np.array(v) + g).tolist())
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return sorted(seen)


def _local(G: FiniteGroup, p: int, e: int) -> _Local:
    return G._cached(("local", p, e), lambda: _Local(G, p, e))


# ---------------------------------------------------------------- spaces

@dataclass(frozen=True)
class _Component:
    factor: int      # coefficient factor index
    p: int
    e: int
    idempotent: int  # CRT idempotent of Z/p^e inside Z/d_factor

    @property
    def q(self) -> int:
        return self.p ** self.e


def _components(M: AbelianModule) -> list[_Component]:
    out = []
    for i, d in enumerate(M.invariant_factors):
        for p, e in sorted(_prime_factorization(d).items()):
            out.append(_Component(i, p, e, crt_idempotent(p ** e, d)))
    return out


class CocycleSpace:
    """Z^2, B^2 and H^2 of ``base`` with coefficients ``coeffs`` (trivial action)."""

    def __init__(self, base: FiniteGroup, coeffs: AbelianModule):
        self.base, self.coeffs = base, coeffs
        self.components = _components(coeffs)
        self.locals = [_local(base, c.p, c.e) for c in self.components]
        n = base.order
        self.coordinates = [(g, h, i) for g in range(1, n) for h in range(1, n)
                            for i in range(coeffs.rank)]

    def __repr__(self):
        return f"CocycleSpace({self.base.label}, {self.coeffs.label}, H2={self.h2_invariants})"

    @property
    def h2_invariants(self) -> list[int]:
        return list(elementary_to_invariant([d for L in self.locals for d in L.h2]))

    @property
    def h2_order(self) -> int:
        return math.prod(self.h2_invariants)

    @property
    def z2_order(self) -> int:
        return math.prod(span_size(L.z2, L.q) for L in self.locals if L.U)

    @property
    def b2_order(self) -> int:
        return math.prod(span_size(L.b2, L.q) for L in self.locals if L.U)

    # full-coordinate generating matrices over Z/exp(M) --------------------
    def _embed(self, comp: _Component, tables: np.ndarray) -> np.ndarray:
        """Rows of (n, n) component tables -> full coordinate vectors over Z/exp(M)."""
        n, k = self.base.order, self.coeffs.rank
        m = self.coeffs.exponent
        d = self.coeffs.invariant_factors[comp.factor]
        out = np.zeros((len(tables), n - 1, n - 1, k), dtype=np.int64)
        out[..., comp.factor] = ((tables[:, 1:, 1:] * comp.idempotent) % d) * (m // d)
        return out.reshape(len(tables), -1) % m

    def _basis(self, attr: str) -> ModMatrix:
        m = max(self.coeffs.exponent, 2)
        cols = len(self.coordinates)
        blocks = []
        for comp, L in zip(self.components, self.locals):
            gens = getattr(L, attr) if attr != "sz2" else L.symmetric_kernel()
            if len(gens) and L.U:
                tables = np.stack([L.full_of(u) for u in gens])
                blocks.append(self._embed(comp, tables))
        rows = np.vstack(blocks) if blocks else np.zeros((0, cols), dtype=np.int64)
        return ModMatrix(m, rows.reshape(-1, cols))

    @property
    def z2_basis(self) -> ModMatrix:
        return self._basis("z2")

    @property
    def b2_basis(self) -> ModMatrix:
        return self._basis("b2")

    def sz2_basis(self) -> ModMatrix:
        return self._basis("sz2")

    def sz2_order(self) -> int:
        return math.prod(span_size(L.symmetric_kernel(), L.q) for L in self.locals if L.U)

    def cochain_from_full(self, vec) -> Cochain2:
        """Inverse of the full-coordinate embedding."""
        n, k = self.base.order, self.coeffs.rank
        m = self.coeffs.exponent
        v = np.asarray(vec, dtype=np.int64).reshape(n - 1, n - 1, k)
        T = np.zeros((n, n, k), dtype=np.int64)
        for i, d in enumerate(self.coeffs.invariant_factors):
            T[1:, 1:, i] = (v[..., i] // (m // d)) % d
        return Cochain2(self.base, self.coeffs, T)

    def full_vector(self, c: Cochain2) -> np.ndarray:
        m = self.coeffs.exponent
        scale = m // self.coeffs.moduli
        return ((c.table[1:, 1:] * scale) % m).reshape(-1)

    # per-cochain operations ---------------------------------------------
    def _check(self, c: Cochain2):
        if c.base is not self.base or c.coeffs != self.coeffs:
            raise ValueError("cochain does not live on this space")

    def _u(self, c: Cochain2) -> list[np.ndarray]:
        return [L.u_of(c.table[:, :, comp.factor] % comp.q)
                for comp, L in zip(self.components, self.locals)]

    def _assemble(self, us: list) -> Cochain2:
        n = self.base.order
        T = np.zeros((n, n, self.coeffs.rank), dtype=np.int64)
        for comp, L, u in zip(self.components, self.locals, us):
            if L.U:
                T[:, :, comp.factor] += L.full_of(np.asarray(u, dtype=np.int64)) * comp.idempotent
        return Cochain2(self.base, self.coeffs, T)

    def class_key(self, c: Cochain2) -> tuple:
        """Hashable canonical key of the class of a cocycle (not re-checked)."""
        return tuple(L.canonical(u).tobytes() if L.U else b""
                     for L, u in zip(self.locals, self._u(c)))

    def canonical(self, c: Cochain2) -> Cochain2:
        return self._assemble([L.canonical(u) if L.U else u
                               for L, u in zip(self.locals, self._u(c))])

    def solve_coboundary(self, c: Cochain2) -> OneCochain | None:
        n, k = self.base.order, self.coeffs.rank
        eta = np.zeros((n, k), dtype=np.int64)
        for comp, L, u in zip(self.components, self.locals, self._u(c)):
            sol = L.solve(u)
            if sol is None:
                return None
            eta[1:, comp.factor] += sol * comp.idempotent
        return OneCochain(self.base, self.coeffs, eta)

    def contains(self, c: Cochain2) -> bool:
        return c.base is self.base and c.coeffs == self.coeffs and is_cocycle(c)

    def classes(self) -> list["CohomologyClass"]:
        """One canonical representative per class, in a fixed order."""
        def compute():
            per = [L.class_reps() for L in self.locals]
            out = []
            for combo in itertools.product(*per):
                rep = self._assemble([np.array(u, dtype=np.int64) for u in combo])
                out.append(CohomologyClass(self, rep))
            return out
        key = ("classes", self.coeffs.invariant_factors)
        return self.base._cached(key, compute)

    def random_cocycle(self, rng: np.random.Generator) -> Cochain2:
        us = []
        for L in self.locals:
            if L.U and len(L.z2):
                us.append((rng.integers(0, L.q, len(L.z2)) @ L.z2) % L.q)
            else:
                us.append(np.zeros(L.U, dtype=np.int64))
        return self._assemble(us)

    def random_coboundary(self, rng: np.random.Generator) -> Cochain2:
        n, M = self.base.order, self.coeffs
        t = np.zeros((n, M.rank), dtype=np.int64)
        if M.rank:
            t[1:] = rng.integers(0, M.moduli, size=(n - 1, M.rank))
        return coboundary_of(OneCochain(self.base, M, t))


def compute_spaces(G: FiniteGroup, M: AbelianModule, cap: int | None = None) -> CocycleSpace:
    limit = config.max_order(cap)
    if G.order > limit:
        raise CapExceeded("cohomology computation", G.order, limit)
    return G._cached(("space", M.invariant_factors), lambda: CocycleSpace(G, M))


def sz2_space(G: FiniteGroup, M: AbelianModule) -> ModMatrix:
    return compute_spaces(G, M).sz2_basis()


def cocycle_system(G: FiniteGroup, q: int) -> np.ndarray:
    """One equation per ordered triple over the (n-1)^2 free positions (literal form)."""
    n = G.order
    rows = []
    M = G.rows

    def pos(a, b):
        return (a - 1) * (n - 1) + (b - 1) if a and b else None

    for h in range(n):
        for g in range(n):
            for k in range(n):
                r = np.zeros((n - 1) ** 2, dtype=np.int64)
                for a, b, s in ((h, g, 1), (M[h][g], k, 1), (g, k, -1), (h, M[g][k], -1)):
                    i = pos(a, b)
                    if i is not None:
                        r[i] += s
                if (r % q).any():
                    rows.append(r % q)
    return np.array(rows, dtype=np.int64).reshape(-1, (n - 1) ** 2)


# ---------------------------------------------------------------- classes

@dataclass(frozen=True, eq=False)
class CohomologyClass:
    space: CocycleSpace
    rep: Cochain2

    @property
    def key(self) -> tuple:
        return self.space.class_key(self.rep)

    def __eq__(self, other):
        return (isinstance(other, CohomologyClass) and other.space is self.space
                and other.key == self.key)

    def __hash__(self):
        return hash(self.key)

    def is_trivial(self) -> bool:
        return self.space.canonical(self.rep).is_trivial()

    def __repr__(self):
        return f"CohomologyClass({self.space.base.label}, {self.space.coeffs.label})"


def space_of(c: Cochain2) -> CocycleSpace:
    return compute_spaces(c.base, c.coeffs, cap=max(config.max_order(), c.base.order))


def is_coboundary(eps: Cochain2) -> OneCochain | None:
    _require_cocycle(eps)
    return space_of(eps).solve_coboundary(eps)


def class_of(eps: Cochain2) -> CohomologyClass:
    _require_cocycle(eps)
    space = space_of(eps)
    return CohomologyClass(space, space.canonical(eps))


def _same_space(a: CohomologyClass, b: CohomologyClass):
    if a.space is not b.space:
        raise ValueError("classes over different base groups or coefficients")


def class_equal(a: CohomologyClass, b: CohomologyClass) -> bool:
    _same_space(a, b)
    return a.space.solve_coboundary(a.rep - b.rep) is not None


def class_power(a: CohomologyClass, k: int) -> CohomologyClass:
    return CohomologyClass(a.space, a.space.canonical(k * a.rep))


def class_order(a: CohomologyClass) -> int:
    k, cur = 1, a.rep
    while a.space.solve_coboundary(cur) is None:
        k += 1
        cur = cur + a.rep
    return k


# ---------------------------------------------------------------- maps of cochains

def module_automorphisms(M: AbelianModule, cap: int | None = None) -> list[GroupMap]:
    return automorphisms(M.as_group(), cap=max(config.max_order(cap), M.order))


def pushforward(sigma: GroupMap, eps: Cochain2) -> Cochain2:
    """sigma applied to every value of eps."""
    M = eps.coeffs
    if sigma.domain.order != M.order or not sigma.is_bijective():
        raise ValueError("sigma must be an invertible map of the coefficient module")
    img = np.asarray(sigma.image, dtype=np.int64)
    return Cochain2(eps.base, M, M.vectors[img[eps.index_table()]])


def pullback(eps: Cochain2, rho: GroupMap) -> Cochain2:
    """(g, h) -> eps(rho(g), rho(h))."""
    if rho.domain is not eps.base or not rho.is_automorphism():
        raise ValueError("rho must be an automorphism of the base group")
    r = np.asarray(rho.image)
    return Cochain2(eps.base, eps.coeffs, eps.table[np.ix_(r, r)])


def restrict(eps: Cochain2, H: Subgroup) -> Cochain2:
    if H.parent is not eps.base:
        raise ValueError("H is not a subgroup of the cochain's base group")
    els = np.array(H.elements)
    return Cochain2(H.as_group(), eps.coeffs, eps.table[np.ix_(els, els)])


def project_coefficients(eps: Cochain2, p: int) -> Cochain2:
    part = primary_part(eps.coeffs, p)
    return Cochain2(eps.base, part.module, part.project(eps.table))


def inject_coefficients(eps: Cochain2, M: AbelianModule, p: int) -> Cochain2:
    """Embed a cochain with p-primary coefficients back into M."""
    part = primary_part(M, p)
    if part.module != eps.coeffs:
        raise ValueError("coefficients are not the p-part of M")
    return Cochain2(eps.base, M, part.inject(eps.table))


def right_transversal(H: Subgroup) -> tuple[np.ndarray, np.ndarray]:
    """(representatives, rep_of) with rep_of[x] = least element of the coset Hx."""
    G = H.parent
    els = np.array(H.elements)
    rep_of = G.cayley[els][:, :].min(axis=0)   # min over h of h*x
    reps = np.unique(rep_of)
    return reps, rep_of


def corestrict(c, H: Subgroup):
    """Transfer from H^2(H, M) to H^2(G, M), G = H.parent.

    cor f(g1, g2) = sum over t of f(t g1 r(t g1)^-1, r(t g1) g2 r(t g1 g2)^-1),
    t over coset representatives of H in G, r(x) the representative of Hx.
    """
    is_class = isinstance(c, CohomologyClass)
    f = c.rep if is_class else c
    if f.base is not H.as_group():
        raise ValueError("class does not live on the given subgroup")
    G = H.parent
    T, bar = right_transversal(H)
    mul, inv = G.cayley, G.inverse
    loc = np.full(G.order, -1, dtype=np.int64)
    loc[list(H.elements)] = np.arange(H.order)
    tg1 = mul[T[:, None], np.arange(G.order)[None, :]]           # [t, g1]
    b1 = bar[tg1]
    first = loc[mul[tg1, inv[b1]]]                                # t g1 r(t g1)^-1
    tg1g2 = mul[tg1[:, :, None], np.arange(G.order)[None, None, :]]
    second = loc[mul[mul[b1[:, :, None], np.arange(G.order)[None, None, :]], inv[bar[tg1g2]]]]
    first = np.broadcast_to(first[:, :, None], second.shape)
    if (first < 0).any() or (second < 0).any():  # pragma: no cover - transversal bug guard
        raise RuntimeError("transfer argument left the subgroup")
    vals = f.table[first, second].sum(axis=0)
    out = Cochain2(G, f.coeffs, vals)
    return class_of(out) if is_class else out


# ---------------------------------------------------------------- oracle

def brute_force_spaces(G: FiniteGroup, M: AbelianModule,
                       bound: int = config.DEFAULT_ORACLE_BOUND) -> tuple[set, set]:
    """Literal enumeration of normalized cocycles and coboundaries.

    Elements are returned as tuples of module element indices over the free
    positions (g, h), g, h != identity, in row-major order.
    """
    n, size = G.order, M.order
    P = (n - 1) ** 2
    total = size ** P
    if total > bound:
        raise BoundExceeded(f"{size}^{P} = {total} normalized cochains exceeds bound {bound}")
    add = M.add_table
    neg = np.array([M.index(-v) for v in M.vectors])
    mul = G.cayley
    cocycles: set = set()
    chunk = 1 << 16
    h = np.arange(n)[:, None, None]
    g = np.arange(n)[None, :, None]
    k = np.arange(n)[None, None, :]
    hg, gk = mul[h, g], mul[g, k]
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        digits = np.empty((len(idx), P), dtype=np.int64)
        rest = idx.copy()
        for j in range(P):
            digits[:, j] = rest % size
            rest //= size
        T = np.zeros((len(idx), n, n), dtype=np.int64)
        T[:, 1:, 1:] = digits.reshape(-1, n - 1, n - 1)
        lhs = add[T[:, h, g], T[:, hg, k]]
        rhs = add[T[:, g, k], T[:, h, gk]]
        ok = (lhs == rhs).reshape(len(idx), -1).all(axis=1)
        for row in digits[ok]:
            cocycles.add(tuple(row.tolist()))
    cobs: set = set()
    for eta in itertools.product(range(size), repeat=n - 1):
        e = np.array((0,) + eta)
        psi = add[add[e[:, None], e[None, :]], neg[e[mul]]]
        cobs.add(tuple(psi[1:, 1:].reshape(-1).tolist()))
    return cocycles, cobs


__all__ = [
    "Cochain2", "OneCochain", "CocycleSpace", "CohomologyClass",
    "trivial_cochain", "cochain_from_indices", "is_cocycle", "cocycle_witness", "is_symmetric",
    "coboundary_of", "compute_spaces", "sz2_space", "cocycle_system", "is_coboundary",
    "class_of", "class_equal", "class_power", "class_order", "module_automorphisms",
    "pushforward", "pullback", "restrict", "project_coefficients", "inject_coefficients",
    "corestrict", "right_transversal", "brute_force_spaces", "space_of",
]

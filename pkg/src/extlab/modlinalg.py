"""Finite abelian modules and exact linear algebra over Z/m.

Row spans over Z/m are canonicalised with the Howell form.  Prime-power
moduli use a vectorised elimination that pivots on the entry of least
p-adic valuation (Z/p^e is local, so that pivot divides the whole column);
composite moduli are split by CRT.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .groups import FiniteGroup, _prime_factorization


# ---------------------------------------------------------------- modules

def _chain_from_prime_powers(powers: dict[int, list[int]]) -> tuple[int, ...]:
    """Invariant factors (ascending divisibility chain) from per-prime exponent lists."""
    cols = max((len(v) for v in powers.values()), default=0)
    factors = [1] * cols
    for p, exps in powers.items():
        for i, e in enumerate(sorted(exps, reverse=True)):
            factors[i] *= p ** e
    return tuple(sorted(f for f in factors if f > 1))


def elementary_to_invariant(divisors: Sequence[int]) -> tuple[int, ...]:
    powers: dict[int, list[int]] = {}
    for d in divisors:
        for p, e in _prime_factorization(int(d)).items():
            powers.setdefault(p, []).append(e)
    return _chain_from_prime_powers(powers)


@dataclass(frozen=True, eq=False)
class AbelianModule:
    """Z/d1 x ... x Z/dk with d1 | d2 | ... | dk, written additively."""

    invariant_factors: tuple
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        f = tuple(int(d) for d in self.invariant_factors)
        if any(d < 2 for d in f) or any(f[i + 1] % f[i] for i in range(len(f) - 1)):
            raise ValueError(f"{list(f)} is not a divisibility chain of factors >= 2")
        object.__setattr__(self, "invariant_factors", f)

    def __eq__(self, other):
        return isinstance(other, AbelianModule) and other.invariant_factors == self.invariant_factors

    def __hash__(self):
        return hash(self.invariant_factors)

    def __repr__(self):
        return f"AbelianModule({list(self.invariant_factors)})"

    @property
    def label(self) -> str:
        if not self.invariant_factors:
            return "1"
        return "x".join(f"C{d}" for d in self.invariant_factors)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def moduli(self) -> np.ndarray:
        return np.array(self.invariant_factors, dtype=np.int64)

    def zero(self) -> np.ndarray:
        return np.zeros(self.rank, dtype=np.int64)

    def reduce(self, v) -> np.ndarray:
        return np.asarray(v, dtype=np.int64) % self.moduli

    def index(self, v) -> int:
        """Mixed-radix index of a vector, first factor fastest."""
        out, scale = 0, 1
        for x, d in zip(v, self.invariant_factors):
            out += (int(x) % d) * scale
            scale *= d
        return out

    def indices(self, arr: np.ndarray) -> np.ndarray:
        """Vectorised ``index`` over the last axis."""
        arr = np.asarray(arr, dtype=np.int64)
        out = np.zeros(arr.shape[:-1], dtype=np.int64)
        scale = 1
        for i, d in enumerate(self.invariant_factors):
            out += (arr[..., i] % d) * scale
            scale *= d
        return out

    def vector(self, idx: int) -> np.ndarray:
        return self.vectors[idx]

    @property
    def vectors(self) -> np.ndarray:
        """All elements as an (order, rank) array in index order."""
        if "vectors" not in self._cache:
            idx = np.arange(self.order)
            cols = []
            for d in self.invariant_factors:
                cols.append(idx % d)
                idx = idx // d
            self._cache["vectors"] = (np.stack(cols, axis=1) if cols
                                      else np.zeros((1, 0), dtype=np.int64))
        return self._cache["vectors"]

    @property
    def add_table(self) -> np.ndarray:
        if "add" not in self._cache:
            v = self.vectors
            self._cache["add"] = self.indices(v[:, None, :] + v[None, :, :])
        return self._cache["add"]

    def as_group(self) -> FiniteGroup:
        if "group" not in self._cache:
            self._cache["group"] = FiniteGroup(self.add_table, label=self.label)
        return self._cache["group"]

    def to_json(self) -> dict:
        return {"invariant_factors": list(self.invariant_factors)}


def module_from_factors(factors: Sequence[int]) -> AbelianModule:
    """Normalise any list of cyclic orders to invariant-factor form."""
    for d in factors:
        if int(d) < 1:
            raise ValueError(f"cyclic factor orders must be positive, got {d}")
    return AbelianModule(elementary_to_invariant([d for d in factors if int(d) > 1]))


@dataclass(frozen=True, eq=False)
class PrimaryPart:
    """The p-component of a module with its embedding and retraction."""

    prime: int
    parent: AbelianModule
    module: AbelianModule
    slots: tuple       # parent factor index of each part factor
    idempotents: tuple  # CRT idempotent for each slot, inside Z/d_slot

    def project(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64)
        if not self.slots:
            return np.zeros(v.shape[:-1] + (0,), dtype=np.int64)
        return v[..., list(self.slots)] % self.module.moduli

    def inject(self, w: np.ndarray) -> np.ndarray:
        w = np.asarray(w, dtype=np.int64)
        out = np.zeros(w.shape[:-1] + (self.parent.rank,), dtype=np.int64)
        for j, (slot, e) in enumerate(zip(self.slots, self.idempotents)):
            out[..., slot] = (w[..., j] * e) % self.parent.invariant_factors[slot]
        return out


def crt_idempotent(q: int, m: int) -> int:
    """e with e = 1 mod q and e = 0 mod m/q (q | m, gcd(q, m/q) = 1)."""
    r = m // q
    if r == 1:
        return 1 % m
    return (r * pow(r, -1, q)) % m


def primary_part(M: AbelianModule, p: int) -> PrimaryPart:
    slots, facs, idem = [], [], []
    for i, d in enumerate(M.invariant_factors):
        q = p ** _prime_factorization(d).get(p, 0)
        if q > 1:
            slots.append(i)
            facs.append(q)
            idem.append(crt_idempotent(q, d))
    return PrimaryPart(p, M, AbelianModule(tuple(facs)), tuple(slots), tuple(idem))


def primary_decomposition(M: AbelianModule) -> list[PrimaryPart]:
    return [primary_part(M, p) for p in sorted(_prime_factorization(M.order))]


# ---------------------------------------------------------------- matrices

@dataclass(frozen=True, eq=False)
class ModMatrix:
    modulus: int
    entries: np.ndarray

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be >= 2")
        e = np.array(self.entries, dtype=np.int64)
        if e.ndim != 2:
            e = e.reshape(len(e), -1) if len(e) else np.zeros((0, 0), dtype=np.int64)
        object.__setattr__(self, "entries", e % self.modulus)

    @classmethod
    def zeros(cls, modulus: int, cols: int) -> "ModMatrix":
        return cls(modulus, np.zeros((0, cols), dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __eq__(self, other):
        return (isinstance(other, ModMatrix) and other.modulus == self.modulus
                and other.entries.shape == self.entries.shape
                and bool((other.entries == self.entries).all()))

    def __repr__(self):
        return f"ModMatrix(mod {self.modulus}, {self.entries.tolist()})"

    def tolist(self):
        return self.entries.tolist()


def _valuation(a: np.ndarray, p: int, e: int) -> np.ndarray:
    """p-adic valuation of residues mod p^e (zero maps to e)."""
    v = np.zeros(a.shape, dtype=np.int64)
    x = a.copy()
    x[x == 0] = p ** e
    for _ in range(e):
        m = (x % p == 0)
        if not m.any():
            break
        v += m
        x = np.where(m, x // p, x)
    return np.minimum(v, e)


def howell_local(A: np.ndarray, p: int, e: int) -> np.ndarray:
    """Howell form over Z/p^e; zero rows dropped."""
    q = p ** e
    A = np.array(A, dtype=np.int64) % q
    if A.ndim != 2:
        A = A.reshape(0, 0)
    nrows, ncols = A.shape
    if nrows == 0:
        return A
    # room for the annihilator rows appended during elimination
    work = np.zeros((nrows + ncols, ncols), dtype=np.int64)
    work[:nrows] = A
    used = nrows
    i = 0
    for j in range(ncols):
        if i >= used:
            break
        col = work[i:used, j]
        nz = np.flatnonzero(col)
        if len(nz) == 0:
            continue
        vals = _valuation(col[nz], p, e)
        k = i + nz[int(np.argmin(vals))]
        v = int(vals.min())
        if k != i:
            work[[i, k]] = work[[k, i]]
        piv = int(work[i, j])
        unit = piv // p ** v
        work[i] = (work[i] * pow(unit, -1, q)) % q
        pv = p ** v
        # clear below: every entry there is divisible by p^v
        below = i + 1 + np.flatnonzero(work[i + 1:used, j])
        if len(below):
            f = work[below, j] // pv
            work[below] = (work[below] - f[:, None] * work[i][None, :]) % q
        # reduce above into [0, p^v)
        if i:
            f = work[:i, j] // pv
            if f.any():
                work[:i] = (work[:i] - f[:, None] * work[i][None, :]) % q
        if v > 0:
            ann = (work[i] * (q // pv)) % q
            if ann.any():
                if used == len(work):
                    work = np.vstack([work, np.zeros((ncols, ncols), dtype=np.int64)])
                work[used] = ann
                used += 1
        i += 1
    out = work[:i]
    return out[out.any(axis=1)]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _unit_normaliser(a: int, m: int) -> int:
    """A unit c mod m with c * a = gcd(a, m) mod m."""
    g = math.gcd(a, m)
    r = m // g
    c = pow(a // g, -1, r) if r > 1 else 1
    while math.gcd(c, m) != 1:
        c += r
    return c % m


def howell_general(A: np.ndarray, m: int) -> np.ndarray:
    """Howell form over any Z/m (row-by-row, pure Python); zero rows dropped."""
    rows = [[int(x) % m for x in r] for r in np.asarray(A, dtype=np.int64)]
    if not rows:
        return np.zeros((0, np.asarray(A).shape[1] if np.asarray(A).ndim == 2 else 0), dtype=np.int64)
    ncols = len(rows[0])
    while len(rows) < ncols:
        rows.append([0] * ncols)
    i = 0
    for j in range(ncols):
        if i >= len(rows):
            break
        for k in range(i + 1, len(rows)):
            a, b = rows[i][j], rows[k][j]
            if b == 0:
                continue
            g, s, t = _xgcd(a, b)
            u, v = -b // g, a // g
            ri, rk = rows[i], rows[k]
            rows[i] = [(s * x + t * y) % m for x, y in zip(ri, rk)]
            rows[k] = [(u * x + v * y) % m for x, y in zip(ri, rk)]
        piv = rows[i][j]
        if piv == 0:
            continue
        c = _unit_normaliser(piv, m)
        rows[i] = [(c * x) % m for x in rows[i]]
        g = rows[i][j]
        for r in range(i):
            f = rows[r][j] // g
            if f:
                rows[r] = [(x - f * y) % m for x, y in zip(rows[r], rows[i])]
        ann = [(x * (m // g)) % m for x in rows[i]]
        if any(ann):
            rows.append(ann)
        i += 1
    out = np.array([r for r in rows[:i] if any(r)], dtype=np.int64)
    return out.reshape(-1, ncols)


def _prime_powers(m: int) -> list[tuple[int, int]]:
    return sorted(_prime_factorization(m).items())


def howell(A: np.ndarray, m: int) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    if A.ndim != 2:
        raise ValueError("expected a 2-d array")
    pp = _prime_powers(m)
    if len(pp) == 1:
        return howell_local(A, *pp[0])
    parts = []
    for p, e in pp:
        H = howell_local(A % p ** e, p, e)
        parts.append((H * crt_idempotent(p ** e, m)) % m)
    stacked = np.vstack(parts) if parts else A[:0]
    return howell_general(stacked, m)


def howell_form(A: ModMatrix) -> ModMatrix:
    return ModMatrix(A.modulus, howell(A.entries, A.modulus).reshape(-1, A.cols))


def _pivots(H: np.ndarray) -> list[int]:
    return [int(np.flatnonzero(r)[0]) for r in H]


def reduce_vector(H: np.ndarray, v: np.ndarray, m: int) -> np.ndarray:
    """Canonical remainder of v modulo the row span of a Howell form H."""
    v = np.array(v, dtype=np.int64) % m
    for row, j in zip(H, _pivots(H)):
        f = v[..., j] // row[j]
        if np.any(f):
            v = (v - np.multiply.outer(f, row)) % m
    return v


def in_span(H: np.ndarray, v: np.ndarray, m: int) -> bool:
    return not reduce_vector(H, v, m).any()


def span_size(H: np.ndarray, m: int) -> int:
    """Number of elements in the row span of a Howell form."""
    return math.prod(m // int(r[j]) for r, j in zip(H, _pivots(H)))


def _solve_local(A: np.ndarray, b: np.ndarray, p: int, e: int):
    q = p ** e
    r, c = A.shape
    aug = np.hstack([A.T % q, np.eye(c, dtype=np.int64)])
    H = howell_local(aug, p, e)
    left = H[:, :r]
    has_left = left.any(axis=1)
    top, kern = H[has_left], H[~has_left][:, r:]
    vec = np.concatenate([np.asarray(b, dtype=np.int64) % q, np.zeros(c, dtype=np.int64)])
    red = reduce_vector(top, vec, q)
    if red[:r].any():
        return None
    return (-red[r:]) % q, kern


def solve_mod(A: np.ndarray, b: np.ndarray, m: int):
    """Solve A x = b over Z/m: (particular x, kernel generators) or None."""
    A = np.asarray(A, dtype=np.int64).reshape(len(b), -1) if len(b) else np.asarray(A, dtype=np.int64)
    c = A.shape[1]
    x = np.zeros(c, dtype=np.int64)
    kern = []
    for p, e in _prime_powers(m):
        q = p ** e
        res = _solve_local(A % q, np.asarray(b) % q, p, e)
        if res is None:
            return None
        xq, kq = res
        idem = crt_idempotent(q, m)
        x = (x + xq * idem) % m
        if len(kq):
            kern.append((kq * idem) % m)
    K = np.vstack(kern) if kern else np.zeros((0, c), dtype=np.int64)
    return x, K


def solve_linear(A: ModMatrix, b) -> tuple[np.ndarray, ModMatrix] | None:
    res = solve_mod(A.entries, np.asarray(b, dtype=np.int64), A.modulus)
    if res is None:
        return None
    x, K = res
    return x, ModMatrix(A.modulus, K.reshape(-1, A.cols))


def quotient_invariants_mod(span: np.ndarray, sub: np.ndarray, m: int) -> tuple[int, ...]:
    span = np.asarray(span, dtype=np.int64).reshape(-1, np.asarray(span).shape[-1])
    sub = np.asarray(sub, dtype=np.int64).reshape(-1, span.shape[1])
    divisors: list[int] = []
    for p, e in _prime_powers(m):
        q = p ** e
        Hs = howell_local(span % q, p, e)
        Hb = howell_local(sub % q, p, e)
        for row in Hb:
            if not in_span(Hs, row, q):
                raise ValueError("sub_gens do not lie in the span of span_gens")
        base = span_size(Hb, q)
        sizes = []
        for k in range(e + 1):
            H = howell_local(np.vstack([(span * p ** k) % q, Hb]), p, e)
            sizes.append(span_size(H, q) // base)
        # sizes[k] = |p^k Q|; factors of order >= p^(k+1) number log_p(sizes[k]/sizes[k+1])
        at_least = [round(math.log(sizes[k] // sizes[k + 1], p)) for k in range(e)]
        at_least.append(0)
        for k in range(e):
            divisors += [p ** (k + 1)] * (at_least[k] - at_least[k + 1])
    return elementary_to_invariant(divisors)


def quotient_invariants(span_gens: ModMatrix, sub_gens: ModMatrix) -> list[int]:
    if span_gens.modulus != sub_gens.modulus:
        raise ValueError("matrices over different moduli")
    cols = max(span_gens.cols, sub_gens.cols)
    s = span_gens.entries.reshape(-1, cols)
    b = sub_gens.entries.reshape(-1, cols)
    return list(quotient_invariants_mod(s, b, span_gens.modulus))


def enumerate_span(gens: np.ndarray, m: int, limit: int = 10**6) -> set[tuple]:
    """Brute-force closure of the row span (for tests and oracles)."""
    gens = np.asarray(gens, dtype=np.int64) % m
    cols = gens.shape[1] if gens.ndim == 2 else 0
    zero = tuple([0] * cols)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple((np.array(v) + g) % m)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
                    if len(seen) > limit:
                        raise RuntimeError("span enumeration limit exceeded")
        frontier = nxt
    return seen


__all__ = [
    "AbelianModule", "PrimaryPart", "ModMatrix",
    "module_from_factors", "primary_part", "primary_decomposition", "elementary_to_invariant",
    "howell", "howell_form", "howell_local", "howell_general", "reduce_vector", "in_span",
    "span_size", "solve_mod", "solve_linear", "quotient_invariants", "quotient_invariants_mod",
    "enumerate_span", "crt_idempotent",
]

"""Perturbed direct products G1 x_eps G2 and maps between them in block form.

Elements are pairs (x, y) with x a coefficient index and y a base element,
encoded as ``y * |G1| + x`` so that (0, 0) is index 0.  The product is
(x, y)(x', y') = (x + x' + eps(y, y'), y y').
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import config
from .cohomology import Cochain2, OneCochain, compute_spaces, cocycle_witness, is_symmetric
from .errors import CapExceeded, HypothesisNotMet, NotACocycle, NotAHomomorphism
from .groups import (
    FiniteGroup, GroupMap, Subgroup, associativity_witness, center, derived_subgroup,
    direct_product, isomorphic_oracle, structure_predicates,
)
from .modlinalg import AbelianModule

# orders of Schur multipliers for the perfect groups we know about (not computed)
SCHUR_MULTIPLIERS = {"A5": 2, "SL(2,5)": 1}


def realize_table(g1: AbelianModule, g2: FiniteGroup, eps_idx: np.ndarray) -> np.ndarray:
    """Multiplication table of the perturbed product for a table of coefficient indices."""
    m, n = g1.order, g2.order
    add = g1.add_table
    el = np.arange(m * n)
    x, y = el % m, el // m
    E = np.asarray(eps_idx, dtype=np.int64)
    first = add[add[x[:, None], x[None, :]], E[y[:, None], y[None, :]]]
    return g2.cayley[y[:, None], y[None, :]] * m + first


@dataclass(frozen=True, eq=False)
class PerturbedProduct:
    g1: AbelianModule
    g2: FiniteGroup
    eps: Cochain2
    realized: FiniteGroup = field(repr=False)

    @property
    def order(self) -> int:
        return self.realized.order

    def encode(self, x: int, y: int) -> int:
        return y * self.g1.order + x

    def decode(self, e: int) -> tuple[int, int]:
        return e % self.g1.order, e // self.g1.order

    @property
    def inject1(self) -> np.ndarray:
        return np.arange(self.g1.order)

    @property
    def inject2(self) -> np.ndarray:
        return np.arange(self.g2.order) * self.g1.order

    @property
    def proj1(self) -> np.ndarray:
        return np.arange(self.order) % self.g1.order

    @property
    def proj2(self) -> np.ndarray:
        return np.arange(self.order) // self.g1.order

    @property
    def kernel(self) -> Subgroup:
        """t1(G1) as a subgroup of the realized group."""
        return Subgroup(self.realized, tuple(range(self.g1.order)))

    def eps_index(self) -> np.ndarray:
        return self.eps.index_table()

    def to_json(self) -> dict:
        return {"g1": self.g1.to_json(), "g2": self.g2.to_json(),
                "eps": self.eps.table.tolist(), "encode": "row-major"}


def perturbed_product(g1: AbelianModule, g2: FiniteGroup, eps: Cochain2,
                      cap: int | None = None) -> PerturbedProduct:
    if eps.base is not g2 or eps.coeffs != g1:
        raise ValueError("cocycle does not match (g2, g1)")
    w = cocycle_witness(eps)
    if w is not None:
        raise NotACocycle(f"not a 2-cocycle: identity fails at (h, g, k) = {w}", witness=w)
    limit = config.DEFAULT_BUILD_CAP if cap is None else cap
    if g1.order * g2.order > limit:
        raise CapExceeded("perturbed product", g1.order * g2.order, limit)
    key = ("product", g1.invariant_factors, eps.table.tobytes())

    def build():
        table = realize_table(g1, g2, eps.index_table())
        if associativity_witness(table) is not None:  # pragma: no cover - excluded by the cocycle check
            raise NotACocycle("realized table is not associative")
        label = f"{g1.label} x_eps {g2.label}"
        return PerturbedProduct(g1, g2, eps, FiniteGroup(table, label=label))
    return g2._cached(key, build)


def direct_product_table(g1: AbelianModule, g2: FiniteGroup) -> np.ndarray:
    return direct_product(g1.as_group(), g2).cayley


# ---------------------------------------------------------------- structural checks

def is_abelian_product(p: PerturbedProduct) -> tuple[bool, str]:
    """Abelianness of the realized group, checked against (g2 abelian and eps symmetric)."""
    actual = p.realized.is_abelian
    predicted = p.g2.is_abelian and is_symmetric(p.eps)
    if actual != predicted:
        raise AssertionError(f"abelian criterion disagrees: realized {actual}, criterion {predicted}")
    if actual:
        return True, "g2 is abelian and eps is symmetric"
    return False, "g2 is not abelian" if not p.g2.is_abelian else "eps is not symmetric"


def centrality_check(p: PerturbedProduct) -> bool:
    """t1(G1) is central and pr2 induces realized / t1(G1) = G2."""
    z = center(p.realized).element_set
    if not all(int(i) in z for i in p.inject1):
        return False
    pr2 = p.proj2
    T = p.realized.cayley
    hom = (pr2[T] == p.g2.cayley[pr2[:, None], pr2[None, :]]).all()
    kernel = set(np.flatnonzero(pr2 == 0).tolist())
    return bool(hom) and kernel == set(p.inject1.tolist())


def _commutator_formula(p: PerturbedProduct, exact: bool) -> np.ndarray:
    """Encoded predicted commutators of (x, y), (x', y') indexed by (y, y')."""
    M, G = p.g1, p.g2
    T = p.eps.table
    mul, inv = G.cayley, G.inverse
    val = T - T.transpose(1, 0, 2)
    yx = mul.T                                        # [y, y'] -> y' y
    if exact:
        # carries (y'y)^-1 back through eps when y and y' do not commute
        w = inv[yx]
        val = val + T[mul, w] - T[yx, w]
    comm = mul[mul, inv[yx]]
    return comm * M.order + M.indices(val)


def _realized_commutators(p: PerturbedProduct) -> np.ndarray:
    """Actual commutator a b a^-1 b^-1 for a = (0, y), b = (0, y')."""
    R, inv = p.realized.cayley, p.realized.inverse
    s = p.inject2
    a, b = s[:, None], s[None, :]
    return R[R[a, b], inv[R[b, a]]]


def commutator_identity_check(p: PerturbedProduct) -> bool:
    """Every realized commutator [(x, y), (x', y')] equals (eps(y, y') - eps(y', y), [y, y'])."""
    R, inv = p.realized.cayley, p.realized.inverse
    actual = R[R[:, :], inv[R.T]]                     # ab (ba)^-1
    pred = _commutator_formula(p, exact=False)
    y = p.proj2
    return bool((actual == pred[y[:, None], y[None, :]]).all())


def commutator_exact_check(p: PerturbedProduct) -> bool:
    """Same comparison with the general formula, which adds
    eps(y y', (y' y)^-1) - eps(y' y, (y' y)^-1) to the first coordinate."""
    R, inv = p.realized.cayley, p.realized.inverse
    actual = R[R[:, :], inv[R.T]]
    pred = _commutator_formula(p, exact=True)
    y = p.proj2
    return bool((actual == pred[y[:, None], y[None, :]]).all())


def commutator_identity_failures(p: PerturbedProduct) -> list[tuple[int, int]]:
    """Base pairs (y, y') where the simple commutator formula is wrong."""
    actual = _realized_commutators(p)
    pred = _commutator_formula(p, exact=False)
    return [tuple(map(int, v)) for v in np.argwhere(actual != pred)]


def derived_structure_check(p: PerturbedProduct, exact: bool = False) -> bool:
    """derived_subgroup(realized) is generated by the predicted commutators."""
    pred = np.unique(_commutator_formula(p, exact=exact))
    gen = p.realized.subgroup(pred.tolist())
    return gen.elements == derived_subgroup(p.realized).elements


def sz2_trivial_criterion(g1: AbelianModule, g2: FiniteGroup, limit: int = 4096) -> dict:
    """If SZ^2(g2, g1) = 0, no nontrivial cocycle gives a group isomorphic to g1 x g2."""
    space = compute_spaces(g2, g1)
    report = {"g1": g1.invariant_factors, "g2": g2.label, "sz2_order": space.sz2_order(),
              "z2_order": space.z2_order}
    if space.sz2_order() != 1:
        report.update(status="hypothesis-not-met", checked=0)
        return report
    if space.z2_order == 1:
        report.update(status="vacuous", checked=0)
        return report
    from .modlinalg import enumerate_span
    direct = direct_product(g1.as_group(), g2)
    checked = 0
    bad = []
    for v in sorted(enumerate_span(space.z2_basis.entries, space.coeffs.exponent, limit)):
        eps = space.cochain_from_full(v)
        if eps.is_trivial():
            continue
        prod = perturbed_product(g1, g2, eps)
        if isomorphic_oracle(prod.realized, direct, cap=prod.order) is not None:
            bad.append(v)
        checked += 1
    report.update(status="pass" if not bad else "fail", checked=checked, counterexamples=bad)
    return report


def coprime_splitting_check(g1: AbelianModule, g2: FiniteGroup, eps: Cochain2,
                            name: str | None = None) -> bool:
    """A perfect g2 whose multiplier order is coprime to |g1| only has split products."""
    name = name or g2.label
    if name not in SCHUR_MULTIPLIERS:
        raise HypothesisNotMet(f"no preset Schur multiplier for {name!r}")
    if not structure_predicates(g2).is_perfect:
        raise HypothesisNotMet(f"{name} is not perfect")
    if math.gcd(g1.order, SCHUR_MULTIPLIERS[name]) != 1:
        raise HypothesisNotMet("|g1| is not coprime to the Schur multiplier")
    prod = perturbed_product(g1, g2, eps)
    direct = direct_product(g1.as_group(), g2)
    return isomorphic_oracle(prod.realized, direct, cap=prod.order) is not None


# ---------------------------------------------------------------- block maps

@dataclass(frozen=True, eq=False)
class MatrixHom:
    """phi11: G1 -> G1, phi12: G2 -> G1, phi21: G1 -> G2, phi22: G2 -> G2 as index tables."""
    source: PerturbedProduct
    target: PerturbedProduct
    phi11: tuple
    phi12: tuple
    phi21: tuple
    phi22: tuple

    def __post_init__(self):
        m, n = self.source.g1.order, self.source.g2.order
        for name, data, size in (("phi11", self.phi11, m), ("phi12", self.phi12, n),
                                 ("phi21", self.phi21, m), ("phi22", self.phi22, n)):
            data = tuple(int(v) for v in data)
            if len(data) != size:
                raise ValueError(f"{name} must have {size} entries")
            object.__setattr__(self, name, data)
        if self.phi12[0] != 0:
            raise ValueError("phi12 must vanish at the identity")

    def __eq__(self, other):
        return isinstance(other, MatrixHom) and self.blocks() == other.blocks()

    def __hash__(self):
        return hash(self.blocks())

    def blocks(self) -> tuple:
        return (self.phi11, self.phi12, self.phi21, self.phi22)

    def to_json(self) -> dict:
        return {"phi11": list(self.phi11), "phi12": list(self.phi12),
                "phi21": list(self.phi21), "phi22": list(self.phi22)}


def assemble_image(m: MatrixHom) -> np.ndarray:
    """phi(x, y) = (phi11(x) + phi12(y) + eps2(phi21(x), phi22(y)), phi21(x) phi22(y))."""
    src, tgt = m.source, m.target
    M = tgt.g1
    add = M.add_table
    E2 = tgt.eps_index()
    p11, p12, p21, p22 = (np.array(b) for b in m.blocks())
    x, y = src.proj1, src.proj2
    a, b = p21[x], p22[y]
    first = add[add[p11[x], p12[y]], E2[a, b]]
    return tgt.g2.cayley[a, b] * M.order + first


def assemble_hom(m: MatrixHom) -> GroupMap:
    img = assemble_image(m)
    phi = GroupMap(m.source.realized, m.target.realized, tuple(img.tolist()))
    w = phi.hom_witness()
    if w is not None:
        raise NotAHomomorphism(f"assembled map is not a homomorphism at pair {w}", witness=w)
    return phi


def decompose_hom(phi: GroupMap, source: PerturbedProduct, target: PerturbedProduct) -> MatrixHom:
    """phi_ij = pr_i . phi . t_j."""
    img = np.asarray(phi.image)
    m = target.g1.order
    t1, t2 = source.inject1, source.inject2
    return MatrixHom(source, target,
                     phi11=img[t1] % m, phi12=img[t2] % m,
                     phi21=img[t1] // m, phi22=img[t2] // m)


def coboundary_hom(source: PerturbedProduct, target: PerturbedProduct, eta: OneCochain,
                   sigma=None, rho=None) -> MatrixHom:
    """Blocks (sigma, eta, trivial, rho) of (x, y) -> (sigma(x) + eta(y), rho(y))."""
    m, n = source.g1.order, source.g2.order
    p11 = tuple(range(m)) if sigma is None else tuple(sigma)
    p22 = tuple(range(n)) if rho is None else tuple(rho)
    p12 = tuple(source.g1.indices(eta.table).tolist())
    return MatrixHom(source, target, p11, p12, (0,) * m, p22)


__all__ = [
    "PerturbedProduct", "MatrixHom", "SCHUR_MULTIPLIERS", "perturbed_product", "realize_table",
    "direct_product_table", "is_abelian_product", "centrality_check", "commutator_identity_check",
    "commutator_exact_check", "commutator_identity_failures", "derived_structure_check",
    "sz2_trivial_criterion", "coprime_splitting_check", "assemble_image", "assemble_hom",
    "decompose_hom", "coboundary_hom",
]

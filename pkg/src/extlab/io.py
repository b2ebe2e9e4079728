"""JSON file formats for groups, modules, cocycles and exported products."""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .cohomology import Cochain2
from .errors import InvalidGroup, NotACocycle
from .extensions import PerturbedProduct
from .groups import FiniteGroup, build_group, preset
from .modlinalg import AbelianModule, module_from_factors

# groups loaded from identical files resolve to one object, so cocycles read
# from separate files can still be compared
_INTERNED: dict = {}


def dumps(obj) -> str:
    """Deterministic JSON text (sorted keys, fixed indentation)."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _read(path) -> object:
    with open(path) as fh:
        return json.load(fh)


def group_from_json(data, cap: int | None = None) -> FiniteGroup:
    if isinstance(data, str):
        return preset(data)
    if not isinstance(data, dict):
        raise InvalidGroup("group must be a preset name or an object")
    G = build_group(data, cap=cap)
    key = (G.label, G.cayley.tobytes(), G.order)
    return _INTERNED.setdefault(key, G)


def load_group(ref: str, cap: int | None = None) -> FiniteGroup:
    """A preset name or the path of a group file."""
    if ref.endswith(".json") or Path(ref).is_file():
        return group_from_json(_read(ref), cap=cap)
    return preset(ref)


def save_group(G: FiniteGroup, path) -> None:
    Path(path).write_text(dumps(G.to_json()))


def module_from_json(data) -> AbelianModule:
    if isinstance(data, dict):
        data = data.get("invariant_factors")
    if not isinstance(data, list):
        raise ValueError("module needs an 'invariant_factors' list")
    return module_from_factors([int(d) for d in data])


def load_module(ref: str) -> AbelianModule:
    """``6``, ``2,4`` or the path of a module file."""
    ref = ref.strip()
    if ref.endswith(".json") or Path(ref).is_file():
        return module_from_json(_read(ref))
    try:
        return module_from_factors([int(v) for v in ref.split(",") if v.strip()])
    except ValueError as exc:
        raise ValueError(f"cannot read coefficients {ref!r}: {exc}") from None


def cocycle_from_json(data, cap: int | None = None) -> Cochain2:
    G = group_from_json(data["group"], cap=cap)
    M = module_from_json(data["coeffs"])
    t = np.asarray(data["table"], dtype=np.int64)
    n, k = G.order, M.rank
    if k == 0 and t.size == 0:
        t = np.zeros((n, n, 0), dtype=np.int64)
    if t.shape != (n, n, k):
        raise ValueError(f"cocycle table must have shape {[n, n, k]}, got {list(t.shape)}")
    if t[0].any() or t[:, 0].any():
        raise NotACocycle("cocycle is not normalized: identity row/column must be zero")
    return Cochain2(G, M, t)


def cocycle_to_json(eps: Cochain2) -> dict:
    G = eps.base
    return {"group": G.label if _is_preset(G) else G.to_json(),
            "coeffs": eps.coeffs.to_json(), "table": eps.table.tolist()}


def _is_preset(G: FiniteGroup) -> bool:
    try:
        return bool(G.label) and preset(G.label) is G
    except InvalidGroup:
        return False


def load_cocycle(path, cap: int | None = None) -> Cochain2:
    return cocycle_from_json(_read(path), cap=cap)


def save_cocycle(eps: Cochain2, path) -> None:
    Path(path).write_text(dumps(cocycle_to_json(eps)))


def provenance_path(path) -> Path:
    p = Path(path)
    return p.with_name(p.stem + ".provenance.json")


def save_product(P: PerturbedProduct, path) -> tuple[Path, Path]:
    """Write the realized Cayley table plus its provenance sidecar."""
    out = Path(path)
    label = P.realized.label or "product"
    out.write_text(dumps({"name": label, "cayley": P.realized.cayley.tolist()}))
    side = provenance_path(out)
    side.write_text(dumps(P.to_json()))
    return out, side


__all__ = ["dumps", "group_from_json", "load_group", "save_group", "module_from_json",
           "load_module", "cocycle_from_json", "cocycle_to_json",
           "load_cocycle", "save_cocycle", "provenance_path", "save_product"]

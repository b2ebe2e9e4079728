"""Executable checks of the equivalences and localization statements.

Each check evaluates two verdicts per cocycle pair and compares them, either as
an equivalence or as a one-way implication, after the hypothesis gate passes.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .cohomology import compute_spaces
from .deciders import (
    decide_g2_iso, decide_hg2_iso, decide_upper_a_iso, decide_upper_c_iso, decide_upper_iso,
    localize, oracle_g2_iso, oracle_hg2_iso, oracle_upper_iso, sigma_criterion,
)
from .extensions import perturbed_product
from .groups import FiniteGroup, prime_divisors, structure_predicates, sylow_subgroup
from .modlinalg import AbelianModule


# ---------------------------------------------------------------- gates

def _sylows(G):
    return [sylow_subgroup(G, p).as_group() for p in prime_divisors(G.order)]


def _log(n, p):
    return round(math.log(n, p))


def gate_centerless(G):
    return structure_predicates(G).is_centerless


def gate_cyclic(G):
    return structure_predicates(G).is_cyclic


def gate_nilpotent(G):
    return structure_predicates(G).is_nilpotent


def gate_centerless_perfect(G):
    s = structure_predicates(G)
    return s.is_centerless and s.is_perfect


def gate_maximal_class_sylows(G):
    if G.order == 1:
        return False
    for p, P in zip(prime_divisors(G.order), _sylows(G)):
        if structure_predicates(P).coclass != 1 or _log(P.order, p) < 4:
            return False
    return True


def gate_nilpotent_coclass2(G):
    if not gate_nilpotent(G):
        return False
    return all((structure_predicates(P).coclass or 0) <= 2 for P in _sylows(G))


# ---------------------------------------------------------------- sides

def _local_all(decider):
    def side(e1, e2):
        loc = localize(e1, e2)
        verdicts = [decider(a, b) for a, b in loc.local_cocycles]
        return all(verdicts), verdicts
    return side


def _global(decider, **kw):
    def side(e1, e2):
        d = decider(e1, e2, **kw)
        return bool(d), [d]
    return side


def _oracle(fn):
    def side(e1, e2):
        P1 = perturbed_product(e1.coeffs, e1.base, e1)
        P2 = perturbed_product(e2.coeffs, e2.base, e2)
        m = fn(P1, P2)
        return m is not None, [m]
    return side


@dataclass(frozen=True)
class TheoremCheck:
    id: str
    gate: Callable | None
    gate_name: str
    lhs: Callable
    rhs: Callable
    relation: str          # "iff" or "implies"
    lhs_name: str
    rhs_name: str


THEOREMS = {
    "P3.2": TheoremCheck("P3.2", gate_centerless, "centerless", _oracle(oracle_g2_iso),
                         _global(sigma_criterion), "iff", "oracle g2", "sigma criterion"),
    "T3.3": TheoremCheck("T3.3", gate_centerless, "centerless", _global(decide_g2_iso),
                         _local_all(decide_g2_iso), "iff", "global g2", "all local g2"),
    "P3.5": TheoremCheck("P3.5", None, "", _oracle(oracle_hg2_iso), _global(decide_hg2_iso),
                         "iff", "oracle hg2", "coboundary criterion"),
    "T3.6": TheoremCheck("T3.6", None, "", _global(decide_hg2_iso), _local_all(decide_hg2_iso),
                         "iff", "global hg2", "all local hg2"),
    "L4.2": TheoremCheck("L4.2", None, "", _oracle(oracle_upper_iso), _global(decide_upper_iso),
                         "iff", "oracle upper", "upper criterion"),
    "P4.3": TheoremCheck("P4.3", gate_cyclic, "cyclic", _global(decide_upper_iso),
                         _local_all(decide_upper_iso), "iff", "global upper", "all local upper"),
    "T4.4": TheoremCheck("T4.4", None, "", _global(decide_upper_iso), _local_all(decide_upper_iso),
                         "implies", "global upper", "all local upper"),
    "P4.5": TheoremCheck("P4.5", gate_nilpotent, "nilpotent", _local_all(decide_upper_iso),
                         _global(decide_upper_iso), "implies", "all local upper", "global upper"),
    "P5.2": TheoremCheck("P5.2", gate_centerless_perfect, "centerless_perfect",
                         _global(decide_upper_a_iso, fast=False), _global(sigma_criterion),
                         "iff", "upper-a (explicit commuting automorphisms)", "sigma criterion"),
    "P5.3": TheoremCheck("P5.3", gate_maximal_class_sylows, "maximal_class_sylows_order_p4",
                         _global(decide_upper_a_iso, fast=False), _global(decide_upper_c_iso),
                         "iff", "upper-a", "upper-c"),
    "P5.4": TheoremCheck("P5.4", gate_nilpotent_coclass2, "nilpotent_sylow_coclass_le_2",
                         _global(decide_upper_a_iso), _local_all(decide_upper_a_iso),
                         "iff", "global upper-a", "all local upper-a"),
}


# ---------------------------------------------------------------- pairs

def class_pairs(G: FiniteGroup, M: AbelianModule):
    reps = [c.rep for c in compute_spaces(G, M).classes()]
    return [((i, j), reps[i], reps[j]) for i, j in itertools.product(range(len(reps)), repeat=2)]


def sampled_pairs(G: FiniteGroup, M: AbelianModule, count: int, seed: int):
    """Random cocycle pairs (a class representative plus a random coboundary each)."""
    space = compute_spaces(G, M)
    reps = [c.rep for c in space.classes()]
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        i, j = (int(v) for v in rng.integers(0, len(reps), size=2))
        e1 = reps[i] + space.random_coboundary(rng)
        e2 = reps[j] + space.random_coboundary(rng)
        out.append(((i, j), e1, e2))
    return out


def _describe(items):
    out = []
    for d in items:
        if d is None:
            out.append(None)
        elif hasattr(d, "to_json"):
            out.append(d.to_json())
        else:
            out.append(repr(d))
    return out


def verify_theorem(theorem: str, G: FiniteGroup, M: AbelianModule, pairs=None,
                   sample: int | None = None, seed: int = 0, parallelism: int = 1) -> dict:
    """Run one theorem check; report dict with status pass | fail | hypothesis-not-met."""
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem id {theorem!r}; known: {', '.join(THEOREMS)}")
    check = THEOREMS[theorem]
    report = {"theorem": theorem, "instance": {"group": G.label, "coeffs": list(M.invariant_factors)},
              "relation": f"{check.lhs_name} {'<=>' if check.relation == 'iff' else '=>'} {check.rhs_name}",
              "hypothesis_gates": {}, "pairs_checked": 0, "counterexamples": [], "vacuous": True}
    if check.gate is not None:
        ok = bool(check.gate(G))
        report["hypothesis_gates"][check.gate_name] = ok
        if not ok:
            report["status"] = "hypothesis-not-met"
            return report
    if pairs is None:
        if sample is not None:
            pairs = sampled_pairs(G, M, sample, seed)
            report["sampled"] = {"count": sample, "seed": seed}
        else:
            pairs = class_pairs(G, M)

    def run(item):
        label, e1, e2 = item
        a, ad = check.lhs(e1, e2)
        b, bd = check.rhs(e1, e2)
        return label, a, b, ad, bd

    if parallelism > 1:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(run, pairs))
    else:
        results = [run(p) for p in pairs]

    antecedent = 0
    yes = 0
    for label, a, b, ad, bd in results:
        report["pairs_checked"] += 1
        antecedent += a
        yes += a and b
        bad = (a != b) if check.relation == "iff" else (a and not b)
        if bad:
            report["counterexamples"].append({
                "pair": list(label), "lhs": a, "rhs": b,
                "lhs_detail": _describe(ad), "rhs_detail": _describe(bd)})
    report["lhs_true"] = antecedent
    report["both_true"] = yes
    report["vacuous"] = report["pairs_checked"] == 0 or (check.relation == "implies" and antecedent == 0)
    report["status"] = "pass" if not report["counterexamples"] else "fail"
    return report


__all__ = ["THEOREMS", "TheoremCheck", "verify_theorem", "class_pairs", "sampled_pairs",
           "gate_centerless", "gate_cyclic", "gate_nilpotent", "gate_centerless_perfect",
           "gate_maximal_class_sylows", "gate_nilpotent_coclass2"]

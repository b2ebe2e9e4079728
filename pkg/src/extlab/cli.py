"""Command-line entry point: ``extlab <command> ...``.

Exit codes: 0 success / yes / pass, 1 no / fail, 2 hypothesis or cap
problem, 3 bad input.
"""
from __future__ import annotations

import argparse
import csv
import io as _io
import json
import os
import sys
import time
from collections import Counter

from . import io
from .cohomology import class_order, compute_spaces, trivial_cochain
from .config import RunConfig
from .deciders import (
    MODES, decide, oracle_g2_iso, oracle_hg2_iso, oracle_upper_iso,
)
from .errors import CapExceeded, ExtlabError, HypothesisNotMet
from .extensions import perturbed_product
from .groups import (
    automorphisms, center, central_automorphisms, commuting_automorphisms, derived_subgroup,
    isomorphic_oracle, prime_divisors, structure_predicates, sylow_subgroup,
)
from .theorems import THEOREMS, verify_theorem

EXIT_OK, EXIT_NO, EXIT_ISSUE, EXIT_INPUT = 0, 1, 2, 3
MAX_LISTED_CLASSES = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would collide with the
    # hypothesis/cap code
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- output

def _flatten(report: dict) -> dict:
    return {k: v if isinstance(v, (str, int, float, bool)) or v is None
            else json.dumps(v, sort_keys=True, separators=(",", ":"))
            for k, v in report.items()}


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return io.dumps(report)
    flat = _flatten(report)
    if fmt == "csv":
        buf = _io.StringIO()
        w = csv.DictWriter(buf, fieldnames=sorted(flat), lineterminator="\n")
        w.writeheader()
        w.writerow(flat)
        return buf.getvalue()
    return "".join(f"{k}: {flat[k]}\n" for k in sorted(flat))


# ---------------------------------------------------------------- refs

def _instance(args):
    if not args.group or not args.coeffs:
        raise UsageError("--group and --coeffs are required")
    return io.load_group(args.group), io.load_module(args.coeffs)


def _cocycle(ref: str, G, M):
    if ref == "trivial":
        if G is None:
            raise UsageError("'trivial' needs --group and --coeffs")
        return trivial_cochain(G, M)
    if ref.startswith("class:"):
        if G is None:
            raise UsageError(f"{ref!r} needs --group and --coeffs")
        classes = compute_spaces(G, M).classes()
        try:
            i = int(ref.split(":", 1)[1])
            return classes[i].rep
        except (ValueError, IndexError):
            raise UsageError(f"{ref!r}: there are {len(classes)} classes (0..{len(classes) - 1})") from None
    return io.load_cocycle(ref)


def _cocycle_pair(args):
    G = M = None
    if args.group and args.coeffs:
        G, M = _instance(args)
    loaded = {}
    for ref in (args.eps1, args.eps2):
        if ref != "trivial" and not ref.startswith("class:"):
            loaded[ref] = io.load_cocycle(ref)
    if G is None and loaded:
        first = next(iter(loaded.values()))
        G, M = first.base, first.coeffs
    e1 = loaded.get(args.eps1) or _cocycle(args.eps1, G, M)
    e2 = loaded.get(args.eps2) or _cocycle(args.eps2, G, M)
    return e1, e2


# ---------------------------------------------------------------- commands

def cmd_group(args, cfg):
    G = io.load_group(args.group)
    s = structure_predicates(G)
    report = {
        "group": G.label, "order": G.order, "generators": G.generators,
        "element_orders": {str(k): v for k, v in sorted(Counter(G.element_orders).items())},
        "center_order": center(G).order, "derived_order": derived_subgroup(G).order,
        "sylow_orders": {str(p): sylow_subgroup(G, p).order for p in prime_divisors(G.order)},
        "structure": {"is_abelian": s.is_abelian, "is_perfect": s.is_perfect,
                      "is_centerless": s.is_centerless, "is_nilpotent": s.is_nilpotent,
                      "is_cyclic": s.is_cyclic, "nilpotency_class": s.nilpotency_class,
                      "coclass": s.coclass},
    }
    if args.automorphisms:
        report["automorphisms"] = {
            "aut": len(automorphisms(G, cfg.max_group_order)),
            "commuting": len(commuting_automorphisms(G, cfg.max_group_order)),
            "central": len(central_automorphisms(G, cfg.max_group_order)),
        }
    return report, EXIT_OK


def cmd_h2(args, cfg):
    G, M = _instance(args)
    S = compute_spaces(G, M, cap=max(cfg.max_group_order, G.order))
    report = {"group": G.label, "coeffs": list(M.invariant_factors),
              "z2_order": S.z2_order, "b2_order": S.b2_order, "sz2_order": S.sz2_order(),
              "h2_invariants": S.h2_invariants, "h2_order": S.h2_order}
    if S.h2_order <= MAX_LISTED_CLASSES:
        report["classes"] = [{"index": i, "order": class_order(c), "table": c.rep.table.tolist()}
                             for i, c in enumerate(S.classes())]
    return report, EXIT_OK


def cmd_build(args, cfg):
    G, M = _instance(args)
    eps = _cocycle(args.cocycle, G, M)
    if eps.base is not G or eps.coeffs != M:
        raise UsageError("cocycle file does not match --group/--coeffs")
    P = perturbed_product(M, G, eps)
    if args.out is None:
        return P.realized.to_json(), EXIT_OK
    out, side = io.save_product(P, args.out)
    report = {"order": P.order, "output": str(out), "provenance": str(side),
              "is_abelian": P.realized.is_abelian,
              "element_orders": {str(k): v for k, v in sorted(Counter(P.realized.element_orders).items())}}
    return report, EXIT_OK


def cmd_iso(args, cfg):
    e1, e2 = _cocycle_pair(args)
    d = decide(args.mode, e1, e2)
    code = {"yes": EXIT_OK, "no": EXIT_NO}.get(d.verdict, EXIT_ISSUE)
    return d.to_json(), code


def cmd_oracle(args, cfg):
    e1, e2 = _cocycle_pair(args)
    if e1.base is not e2.base or e1.coeffs != e2.coeffs:
        raise UsageError("cocycles must share the base group and coefficients")
    P1 = perturbed_product(e1.coeffs, e1.base, e1)
    P2 = perturbed_product(e2.coeffs, e2.base, e2)
    cap = max(cfg.max_group_order, P1.order)
    if args.mode == "abstract":
        phi = isomorphic_oracle(P1.realized, P2.realized, cap=cap)
        found = None if phi is None else {"image": list(phi.image)}
    else:
        if args.mode == "upper":
            m = oracle_upper_iso(P1, P2, cap=cap)
        elif args.mode == "upper-a":
            m = oracle_upper_iso(P1, P2, rhos=commuting_automorphisms(e1.base), cap=cap)
        elif args.mode == "g2":
            m = oracle_g2_iso(P1, P2, cap=cap)
        else:
            m = oracle_hg2_iso(P1, P2, cap=cap)
        found = None if m is None else m.to_json()
    report = {"mode": args.mode, "oracle": True, "found": found is not None, "map": found}
    return report, EXIT_OK if found is not None else EXIT_NO


def cmd_verify(args, cfg):
    G, M = _instance(args)
    if args.exhaustive and args.sample is not None:
        raise UsageError("--exhaustive and --sample are exclusive")
    sample = args.sample
    r = verify_theorem(args.theorem, G, M, sample=sample, seed=cfg.seed,
                       parallelism=cfg.parallelism)
    if r["status"] == "hypothesis-not-met":
        return r, EXIT_ISSUE
    return r, EXIT_OK if r["status"] == "pass" else EXIT_NO


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--timing", action="store_true", help="add timing_ms to the report")
    common.add_argument("--max-order", type=int, help="search cap (overrides EXTLAB_MAX_ORDER)")
    common.add_argument("--parallelism", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)

    inst = argparse.ArgumentParser(add_help=False)
    inst.add_argument("--group", help="preset name (S3, D8xC3, ...) or group file")
    inst.add_argument("--coeffs", help="invariant factors such as 6 or 2,4, or a module file")

    p = _Parser(prog="extlab", description="Central extensions as perturbed direct products.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("group", parents=[common], help="structure of a group")
    g.add_argument("--group", required=True)
    g.add_argument("--automorphisms", action="store_true", help="also count Aut, commuting and central automorphisms")
    g.set_defaults(func=cmd_group)

    h = sub.add_parser("h2", parents=[common, inst], help="Z2, B2, SZ2 and H2")
    h.set_defaults(func=cmd_h2)

    b = sub.add_parser("build", parents=[common, inst], help="realize a perturbed product")
    b.add_argument("--cocycle", default="trivial", help="cocycle file, 'trivial' or 'class:<i>'")
    b.add_argument("--out", help="write the Cayley table here (plus a .provenance.json sidecar)")
    b.set_defaults(func=cmd_build)

    for name, func, modes in (("iso", cmd_iso, MODES),
                              ("oracle", cmd_oracle, ("g2", "hg2", "upper", "upper-a", "abstract"))):
        c = sub.add_parser(name, parents=[common, inst],
                           help="decide an isomorphism" if name == "iso" else "brute-force isomorphism search")
        c.add_argument("--mode", choices=modes, required=True)
        c.add_argument("--eps1", required=True, help="cocycle file, 'trivial' or 'class:<i>'")
        c.add_argument("--eps2", required=True)
        c.set_defaults(func=func)

    v = sub.add_parser("verify", parents=[common, inst], help="check a theorem on an instance")
    v.add_argument("--theorem", choices=sorted(THEOREMS), required=True)
    v.add_argument("--exhaustive", action="store_true", help="all pairs of class representatives (the default)")
    v.add_argument("--sample", type=int, help="this many random cocycle pairs instead")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    saved = os.environ.get("EXTLAB_MAX_ORDER")
    try:
        if args.max_order is not None:
            os.environ["EXTLAB_MAX_ORDER"] = str(args.max_order)
        cfg = RunConfig.from_env(parallelism=args.parallelism, output=args.format, seed=args.seed)
        start = time.perf_counter()
        report, code = args.func(args, cfg)
        if args.timing:
            report["timing_ms"] = round((time.perf_counter() - start) * 1000, 3)
    except CapExceeded as exc:
        print(f"extlab: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_ISSUE
    except HypothesisNotMet as exc:
        print(f"extlab: hypothesis not met: {exc}", file=sys.stderr)
        return EXIT_ISSUE
    except (UsageError, ExtlabError, ValueError, KeyError, OSError) as exc:
        print(f"extlab: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        if saved is None:
            os.environ.pop("EXTLAB_MAX_ORDER", None)
        else:
            os.environ["EXTLAB_MAX_ORDER"] = saved
    sys.stdout.write(render(report, cfg.output))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

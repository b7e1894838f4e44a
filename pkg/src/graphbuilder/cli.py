"""Command-line frontend: generate, simplify, transpile, verify, bench, zoo.

Exit codes: 0 ok, 1 verification failure, 2 input error, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import bench as bench_mod
from . import zoo
from .generator import GeneratorOptions, InvariantViolation, Recipe, generate
from .graph import Graph, GraphError, check_permutation, load_graph
from .ops import Emit, OpError, ops_from_json
from .simplifier import simplify
from .transpiler import CircuitError, cost_report, load_circuit, transpile
from .verifier import VerificationError, verify_circuit, verify_recipe

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3


class InputError(Exception):
    pass


# --------------------------------------------------------------------------
# file helpers


def read_order(spec: Optional[str], g: Graph) -> list[int]:
    """``None``/``natural``, ``dfs``, ``dfs:<root>`` or a file with one index per line."""
    if spec is None or spec == "natural":
        return list(range(g.n))
    if spec == "dfs" or spec.startswith("dfs:"):
        root = int(spec.split(":", 1)[1]) if ":" in spec else 0
        return zoo.dfs_order(g, root)
    try:
        order = [int(ln) for ln in Path(spec).read_text().split()]
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read order file {spec}: {exc}") from exc
    check_permutation(order, g.n)
    return order


def write_order(order, path) -> None:
    Path(path).write_text("".join(f"{v}\n" for v in order))


def load_recipe(path, target: Optional[str] = None, order: Optional[str] = None) -> Recipe:
    """Recipe from a bundle or a bare op array; a bare array needs ``target``."""
    try:
        text = Path(path).read_text()
        obj = json.loads(text)
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read recipe {path}: {exc}") from exc
    if isinstance(obj, dict) and "edges" in obj:
        r = Recipe.from_bundle(obj)
        if target is not None:
            g = load_graph(target)
            r = Recipe.from_ops(r.ops, g, read_order(order, g) if order else r.order)
        return r
    ops = ops_from_json(text)
    if target is None:
        n = 1 + max((op.photon for op in ops if isinstance(op, Emit)), default=-1)
        g = Graph.empty(n)
        return Recipe.from_ops(ops, g)
    g = load_graph(target)
    return Recipe.from_ops(ops, g, read_order(order, g))


def write_recipe(r: Recipe, path, bundle: bool) -> None:
    text = json.dumps(r.to_bundle()) if bundle else r.to_json()
    Path(path).write_text(text + "\n")


def _emit_json(obj, path: Optional[str]) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path:
        Path(path).write_text(text + "\n")
    else:
        print(text)


# --------------------------------------------------------------------------
# commands


def cmd_generate(a) -> int:
    g = load_graph(a.input)
    order = read_order(a.order, g)
    opts = GeneratorOptions(extra_emitters=a.extra_emitters, check_conditions=a.check,
                            simplify=a.simplify, allow_isolated=a.allow_isolated)
    r = generate(g, order, opts)
    rep = cost_report(r)
    if a.out:
        write_recipe(r, a.out, a.bundle)
    if a.report:
        _emit_json(rep.to_dict(), a.report)
    if a.json:
        _emit_json({"cost": rep.to_dict(), "order": order}, None)
    else:
        print(f"photons {g.n}  emitters {rep.emitters_used}  two-qubit gates {rep.two_qubit_count}"
              f"  ops {rep.op_count}")
    return EXIT_OK


def cmd_simplify(a) -> int:
    r = load_recipe(a.recipe, a.target, a.order)
    log: list[str] = []
    before = cost_report(r).two_qubit_count
    s = simplify(r, log)
    after = cost_report(s).two_qubit_count
    bundle = a.bundle or _is_bundle(a.recipe)
    if a.out:
        write_recipe(s, a.out, bundle)
    if a.log:
        Path(a.log).write_text("".join(ln + "\n" for ln in log))
    if a.json:
        _emit_json({"before": before, "after": after, "rewrites": log}, None)
    else:
        print(f"two-qubit gates {before} -> {after}  ({len(log)} rewrites)")
    return EXIT_OK


def _is_bundle(path) -> bool:
    try:
        return isinstance(json.loads(Path(path).read_text()), dict)
    except (OSError, ValueError):
        return False


def cmd_transpile(a) -> int:
    r = load_recipe(a.recipe, a.target, a.order)
    c = transpile(r)
    text = c.to_text()
    if a.out:
        Path(a.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(a) -> int:
    if a.circuit:
        if not a.target:
            raise InputError("--circuit needs --target")
        c = load_circuit(a.circuit)
        g = load_graph(a.target)
        g = g.relabel(read_order(a.order, g))
        res = verify_circuit(c, g, a.random_outcomes, a.seed)
    elif a.recipe:
        r = load_recipe(a.recipe, a.target, a.order)
        res = verify_recipe(r, a.random_outcomes, a.seed, confirm=True)
    else:
        raise InputError("verify needs --recipe or --circuit")
    if a.report:
        _emit_json(res.to_dict(), a.report)
    if a.json:
        _emit_json(res.to_dict(), None)
    else:
        print("PASS" if res.passed else f"FAIL: {res.diagnostic}")
        if res.corrections:
            print("corrections: " + ", ".join(res.corrections))
    return EXIT_OK if res.passed else EXIT_VERIFY


def cmd_bench(a) -> int:
    if a.families:
        rows = bench_mod.family_report(a.families, simplify=not a.no_simplify)
        if a.out:
            Path(a.out).write_text(bench_mod.summary_csv(rows))
        if a.json:
            _emit_json(rows, None)
        else:
            for r in rows:
                ref = "" if r["ref_count"] is None else f"  reference {r['ref_count']} ({r['ref_source']})"
                print(f"{r['family']:<20} order {r['order']:<12} N {r['N']:<5} emitters {r['emitters']:<3}"
                      f" two-qubit {r['two_qubit_count']}{ref}")
                if r["note"]:
                    print(f"  note: {r['note']}")
        return EXIT_OK if all(r["verified"] for r in rows) else EXIT_VERIFY
    try:
        cfg = bench_mod.BenchConfig(
            sizes=[int(x) for x in a.sizes.split(",")], density=a.density, samples=a.samples,
            seed=a.seed, order_policy=a.order, extra_emitters=a.extra_emitters,
            simplify=not a.no_simplify)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    try:
        rows = bench_mod.run_bench(cfg, a.workers)
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    summary = bench_mod.summarize(rows)
    if a.rows:
        Path(a.rows).write_text(bench_mod.rows_csv(rows))
    text = bench_mod.summary_csv(summary)
    if a.out:
        Path(a.out).write_text(text)
    if a.json:
        _emit_json(summary, None)
    elif not a.out:
        sys.stdout.write(text)
    else:
        for s in summary:
            print(f"N={s['size']}: mean {s['mean']:.2f}  std {s['std']:.2f}  max {s['max']}")
    return EXIT_OK


def cmd_zoo(a) -> int:
    spec = zoo.parse_family(a.family)
    g, order = zoo.build(spec)
    text = json.dumps(g.to_json()) + "\n" if a.format == "json" else g.to_edge_list()
    if a.out:
        Path(a.out).write_text(text)
    else:
        sys.stdout.write(text)
    if a.order_out:
        write_order(order, a.order_out)
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphbuilder", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)

    g = sub.add_parser("generate", help="build a recipe for a target graph")
    common(g)
    g.add_argument("--input", required=True)
    g.add_argument("--order", help="natural, dfs, dfs:<root> or an order file")
    g.add_argument("--simplify", action="store_true")
    g.add_argument("--extra-emitters", type=int, default=0)
    g.add_argument("--check", action="store_true", help="check eligibility conditions at every step")
    g.add_argument("--allow-isolated", action="store_true")
    g.add_argument("--bundle", action="store_true", help="write target and order alongside the ops")
    g.add_argument("--out")
    g.add_argument("--report")
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("simplify", help="merge and cancel emitter-pair ops")
    common(s)
    s.add_argument("--recipe", required=True)
    s.add_argument("--target")
    s.add_argument("--order")
    s.add_argument("--bundle", action="store_true")
    s.add_argument("--out")
    s.add_argument("--log")
    s.set_defaults(func=cmd_simplify)

    t = sub.add_parser("transpile", help="expand a recipe into gates")
    common(t)
    t.add_argument("--recipe", required=True)
    t.add_argument("--target")
    t.add_argument("--order")
    t.add_argument("--out")
    t.set_defaults(func=cmd_transpile)

    v = sub.add_parser("verify", help="simulate and compare with the target")
    common(v)
    v.add_argument("--recipe")
    v.add_argument("--circuit")
    v.add_argument("--target")
    v.add_argument("--order")
    v.add_argument("--random-outcomes", action="store_true")
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--report")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="random-graph sweep or family report")
    common(b)
    b.add_argument("--sizes", default="20")
    b.add_argument("--density", type=float, default=0.1)
    b.add_argument("--samples", type=int, default=50)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--order", choices=["natural", "dfs"], default="natural")
    b.add_argument("--extra-emitters", type=int, default=0)
    b.add_argument("--no-simplify", action="store_true")
    b.add_argument("--workers", type=int, default=None, help="defaults to GSF_THREADS or the CPU count")
    b.add_argument("--families", nargs="+", help="report named families instead, e.g. rgs:8 tree:3,3,3")
    b.add_argument("--rows", help="per-instance CSV")
    b.add_argument("--out", help="summary CSV")
    b.set_defaults(func=cmd_bench)

    z = sub.add_parser("zoo", help="write a benchmark graph")
    common(z)
    z.add_argument("family", help="e.g. tree:3,3,3  rhg:1,1,1  rgs:16  sixring:2,1  random:30,0.1,7")
    z.add_argument("--format", choices=["edges", "json"], default="edges")
    z.add_argument("--out")
    z.add_argument("--order-out")
    z.set_defaults(func=cmd_zoo)
    return p


def main(argv=None) -> int:
    p = build_parser()
    a = p.parse_args(argv)
    try:
        return a.func(a)
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (InputError, GraphError, OpError, CircuitError, VerificationError, OSError,
            ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

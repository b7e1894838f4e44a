"""Random-graph sweeps and the special-family report."""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from typing import Optional

import numpy as np

from .generator import GeneratorOptions, generate
from .transpiler import cost_report
from .verifier import verify_recipe
from . import zoo


@dataclass
class BenchConfig:
    sizes: list = field(default_factory=lambda: [20])
    density: float = 0.1
    samples: int = 50
    seed: int = 0
    order_policy: str = "natural"  # natural | dfs
    extra_emitters: int = 0
    simplify: bool = True

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if not 0 < self.density <= 1:
            raise ValueError("density must lie in (0, 1]")
        if self.order_policy not in ("natural", "dfs"):
            raise ValueError(f"unknown order policy {self.order_policy!r}")
        if not self.sizes or any(n < 2 for n in self.sizes):
            raise ValueError("sizes must be >= 2")


@dataclass
class InstanceResult:
    size: int
    index: int
    seed: str
    edges: int
    emitters_used: int
    min_emitters: int
    two_qubit_count: int
    two_qubit_raw: int
    verified: bool


def worker_count() -> int:
    env = os.environ.get("GSF_THREADS")
    cap = os.cpu_count() or 1
    if env:
        try:
            return max(1, min(cap, int(env)))
        except ValueError:
            pass
    return cap


def instance_seed(seed: int, size: int, index: int) -> str:
    return f"{seed}:{size}:{index}"


def run_instance(cfg: BenchConfig, size: int, index: int) -> InstanceResult:
    s = instance_seed(cfg.seed, size, index)
    g = zoo.random_connected(size, cfg.density, s)
    order = zoo.dfs_order(g) if cfg.order_policy == "dfs" else list(range(size))
    raw = generate(g, order, GeneratorOptions(extra_emitters=cfg.extra_emitters))
    r = raw
    if cfg.simplify:
        from .simplifier import simplify

        r = simplify(raw)
    ok = verify_recipe(r, confirm=True).passed
    return InstanceResult(size, index, s, g.num_edges(), r.emitters_used, g.min_emitters(order),
                          cost_report(r).two_qubit_count, cost_report(raw).two_qubit_count, ok)


def _run_one(args):
    return run_instance(*args)


def run_bench(cfg: BenchConfig, workers: Optional[int] = None) -> list[InstanceResult]:
    """All instances, ordered by (size, index) whatever the worker count."""
    jobs = [(cfg, n, k) for n in cfg.sizes for k in range(cfg.samples)]
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(jobs) < 2:
        out = [_run_one(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            out = list(ex.map(_run_one, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    bad = [r for r in out if not r.verified]
    if bad:
        raise RuntimeError(f"{len(bad)} bench instances failed verification, first: {bad[0]}")
    return out


def summarize(rows: list[InstanceResult]) -> list[dict]:
    out = []
    for n in sorted({r.size for r in rows}):
        c = np.array([r.two_qubit_count for r in rows if r.size == n], dtype=float)
        raw = np.array([r.two_qubit_raw for r in rows if r.size == n], dtype=float)
        e = np.array([r.emitters_used for r in rows if r.size == n], dtype=float)
        out.append({
            "size": n,
            "samples": int(c.size),
            "mean": round(float(c.mean()), 6),
            "std": round(float(c.std()), 6),
            "max": int(c.max()),
            "mean_unsimplified": round(float(raw.mean()), 6),
            "mean_emitters": round(float(e.mean()), 6),
        })
    return out


def rows_csv(rows: list[InstanceResult]) -> str:
    buf = io.StringIO()
    names = list(asdict(rows[0])) if rows else [f for f in InstanceResult.__dataclass_fields__]
    w = csv.DictWriter(buf, fieldnames=names, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(asdict(r))
    return buf.getvalue()


def summary_csv(summary: list[dict]) -> str:
    buf = io.StringIO()
    if summary:
        w = csv.DictWriter(buf, fieldnames=list(summary[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(summary)
    return buf.getvalue()


# --------------------------------------------------------------------------
# special families


def load_reference() -> dict:
    """Published reference numbers shipped with the package (not recomputed)."""
    text = resources.files("graphbuilder").joinpath("data/reference.json").read_text()
    return json.loads(text)


def formula_value(spec) -> Optional[tuple]:
    """``(two_qubit_count, emitters)`` from the published closed forms, or None."""
    if isinstance(spec, zoo.Tree) and len(set(spec.branching)) == 1:
        b, d = spec.branching[0], len(spec.branching)
        return b ** (d - 1) - 1, d
    if isinstance(spec, zoo.RGS):
        return spec.n // 2 - 2, None
    if isinstance(spec, zoo.SixRing):
        return 6 * spec.n + 4, 3
    return None


def _reference_row(family: str, ref: dict) -> Optional[dict]:
    for row in ref["families"]:
        if row["family"] == family:
            return row
    return None


def family_report(families: list[str], simplify: bool = True) -> list[dict]:
    """Cost of each named family in its canonical order, beside the published value."""
    from .simplifier import simplify as _simplify

    ref = load_reference()
    out = []
    for fam in families:
        spec = zoo.parse_family(fam)
        g, order = zoo.build(spec)
        r = generate(g, order)
        if simplify:
            r = _simplify(r)
        cost = cost_report(r)
        ok = verify_recipe(r, confirm=True).passed
        ref_count = ref_em = None
        source = ""
        row = _reference_row(fam.lower(), ref)
        if row:
            ref_count, ref_em, source = row["new"], row["n_e"], "table"
        elif isinstance(spec, zoo.GeneralizedRGS):
            d = ref["generalized_rgs_16"]
            ref_count, ref_em, source = d["new"], d["n_e"], "text"
        else:
            f = formula_value(spec)
            if f:
                ref_count, ref_em = f
                source = "formula"
        dev = None
        note = ""
        if ref_count:
            dev = round((cost.two_qubit_count - ref_count) / ref_count, 6)
            if cost.two_qubit_count != ref_count or (ref_em and ref_em != r.emitters_used):
                note = f"differs from published value under reconstructed order {_order_name(spec)}"
        out.append({
            "family": fam,
            "order": _order_name(spec),
            "N": g.n,
            "edges": g.num_edges(),
            "emitters": r.emitters_used,
            "two_qubit_count": cost.two_qubit_count,
            "ref_count": ref_count,
            "ref_emitters": ref_em,
            "ref_source": source,
            "relative_deviation": dev,
            "verified": ok,
            "note": note,
        })
    return out


def _order_name(spec) -> str:
    if isinstance(spec, (zoo.Tree, zoo.RandomConnected)):
        return "dfs"
    if isinstance(spec, zoo.RGS):
        return spec.order
    if isinstance(spec, zoo.RHG):
        return "raster-xyz"
    if isinstance(spec, zoo.SixRing):
        return "ring-major"
    return "natural"

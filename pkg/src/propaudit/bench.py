"""Satisfaction-rate experiment over the synthetic Gaussian model.

For every (n, g) cell the harness generates instances, samples uniform
center selections, audits each under the configured axioms, and
aggregates satisfaction counts.  Work units are whole instances keyed by
(cell, instance index), and every random draw is reproducible from the
master seed alone, so results are identical no matter how the units are
scheduled across processes.

Inside the harness, every audited selection is also checked for the
axiom implication (anchored representation implies the default-coalition
audit); a counterexample aborts the run with the offending seeds, since
it can only mean a verifier bug.
"""

from __future__ import annotations

import hashlib
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import ConfigError
from .gen import GaussianConfig, gen_gaussian_instance, sample_selection, substream
from .verify import _dc_scan, verify_mpjr_plus_smallk

AXIOMS = ("mpjr+", "dc-mpjr+")


@dataclass(frozen=True)
class ExperimentConfig:
    n_values: tuple = (20, 50, 80, 100)
    g_values: tuple = (4, 5, 6)
    instances_per_cell: int = 50
    selections_per_instance: int = 1000
    k: int = 5
    sigma: float = 0.04
    master_seed: int = 0
    axioms: tuple = AXIOMS
    gamma: float = 1.0

    def __post_init__(self):
        if min(self.instances_per_cell, self.selections_per_instance) < 1:
            raise ConfigError("instance and selection counts must be positive")
        if not self.n_values or not self.g_values:
            raise ConfigError("need at least one n and one g value")
        if self.k > min(self.n_values):
            raise ConfigError("k cannot exceed the smallest n (candidates = agents)")
        bad = [a for a in self.axioms if a not in AXIOMS]
        if bad:
            raise ConfigError(f"unknown axioms: {bad}")
        if self.gamma < 1.0:
            raise ConfigError("gamma must be >= 1")


@dataclass(frozen=True)
class ReportRow:
    n: int
    g: int
    axiom: str
    gamma: float
    satisfied: int
    total: int
    rate: float
    mean_ms: float
    seed: int


@dataclass(frozen=True)
class ExperimentReport:
    rows: tuple
    master_seed: int

    def rate(self, n: int, g: int, axiom: str) -> float:
        for row in self.rows:
            if (row.n, row.g, row.axiom) == (n, g, axiom):
                return row.rate
        raise KeyError((n, g, axiom))

    def rates(self, axiom: str) -> list:
        return [row.rate for row in self.rows if row.axiom == axiom]

    def to_csv(self, include_timing: bool = True) -> str:
        # timing is wall-clock and not reproducible; drop it for byte
        # comparisons
        lines = ["n,g,axiom,gamma,satisfied,total,rate,mean_ms,seed"
                 if include_timing else "n,g,axiom,gamma,satisfied,total,rate,seed"]
        for r in self.rows:
            cells = [str(r.n), str(r.g), r.axiom, repr(r.gamma), str(r.satisfied),
                     str(r.total), repr(r.rate)]
            if include_timing:
                cells.append(f"{r.mean_ms:.4f}")
            cells.append(str(r.seed))
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    def plot_data(self) -> str:
        """Tab-separated per-cell bars, one block per g value."""
        axioms = sorted({r.axiom for r in self.rows})
        ns = sorted({r.n for r in self.rows})
        blocks = []
        for g in sorted({r.g for r in self.rows}):
            lines = [f"# g={g}", "\t".join(["n"] + axioms)]
            for n in ns:
                vals = [f"{self.rate(n, g, a):.4f}" for a in axioms]
                lines.append("\t".join([str(n)] + vals))
            blocks.append("\n".join(lines))
        return "\n\n".join(blocks) + "\n"


def _instance_seed(master: int, n: int, g: int, idx: int) -> int:
    digest = hashlib.sha256(repr((int(master), "instance", n, g, idx)).encode()).digest()
    return int.from_bytes(digest[:8], "little")


def _audit_instance(task) -> tuple:
    """Audit one generated instance under all configured axioms.

    Returns (n, g, per-axiom satisfied counts, per-axiom elapsed ms,
    audits performed).
    """
    (n, g, idx, k, sigma, master, axioms, gamma, selections) = task
    cfg = GaussianConfig(n=n, g=g, sigma=sigma, seed=_instance_seed(master, n, g, idx), k=k)
    inst = gen_gaussian_instance(cfg)
    D = inst.dists()
    order = np.argsort(D, axis=0)
    sd = np.take_along_axis(D, order, axis=0)
    sat = {a: 0 for a in axioms}
    ms = {a: 0.0 for a in axioms}
    mask = np.empty(inst.m, dtype=bool)
    for j in range(selections):
        X = sample_selection(inst.m, k, substream(master, "selection", n, g, idx, j))
        results = {}
        if "dc-mpjr+" in axioms:
            t0 = time.perf_counter()
            mask[:] = True
            mask[list(X)] = False
            outs = np.flatnonzero(mask)
            hit = _dc_scan(D, X, outs, n, k, gamma, 0.0, order=order, sd=sd)
            ms["dc-mpjr+"] += (time.perf_counter() - t0) * 1000.0
            results["dc-mpjr+"] = hit is None
        if "mpjr+" in axioms:
            t0 = time.perf_counter()
            verdict = verify_mpjr_plus_smallk(inst, X, gamma)
            ms["mpjr+"] += (time.perf_counter() - t0) * 1000.0
            results["mpjr+"] = verdict.satisfied
        if results.get("mpjr+") and results.get("dc-mpjr+") is False:
            raise AssertionError(
                "implication breach: mpjr+ satisfied but dc-mpjr+ violated at "
                f"master_seed={master} cell=({n},{g}) instance={idx} selection={j}")
        for a in axioms:
            sat[a] += bool(results[a])
    return n, g, sat, ms, selections


def resolve_threads(threads=None) -> int:
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get("PROPAUDIT_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_experiment(cfg: ExperimentConfig, threads=None, progress=None) -> ExperimentReport:
    threads = resolve_threads(threads)
    tasks = [(n, g, i, cfg.k, cfg.sigma, cfg.master_seed, tuple(cfg.axioms),
              cfg.gamma, cfg.selections_per_instance)
             for n in cfg.n_values for g in cfg.g_values
             for i in range(cfg.instances_per_cell)]
    sat = {(n, g, a): 0 for n in cfg.n_values for g in cfg.g_values for a in cfg.axioms}
    ms = dict.fromkeys(sat, 0.0)
    total = dict.fromkeys(sat, 0)
    done = 0
    if threads == 1:
        outcomes = map(_audit_instance, tasks)
    else:
        pool = ProcessPoolExecutor(max_workers=threads)
        outcomes = pool.map(_audit_instance, tasks, chunksize=4)
    for n, g, s, t, audits in outcomes:
        for a in cfg.axioms:
            sat[(n, g, a)] += s[a]
            ms[(n, g, a)] += t[a]
            total[(n, g, a)] += audits
        done += 1
        if progress:
            progress(done, len(tasks))
    if threads > 1:
        pool.shutdown()
    rows = []
    for n in cfg.n_values:
        for g in cfg.g_values:
            for a in sorted(cfg.axioms):
                key = (n, g, a)
                rows.append(ReportRow(n, g, a, cfg.gamma, sat[key], total[key],
                                      sat[key] / total[key], ms[key] / total[key],
                                      cfg.master_seed))
    return ExperimentReport(tuple(rows), cfg.master_seed)

"""Experiment harness: vigilance grids, multi-seed runs, peak selection.

Every run follows the same pipeline: normalize the dataset, reorder it with
the run seed (and VAT for the offline system), train for one epoch,
optionally merge, then score against the reference labels.
"""

import csv
import dataclasses
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .datasets import linear_normalize, permutation, resolve, take
from .ddvfa import DDVFA, LinkageMethod
from .dvfa import DVFA
from .fuzzy_art import FuzzyART
from .validation import adjusted_rand
from .vat import pairwise_dissimilarity, vat_order

SYSTEMS = ("fa", "dvfa", "ddvfa", "vat-ddvfa", "ddvfa-merge")
GAMMA_SWEEP = tuple(0.5 * k for k in range(1, 11))
TIE_TOL = 1e-12


@dataclass
class ExperimentConfig:
    """Everything needed to reproduce a batch of runs.

    When both ``rho_lb`` and ``rho_ub`` are set the grid is that single
    point; otherwise the grid spans ``lb_range`` x ``ub_range`` with
    ``grid_step`` and ``rho_ub >= rho_lb``.  The fuzzy ART system has one
    vigilance and uses the diagonal of the grid.
    """

    dataset: str
    system: str = "ddvfa"
    method: str = "single"
    rho_lb: float | None = None
    rho_ub: float | None = None
    grid_step: float = 0.01
    lb_range: tuple = (0.0, 1.0)
    ub_range: tuple = (0.0, 1.0)
    gamma: float = 3.0
    gamma_star: float = 1.0
    alpha: float = 0.001
    beta: float = 1.0
    seeds: list = field(default_factory=lambda: list(range(30)))
    out: str | None = None
    format: str = "csv"
    parsimony: bool = True
    has_header: bool = False
    label_column: object = "last"
    merge_iterations: int = 10
    timing: bool = False
    jobs: int = 1

    def __post_init__(self):
        if self.system not in SYSTEMS:
            raise ValueError(f"system must be one of {SYSTEMS}, got {self.system!r}")
        LinkageMethod(self.method)
        if not self.grid_step > 0:
            raise ValueError(f"grid_step must be positive, got {self.grid_step!r}")
        if not self.seeds:
            raise ValueError("the seed list is empty")
        if self.format not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.format!r}")
        if (self.rho_lb is None) != (self.rho_ub is None) and self.system != "fa":
            raise ValueError("give both rho_lb and rho_ub, or neither for a grid")
        if self.rho_lb is not None and self.rho_ub is not None and self.rho_lb > self.rho_ub:
            raise ValueError(f"rho_lb ({self.rho_lb}) exceeds rho_ub ({self.rho_ub})")

    @property
    def effective_gamma(self):
        """The DDVFA family uses ``gamma``; fuzzy ART and DVFA are first order."""
        return 1.0 if self.system in ("fa", "dvfa") else float(self.gamma)


@dataclass
class RunRecord:
    dataset: str
    system: str
    method: str
    rho_lb: float
    rho_ub: float
    gamma: float
    seed: int
    AR: float
    clusters: int
    categories: int
    wall_time: float


RECORD_FIELDS = [f.name for f in dataclasses.fields(RunRecord)]


def _axis(lo, hi, step):
    n = int(math.floor((hi - lo) / step + 1e-9))
    return [round(lo + k * step, 10) for k in range(n + 1)]


def vigilance_grid(cfg):
    """Ordered (rho_lb, rho_ub) points covered by ``cfg``."""
    if cfg.system == "fa":
        rho = cfg.rho_lb if cfg.rho_lb is not None else cfg.rho_ub
        if rho is not None:
            return [(rho, rho)]
        return [(v, v) for v in _axis(*cfg.lb_range, cfg.grid_step)]
    if cfg.rho_lb is not None:
        return [(cfg.rho_lb, cfg.rho_ub)]
    ubs = _axis(*cfg.ub_range, cfg.grid_step)
    return [(lb, ub) for lb in _axis(*cfg.lb_range, cfg.grid_step) for ub in ubs if ub >= lb]


def run_order(ds, seed, system):
    """Presentation order of the samples of ``ds`` for one seed."""
    order = permutation(ds.n_samples, seed)
    if system == "vat-ddvfa":
        order = order[vat_order(pairwise_dissimilarity(ds.features[order]))]
    return order


def build_model(cfg, rho_lb, rho_ub):
    if cfg.system == "fa":
        return FuzzyART(rho=rho_lb, alpha=cfg.alpha, beta=cfg.beta, gamma=1.0,
                        match="raw")
    if cfg.system == "dvfa":
        return DVFA(rho_lb=rho_lb, rho_ub=rho_ub, alpha=cfg.alpha, beta=cfg.beta)
    return DDVFA(rho_lb=rho_lb, rho_ub=rho_ub, method=cfg.method, alpha=cfg.alpha,
                 beta=cfg.beta, gamma=cfg.gamma, gamma_star=cfg.gamma_star,
                 merge=cfg.system == "ddvfa-merge",
                 max_merge_iter=cfg.merge_iterations)


def fit_once(cfg, X, rho_lb, rho_ub):
    """Train one model on ``X`` (already ordered); returns (model, labels, clusters, cats)."""
    model = build_model(cfg, rho_lb, rho_ub).fit(X)
    if cfg.system == "fa":
        k = model.n_categories_
        return model, model.labels_, k, k
    if cfg.system == "dvfa":
        return model, model.labels_, model.n_clusters_, model.weights_.shape[0]
    return model, model.labels_, model.n_nodes_, model.n_categories_


def load_dataset(cfg):
    ds = resolve(cfg.dataset, has_header=cfg.has_header, label_column=cfg.label_column)
    if ds.labels is None:
        raise ValueError(f"dataset {cfg.dataset!r} has no reference labels to score against")
    return linear_normalize(ds)


def _runs_for_seed(cfg, ds, seed, grid):
    part = take(ds, run_order(ds, seed, cfg.system))
    X = np.ascontiguousarray(part.features)
    gamma = cfg.effective_gamma
    method = cfg.method if cfg.system not in ("fa", "dvfa") else ""
    out = []
    for lb, ub in grid:
        t0 = time.perf_counter()
        _, labels, clusters, cats = fit_once(cfg, X, lb, ub)
        ar = adjusted_rand(part.labels, labels)
        wall = time.perf_counter() - t0 if cfg.timing else 0.0
        out.append(RunRecord(ds.name, cfg.system, method, float(lb), float(ub), gamma,
                             int(seed), float(ar), int(clusters), int(cats), wall))
    return out


def _seed_job(args):
    return _runs_for_seed(*args)


def canonical(records):
    return sorted(records, key=lambda r: (r.rho_lb, r.rho_ub, r.gamma, r.seed))


def run_experiment(cfg, dataset=None):
    """All (grid point x seed) runs of ``cfg``, in canonical order.

    ``dataset`` may supply an already loaded and normalized dataset.
    """
    ds = dataset if dataset is not None else load_dataset(cfg)
    grid = vigilance_grid(cfg)
    jobs = [(cfg, ds, s, grid) for s in cfg.seeds]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            parts = list(pool.map(_seed_job, jobs))
    else:
        parts = [_seed_job(j) for j in jobs]
    return canonical([r for p in parts for r in p])


def _std(v):
    return float(np.std(v, ddof=1)) if len(v) > 1 else 0.0


def group_stats(records):
    """Per (rho_lb, rho_ub, gamma) aggregates, in canonical key order."""
    groups = {}
    for r in records:
        groups.setdefault((r.rho_lb, r.rho_ub, r.gamma), []).append(r)
    stats = []
    for key in sorted(groups):
        rs = groups[key]
        ar = [r.AR for r in rs]
        stats.append({
            "rho_lb": key[0], "rho_ub": key[1], "gamma": key[2],
            "mean_ar": float(np.mean(ar)), "std_ar": _std(ar),
            "mean_clusters": float(np.mean([r.clusters for r in rs])),
            "mean_categories": float(np.mean([r.categories for r in rs])),
            "n_runs": len(rs),
        })
    return stats


def select_peak(records, parsimony=True):
    """Grid point with the highest mean AR.

    Means within ``1e-12`` of each other count as tied.  With ``parsimony``
    ties go to the fewest mean categories; remaining ties to the lowest
    ``(rho_lb, rho_ub)``.
    """
    stats = group_stats(records)
    if not stats:
        raise ValueError("no records to select a peak from")
    top = max(s["mean_ar"] for s in stats)
    tied = [s for s in stats if s["mean_ar"] >= top - TIE_TOL]
    if parsimony:
        fewest = min(s["mean_categories"] for s in tied)
        tied = [s for s in tied if s["mean_categories"] <= fewest + TIE_TOL]
    return dict(min(tied, key=lambda s: (s["rho_lb"], s["rho_ub"], s["gamma"])))


def records_to_csv(records):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RECORD_FIELDS)
    for r in records:
        w.writerow([repr(v) if isinstance(v, float) else v
                    for v in dataclasses.astuple(r)])
    return buf.getvalue()


def records_from_csv(text):
    rows = csv.DictReader(io.StringIO(text))
    types = {f.name: f.type for f in dataclasses.fields(RunRecord)}
    return [RunRecord(**{k: types[k](v) for k, v in row.items()}) for row in rows]


def summarize(records, parsimony=True):
    if not records:
        return {}
    peak = select_peak(records, parsimony)
    first = records[0]
    return {"dataset": first.dataset, "system": first.system, "method": first.method,
            "n_records": len(records), "peak": peak}


def emit_results(records, summary, out, fmt="csv"):
    """Write results; returns the written paths.

    ``csv`` writes one row per run to ``out`` and the summary to a sibling
    ``<stem>.summary.json``.  ``json`` writes both into ``out``.
    """
    out = Path(out)
    if fmt == "csv":
        out.write_text(records_to_csv(records), encoding="utf-8")
        side = out.with_name(out.stem + ".summary.json")
        side.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n",
                        encoding="utf-8")
        return [out, side]
    if fmt == "json":
        body = {"records": [dataclasses.asdict(r) for r in records], "summary": summary}
        out.write_text(json.dumps(body, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return [out]
    raise ValueError(f"format must be csv or json, got {fmt!r}")


def gamma_sweep(cfg, gammas=GAMMA_SWEEP, dataset=None):
    """Peak (AR, clusters, categories) for each gamma.

    ``gamma_star`` is capped at each gamma so that small widths stay valid.
    Returns ``(rows, records)``: one peak summary per gamma and all runs.
    """
    ds = dataset if dataset is not None else load_dataset(cfg)
    rows, everything = [], []
    for g in gammas:
        sub = dataclasses.replace(cfg, gamma=float(g), gamma_star=min(cfg.gamma_star, float(g)))
        recs = run_experiment(sub, ds)
        everything.extend(recs)
        rows.append(select_peak(recs, cfg.parsimony))
    return rows, everything


SWEEP_FIELDS = ["gamma", "rho_lb", "rho_ub", "mean_ar", "std_ar", "mean_clusters",
                "mean_categories", "n_runs"]


def sweep_to_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_FIELDS)
    for row in rows:
        w.writerow([repr(row[k]) if isinstance(row[k], float) else row[k]
                    for k in SWEEP_FIELDS])
    return buf.getvalue()

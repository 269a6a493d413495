"""JSON reports, CSV plot series and their fixed layouts.

CSV column orders are part of the public interface:

``subsample.csv``
    k, mean_surviving_prop, mean_surviving_prop_se, prob_all_rows_lost,
    prob_all_rows_lost_se, replicates
``bounds_vs_k.csv``
    n, q_star, k, p_all_lower_bound, p_all_lower_bound_complement
``max_k_vs_n.csv``
    target, q_star, n, max_k
``expected_missing_vs_k.csv``
    q_star, k, expected_missing_prop_bound
``growth.csv``
    n, k, p_all_lower_bound, asymptotic_term, bernoulli_lower
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections.abc import Iterable, Sequence
from importlib import resources
from pathlib import Path

from listwise import __version__, bounds
from listwise.groups import GroupPartition
from listwise.matrix import DatasetProfile
from listwise.subsample import ExactSubsample, SubsampleResult

SCHEMA_VERSION = 1

SUBSAMPLE_COLUMNS = ("k", "mean_surviving_prop", "mean_surviving_prop_se",
                     "prob_all_rows_lost", "prob_all_rows_lost_se", "replicates")
BOUNDS_COLUMNS = ("n", "q_star", "k", "p_all_lower_bound", "p_all_lower_bound_complement")
MAX_K_COLUMNS = ("target", "q_star", "n", "max_k")
EXPECTED_COLUMNS = ("q_star", "k", "expected_missing_prop_bound")
GROWTH_COLUMNS = ("n", "k", "p_all_lower_bound", "asymptotic_term", "bernoulli_lower")


def load_schema() -> dict:
    text = resources.files("listwise").joinpath("schemas/report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def provenance(command: str, input_path: str | None, config: dict, seed: int | None) -> dict:
    return {
        "tool": "listwise",
        "version": __version__,
        "command": command,
        "input": input_path,
        "config": config,
        "seed": seed,
    }


def build_report(prov: dict, profile: DatasetProfile | None = None,
                 groups: GroupPartition | None = None, ingest: dict | None = None,
                 subsample: SubsampleResult | None = None,
                 exact: Sequence[ExactSubsample] = (), bounds_grid: dict | None = None) -> dict:
    report: dict = {"schema_version": SCHEMA_VERSION, "provenance": prov}
    if ingest is not None:
        report["ingest"] = ingest
    if profile is not None:
        report["profile"] = profile.to_dict()
    if groups is not None:
        report["groups"] = groups.to_dict()
    if subsample is not None:
        report["subsample"] = subsample.to_dict()
        if exact:
            report["subsample"]["exact"] = [
                {"k": e.k, "mean_surviving_prop": float(e.mean_surviving_prop),
                 "prob_all_rows_lost": float(e.prob_all_rows_lost), "n_subsets": e.n_subsets}
                for e in exact
            ]
    if bounds_grid is not None:
        report["bounds"] = bounds_grid
    check_finite(report)
    return report


def check_finite(obj, path: str = "$") -> None:
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError(f"non-finite number at {path}")
    elif isinstance(obj, dict):
        for key, val in obj.items():
            check_finite(val, f"{path}.{key}")
    elif isinstance(obj, list):
        for i, val in enumerate(obj):
            check_finite(val, f"{path}[{i}]")


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False, allow_nan=False) + "\n"


def dumps_csv(columns: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def subsample_rows(result: SubsampleResult) -> list[tuple]:
    return [tuple(r.to_dict()[c] for c in SUBSAMPLE_COLUMNS) for r in result.records]


def bounds_vs_k_rows(ns: Sequence[int], q_stars: Sequence[float], ks: Sequence[int]) -> list[tuple]:
    rows = []
    for n in ns:
        for q in q_stars:
            for k in ks:
                rows.append((n, q, k, bounds.p_all_lower_bound(n, k, q),
                             bounds.p_all_lower_bound_complement(n, k, q)))
    return rows


def max_k_rows(targets: Sequence[float], q_stars: Sequence[float], ns: Sequence[int]) -> list[tuple]:
    """Largest admissible k per (target, q_star, n); q_star = 0 has no finite answer and is skipped."""
    rows = []
    for t in targets:
        for q in q_stars:
            if q == 0.0:
                continue
            for n in ns:
                rows.append((t, q, n, bounds.max_k_for_target(n, q, t)))
    return rows


def expected_rows(q_stars: Sequence[float], ks: Sequence[int]) -> list[tuple]:
    return [(q, k, bounds.expected_missing_prop_bound(k, q)) for q in q_stars for k in ks]


def growth_rows(f: bounds.GrowthFunction, q_star: float, ns: Sequence[int]) -> list[tuple]:
    rows = []
    for n in ns:
        k = bounds.growth_eval(f, n)
        rows.append((n, k, bounds.p_all_lower_bound(n, k, q_star),
                     bounds.asymptotic_term(n, f, q_star), bounds.bernoulli_lower(n, k, q_star)))
    return rows


def rows_to_records(columns: Sequence[str], rows: Iterable[Sequence]) -> list[dict]:
    return [dict(zip(columns, row)) for row in rows]


def write_text(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return path

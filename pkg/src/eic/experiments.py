"""Search-space sizes and the two seeded experiment harnesses.

Sizes are log2 of the number of candidate matrices each method searches.
Harness output is CSV with rows sorted by (n, p) and floats at 6 decimals,
so a (config, seed) pair always yields the same bytes regardless of
``jobs``.
"""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import EicError, UnsupportedError
from .gen import GenConfig, gen_erdos_renyi_single_unicast, trial_seed
from .gf2 import Echelon, popcount
from .limits import DEFAULT_LIMITS, Limits
from .minrank import restricted_minrank
from .problem import EicProblem, is_single_unicast, requirement_pairs
from .solve import decentralize, solve_task_based

PROXIES = ("union", "pairwise")


@dataclass(frozen=True)
class SearchSpaceSizes:
    log2_eic: int
    log2_kim: int
    log2_ltcmar: Fraction
    n_k: tuple[int, ...]
    n_k_c: tuple[int, ...]


def _require_single_unicast(p: EicProblem) -> None:
    if not is_single_unicast(p):
        raise UnsupportedError("this search-space formula assumes a single-unicast problem")


def search_space_eic(p: EicProblem) -> int:
    return sum(popcount(p.has.rows[u]) for u, _ in requirement_pairs(p))


def search_space_kim(p: EicProblem) -> int:
    """Sum over (k, k') of |R_k AND (B_k' OR R_k')|."""
    _require_single_unicast(p)
    total = 0
    for rk in p.needs.rows:
        for bk, rk2 in zip(p.has.rows, p.needs.rows):
            total += popcount(rk & (bk | rk2))
    return total


def redundant_rows(p: EicProblem, proxy: str = "union") -> tuple[int, ...]:
    """Per sender, rows of its identity submatrix already available earlier.

    ``union``: rows in the span of all lower-indexed senders' submatrices.
    ``pairwise``: the largest overlap with any single lower-indexed sender.
    """
    if proxy not in PROXIES:
        raise ValueError(f"unknown redundancy proxy {proxy!r}; choose from {PROXIES}")
    out = []
    ech = Echelon()
    for k, row in enumerate(p.has.rows):
        if proxy == "union":
            out.append(sum(1 for b in range(p.m) if (row >> b) & 1 and ech.contains(1 << b)))
            for b in range(p.m):
                if (row >> b) & 1:
                    ech.add(1 << b)
        else:
            out.append(max((popcount(row & p.has.rows[j]) for j in range(k)), default=0))
    return tuple(out)


def search_space_ltcmar(p: EicProblem, proxy: str = "union") -> tuple[Fraction, tuple[int, ...]]:
    _require_single_unicast(p)
    n_k = [popcount(r) for r in p.has.rows]
    c_k = redundant_rows(p, proxy)
    value = Fraction(sum(x * x + x for x in n_k), 2) - Fraction(sum(c * c + c for c in c_k), 2)
    return max(value, Fraction(0)), c_k


def search_space_sizes(p: EicProblem, proxy: str = "union") -> SearchSpaceSizes:
    lt, c_k = search_space_ltcmar(p, proxy)
    return SearchSpaceSizes(
        log2_eic=search_space_eic(p),
        log2_kim=search_space_kim(p),
        log2_ltcmar=lt,
        n_k=tuple(popcount(r) for r in p.has.rows),
        n_k_c=c_k,
    )


@dataclass
class TrialRecord:
    n: int
    p: float
    seed: int
    trial: int
    c_exact: int | None = None
    c_is_exact: bool = False
    d_alg1: int | None = None
    t_alg2: int | None = None
    log2_eic: int | None = None
    log2_ltcmar: float | None = None
    error: str | None = None
    timings: dict[str, float] = field(default_factory=dict)


def _search_trial(args: tuple[int, float, int, int, str]) -> TrialRecord:
    n, prob, seed, trial, proxy = args
    rec = TrialRecord(n, prob, trial_seed(seed, trial), trial)
    t0 = time.perf_counter()
    try:
        p = gen_erdos_renyi_single_unicast(GenConfig(n, prob, rec.seed))
    except EicError as exc:
        rec.error = str(exc)
        return rec
    rec.log2_eic = search_space_eic(p)
    rec.log2_ltcmar = float(search_space_ltcmar(p, proxy)[0])
    rec.timings["total"] = time.perf_counter() - t0
    return rec


def _cost_trial(args: tuple[int, float, int, int, Limits]) -> TrialRecord:
    n, prob, seed, trial, limits = args
    rec = TrialRecord(n, prob, trial_seed(seed, trial), trial)
    try:
        p = gen_erdos_renyi_single_unicast(GenConfig(n, prob, rec.seed))
        t0 = time.perf_counter()
        res = restricted_minrank(p, limits=limits)
        t1 = time.perf_counter()
        t_sol = solve_task_based(p, limits=limits)
        t2 = time.perf_counter()
    except EicError as exc:
        rec.error = str(exc)
        return rec
    rec.c_exact, rec.c_is_exact = res.rank, res.exact
    rec.d_alg1 = decentralize(p, res).length
    rec.t_alg2 = t_sol.length
    rec.log2_eic = search_space_eic(p)
    rec.timings = {"minrank": t1 - t0, "task": t2 - t1}
    return rec


def _run(fn: Callable, tasks: list, jobs: int | None) -> list[TrialRecord]:
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def _cells(ns: Sequence[int], ps: Sequence[float]) -> list[tuple[int, float]]:
    return sorted({(int(n), float(p)) for n in ns for p in ps})


@dataclass
class ExperimentResult:
    csv_text: str
    records: list[TrialRecord]
    config: dict

    def config_json(self) -> str:
        return json.dumps(self.config, indent=1, sort_keys=True) + "\n"


def run_search_ratio_experiment(
    ns: Sequence[int],
    ps: Sequence[float],
    trials: int,
    seed: int,
    proxy: str = "union",
    jobs: int | None = 1,
) -> ExperimentResult:
    """Per (n, p): mean, min and max of log2 S_ltcmar / log2 S_eic over trials."""
    if proxy not in PROXIES:
        raise ValueError(f"unknown redundancy proxy {proxy!r}")
    cells = _cells(ns, ps)
    tasks = [(n, p, seed, t, proxy) for n, p in cells for t in range(trials)]
    records = sorted(_run(_search_trial, tasks, jobs), key=lambda r: (r.n, r.p, r.trial))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "p", "trials", "mean_ratio", "min_ratio", "max_ratio", "seed", "failures", "ltcmar_proxy"])
    for n, p in cells:
        ok = [r for r in records if (r.n, r.p) == (n, p) and r.error is None]
        ratios = [r.log2_ltcmar / r.log2_eic for r in ok]
        fails = sum(1 for r in records if (r.n, r.p) == (n, p) and r.error is not None)
        if ratios:
            stats = [_fmt(sum(ratios) / len(ratios)), _fmt(min(ratios)), _fmt(max(ratios))]
        else:
            stats = ["nan"] * 3
        w.writerow([n, p, trials, *stats, seed, fails, proxy])
    config = {"experiment": "search-ratio", "ns": [c for c in sorted(set(map(int, ns)))], "ps": sorted(set(map(float, ps))),
              "trials": trials, "seed": seed, "ltcmar_proxy": proxy}
    return ExperimentResult(buf.getvalue(), records, config)


def run_cost_ratio_experiment(
    ns: Sequence[int],
    ps: Sequence[float],
    trials: int,
    seed: int,
    limits: Limits = DEFAULT_LIMITS,
    jobs: int | None = 1,
) -> ExperimentResult:
    """Per (n, p): mean and max of task-based length over exact centralized length."""
    cells = _cells(ns, ps)
    tasks = [(n, p, seed, t, limits) for n, p in cells for t in range(trials)]
    records = sorted(_run(_cost_trial, tasks, jobs), key=lambda r: (r.n, r.p, r.trial))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "p", "trials", "mean_ratio", "max_ratio", "seed", "failures"])
    for n, p in cells:
        cell = [r for r in records if (r.n, r.p) == (n, p)]
        ok = [r for r in cell if r.error is None]
        ratios = [r.t_alg2 / r.c_exact for r in ok]
        stats = [_fmt(sum(ratios) / len(ratios)), _fmt(max(ratios))] if ratios else ["nan", "nan"]
        w.writerow([n, p, trials, *stats, seed, len(cell) - len(ok)])
    config = {"experiment": "cost-ratio", "ns": sorted(set(map(int, ns))), "ps": sorted(set(map(float, ps))),
              "trials": trials, "seed": seed, "limits": asdict(limits)}
    return ExperimentResult(buf.getvalue(), records, config)


def records_to_json(records: Iterable[TrialRecord]) -> str:
    """Per-trial dump without timings (those vary run to run)."""
    rows = []
    for r in records:
        d = asdict(r)
        d.pop("timings")
        rows.append(d)
    return json.dumps(rows, indent=1) + "\n"

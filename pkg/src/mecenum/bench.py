"""Delay measurement: time between consecutive outputs of an enumerator.

Timing uses ``time.perf_counter_ns`` with the garbage collector paused, and
the clock is read before the sink runs so materialization is not charged to
the algorithm.
"""

from __future__ import annotations

import csv
import gc
import json
import statistics
import threading
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from . import algorithms
from .graph import PDG
from .instances import GenConfig, cpdag_to_pdag, dag_to_cpdag, generate

KS = (1, 2, 3, 5, 7, 10)
RECORD_HEADER = ["instance_id", "algorithm", "output_index", "delay_ns"]
STATS_HEADER = ["algorithm", "scenario", "count", "mean_ns", "max_ns"] + [f"p{k}" for k in KS]
DEFAULT_MAX_OUTPUTS = 100_000
DEFAULT_MAX_SECONDS = 10.0


@dataclass(frozen=True)
class DelayRecord:
    instance_id: str
    algorithm: str
    output_index: int
    delay_ns: int


@dataclass(frozen=True)
class DelayStats:
    count: int
    mean_ns: float
    max_ns: int
    proportions: dict = field(default_factory=dict)
    algorithm: str = ""
    scenario: str = ""

    def row(self) -> list:
        return [self.algorithm, self.scenario, self.count, f"{self.mean_ns:.1f}", self.max_ns] + [
            f"{self.proportions[k]:.6f}" for k in KS
        ]


def _timed(it: Iterator, max_outputs: int, max_seconds: float, sink) -> list[int]:
    delays: list[int] = []
    clock = time.perf_counter_ns
    deadline = None if max_seconds is None else int(max_seconds * 1e9)
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        start = t_prev = clock()
        for member in it:
            t = clock()
            delays.append(t - t_prev)
            if sink is not None:
                sink(member)
            if len(delays) >= max_outputs or (deadline is not None and t - start >= deadline):
                break
            t_prev = clock()
    finally:
        if was_enabled:
            gc.enable()
    return delays


def measure_delays(
    g: PDG,
    algorithm: str | Callable[[PDG], Iterator],
    max_outputs: int = DEFAULT_MAX_OUTPUTS,
    max_seconds: float | None = DEFAULT_MAX_SECONDS,
    instance_id: str = "",
    warmup: bool = True,
    sink: Callable | None = None,
) -> list[DelayRecord]:
    """One record per output until the enumeration ends or the budget runs out.

    With ``warmup`` the first enumeration is run and thrown away.
    """
    if callable(algorithm):
        make, name = algorithm, getattr(algorithm, "__name__", "custom")
    else:
        make, name = algorithms.get(algorithm), algorithm
    if warmup:
        _timed(make(g), max_outputs, max_seconds, None)
    delays = _timed(make(g), max_outputs, max_seconds, sink)
    return [DelayRecord(instance_id, name, i, d) for i, d in enumerate(delays)]


def delay_stats(
    records: Sequence[DelayRecord],
    exclude_first: bool = False,
    scenario: str = "",
) -> DelayStats:
    """Mean, max and the fraction of delays within k times the mean."""
    if exclude_first:
        records = [r for r in records if r.output_index > 0]
    if not records:
        raise ValueError("delay_stats needs at least one record")
    ds = [r.delay_ns for r in records]
    mean = statistics.fmean(ds)
    props = {k: sum(d <= k * mean for d in ds) / len(ds) for k in KS}
    algos = {r.algorithm for r in records}
    return DelayStats(
        count=len(ds),
        mean_ns=mean,
        max_ns=max(ds),
        proportions=props,
        algorithm=algos.pop() if len(algos) == 1 else "",
        scenario=scenario,
    )


def emit_csv(rows: Iterable[DelayRecord] | Iterable[DelayStats], path) -> None:
    """Write records or stats as CSV; which header depends on the row type."""
    rows = list(rows)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        if rows and isinstance(rows[0], DelayStats):
            w.writerow(STATS_HEADER)
            for s in rows:
                w.writerow(s.row())
        else:
            w.writerow(RECORD_HEADER)
            for r in rows:
                w.writerow([r.instance_id, r.algorithm, r.output_index, r.delay_ns])


def read_records(path) -> list[DelayRecord]:
    with open(path, newline="", encoding="utf-8") as fh:
        rd = csv.DictReader(fh)
        return [
            DelayRecord(r["instance_id"], r["algorithm"], int(r["output_index"]), int(r["delay_ns"]))
            for r in rd
        ]


def emit_plot_data(stats: Iterable[DelayStats], sizes: dict[str, int], path) -> None:
    """(algorithm, n, mean_delay_ms) series; ``sizes`` maps scenario -> n."""
    rows = sorted(
        ((s.algorithm, sizes[s.scenario], s.mean_ns / 1e6) for s in stats),
        key=lambda r: (r[0], r[1]),
    )
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["algorithm", "n", "mean_delay_ms"])
        for a, n, ms in rows:
            w.writerow([a, n, f"{ms:.6f}"])


def make_instance(model: str, n: int, k, seed: int, pdag: bool = False) -> PDG:
    """Chordal UCCG, or the CPDAG of a random DAG; optionally with
    background edges oriented."""
    cfg = GenConfig(n=n, k=k, model=model, seed=seed)
    g = generate(cfg)
    if model != "chordal":
        g = dag_to_cpdag(g)
    if pdag:
        g = cpdag_to_pdag(g, cfg)
    return g


@dataclass
class BenchResult:
    records: list[DelayRecord]
    stats: list[DelayStats]
    sizes: dict[str, int]
    meta: dict


def run_benchmark(
    algos: Sequence[str],
    model: str,
    sizes: Sequence[int],
    seeds: Sequence[int],
    k=3,
    max_outputs: int = DEFAULT_MAX_OUTPUTS,
    max_seconds: float | None = DEFAULT_MAX_SECONDS,
    pdag: bool = False,
    warmup: bool = True,
    exclude_first: bool = False,
    parallel_instances: bool = False,
) -> BenchResult:
    """Every algorithm on every (size, seed) instance; stats per
    (algorithm, size) pooled over seeds."""
    for a in algos:
        algorithms.get(a)
    jobs = []
    for n in sizes:
        for s in seeds:
            jobs.append((n, s, f"{model}-n{n}-k{k}-s{s}"))

    def run(job):
        n, s, iid = job
        g = make_instance(model, n, k, s, pdag)
        out = []
        for a in algos:
            out += measure_delays(g, a, max_outputs, max_seconds, iid, warmup)
        return out

    results: list[list[DelayRecord]] = [[] for _ in jobs]
    if parallel_instances:
        def worker(i):
            results[i] = run(jobs[i])

        threads = [threading.Thread(target=worker, args=(i,)) for i in range(len(jobs))]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
    else:
        for i, job in enumerate(jobs):
            results[i] = run(job)
    records = [r for rs in results for r in rs]
    size_of = {}
    stats = []
    for n in sizes:
        scen = f"{model}-n{n}"
        size_of[scen] = n
        ids = {iid for m, _, iid in jobs if m == n}
        for a in algos:
            rs = [r for r in records if r.algorithm == a and r.instance_id in ids]
            if rs:
                st = delay_stats(rs, exclude_first=exclude_first, scenario=scen)
                stats.append(
                    DelayStats(st.count, st.mean_ns, st.max_ns, st.proportions, a, scen)
                )
    meta = {
        "parallel_instances": parallel_instances,
        "warmup": warmup,
        "exclude_first": exclude_first,
        "max_outputs": max_outputs,
        "max_seconds": max_seconds,
        "model": model,
        "k": k,
        "pdag": pdag,
        "clock": "perf_counter_ns",
    }
    return BenchResult(records, stats, size_of, meta)


def write_meta(meta: dict, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")

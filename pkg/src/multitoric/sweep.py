"""Exhaustive verification drivers over all small posets or graphs."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from .errors import SizeLimitExceeded
from .graphs import Graph, all_graphs
from .posets import Poset, enumerate_posets
from .theorems import (TheoremMainReport, TheoremSCReport, verify_theorem_main,
                       verify_theorem_sc)

POSET_SWEEP_MAX = 5
GRAPH_SWEEP_MAX = 6


@dataclass
class SweepSummary:
    kind: str
    n_max: int
    d_list: list[int]
    instances: int = 0
    agreements: int = 0
    per_n: dict[int, int] = field(default_factory=dict)
    violations: list[int] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"kind": self.kind, "n_max": self.n_max, "d": self.d_list,
                "instances": self.instances, "agreements": self.agreements,
                "per_n": {str(k): v for k, v in self.per_n.items()},
                "violations": self.violations, "seconds": round(self.seconds, 3)}


def poset_instances(n_max: int, n_min: int | None = None) -> Iterator[Poset]:
    for n in range(n_max if n_min is None else n_min, n_max + 1):
        yield from enumerate_posets(n)


def graph_instances(n_max: int, n_min: int | None = None) -> Iterator[Graph]:
    for n in range(n_max if n_min is None else n_min, n_max + 1):
        yield from all_graphs(n)


_worker_cache: dict = {}


def _poset_job(args):
    P, d_list = args
    return verify_theorem_main(P, d_list, cache=_worker_cache)


def _graph_job(G):
    return verify_theorem_sc(G, cache=_worker_cache)


def _run(jobs: int, fn, items):
    if jobs <= 1:
        for it in items:
            yield fn(it)
        return
    import multiprocessing

    with multiprocessing.Pool(jobs) as pool:
        # imap keeps instance order regardless of completion order
        yield from pool.imap(fn, items, chunksize=64)


def sweep_posets(n_max: int, d_list: Sequence[int] = (2, 3), jobs: int = 1,
                 on_report: Callable[[TheoremMainReport], None] | None = None,
                 n_min: int | None = None) -> SweepSummary:
    """Run the main theorem on every labeled poset with ``n_min <= n <= n_max``.

    ``n_min`` defaults to ``n_max``, so a plain sweep covers one size.
    """
    if n_max > POSET_SWEEP_MAX:
        raise SizeLimitExceeded(f"poset sweeps are limited to n <= {POSET_SWEEP_MAX}")
    d_list = list(d_list)
    summary = SweepSummary("posets", n_max, d_list)
    t0 = time.perf_counter()
    items = ((P, d_list) for P in poset_instances(n_max, n_min))
    for k, rep in enumerate(_run(jobs, _poset_job, items)):
        summary.instances += 1
        summary.per_n[rep.poset.n] = summary.per_n.get(rep.poset.n, 0) + 1
        if rep.consistent:
            summary.agreements += 1
        else:
            summary.violations.append(k)
        if on_report is not None:
            on_report(rep)
    summary.seconds = time.perf_counter() - t0
    return summary


def sweep_graphs(n_max: int, jobs: int = 1,
                 on_report: Callable[[TheoremSCReport], None] | None = None,
                 n_min: int | None = None) -> SweepSummary:
    """Run the strongly chordal theorem on every labeled graph with ``n_min <= n <= n_max``."""
    if n_max > GRAPH_SWEEP_MAX:
        raise SizeLimitExceeded(f"graph sweeps are limited to n <= {GRAPH_SWEEP_MAX}")
    summary = SweepSummary("graphs", n_max, [2])
    t0 = time.perf_counter()
    for k, rep in enumerate(_run(jobs, _graph_job, graph_instances(n_max, n_min))):
        summary.instances += 1
        summary.per_n[rep.graph.n] = summary.per_n.get(rep.graph.n, 0) + 1
        if rep.consistent:
            summary.agreements += 1
        else:
            summary.violations.append(k)
        if on_report is not None:
            on_report(rep)
    summary.seconds = time.perf_counter() - t0
    return summary

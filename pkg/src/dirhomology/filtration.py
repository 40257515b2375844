"""Weight-magnitude threshold filtrations and Betti curves.

At threshold t the subgraph keeps every vertex and every arc with
``|w| >= t``. The schedule is the sorted set of distinct magnitudes, so the
first row is always the full digraph.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from decimal import Decimal
from fractions import Fraction

from .dfc_homology import dfc_betti
from .exact_linalg import Q, FieldSpec
from .graph_core import Digraph, WeightedDigraph, from_edge_list, to_decimal
from .path_homology import path_betti

KINDS = ("path", "dfc")


@dataclass(frozen=True)
class ThresholdSchedule:
    values: tuple

    @property
    def T(self) -> int:
        return len(self.values)

    def normalized(self) -> list[Fraction]:
        return [Fraction(j, self.T) for j in range(1, self.T + 1)]


@dataclass(frozen=True)
class CurveRow:
    threshold: Decimal
    index: int  # 1-based
    total: int
    betti: tuple

    @property
    def normalized(self) -> Fraction:
        return Fraction(self.index, self.total)


@dataclass
class BettiCurve:
    rows: list
    kind: str
    max_degree: int
    reduced: bool
    field: FieldSpec = dc_field(default=Q)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["threshold", "normalized"] + [f"beta_{p}" for p in range(self.max_degree + 1)])
        for r in self.rows:
            w.writerow([format_decimal(r.threshold), repr(float(r.normalized))] + list(r.betti))
        return buf.getvalue()


def format_decimal(d: Decimal) -> str:
    """Plain (non-scientific) text for a decimal value."""
    s = format(d.normalize(), "f")
    return "0" if s in ("-0", "0") else s


def magnitude_thresholds(wg: WeightedDigraph) -> ThresholdSchedule:
    mags = {abs(to_decimal(w)).normalize() for w in wg.weight.values()}
    return ThresholdSchedule(tuple(sorted(mags)))


def subgraph_at_threshold(wg: WeightedDigraph, t) -> Digraph:
    t = to_decimal(t)
    if t < 0:
        raise ValueError(f"threshold must be nonnegative, got {t}")
    g = wg.digraph
    kept = [arc for arc in g.sorted_arcs() if abs(wg.weight[arc]) >= t]
    return from_edge_list(g.vertex_count, kept)


def _homology_job(args):
    g, kind, max_degree, reduced, field = args
    if kind == "path":
        s = path_betti(g, max_degree, reduced, field)
    else:
        s = dfc_betti(g, max_degree, field, reduced)
    return tuple(s.betti)


def betti_curve(
    wg: WeightedDigraph,
    kind: str = "path",
    max_degree: int = 2,
    reduced: bool | None = None,
    field: FieldSpec = Q,
    workers: int = 1,
    executor: Executor | None = None,
) -> BettiCurve:
    """Betti numbers of every thresholded subgraph, one row per distinct magnitude.

    ``reduced`` defaults to True for path homology and False for DFC.
    Jobs go to ``executor`` if given, else to a process pool of ``workers``
    processes when ``workers > 1``. Row order never depends on completion
    order.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    if max_degree < 0:
        raise ValueError(f"max_degree must be nonnegative, got {max_degree}")
    if reduced is None:
        reduced = kind == "path"
    sched = magnitude_thresholds(wg)
    jobs = [(subgraph_at_threshold(wg, t), kind, max_degree, reduced, field) for t in sched.values]
    if executor is not None:
        results = list(executor.map(_homology_job, jobs))
    elif workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_homology_job, jobs))
    else:
        results = [_homology_job(j) for j in jobs]
    rows = [
        CurveRow(t, j, sched.T, betti)
        for j, (t, betti) in enumerate(zip(sched.values, results), start=1)
    ]
    return BettiCurve(rows, kind, max_degree, reduced, field)

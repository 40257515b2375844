"""Exit criteria for the build, one test per criterion.

Each test records a PASS/FAIL line that is printed in the terminal summary
under "acceptance criteria".
"""

import time
from concurrent.futures import ThreadPoolExecutor
from decimal import Decimal
from math import prod

import pytest

from dirhomology.dfc_homology import (
    dfc_betti,
    directed_flag_complex,
    flag_boundary,
    graph_simplicial_betti,
)
from dirhomology.exact_linalg import FieldSpec, SparseMatrix, multiply, rank
from dirhomology.filtration import betti_curve, magnitude_thresholds, subgraph_at_threshold
from dirhomology.graph_core import MlpSpec, mlp_digraph, underlying_undirected
from dirhomology.oracle import oracle_dfc_betti, oracle_path_betti
from dirhomology.path_homology import (
    allowed_paths,
    boundary_blocks,
    build_path_complex,
    chain_boundary,
    explicit_cycle_basis,
    path_betti,
)

from conftest import CORPUS_SEEDS, grid_specs, random_digraph, random_weighted

Q, GF2, GF3 = FieldSpec(), FieldSpec(2), FieldSpec(3)
GRID = grid_specs()
PAPER_WIDTHS = (4, 10, 3)


def finish(record, number, description, failures):
    record(number, description, not failures)
    assert not failures, f"criterion {number} failed on {len(failures)} case(s): {failures[:10]}"


def test_grid_has_340_specs():
    assert len(GRID) == 340


def test_criterion_1_theorem1_grid(record_criterion):
    failures = []
    t0 = time.perf_counter()
    for widths in GRID:
        L = len(widths)
        got = path_betti(mlp_digraph(widths), L - 1, reduced=True, field=Q).betti
        want = [0] * (L - 1) + [prod(n - 1 for n in widths)]
        if got != want:
            failures.append((widths, got, want))
    elapsed = time.perf_counter() - t0
    if elapsed >= 60:
        failures.append(f"runtime {elapsed:.1f} s >= 60 s")
    finish(record_criterion, 1, f"Theorem 1 grid, 340 specs over Q ({elapsed:.1f} s)", failures)


def test_criterion_2_paper_instance(record_criterion):
    t0 = time.perf_counter()
    s = path_betti(mlp_digraph(PAPER_WIDTHS), 2, reduced=True, field=Q)
    elapsed = time.perf_counter() - t0
    failures = []
    if s.betti != [0, 0, 54]:
        failures.append(("betti", s.betti))
    if s.dim_omega[2] != 108:
        failures.append(("dim omega_2", s.dim_omega[2]))
    if s.rank_boundary[2] != 54:
        failures.append(("rank d_2", s.rank_boundary[2]))
    if elapsed >= 5:
        failures.append(f"runtime {elapsed:.2f} s >= 5 s")
    finish(record_criterion, 2, f"MLP(4,10,3) reduced path betti [0,0,54], dim omega_2 108, rank 54 ({elapsed:.2f} s)", failures)


def test_criterion_3_theorem2_grid(record_criterion):
    failures = []
    for widths in GRID:
        spec = MlpSpec(widths)
        g = mlp_digraph(spec)
        top = max(1, spec.n_layers - 1)
        closed_form = [1, 1 - spec.n_vertices + spec.n_arcs] + [0] * (top - 1)
        simplicial = graph_simplicial_betti(underlying_undirected(g)).vector(top)
        for field in (Q, GF2, GF3):
            got = dfc_betti(g, top, field).betti
            if got != closed_form or got != simplicial:
                failures.append((widths, field.name, got, closed_form, simplicial))
    finish(record_criterion, 3, "Theorem 2 grid: DFC = [1, 1-V+E, 0..] = simplicial over Q, GF(2), GF(3)", failures)


def test_criterion_4_explicit_basis(record_criterion):
    failures = []
    for widths in GRID:
        spec = MlpSpec(widths)
        g = mlp_digraph(spec)
        L = spec.n_layers
        chains = explicit_cycle_basis(spec)
        expected = prod(n - 1 for n in widths)
        if len(chains) != expected:
            failures.append((widths, "count", len(chains)))
            continue
        if not chains:
            continue
        basis = allowed_paths(g, L - 1)
        stacked = SparseMatrix.from_columns(len(basis), [c.vector(basis) for c in chains])
        if L >= 2:
            b = boundary_blocks(g, L - 1)
            if not multiply(b.allowed_block, stacked).is_zero():
                failures.append((widths, "boundary not zero"))
            if not multiply(b.non_allowed_block, stacked).is_zero():
                failures.append((widths, "non-allowed boundary coordinates"))
        else:
            # degree 0: the boundary is the coefficient sum
            if any(chain_boundary(c).terms for c in chains):
                failures.append((widths, "augmentation not zero"))
        if rank(stacked) != expected:
            failures.append((widths, "rank", rank(stacked)))
    finish(record_criterion, 4, "explicit cycle basis: count, zero boundary, full rank on all grid specs", failures)


def test_criterion_5_oracle_equivalence(record_criterion):
    failures = []
    for seed in CORPUS_SEEDS:
        g = random_digraph(seed, max_vertices=7, arc_prob=0.3)
        for reduced in (True, False):
            got, want = path_betti(g, 4, reduced).betti, oracle_path_betti(g, 4, reduced).betti
            if got != want:
                failures.append((seed, "path", reduced, got, want))
            got, want = dfc_betti(g, 4, reduced=reduced).betti, oracle_dfc_betti(g, 4, reduced).betti
            if got != want:
                failures.append((seed, "dfc", reduced, got, want))
    finish(record_criterion, 5, "engine = oracle on 100 seeded random digraphs, path and DFC, reduced and not", failures)


def _path_complex_products(g, top, field):
    """Nonzero consecutive boundary products of the path complex, if any."""
    bad = []
    cx = build_path_complex(g, top, field)
    for p in range(2, top + 1):
        image = cx.boundary_image(p)
        if not multiply(cx.blocks[p - 1].allowed_block, image).is_zero():
            bad.append(("path", p))
    return bad


def _flag_complex_products(g, top, field):
    bad = []
    fc = directed_flag_complex(g, top)
    for n in range(2, fc.max_dim + 1):
        if not multiply(flag_boundary(fc, n - 1, field), flag_boundary(fc, n, field)).is_zero():
            bad.append(("dfc", n))
    return bad


def test_criterion_6_chain_axiom(record_criterion):
    failures = []
    for widths in GRID + [PAPER_WIDTHS]:
        g = mlp_digraph(widths)
        top = len(widths)
        for field in (Q, GF2, GF3):
            for bad in _path_complex_products(g, top, field) + _flag_complex_products(g, top, field):
                failures.append((widths, field.name, bad))
    for seed in CORPUS_SEEDS:
        g = random_digraph(seed, max_vertices=7, arc_prob=0.3)
        for bad in _path_complex_products(g, 5, Q) + _flag_complex_products(g, 5, Q):
            failures.append((seed, bad))
    finish(record_criterion, 6, "consecutive boundary products vanish on every complex built above", failures)


def _paper_weighted(seed):
    return random_weighted(mlp_digraph(PAPER_WIDTHS), seed, distinct=True)


def test_criterion_7_filtration_endpoints(record_criterion):
    failures = []
    wg = _paper_weighted(2024)
    g = wg.digraph
    serial = betti_curve(wg, "path", 2, reduced=True, field=Q)
    first = list(serial.rows[0].betti)
    full = path_betti(g, 2, reduced=True).betti
    if first != full or first != [0, 0, 54]:
        failures.append(("first row", first, full))
    if len(serial.rows) != len(set(abs(w) for w in wg.weight.values())) or len(serial.rows) != 70:
        failures.append(("row count", len(serial.rows)))
    beyond = max(abs(w) for w in wg.weight.values()) + Decimal(1)
    bare = subgraph_at_threshold(wg, beyond)
    b = path_betti(bare, 2, reduced=True).betti
    if bare.n_arcs != 0 or b[0] != 16:
        failures.append(("beyond max", b))
    csv_serial = serial.to_csv()
    with ThreadPoolExecutor(max_workers=8) as ex:
        if betti_curve(wg, "path", 2, executor=ex).to_csv() != csv_serial:
            failures.append("thread pool CSV differs")
    if betti_curve(wg, "path", 2, workers=4).to_csv() != csv_serial:
        failures.append("process pool CSV differs")
    finish(record_criterion, 7, "filtration endpoints on weighted MLP(4,10,3), byte-identical CSV across worker counts", failures)


def test_criterion_8_filtration_properties(record_criterion):
    failures = []
    for seed in range(10):
        wg = _paper_weighted(seed)
        sched = magnitude_thresholds(wg)
        curve = betti_curve(wg, "path", 2)
        if len(curve.rows) != sched.T:
            failures.append((seed, "row count"))
        if list(curve.rows[0].betti) != [0, 0, 54]:
            failures.append((seed, "first row", curve.rows[0].betti))
        prev = None
        for t in sched.values:
            arcs = subgraph_at_threshold(wg, t).arcs
            if prev is not None and not arcs <= prev:
                failures.append((seed, "arc sets not nested at", str(t)))
            prev = arcs
        if any(b < 0 for r in curve.rows for b in r.betti):
            failures.append((seed, "negative betti"))
    finish(record_criterion, 8, "10 weight seeds: nested arc sets, nonnegative Betti curves, first row beta_2 = 54", failures)

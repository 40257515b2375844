"""Command-line front end.

    dirhom mlp gen 4 10 3 [-o FILE] [--unit-weights]
    dirhom hom {path,dfc} INPUT [--field q] [--reduced | --non-reduced] [--max-dim N] [--json FILE]
    dirhom verify 4 10 3 [--fields q,gf2,gf3]
    dirhom verify --random 20 --seed 7
    dirhom curve INPUT [--kind path] [--threads N] [-o FILE]

Exit codes: 0 ok, 1 verification mismatch, 2 input error, 3 resource guard.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from .dfc_homology import dfc_betti, graph_simplicial_betti, theorem2_prediction
from .exact_linalg import FieldError, FieldSpec
from .filtration import betti_curve
from .graph_core import (
    Digraph,
    GraphError,
    MlpSpec,
    WeightedDigraph,
    format_edge_list,
    from_edge_list,
    longest_path_length,
    mlp_digraph,
    read_edge_list,
    underlying_undirected,
)
from .oracle import oracle_dfc_betti, oracle_path_betti
from .path_homology import HomologySummary, ResourceGuardExceeded, path_betti, theorem1_prediction

SCHEMA_VERSION = 1
EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3
DEFAULT_PATH_LIMIT = 2_000_000


class InputError(Exception):
    pass


class GuardError(Exception):
    pass


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"layer widths must be positive, got {v}")
    return v


def _field(text):
    try:
        return FieldSpec.parse(text)
    except FieldError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _fields(text):
    return [_field(t) for t in text.split(",") if t.strip()]


def _default_threads():
    try:
        return max(1, int(os.environ.get("HOMOLOGY_THREADS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dirhom", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    mlp = sub.add_parser("mlp", help="MLP architecture digraphs")
    mlp_sub = mlp.add_subparsers(dest="mlp_command", required=True)
    gen = mlp_sub.add_parser("gen", help="write the edge list of an MLP digraph")
    gen.add_argument("widths", nargs="+", type=_positive_int)
    gen.add_argument("-o", "--output", help="output file (default stdout)")
    gen.add_argument("--unit-weights", action="store_true", help="append weight 1 to every arc")

    hom = sub.add_parser("hom", help="homology of a digraph read from an edge list")
    hom.add_argument("kind", choices=("path", "dfc"))
    hom.add_argument("input")
    hom.add_argument("--field", type=_field, default=FieldSpec())
    red = hom.add_mutually_exclusive_group()
    red.add_argument("--reduced", dest="reduced", action="store_true", default=None)
    red.add_argument("--non-reduced", dest="reduced", action="store_false")
    hom.add_argument("--max-dim", type=int, default=None,
                     help="top degree; defaults to the longest path for acyclic input")
    hom.add_argument("--max-paths", type=int, default=DEFAULT_PATH_LIMIT,
                     help="abort if any degree has more chains than this")
    hom.add_argument("--json", dest="json_out", help="write the report document here ('-' for stdout)")

    ver = sub.add_parser("verify", help="check engine output against closed forms or the oracle")
    ver.add_argument("widths", nargs="*", type=_positive_int)
    ver.add_argument("--fields", type=_fields, default=[FieldSpec()])
    ver.add_argument("--random", type=int, default=0, metavar="N",
                     help="instead of an MLP, compare engine and oracle on N random digraphs")
    ver.add_argument("--seed", type=int, default=None)
    ver.add_argument("--vertices", type=int, default=7)
    ver.add_argument("--arc-prob", type=float, default=0.3)
    ver.add_argument("--max-dim", type=int, default=4)

    cur = sub.add_parser("curve", help="Betti curve over weight-magnitude thresholds (CSV)")
    cur.add_argument("input")
    cur.add_argument("--kind", choices=("path", "dfc"), default="path")
    cur.add_argument("--field", type=_field, default=FieldSpec())
    red = cur.add_mutually_exclusive_group()
    red.add_argument("--reduced", dest="reduced", action="store_true", default=None)
    red.add_argument("--non-reduced", dest="reduced", action="store_false")
    cur.add_argument("--max-dim", type=int, default=None)
    cur.add_argument("--threads", type=int, default=_default_threads())
    cur.add_argument("-o", "--output", help="CSV file (default stdout)")
    return ap


# -- helpers ---------------------------------------------------------------------


def _load(path):
    try:
        return read_edge_list(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except GraphError as exc:
        raise InputError(f"{path}: {exc}") from None


def _resolve_max_dim(g: Digraph, requested):
    if requested is not None:
        if requested < 0:
            raise InputError("--max-dim must be nonnegative")
        return requested
    lpl = longest_path_length(g)
    if lpl is None:
        raise GuardError("input has a directed cycle; pass --max-dim explicitly")
    return lpl


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def make_report(summary: HomologySummary, source: str, wall_time: float) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "hom",
        "input": source,
        "wall_time_s": round(wall_time, 6),
        "summary": summary.to_dict(),
    }


def summary_from_report(doc: dict) -> HomologySummary:
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {doc.get('schema_version')!r}")
    return HomologySummary.from_dict(doc["summary"])


def format_summary(s: HomologySummary) -> str:
    label = "paths" if s.kind == "path" else "simplices"
    lines = [
        f"{s.kind} homology over {s.field.name} ({'reduced' if s.reduced else 'non-reduced'})",
        f"{'p':>3} {label:>10} {'omega':>8} {'rank d_p':>9} {'beta_p':>7}",
    ]
    for p in range(s.max_degree + 1):
        lines.append(
            f"{p:>3} {s.dim_allowed[p]:>10} {s.dim_omega[p]:>8} {s.rank_boundary[p]:>9} {s.betti[p]:>7}"
        )
    lines.append(f"betti = {s.betti}")
    if s.empty_graph:
        lines.append("note: empty digraph")
    return "\n".join(lines) + "\n"


# -- commands --------------------------------------------------------------------


def cmd_mlp_gen(args) -> int:
    spec = MlpSpec(tuple(args.widths))
    g = mlp_digraph(spec)
    weights = {a: 1 for a in g.arcs} if args.unit_weights else None
    _write(format_edge_list(g, weights), args.output)
    return EXIT_OK


def cmd_hom(args) -> int:
    g = _load(args.input)
    if isinstance(g, WeightedDigraph):
        g = g.digraph
    max_dim = _resolve_max_dim(g, args.max_dim)
    reduced = args.reduced if args.reduced is not None else args.kind == "path"
    t0 = time.perf_counter()
    try:
        if args.kind == "path":
            s = path_betti(g, max_dim, reduced, args.field, limit=args.max_paths)
        else:
            s = dfc_betti(g, max_dim, args.field, reduced, limit=args.max_paths)
    except ResourceGuardExceeded as exc:
        raise GuardError(str(exc)) from None
    elapsed = time.perf_counter() - t0
    report = make_report(s, args.input, elapsed)
    if args.json_out == "-":
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        sys.stdout.write(format_summary(s))
        sys.stdout.write(f"wall time: {elapsed:.3f} s\n")
        if args.json_out:
            _write(json.dumps(report, indent=2) + "\n", args.json_out)
    return EXIT_OK


def _verify_mlp(widths, fields) -> int:
    spec = MlpSpec(tuple(widths))
    g = mlp_digraph(spec)
    top = spec.n_layers - 1
    want_path = theorem1_prediction(spec, top)
    pred2 = theorem2_prediction(spec)
    want_dfc = pred2.vector(top)
    simp = graph_simplicial_betti(underlying_undirected(g)).vector(top)
    ok = True
    print(f"MLP widths {list(spec.widths)}: {g.n_vertices} vertices, {g.n_arcs} arcs")
    for f in fields:
        got_path = path_betti(g, top, True, f).betti
        got_dfc = dfc_betti(g, top, f, False).betti
        for name, got, want in (
            ("path (reduced)", got_path, want_path),
            ("dfc", got_dfc, want_dfc),
            ("dfc vs simplicial", got_dfc, simp),
        ):
            status = "PASS" if got == want else "FAIL"
            print(f"  [{status}] {f.name:>6} {name:<18} engine {got}  expected {want}")
            if got != want:
                ok = False
                bad = [p for p, (a, b) in enumerate(zip(got, want)) if a != b]
                print(f"         mismatch in degree(s) {bad} over {f.name}")
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_MISMATCH


def random_digraph(rng: random.Random, max_vertices: int, arc_prob: float) -> Digraph:
    n = rng.randint(1, max_vertices)
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < arc_prob]
    return from_edge_list(n, arcs)


def _verify_random(count, seed, max_vertices, arc_prob, max_dim) -> int:
    if seed is None:
        seed = random.SystemRandom().randrange(2**31)
    print(f"random corpus: {count} digraphs, seed {seed}, <= {max_vertices} vertices, arc prob {arc_prob}")
    rng = random.Random(seed)
    ok = True
    for k in range(count):
        g = random_digraph(rng, max_vertices, arc_prob)
        for reduced in (True, False):
            pairs = (
                ("path", path_betti(g, max_dim, reduced).betti, oracle_path_betti(g, max_dim, reduced).betti),
                ("dfc", dfc_betti(g, max_dim, reduced=reduced).betti, oracle_dfc_betti(g, max_dim, reduced).betti),
            )
            for name, got, want in pairs:
                if got != want:
                    ok = False
                    print(f"  [FAIL] #{k} {name} reduced={reduced} arcs={g.sorted_arcs()} engine {got} oracle {want}")
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_verify(args) -> int:
    if args.random:
        return _verify_random(args.random, args.seed, args.vertices, args.arc_prob, args.max_dim)
    if not args.widths:
        raise InputError("verify needs layer widths or --random N")
    return _verify_mlp(args.widths, args.fields)


def cmd_curve(args) -> int:
    wg = _load(args.input)
    if not isinstance(wg, WeightedDigraph):
        raise InputError(f"{args.input}: curve needs a weight on every arc")
    max_dim = _resolve_max_dim(wg.digraph, args.max_dim)
    if args.threads < 1:
        raise InputError("--threads must be at least 1")
    curve = betti_curve(wg, args.kind, max_dim, args.reduced, args.field, workers=args.threads)
    _write(curve.to_csv(), args.output)
    return EXIT_OK


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    handler = {
        "mlp": cmd_mlp_gen,
        "hom": cmd_hom,
        "verify": cmd_verify,
        "curve": cmd_curve,
    }[args.command]
    try:
        return handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GuardError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())

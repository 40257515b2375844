"""Directed flag complexes, their homology, and graph simplicial homology."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .exact_linalg import Q, FieldSpec, SparseMatrix, rank
from .graph_core import (
    Digraph,
    MlpSpec,
    UndirectedGraph,
    connected_components,
    longest_path_length,
    underlying_undirected,
)
from .path_homology import BadDegree, HomologySummary, ResourceGuardExceeded, _betti_from_ranks


class ReciprocalArcsWarning(UserWarning):
    """DFC and undirected simplicial homology need not agree on this input."""


@dataclass
class FlagComplex:
    graph: Digraph
    simplices: list  # simplices[n] = sorted list of vertex tuples of dimension n

    @property
    def max_dim(self) -> int:
        return len(self.simplices) - 1

    def count(self, n: int) -> int:
        return len(self.simplices[n]) if 0 <= n < len(self.simplices) else 0


@dataclass(frozen=True)
class SimplicialBetti:
    """Betti numbers of a graph viewed as a 1-dimensional simplicial complex.

    Degrees two and above are always zero.
    """

    beta0: int
    beta1: int

    def vector(self, max_dim: int = 1, reduced: bool = False) -> list[int]:
        b0 = self.beta0 - 1 if (reduced and self.beta0 > 0) else self.beta0
        out = [b0, self.beta1] + [0] * max(0, max_dim - 1)
        return out[: max_dim + 1]


def directed_flag_complex(g: Digraph, max_dim: int, limit: int | None = None) -> FlagComplex:
    """Ordered cliques ``(x_0, ..., x_n)`` with an arc ``x_i -> x_j`` for every i < j.

    Each simplex is extended by the common out-neighbours of all its
    vertices, so the lists come out in lexicographic order.
    """
    if max_dim < 0:
        raise BadDegree(f"max_dim must be nonnegative, got {max_dim}")
    out_sets = [frozenset(a) for a in g.out_adjacency]
    level = [((v,), out_sets[v]) for v in range(g.vertex_count)]
    simplices = [[s for s, _ in level]]
    for _ in range(max_dim):
        nxt = []
        for s, common in level:
            for z in sorted(common):
                nxt.append((s + (z,), common & out_sets[z]))
        if limit is not None and len(nxt) > limit:
            raise ResourceGuardExceeded(
                f"{len(nxt)} directed {len(simplices)}-simplices exceed the limit of {limit}"
            )
        level = nxt
        simplices.append([s for s, _ in level])
        if not level:
            break
    return FlagComplex(g, simplices)


def flag_boundary(fc: FlagComplex, n: int, field: FieldSpec = Q) -> SparseMatrix:
    """Boundary matrix from n-simplices (columns) to (n-1)-simplices (rows)."""
    top = fc.simplices[n] if n < len(fc.simplices) else []
    below = fc.simplices[n - 1] if 0 <= n - 1 < len(fc.simplices) else []
    index = {s: i for i, s in enumerate(below)}
    one, minus = field.one(), field.neg(field.one())
    entries = {}
    for j, s in enumerate(top):
        for i in range(len(s)):
            entries[(index[s[:i] + s[i + 1 :]], j)] = one if i % 2 == 0 else minus
    return SparseMatrix(len(below), len(top), entries, field)


def dfc_betti(
    g: Digraph,
    max_dim: int | None = None,
    field: FieldSpec = Q,
    reduced: bool = False,
    limit: int | None = None,
) -> HomologySummary:
    """Homology of the directed flag complex in dimensions ``0..max_dim``.

    ``max_dim`` may be omitted for acyclic inputs, where it defaults to the
    longest path length.
    """
    lpl = longest_path_length(g)
    if max_dim is None:
        if lpl is None:
            raise BadDegree("max_dim is required for digraphs with directed cycles")
        max_dim = lpl
    if max_dim < 0:
        raise BadDegree(f"max_dim must be nonnegative, got {max_dim}")
    fc = directed_flag_complex(g, max_dim + 1, limit)
    dims = [fc.count(n) for n in range(max_dim + 1)]
    ranks = [0] * (max_dim + 2)
    for n in range(1, max_dim + 2):
        if fc.count(n):
            ranks[n] = rank(flag_boundary(fc, n, field))
    empty = g.vertex_count == 0
    if reduced and not empty:
        ranks[0] = 1
    return HomologySummary(
        kind="dfc",
        max_degree=max_dim,
        dim_allowed=list(dims),
        dim_omega=list(dims),
        rank_boundary=ranks,
        betti=_betti_from_ranks(dims, ranks),
        reduced=reduced,
        field=field,
        empty_graph=empty,
    )


def graph_simplicial_betti(g: UndirectedGraph) -> SimplicialBetti:
    """Betti numbers of a graph from its Euler characteristic."""
    components, _ = connected_components(g)
    return SimplicialBetti(components, g.n_edges - g.vertex_count + components)


def graph_simplicial_betti_by_rank(g: UndirectedGraph, field: FieldSpec = Q) -> SimplicialBetti:
    """Same numbers as :func:`graph_simplicial_betti`, via the incidence matrix rank."""
    one, minus = field.one(), field.neg(field.one())
    entries = {}
    for j, (u, v) in enumerate(sorted(g.edges)):
        entries[(u, j)] = minus
        entries[(v, j)] = one
    r = rank(SparseMatrix(g.vertex_count, g.n_edges, entries, field))
    return SimplicialBetti(g.vertex_count - r, g.n_edges - r)


def theorem2_prediction(spec: MlpSpec) -> SimplicialBetti:
    """DFC Betti numbers of an MLP digraph from its widths alone."""
    if not isinstance(spec, MlpSpec):
        spec = MlpSpec(tuple(spec))
    return SimplicialBetti(1, 1 - spec.n_vertices + spec.n_arcs)


def compare_dfc_with_simplicial(
    g: Digraph, field: FieldSpec = Q, reduced: bool = False
) -> tuple[list[int], list[int]]:
    """DFC Betti vector next to the undirected simplicial one, in dims 0..max(1, top).

    Warns with :class:`ReciprocalArcsWarning` when g has a pair of opposite
    arcs, since the two need not agree then.
    """
    if g.has_reciprocal_arcs():
        warnings.warn(
            "digraph has reciprocal arcs; DFC homology may differ from the "
            "simplicial homology of the underlying graph",
            ReciprocalArcsWarning,
            stacklevel=2,
        )
    lpl = longest_path_length(g)
    top = max(1, lpl if lpl is not None else g.vertex_count - 1)
    dfc = dfc_betti(g, top, field, reduced).betti
    simp = graph_simplicial_betti(underlying_undirected(g)).vector(top, reduced)
    return dfc, simp

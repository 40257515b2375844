"""Digraphs, undirected graphs, MLP architecture digraphs and edge-list I/O.

Vertices are dense integer ids ``0..n-1``. Every graph value is immutable
after construction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from typing import Iterable, Mapping, Sequence


class GraphError(ValueError):
    """Base class for malformed graph input."""


class SelfLoopRejected(GraphError):
    pass


class BadVertex(GraphError):
    pass


class DuplicateArc(GraphError):
    pass


class BadWeights(GraphError):
    pass


class BadMlpSpec(GraphError):
    pass


class EdgeListParseError(GraphError):
    """Raised while reading the edge-list text format; carries the 1-based line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Digraph:
    vertex_count: int
    arcs: frozenset
    out_adjacency: tuple = field(repr=False)

    @property
    def n_vertices(self) -> int:
        return self.vertex_count

    @property
    def n_arcs(self) -> int:
        return len(self.arcs)

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def successors(self, v: int) -> tuple[int, ...]:
        return self.out_adjacency[v]

    def has_reciprocal_arcs(self) -> bool:
        return any((v, u) in self.arcs for (u, v) in self.arcs)


@dataclass(frozen=True)
class UndirectedGraph:
    vertex_count: int
    edges: frozenset  # of (min, max) tuples

    @property
    def n_edges(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class MlpSpec:
    widths: tuple[int, ...]

    def __post_init__(self):
        widths = tuple(self.widths)
        if len(widths) < 1:
            raise BadMlpSpec("an MLP needs at least one layer")
        for w in widths:
            if isinstance(w, bool) or not isinstance(w, int) or w < 1:
                raise BadMlpSpec(f"layer widths must be positive integers, got {w!r}")
        object.__setattr__(self, "widths", widths)

    @property
    def n_layers(self) -> int:
        return len(self.widths)

    def layer_ranges(self) -> list[range]:
        out, start = [], 0
        for w in self.widths:
            out.append(range(start, start + w))
            start += w
        return out

    @property
    def n_vertices(self) -> int:
        return sum(self.widths)

    @property
    def n_arcs(self) -> int:
        w = self.widths
        return sum(w[i] * w[i + 1] for i in range(len(w) - 1))


@dataclass(frozen=True)
class WeightedDigraph:
    digraph: Digraph
    weight: Mapping  # (u, v) -> Decimal

    def __post_init__(self):
        if set(self.weight) != set(self.digraph.arcs):
            raise BadWeights("weights must be given for exactly the arcs of the digraph")
        for arc, w in self.weight.items():
            if not isinstance(w, Decimal) or not w.is_finite():
                raise BadWeights(f"weight on arc {arc} is not a finite decimal: {w!r}")


def to_decimal(x) -> Decimal:
    """Exact decimal for a weight given as str, int, float or Decimal.

    Floats go through ``repr`` so ``0.1`` becomes ``Decimal('0.1')``.
    Scientific notation is normalized by the Decimal value itself.
    """
    if isinstance(x, Decimal):
        d = x
    elif isinstance(x, bool):
        raise BadWeights(f"not a weight: {x!r}")
    elif isinstance(x, float):
        d = Decimal(repr(x))
    else:
        try:
            d = Decimal(str(x).strip())
        except InvalidOperation:
            raise BadWeights(f"not a decimal number: {x!r}") from None
    if not d.is_finite():
        raise BadWeights(f"weight must be finite, got {x!r}")
    return d


def _build(vertex_count: int, arcs: set) -> Digraph:
    adj: list[list[int]] = [[] for _ in range(vertex_count)]
    for u, v in arcs:
        adj[u].append(v)
    return Digraph(vertex_count, frozenset(arcs), tuple(tuple(sorted(a)) for a in adj))


def from_edge_list(vertex_count: int, edges: Iterable[Sequence[int]]) -> Digraph:
    if vertex_count < 0:
        raise BadVertex(f"negative vertex count {vertex_count}")
    arcs: set = set()
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise BadVertex(f"arc ({u}, {v}) has an endpoint outside [0, {vertex_count})")
        if u == v:
            raise SelfLoopRejected(f"self-loop at vertex {u}")
        if (u, v) in arcs:
            raise DuplicateArc(f"arc ({u}, {v}) listed twice")
        arcs.add((u, v))
    return _build(vertex_count, arcs)


def weighted_from_edge_list(vertex_count: int, edges: Iterable[Sequence]) -> WeightedDigraph:
    """Build a weighted digraph from ``(u, v, w)`` triples."""
    edges = list(edges)
    g = from_edge_list(vertex_count, [(e[0], e[1]) for e in edges])
    weights = {(int(e[0]), int(e[1])): to_decimal(e[2]) for e in edges}
    return WeightedDigraph(g, weights)


def mlp_digraph(spec: MlpSpec | Sequence[int]) -> Digraph:
    if not isinstance(spec, MlpSpec):
        spec = MlpSpec(tuple(spec))
    layers = spec.layer_ranges()
    arcs = {(u, v) for a, b in zip(layers, layers[1:]) for u in a for v in b}
    return _build(spec.n_vertices, arcs)


def underlying_undirected(g: Digraph) -> UndirectedGraph:
    return UndirectedGraph(g.vertex_count, frozenset((min(u, v), max(u, v)) for u, v in g.arcs))


def topological_order(g: Digraph) -> list[int] | None:
    """Kahn's algorithm; ``None`` when the digraph has a directed cycle."""
    indeg = [0] * g.vertex_count
    for _, v in g.arcs:
        indeg[v] += 1
    queue = deque(v for v in range(g.vertex_count) if indeg[v] == 0)
    order = []
    while queue:
        u = queue.popleft()
        order.append(u)
        for v in g.out_adjacency[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    return order if len(order) == g.vertex_count else None


def is_acyclic(g: Digraph) -> bool:
    return topological_order(g) is not None


def longest_path_length(g: Digraph) -> int | None:
    """Maximum number of arcs on a directed path, or ``None`` if g has a cycle."""
    order = topological_order(g)
    if order is None:
        return None
    longest = [0] * g.vertex_count
    for u in reversed(order):
        for v in g.out_adjacency[u]:
            longest[u] = max(longest[u], longest[v] + 1)
    return max(longest, default=0)


def connected_components(g: UndirectedGraph) -> tuple[int, list[int]]:
    """Component count and per-vertex labels.

    A label is the smallest vertex id in that vertex's component.
    """
    nbrs: list[list[int]] = [[] for _ in range(g.vertex_count)]
    for u, v in g.edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    labels = [-1] * g.vertex_count
    count = 0
    for s in range(g.vertex_count):
        if labels[s] != -1:
            continue
        count += 1
        labels[s] = s
        stack = [s]
        while stack:
            u = stack.pop()
            for v in nbrs[u]:
                if labels[v] == -1:
                    labels[v] = s
                    stack.append(v)
    return count, labels


# -- edge-list text format ---------------------------------------------------


def parse_edge_list(text: str):
    """Parse ``V E`` header plus ``src dst [weight]`` lines.

    Returns a :class:`Digraph`, or a :class:`WeightedDigraph` when every
    arc line carries a weight. Weights are all-or-none.
    """
    lines = [
        (i, ln.strip())
        for i, ln in enumerate(text.splitlines(), start=1)
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines:
        raise EdgeListParseError("empty input: expected a 'V E' header", line=1)
    hline, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise EdgeListParseError("header must be 'V E'", line=hline)
    try:
        n_vertices, n_edges = int(parts[0]), int(parts[1])
    except ValueError:
        raise EdgeListParseError("header must hold two integers", line=hline) from None
    if n_vertices < 0 or n_edges < 0:
        raise EdgeListParseError("header counts must be nonnegative", line=hline)
    body = lines[1:]
    if len(body) != n_edges:
        where = body[n_edges][0] if len(body) > n_edges else (body[-1][0] if body else hline)
        raise EdgeListParseError(
            f"header announces {n_edges} arcs but {len(body)} arc lines follow", line=where
        )

    arcs, weights = [], []
    seen: set = set()
    weighted = None
    for lineno, ln in body:
        tok = ln.split()
        if len(tok) not in (2, 3):
            raise EdgeListParseError("arc line must be 'src dst [weight]'", line=lineno)
        has_w = len(tok) == 3
        if weighted is None:
            weighted = has_w
        elif weighted != has_w:
            raise EdgeListParseError("weights must be given on all arcs or on none", line=lineno)
        try:
            u, v = int(tok[0]), int(tok[1])
        except ValueError:
            raise EdgeListParseError("arc endpoints must be integers", line=lineno) from None
        if has_w:
            try:
                weights.append(to_decimal(tok[2]))
            except BadWeights as exc:
                raise EdgeListParseError(str(exc), line=lineno) from None
        try:
            from_edge_list(n_vertices, [(u, v)])
        except GraphError as exc:
            raise EdgeListParseError(str(exc), line=lineno) from None
        if (u, v) in seen:
            raise EdgeListParseError(f"duplicate arc ({u}, {v})", line=lineno)
        seen.add((u, v))
        arcs.append((u, v))

    g = from_edge_list(n_vertices, arcs)
    if weighted:
        return WeightedDigraph(g, dict(zip(arcs, weights)))
    return g


def read_edge_list(path):
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def format_edge_list(g, weights: Mapping | None = None) -> str:
    """Canonical text form: header then arcs in sorted order."""
    if isinstance(g, WeightedDigraph):
        weights, g = g.weight, g.digraph
    out = [f"{g.vertex_count} {g.n_arcs}"]
    for u, v in g.sorted_arcs():
        if weights is None:
            out.append(f"{u} {v}")
        else:
            out.append(f"{u} {v} {weights[(u, v)]}")
    return "\n".join(out) + "\n"

"""Path homology of digraphs.

Chains live in the span of allowed elementary paths. The invariant subspace
in degree p is the kernel of the "non-allowed part" of the boundary, and
Betti numbers follow from ranks of the boundary restricted to those
subspaces. Paths with a repeated consecutive vertex are identified with 0
(regular path homology).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Iterator

from .exact_linalg import Q, FieldSpec, SparseMatrix, multiply, null_space, rank
from .graph_core import Digraph, MlpSpec, longest_path_length, mlp_digraph

Path = tuple  # tuple[int, ...]


class BadDegree(ValueError):
    pass


class ResourceGuardExceeded(RuntimeError):
    """An enumeration would exceed the configured size limit."""


@dataclass
class PathChain:
    """Formal linear combination of elementary paths of one degree."""

    terms: dict
    degree: int
    field: FieldSpec = Q

    def __post_init__(self):
        clean = {}
        for path, c in self.terms.items():
            path = tuple(path)
            if len(path) != self.degree + 1:
                raise BadDegree(f"path {path} does not have degree {self.degree}")
            c = self.field.coerce(c)
            if c:
                clean[path] = c
        self.terms = dict(sorted(clean.items()))

    def __len__(self):
        return len(self.terms)

    def paths(self) -> list[Path]:
        return list(self.terms)

    def vector(self, basis: list[Path]) -> dict:
        """Coordinates in ``basis``; raises KeyError for a path outside it."""
        index = {q: i for i, q in enumerate(basis)}
        return {index[q]: c for q, c in self.terms.items()}


@dataclass
class BoundaryBlocks:
    """Boundary of every allowed p-path split by the kind of face.

    Column j of both blocks is the boundary of ``columns[j]``. Rows of
    ``allowed_block`` follow the allowed (p-1)-paths; rows of
    ``non_allowed_block`` follow ``non_allowed_rows``, the regular but
    non-allowed faces that actually occur.
    """

    degree: int
    columns: list
    allowed_rows: list
    non_allowed_rows: list
    allowed_block: SparseMatrix
    non_allowed_block: SparseMatrix


@dataclass
class OmegaBasis:
    degree: int
    allowed_paths: list
    basis: SparseMatrix

    @property
    def dim(self) -> int:
        return self.basis.cols


@dataclass
class HomologySummary:
    """Per-degree dimensions, boundary ranks and Betti numbers.

    ``rank_boundary[p]`` is the rank of the boundary leaving degree p and
    has one more entry than ``betti`` (the map out of degree
    ``max_degree + 1``). In reduced mode ``rank_boundary[0]`` is the rank of
    the augmentation.
    """

    kind: str
    max_degree: int
    dim_allowed: list
    dim_omega: list
    rank_boundary: list
    betti: list
    reduced: bool
    field: FieldSpec = dc_field(default=Q)
    empty_graph: bool = False

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * b for p, b in enumerate(self.betti))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "max_degree": self.max_degree,
            "field": self.field.name,
            "reduced": self.reduced,
            "empty_graph": self.empty_graph,
            "degrees": [
                {
                    "degree": p,
                    "dim_allowed": self.dim_allowed[p],
                    "dim_omega": self.dim_omega[p],
                    "rank_boundary": self.rank_boundary[p],
                    "betti": self.betti[p],
                }
                for p in range(self.max_degree + 1)
            ],
            "rank_boundary_above": self.rank_boundary[self.max_degree + 1],
            "betti": list(self.betti),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "HomologySummary":
        degrees = sorted(d["degrees"], key=lambda r: r["degree"])
        return cls(
            kind=d["kind"],
            max_degree=d["max_degree"],
            dim_allowed=[r["dim_allowed"] for r in degrees],
            dim_omega=[r["dim_omega"] for r in degrees],
            rank_boundary=[r["rank_boundary"] for r in degrees] + [d["rank_boundary_above"]],
            betti=[r["betti"] for r in degrees],
            reduced=d["reduced"],
            field=FieldSpec.parse(d["field"]),
            empty_graph=d.get("empty_graph", False),
        )


def _betti_from_ranks(dims, ranks) -> list[int]:
    return [dims[p] - ranks[p] - ranks[p + 1] for p in range(len(dims))]


# -- allowed paths and boundaries ------------------------------------------------


def iter_allowed_paths(g: Digraph, max_degree: int, limit: int | None = None) -> Iterator[list]:
    """Yield the sorted lists of allowed paths of degree 0, 1, ..., max_degree.

    Stops early once a degree has no paths. Extending a sorted list by
    sorted successors keeps lexicographic order.
    """
    level = [(v,) for v in range(g.vertex_count)]
    for p in range(max_degree + 1):
        if limit is not None and len(level) > limit:
            raise ResourceGuardExceeded(
                f"{len(level)} allowed {p}-paths exceed the limit of {limit}"
            )
        yield level
        if not level:
            return
        if p < max_degree:
            adj = g.out_adjacency
            level = [path + (v,) for path in level for v in adj[path[-1]]]


def allowed_paths(g: Digraph, p: int) -> list[Path]:
    if p < 0:
        raise BadDegree(f"degree must be nonnegative, got {p}")
    out: list = []
    for out in iter_allowed_paths(g, p):
        pass
    return out if out and len(out[0]) == p + 1 else []


def _faces(path: Path, field: FieldSpec) -> Iterator[tuple[Path, object]]:
    one, minus = field.one(), field.neg(field.one())
    n = len(path)
    for i in range(n):
        if 0 < i < n - 1 and path[i - 1] == path[i + 1]:
            continue  # irregular face, identified with 0
        yield path[:i] + path[i + 1 :], (one if i % 2 == 0 else minus)


def _blocks_from_lists(g: Digraph, p: int, top: list, below: list, field: FieldSpec) -> BoundaryBlocks:
    below_index = {q: i for i, q in enumerate(below)}
    allowed: dict = {}
    foreign: dict = {}
    for j, path in enumerate(top):
        for face, s in _faces(path, field):
            i = below_index.get(face)
            if i is not None:
                allowed[(i, j)] = allowed.get((i, j), 0) + s
            else:
                foreign[(face, j)] = foreign.get((face, j), 0) + s
    non_allowed_rows = sorted({face for face, _ in foreign})
    na_index = {q: i for i, q in enumerate(non_allowed_rows)}
    return BoundaryBlocks(
        degree=p,
        columns=top,
        allowed_rows=below,
        non_allowed_rows=non_allowed_rows,
        allowed_block=SparseMatrix(len(below), len(top), allowed, field),
        non_allowed_block=SparseMatrix(
            len(non_allowed_rows), len(top),
            {(na_index[f], j): v for (f, j), v in foreign.items()}, field,
        ),
    )


def boundary_blocks(g: Digraph, p: int, field: FieldSpec = Q) -> BoundaryBlocks:
    if p < 1:
        raise BadDegree(f"boundary blocks need p >= 1, got {p}")
    return _blocks_from_lists(g, p, allowed_paths(g, p), allowed_paths(g, p - 1), field)


def _omega_from_blocks(p: int, top: list, blocks: BoundaryBlocks | None, field: FieldSpec) -> OmegaBasis:
    if blocks is None or p <= 1:
        # boundaries of allowed 0- and 1-paths are always allowed
        return OmegaBasis(p, top, SparseMatrix.identity(len(top), field))
    return OmegaBasis(p, top, null_space(blocks.non_allowed_block))


def omega_basis(g: Digraph, p: int, field: FieldSpec = Q) -> OmegaBasis:
    if p < 0:
        raise BadDegree(f"degree must be nonnegative, got {p}")
    top = allowed_paths(g, p)
    blocks = _blocks_from_lists(g, p, top, allowed_paths(g, p - 1), field) if p >= 2 else None
    return _omega_from_blocks(p, top, blocks, field)


@dataclass
class PathComplex:
    """Allowed paths, boundary blocks and invariant bases for degrees 0..top."""

    graph: Digraph
    field: FieldSpec
    paths: list
    blocks: list  # blocks[p] for p >= 1, None at index 0
    omega: list

    def boundary_image(self, p: int) -> SparseMatrix:
        """Boundary of the degree-p invariant basis, in allowed (p-1)-coordinates."""
        return multiply(self.blocks[p].allowed_block, self.omega[p].basis)


def build_path_complex(g: Digraph, top: int, field: FieldSpec = Q, limit: int | None = None) -> PathComplex:
    paths = list(iter_allowed_paths(g, top, limit))
    while len(paths) < top + 1:
        paths.append([])
    blocks: list = [None]
    omega = [_omega_from_blocks(0, paths[0], None, field)]
    for p in range(1, top + 1):
        b = _blocks_from_lists(g, p, paths[p], paths[p - 1], field)
        blocks.append(b)
        omega.append(_omega_from_blocks(p, paths[p], b, field))
    return PathComplex(g, field, paths, blocks, omega)


def path_betti(
    g: Digraph,
    max_degree: int,
    reduced: bool = True,
    field: FieldSpec = Q,
    limit: int | None = None,
) -> HomologySummary:
    """Path homology Betti numbers in degrees ``0..max_degree``.

    For acyclic inputs nothing is enumerated beyond the longest path, since
    every higher chain group is zero. ``limit`` caps the number of allowed
    paths in any single degree (:class:`ResourceGuardExceeded`).
    """
    if max_degree < 0:
        raise BadDegree(f"max_degree must be nonnegative, got {max_degree}")
    top = max_degree + 1
    lpl = longest_path_length(g)
    if lpl is not None:
        top = min(top, lpl + 1)

    cx = build_path_complex(g, top, field, limit)
    n = max_degree + 2
    dim_allowed = [0] * n
    dim_omega = [0] * n
    ranks = [0] * (n + 1)
    for p in range(top + 1):
        dim_allowed[p] = len(cx.paths[p])
        dim_omega[p] = cx.omega[p].dim
        if p >= 1 and dim_omega[p]:
            ranks[p] = rank(cx.boundary_image(p))
    empty = g.vertex_count == 0
    if reduced and not empty:
        ranks[0] = 1
    betti = _betti_from_ranks(dim_omega[: max_degree + 1], ranks)
    return HomologySummary(
        kind="path",
        max_degree=max_degree,
        dim_allowed=dim_allowed[: max_degree + 1],
        dim_omega=dim_omega[: max_degree + 1],
        rank_boundary=ranks[: max_degree + 2],
        betti=betti,
        reduced=reduced,
        field=field,
        empty_graph=empty,
    )


def chain_boundary(chain: PathChain) -> PathChain:
    """Boundary of an arbitrary chain of elementary paths (regular convention)."""
    if chain.degree == 0:
        return _augmentation_chain(chain)
    acc: dict = {}
    for path, c in chain.terms.items():
        for face, s in _faces(path, chain.field):
            acc[face] = acc.get(face, 0) + c * s
    return PathChain(acc, chain.degree - 1, chain.field)


def _augmentation_chain(chain: PathChain) -> PathChain:
    total = sum(chain.terms.values(), chain.field.zero())
    return PathChain({(): total}, -1, chain.field)


# -- closed forms and explicit cycles for MLPs ----------------------------------


def theorem1_prediction(spec: MlpSpec, max_degree: int | None = None) -> list[int]:
    """Reduced path Betti numbers of an MLP digraph from its widths alone."""
    if not isinstance(spec, MlpSpec):
        spec = MlpSpec(tuple(spec))
    top = spec.n_layers - 1
    if max_degree is None:
        max_degree = top
    out = [0] * (max_degree + 1)
    if top <= max_degree:
        prod = 1
        for n in spec.widths:
            prod *= n - 1
        out[top] = prod
    return out


def explicit_cycle_basis(spec: MlpSpec, field: FieldSpec = Q) -> list[PathChain]:
    """Top-degree cycles of an MLP digraph built as products of differences.

    With ``w[i][k]`` the k-th vertex of layer i, each choice of
    ``j_i in 2..n_i`` gives the chain obtained by expanding
    ``(w[1][1] - w[1][j_1]) (w[2][1] - w[2][j_2]) ... (w[L][1] - w[L][j_L])``
    into ``2**L`` paths with coefficients +-1.
    """
    if not isinstance(spec, MlpSpec):
        spec = MlpSpec(tuple(spec))
    layers = spec.layer_ranges()
    L = len(layers)
    chains = []
    for js in product(*(range(1, len(layer)) for layer in layers)):
        terms = {}
        for picks in product((0, 1), repeat=L):
            path = tuple(layer[j if pick else 0] for layer, j, pick in zip(layers, js, picks))
            terms[path] = -1 if sum(picks) % 2 else 1
        chains.append(PathChain(terms, L - 1, field))
    return chains


def mlp_path_betti(spec: MlpSpec, field: FieldSpec = Q) -> HomologySummary:
    if not isinstance(spec, MlpSpec):
        spec = MlpSpec(tuple(spec))
    return path_betti(mlp_digraph(spec), spec.n_layers - 1, True, field)

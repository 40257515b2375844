"""Brute-force reference homology for small digraphs.

Everything here is written straight from the definitions with dense
rational matrices and its own Gaussian elimination; nothing is shared with
the sparse engine. It is meant for tests and cross-checks only.
"""

from gmpy2 import mpq as Fraction
from itertools import permutations, product

from .exact_linalg import Q
from .path_homology import HomologySummary

MAX_VERTICES = 12
MAX_DEGREE = 6


class TooLargeForOracle(ValueError):
    pass


def _guard(g, max_degree):
    if g.vertex_count > MAX_VERTICES or max_degree > MAX_DEGREE:
        raise TooLargeForOracle(
            f"oracle limited to {MAX_VERTICES} vertices and degree {MAX_DEGREE}, "
            f"got {g.vertex_count} vertices and degree {max_degree}"
        )


def dense_rank(mat):
    """Rank of a dense matrix by forward Gaussian elimination over Q."""
    a = [[Fraction(x) for x in row] for row in mat if any(row)]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if a[i][c]), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        prow = a[r]
        support = [j for j in range(c, ncols) if prow[j]]
        piv = prow[c]
        for i in range(r + 1, nrows):
            row = a[i]
            if row[c]:
                f = row[c] / piv
                for j in support:
                    row[j] -= f * prow[j]
        r += 1
        if r == nrows:
            break
    return r


def _is_regular(seq):
    return all(seq[i] != seq[i + 1] for i in range(len(seq) - 1))


def regular_paths(n_vertices, p):
    """Every regular elementary p-path on vertices 0..n-1."""
    return [s for s in product(range(n_vertices), repeat=p + 1) if _is_regular(s)]


def lambda_boundary(n_vertices, p):
    """Dense boundary from regular p-paths to regular (p-1)-paths.

    Faces with a repeated consecutive vertex are dropped.
    """
    cols = regular_paths(n_vertices, p)
    rows = regular_paths(n_vertices, p - 1)
    index = {s: i for i, s in enumerate(rows)}
    m = [[0] * len(cols) for _ in rows]
    for j, s in enumerate(cols):
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            if _is_regular(face):
                m[index[face]][j] += (-1) ** i
    return m


def _oracle_allowed(g, max_p):
    arcs = sorted(g.arcs)
    levels = [[(v,) for v in range(g.vertex_count)]]
    for _ in range(max_p):
        levels.append(sorted(q + (b,) for q in levels[-1] for (a, b) in arcs if a == q[-1]))
    return levels


def _summary(kind, max_degree, n_paths, dims, ranks, reduced, empty):
    betti = [dims[p] - ranks[p] - ranks[p + 1] for p in range(max_degree + 1)]
    return HomologySummary(
        kind=kind,
        max_degree=max_degree,
        dim_allowed=n_paths[: max_degree + 1],
        dim_omega=dims[: max_degree + 1],
        rank_boundary=ranks[: max_degree + 2],
        betti=betti,
        reduced=reduced,
        field=Q,
        empty_graph=empty,
    )


def oracle_path_betti(g, max_degree, reduced=True):
    """Path homology from definitions.

    With ``N`` the non-allowed part and ``A`` the allowed part of the
    boundary on allowed p-paths, the invariant subspace is ``ker N`` and the
    boundary restricted to it has rank ``rank([N; A]) - rank(N)``.
    """
    _guard(g, max_degree)
    top = max_degree + 1
    levels = _oracle_allowed(g, top)
    allowed_sets = [set(lv) for lv in levels]
    dims, ranks = [], [0] * (top + 2)
    for p in range(top + 1):
        paths = levels[p]
        if p == 0:
            dims.append(len(paths))
            continue
        faces_allowed = {}
        faces_other = {}
        for j, s in enumerate(paths):
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                if not _is_regular(face):
                    continue
                target = faces_allowed if face in allowed_sets[p - 1] else faces_other
                target.setdefault(face, [0] * len(paths))[j] += (-1) ** i
        other = [faces_other[f] for f in sorted(faces_other)]
        full = other + [faces_allowed[f] for f in sorted(faces_allowed)]
        r_other = dense_rank(other)
        dims.append(len(paths) - r_other)
        ranks[p] = dense_rank(full) - r_other
    if reduced and g.vertex_count:
        ranks[0] = 1
    n_paths = [len(lv) for lv in levels]
    return _summary("path", max_degree, n_paths, dims, ranks, reduced, g.vertex_count == 0)


def oracle_flag_simplices(g, n):
    """All vertex sequences of length n+1 totally ordered by arcs."""
    return [
        s for s in permutations(range(g.vertex_count), n + 1)
        if all((s[i], s[j]) in g.arcs for i in range(len(s)) for j in range(i + 1, len(s)))
    ]


def oracle_flag_boundary(g, n):
    cols = oracle_flag_simplices(g, n)
    rows = oracle_flag_simplices(g, n - 1)
    index = {s: i for i, s in enumerate(rows)}
    m = [[0] * len(cols) for _ in rows]
    for j, s in enumerate(cols):
        for i in range(len(s)):
            m[index[s[:i] + s[i + 1:]]][j] += (-1) ** i
    return m


def oracle_dfc_betti(g, max_dim, reduced=False):
    _guard(g, max_dim)
    dims = [len(oracle_flag_simplices(g, n)) for n in range(max_dim + 2)]
    ranks = [0] * (max_dim + 3)
    for n in range(1, max_dim + 2):
        if dims[n]:
            ranks[n] = dense_rank(oracle_flag_boundary(g, n))
    if reduced and g.vertex_count:
        ranks[0] = 1
    return _summary("dfc", max_dim, dims, dims, ranks, reduced, g.vertex_count == 0)

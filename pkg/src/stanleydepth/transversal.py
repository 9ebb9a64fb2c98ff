"""Independent transversals of subspace families via matroid intersection.

Given subspaces V_1, ..., V_m of K^d (each as a spanning list of
vectors), find a largest set of pairwise linearly independent vectors
picking at most one from each family.  A full transversal (size m)
exists iff every subfamily I satisfies |I| <= dim sum of V_i over I;
the augmenting-path search below decides this in polynomial time.

The common-independent-set structure: ground elements are (family,
spanning vector) pairs; one matroid restricts picks to one per family,
the other to linearly independent vector sets.  Augmenting along a
shortest source-to-sink path in the exchange digraph grows the common
independent set until maximum.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Sequence

from .fields import Field
from .linalg import Matrix, Subspace


def max_independent_transversal(
    field: Field, ambient_dim: int, families: Sequence[Sequence]
) -> list[tuple[int, tuple]]:
    """A maximum partial transversal as a list of (family index, vector)."""
    items: list[tuple[int, tuple]] = []
    for i, vectors in enumerate(families):
        for v in vectors:
            items.append((i, tuple(v)))
    selected: set[int] = set()
    while True:
        path = _augmenting_path(field, ambient_dim, items, selected)
        if path is None:
            return [items[t] for t in sorted(selected)]
        selected.symmetric_difference_update(path)


def has_full_transversal(field: Field, ambient_dim: int, families: Sequence[Sequence]) -> bool:
    return len(max_independent_transversal(field, ambient_dim, families)) == len(families)


def _augmenting_path(field, ambient_dim, items, selected):
    """Shortest augmenting path in the exchange digraph, or None at maximum."""
    f = field
    sel = sorted(selected)
    used_classes = {items[t][0]: t for t in sel}
    span = Subspace(f, ambient_dim, [items[t][1] for t in sel])

    outside = [t for t in range(len(items)) if t not in selected]
    sources = [t for t in outside if items[t][0] not in used_classes]
    sinks = {t for t in outside if not span.contains(items[t][1])}

    # Fundamental circuits in the linear matroid: for t outside the span
    # question is settled; otherwise the support of the expression of
    # vector(t) in the selected vectors gives the exchange arcs t -> x.
    circuits: dict[int, set[int]] = {}
    if sel:
        basis_matrix = Matrix.from_columns(f, [items[t][1] for t in sel], ambient_dim)
        for t in outside:
            if t in sinks:
                continue
            coords = _solve_in_columns(basis_matrix, items[t][1])
            circuits[t] = {x for x, c in zip(sel, coords) if not f.is_zero(c)}
    else:
        for t in outside:
            if t not in sinks:
                circuits[t] = set()

    parent: dict[int, int | None] = {}
    queue: deque[int] = deque()
    for t in sources:
        parent[t] = None
        queue.append(t)
        if t in sinks:
            return [t]

    while queue:
        u = queue.popleft()
        if u not in selected:
            # u -> x for selected x in the fundamental circuit of u.
            for x in circuits.get(u, ()):
                if x not in parent:
                    parent[x] = u
                    queue.append(x)
        else:
            # x -> y restores the one-per-family condition: y must reuse
            # the family vacated by x (fresh families were sources already).
            family = items[u][0]
            for y in outside:
                if y not in parent and items[y][0] == family:
                    parent[y] = u
                    if y in sinks:
                        return _walk(parent, y)
                    queue.append(y)
    return None


def _walk(parent, end):
    path = [end]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path


def _solve_in_columns(matrix: Matrix, vector) -> tuple:
    """Coordinates of vector in the (independent) columns of matrix."""
    f = matrix.field
    augmented = Matrix(
        f,
        [list(row) + [vector[i]] for i, row in enumerate(matrix.entries)],
        matrix.ncols + 1,
    )
    reduced, pivots = augmented.rref()
    coords = [f.zero] * matrix.ncols
    for r, p in enumerate(pivots):
        if p == matrix.ncols:
            raise ValueError("vector is not in the column span")
        coords[p] = reduced.entries[r][matrix.ncols]
    return tuple(coords)

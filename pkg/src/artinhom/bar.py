"""Cells of the reduced classifying-space model of the positive monoid.

A cell is a tuple of non-identity monoid elements [x_1|...|x_n]; its
dimension is n and its length is the length of the product.  The
simplicial faces drop the first factor, merge adjacent factors, or drop
the last factor, with the usual alternating signs.  Merging two
non-identity positive elements never yields the identity (length adds),
so every face is again a cell and no degeneracies ever materialize.

Dropping a factor lowers the total length while merging preserves it, so
length filters the complex; the length-preserving (merge-only) part of
the boundary is a differential on each fixed-length layer, and those
finite layers are what the matchings and audits consume.
"""

from __future__ import annotations

from typing import Iterator

from .artin import ArtinMonoid
from .coxeter import Word
from .homology import IntChainComplex, Matrix

BarCell = tuple[Word, ...]


def cell_length(cell: BarCell) -> int:
    return sum(len(x) for x in cell)


def cell_dim(cell: BarCell) -> int:
    return len(cell)


def faces(mon: ArtinMonoid, cell: BarCell) -> list[tuple[int, BarCell]]:
    """All simplicial faces in order with signs +1, -1, +1, ..., (-1)^n."""
    n = len(cell)
    if n == 0:
        return []
    out: list[tuple[int, BarCell]] = [(1, cell[1:])]
    for i in range(1, n):
        merged = cell[: i - 1] + (mon.mul(cell[i - 1], cell[i]),) + cell[i + 1 :]
        out.append((-1 if i % 2 else 1, merged))
    out.append((-1 if n % 2 else 1, cell[:-1]))
    return out


def merge_faces(mon: ArtinMonoid, cell: BarCell) -> list[tuple[int, BarCell]]:
    """The length-preserving faces only (merges of adjacent factors)."""
    n = len(cell)
    out = []
    for i in range(1, n):
        merged = cell[: i - 1] + (mon.mul(cell[i - 1], cell[i]),) + cell[i + 1 :]
        out.append((-1 if i % 2 else 1, merged))
    return out


def boundary(mon: ArtinMonoid, cell: BarCell) -> dict[BarCell, int]:
    """Chain boundary: face coefficients summed over coinciding cells."""
    acc: dict[BarCell, int] = {}
    for sign, face in faces(mon, cell):
        total = acc.get(face, 0) + sign
        if total:
            acc[face] = total
        elif face in acc:
            del acc[face]
    return acc


def iter_cells_of_grade(mon: ArtinMonoid, n: int) -> Iterator[BarCell]:
    """All cells of total length n, i.e. ordered factorizations into
    nontrivial elements of every element of length n."""
    if n == 0:
        yield ()
        return
    for first_len in range(1, n + 1):
        for x in mon.elements_of_length(first_len):
            for rest in iter_cells_of_grade(mon, n - first_len):
                yield (x,) + rest


def cells_of_grade(mon: ArtinMonoid, n: int) -> list[BarCell]:
    return list(iter_cells_of_grade(mon, n))


def grade_complex(mon: ArtinMonoid, n: int) -> IntChainComplex:
    """The fixed-length-n layer with its merge-only differential.

    For n = 0 this is a single 0-cell; for n >= 1 the layer lives in
    dimensions 1..n (the unique 0-cell has length 0).
    """
    if n == 0:
        return IntChainComplex((1,), labels={0: [()]})
    by_dim: dict[int, list[BarCell]] = {k: [] for k in range(1, n + 1)}
    for cell in iter_cells_of_grade(mon, n):
        by_dim[len(cell)].append(cell)
    index = {
        k: {cell: i for i, cell in enumerate(cells)} for k, cells in by_dim.items()
    }
    ranks = (0,) + tuple(len(by_dim[k]) for k in range(1, n + 1))
    boundaries: dict[int, Matrix] = {}
    for k in range(2, n + 1):
        mat = [[0] * len(by_dim[k]) for _ in range(len(by_dim[k - 1]))]
        for j, cell in enumerate(by_dim[k]):
            for sign, face in merge_faces(mon, cell):
                mat[index[k - 1][face]][j] += sign
        boundaries[k] = mat
    labels = {k: list(by_dim[k]) for k in range(1, n + 1)}
    labels[0] = []
    return IntChainComplex(ranks, boundaries, labels)

"""Algebraic collapse along an acyclic matching: cell graphs, the
reduced chain complex, and attaching words of 2-cells.

The reduced boundary of an essential cell sums over alternating zig-zag
paths: descend along a face, ascend through a matched pair (with a sign
flip and the inverse incidence), and repeat until another essential cell
is reached.  Matched ascents preserve the (length, flag) grade and
descents never raise it, so with the per-grade acyclicity certified by
the audits every path set is finite.

In dimension 2 the same traversal is run on the boundary *word* instead
of the chain: each non-essential edge of the attaching loop is replaced
through the relation of its matched 2-cell until only essential edges
remain.  The result can be compared against the dihedral relator up to
rotation and inversion of the loop.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bar import BarCell, boundary, cell_length, faces, iter_cells_of_grade
from .coxeter import Word, alternating_word
from .errors import InfiniteM, InternalError, NonAcyclicInput
from .homology import IntChainComplex, Matrix
from .matching import BarMatching

SignedWord = tuple[tuple[int, str], ...]


@dataclass
class CellGraph:
    """Face incidences plus a matching on a finite set of cells."""

    dims: dict[BarCell, int] = field(default_factory=dict)
    chains: dict[BarCell, dict[BarCell, int]] = field(default_factory=dict)
    face_sets: dict[BarCell, set[BarCell]] = field(default_factory=dict)
    upper_of: dict[BarCell, BarCell] = field(default_factory=dict)
    lower_of: dict[BarCell, BarCell] = field(default_factory=dict)

    def add_cell(self, cell, dim, chain, face_set):
        self.dims[cell] = dim
        self.chains[cell] = chain
        self.face_sets[cell] = face_set

    def add_match(self, upper, lower):
        self.upper_of[lower] = upper
        self.lower_of[upper] = lower

    def essential(self, cell) -> bool:
        return cell not in self.upper_of and cell not in self.lower_of


def build_cell_graph(matching: BarMatching, max_length: int) -> CellGraph:
    """All cells of length <= max_length with faces and matched pairs."""
    mon = matching.mon
    graph = CellGraph()
    for length in range(max_length + 1):
        for cell in iter_cells_of_grade(mon, length):
            graph.add_cell(
                cell,
                len(cell),
                boundary(mon, cell),
                {face for _, face in faces(mon, cell)},
            )
    for cell in graph.dims:
        if cell in graph.upper_of or cell in graph.lower_of:
            continue
        edge = matching.partner(cell)
        if edge is not None:
            graph.add_match(edge.upper, edge.lower)
    return graph


def check_acyclic(graph: CellGraph) -> bool:
    """Whether reversing the matched edges leaves the face graph acyclic."""
    successors: dict[BarCell, list[BarCell]] = {c: [] for c in graph.dims}
    indegree = {c: 0 for c in graph.dims}
    for cell, face_set in graph.face_sets.items():
        for face in face_set:
            if face not in graph.dims:
                continue
            if graph.upper_of.get(face) == cell:
                source, target = face, cell
            else:
                source, target = cell, face
            successors[source].append(target)
            indegree[target] += 1
    queue = [c for c in graph.dims if indegree[c] == 0]
    visited = 0
    while queue:
        cell = queue.pop()
        visited += 1
        for target in successors[cell]:
            indegree[target] -= 1
            if indegree[target] == 0:
                queue.append(target)
    return visited == len(graph.dims)


def morse_boundary(
    graph: CellGraph, essentials: set[BarCell]
) -> dict[BarCell, dict[BarCell, int]]:
    """Reduced boundaries of the essential cells by zig-zag summation."""
    flow: dict[BarCell, dict[BarCell, int]] = {}
    expanding: set[BarCell] = set()

    def flow_of(start: BarCell) -> dict[BarCell, int]:
        stack = [start]
        while stack:
            cell = stack[-1]
            if cell in flow:
                stack.pop()
                continue
            if cell in essentials:
                flow[cell] = {cell: 1}
                stack.pop()
                continue
            upper = graph.upper_of.get(cell)
            if upper is None:
                # matched with a cell below: zig-zag paths end here
                flow[cell] = {}
                stack.pop()
                continue
            chain = graph.chains[upper]
            incidence = chain.get(cell)
            if incidence not in (1, -1):
                raise InternalError(
                    f"matched face {cell} of {upper} has incidence {incidence}"
                )
            pending = [f for f in chain if f != cell and f not in flow]
            if pending:
                if any(f in expanding for f in pending):
                    raise NonAcyclicInput(
                        f"zig-zag paths cycle through {cell}"
                    )
                expanding.add(cell)
                stack.extend(pending)
                continue
            expanding.discard(cell)
            acc: dict[BarCell, int] = {}
            for face, coeff in chain.items():
                if face == cell:
                    continue
                for target, value in flow[face].items():
                    total = acc.get(target, 0) - coeff * incidence * value
                    if total:
                        acc[target] = total
                    elif target in acc:
                        del acc[target]
            flow[cell] = acc
            stack.pop()
        return flow[start]

    out: dict[BarCell, dict[BarCell, int]] = {}
    for cell in essentials:
        acc: dict[BarCell, int] = {}
        for face, coeff in graph.chains[cell].items():
            for target, value in flow_of(face).items():
                total = acc.get(target, 0) + coeff * value
                if total:
                    acc[target] = total
                elif target in acc:
                    del acc[target]
        out[cell] = acc
    return out


@dataclass
class MorseComplex:
    """The reduced complex: one cell per finite-type subset."""

    cells_by_dim: list[list[frozenset[str]]]
    boundaries: dict[int, Matrix]

    def chain_complex(self) -> IntChainComplex:
        ranks = tuple(len(cells) for cells in self.cells_by_dim)
        labels = {k: list(cells) for k, cells in enumerate(self.cells_by_dim)}
        return IntChainComplex(ranks, self.boundaries, labels)

    def census(self) -> tuple[int, ...]:
        return tuple(len(cells) for cells in self.cells_by_dim)

    def entry(self, T: frozenset, R: frozenset) -> int:
        """Boundary coefficient of the R-cell in the boundary of the T-cell."""
        k = len(T)
        row = self.cells_by_dim[k - 1].index(R)
        col = self.cells_by_dim[k].index(T)
        return self.boundaries[k][row][col]


def reduced_complex(matching: BarMatching) -> MorseComplex:
    """Collapse the full model onto its essential cells.

    Flows from a cell never raise the length, so the graph on cells of
    length up to the longest fundamental element contains every zig-zag
    path that starts from an essential cell.
    """
    system = matching.system
    cells = matching.essential_cells()
    max_length = max((cell_length(c) for c in cells.values()), default=0)
    graph = build_cell_graph(matching, max_length)
    for cell in cells.values():
        if not graph.essential(cell):
            raise InternalError(f"constructed essential cell {cell} is matched")
    boundaries_by_cell = morse_boundary(graph, set(cells.values()))
    label_of = {cell: T for T, cell in cells.items()}
    top = max((len(T) for T in cells), default=0)
    by_dim: list[list[frozenset[str]]] = [[] for _ in range(top + 1)]
    for T in sorted(cells, key=lambda T: (len(T), system.key(system.sorted_subset(T)))):
        by_dim[len(T)].append(T)
    index = {T: i for dim_cells in by_dim for i, T in enumerate(dim_cells)}
    boundaries: dict[int, Matrix] = {}
    for k in range(1, top + 1):
        mat = [[0] * len(by_dim[k]) for _ in range(len(by_dim[k - 1]))]
        for T in by_dim[k]:
            for target, value in boundaries_by_cell[cells[T]].items():
                mat[index[label_of[target]]][index[T]] = value
        boundaries[k] = mat
    return MorseComplex(by_dim, boundaries)


# -- attaching words in dimension 2 -------------------------------------------


def boundary_word_2cell(matching: BarMatching, s: str, t: str) -> SignedWord:
    """Attaching word of the essential 2-cell on {s, t}, tracked through
    the collapse letter by letter."""
    system = matching.system
    if system.m(s, t) == float("inf"):
        raise InfiniteM(f"no 2-cell: m({s},{t}) is infinite")
    mon = matching.mon
    x, y = matching.essential_cell({s, t})
    word: list[tuple[int, Word]] = [(1, x), (1, y), (-1, mon.mul(x, y))]
    while True:
        position = next(
            (i for i, (_, w) in enumerate(word) if len(w) > 1), None
        )
        if position is None:
            break
        sign, w = word[position]
        edge = matching.partner((w,))
        if edge is None or len(edge.upper) != 2:
            raise InternalError(f"edge [{w}] is not matched with a 2-cell")
        u, v = edge.upper
        # the relation [u][v][uv]^-1 of the matched 2-cell solves for [w]
        replacement = [(1, u), (1, v)] if sign == 1 else [(-1, v), (-1, u)]
        word[position : position + 1] = replacement
    return tuple((sign, w[0]) for sign, w in word)


def braid_relator_word(s: str, t: str, m: int) -> SignedWord:
    """The dihedral relator <s t>^m <s t>^-m read around the polygon
    (for odd m the descending half alternates starting from t)."""
    rising = [(1, g) for g in alternating_word(s, t, m)]
    if m % 2 == 0:
        falling = [(-1, g) for g in alternating_word(s, t, m)]
    else:
        falling = [(-1, g) for g in alternating_word(t, s, m)]
    return tuple(rising + falling)


def invert_word(word: SignedWord) -> SignedWord:
    return tuple((-sign, g) for sign, g in reversed(word))


def cyclic_words_equal(first: SignedWord, second: SignedWord) -> bool:
    """Equality of attaching loops up to rotation and global inversion."""
    if len(first) != len(second):
        return False
    if not first:
        return True
    rotations = {
        second[i:] + second[:i] for i in range(len(second))
    }
    inverse = invert_word(second)
    rotations.update(inverse[i:] + inverse[:i] for i in range(len(inverse)))
    return first in rotations

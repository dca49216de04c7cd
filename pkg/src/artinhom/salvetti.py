"""The poset of cosets-with-types, its order complex, and cell checks.

Cells are pairs (u, T) of a group element and a finite-type subset,
ordered by (u, T) <= (v, R) when T is contained in R, v^-1 u lies in the
standard subgroup on R, and v^-1 u is T-minimal.  The geometric
realization of the derived complex carries one cell per pair, of
dimension |T|; the group acts freely by left multiplication and the
quotient keeps one cell per finite-type subset.

`cell_pair_check` certifies the local structure: the closed down-set of
a pair must have the homology of a point and the strict down-set that of
a sphere of dimension |T| - 1, with the empty complex standing in for
the (-1)-sphere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .coxeter import CoxeterSystem, Word, alternating_word
from .errors import CheckFailed, InfiniteM, InfiniteType
from .homology import HomologyGroup, IntChainComplex, Matrix

SalCell = tuple[Word, frozenset]


def sal_leq(system: CoxeterSystem, low: SalCell, high: SalCell) -> bool:
    """The defining order on pairs (element, finite-type subset)."""
    u, T = low
    v, R = high
    if not T <= R:
        return False
    quotient = system.mul(system.inverse(v), u)
    # elements of a standard subgroup reduce to words inside it
    if not set(quotient) <= R:
        return False
    return system.is_t_minimal(quotient, T)


@dataclass
class SalvettiPoset:
    system: CoxeterSystem
    cells: list[SalCell]

    def leq(self, low: SalCell, high: SalCell) -> bool:
        return sal_leq(self.system, low, high)

    def dim(self, cell: SalCell) -> int:
        return len(cell[1])

    def census(self) -> tuple[int, ...]:
        top = max((self.dim(c) for c in self.cells), default=0)
        counts = [0] * (top + 1)
        for cell in self.cells:
            counts[self.dim(cell)] += 1
        return tuple(counts)

    def down_set(self, cell: SalCell, strict: bool = False) -> list[SalCell]:
        out = [c for c in self.cells if self.leq(c, cell)]
        if strict:
            out = [c for c in out if c != cell]
        return out

    def act(self, w: Iterable[str], cell: SalCell) -> SalCell:
        u, T = cell
        return (self.system.mul(w, u), T)


def sal_poset(system: CoxeterSystem) -> SalvettiPoset:
    """The full poset; requires the whole group to be finite."""
    if not system.is_finite_type(system.gens):
        raise InfiniteType("the full poset needs a finite group")
    elements = system.enumerate_group(system.gens)
    subsets = system.sf()
    cells = [(u, T) for u in elements for T in subsets]
    return SalvettiPoset(system, cells)


def order_complex(
    elements: Sequence, leq: Callable
) -> list[tuple]:
    """All non-empty chains of a finite poset, as tuples in chain order."""
    strictly_below: dict = {}
    for q in elements:
        strictly_below[q] = [p for p in elements if p != q and leq(p, q)]
    chains_ending_at: dict = {}
    ordered = sorted(elements, key=lambda p: len(strictly_below[p]))
    for q in ordered:
        chains = [(q,)]
        for p in strictly_below[q]:
            chains.extend(chain + (q,) for chain in chains_ending_at[p])
        chains_ending_at[q] = chains
    out = []
    for chains in chains_ending_at.values():
        out.extend(chains)
    return out


def simplicial_complex_homology(simplices: Sequence[tuple]) -> list[HomologyGroup]:
    """Homology of a complex given by simplices with ordered vertices."""
    if not simplices:
        return []
    by_dim: dict[int, list[tuple]] = {}
    for simplex in simplices:
        by_dim.setdefault(len(simplex) - 1, []).append(simplex)
    top = max(by_dim)
    for k in range(top + 1):
        by_dim.setdefault(k, [])
        by_dim[k] = sorted(set(map(tuple, by_dim[k])), key=repr)
    index = {
        k: {simplex: i for i, simplex in enumerate(by_dim[k])}
        for k in range(top + 1)
    }
    ranks = tuple(len(by_dim[k]) for k in range(top + 1))
    boundaries: dict[int, Matrix] = {}
    for k in range(1, top + 1):
        mat = [[0] * ranks[k] for _ in range(ranks[k - 1])]
        for j, simplex in enumerate(by_dim[k]):
            for i in range(len(simplex)):
                face = simplex[:i] + simplex[i + 1 :]
                mat[index[k - 1][face]][j] += -1 if i % 2 else 1
        boundaries[k] = mat
    return IntChainComplex(ranks, boundaries).homology()


def _matches_point(homology: list[HomologyGroup]) -> bool:
    return (
        bool(homology)
        and homology[0] == HomologyGroup(1)
        and all(h.is_trivial for h in homology[1:])
    )


def _matches_sphere(homology: list[HomologyGroup], n: int) -> bool:
    """Unreduced homology of S^n, with S^-1 the empty complex."""
    if n == -1:
        return not homology
    if n == 0:
        return (
            bool(homology)
            and homology[0] == HomologyGroup(2)
            and all(h.is_trivial for h in homology[1:])
        )
    if len(homology) <= n:
        return False
    expected = [HomologyGroup(1)] + [HomologyGroup(0)] * (n - 1) + [HomologyGroup(1)]
    return homology[: n + 1] == expected and all(h.is_trivial for h in homology[n + 1 :])


@dataclass
class PairCheck:
    cell: SalCell
    closed_size: int
    strict_size: int


def cell_pair_check(poset: SalvettiPoset, cell: SalCell) -> PairCheck:
    """Certify that a cell's down-set pair looks like (disk, sphere)."""
    closed = poset.down_set(cell)
    strict = poset.down_set(cell, strict=True)
    closed_homology = simplicial_complex_homology(order_complex(closed, poset.leq))
    strict_homology = simplicial_complex_homology(order_complex(strict, poset.leq))
    n = poset.dim(cell)
    if not _matches_point(closed_homology):
        raise CheckFailed(
            f"closed down-set of {cell} is not acyclic: "
            f"{[str(h) for h in closed_homology]}"
        )
    if not _matches_sphere(strict_homology, n - 1):
        raise CheckFailed(
            f"strict down-set of {cell} is not a {n - 1}-sphere: "
            f"{[str(h) for h in strict_homology]}"
        )
    return PairCheck(cell, len(closed), len(strict))


def quotient_census(system: CoxeterSystem) -> tuple[int, ...]:
    """Cells of the quotient complex, one per finite-type subset."""
    subsets = system.sf()
    top = max((len(T) for T in subsets), default=0)
    counts = [0] * (top + 1)
    for T in subsets:
        counts[len(T)] += 1
    return tuple(counts)


def polygon_vertices(
    system: CoxeterSystem, w: Iterable[str], s: str, t: str
) -> list[Word]:
    """The 2m vertices of the 2-cell at w on {s, t}, in boundary order:
    w, ws, wst, ..., w<s t>^m = w<t s>^m, w<t s>^{m-1}, ..., wt."""
    m = system.m(s, t)
    if m == float("inf"):
        raise InfiniteM(f"no polygon: m({s},{t}) is infinite")
    w = system.canon(w)
    ascending = [system.mul(w, alternating_word(s, t, k)) for k in range(m + 1)]
    descending = [system.mul(w, alternating_word(t, s, k)) for k in range(m - 1, 0, -1)]
    return ascending + descending


def polygon_boundary_word(
    system: CoxeterSystem, s: str, t: str
) -> tuple[tuple[int, str], ...]:
    """The quotient relator read off the polygon at the identity.

    Consecutive vertices differ by a unique right letter g; the 1-cell
    between them hangs off the shorter vertex (the {g}-minimal coset
    representative) and is oriented away from it, so the traversal sign
    is the sign of the length change."""
    vertices = polygon_vertices(system, (), s, t)
    word = []
    for k, vertex in enumerate(vertices):
        follower = vertices[(k + 1) % len(vertices)]
        letter = next(
            g for g in (s, t) if system.mul(vertex, (g,)) == follower
        )
        sign = 1 if len(vertex) < len(follower) else -1
        word.append((sign, letter))
    return tuple(word)

"""The two collapse matchings on the classifying-space model, and audits.

The set D of fundamental elements delta_T (T non-empty, finite type)
classifies cells.  A cell is depth-essential when every tail product
x_k...x_n lies in D; the first matching pairs the remaining cells by
splitting or merging at the depth position, keyed on finishing sets.
On the depth-essential cells a second matching does the same with the
maximum-generator condition on the chain of tail sets.  The union is
graded by eta(cell) = (length, essential flag), which every matched pair
preserves, so acyclicity and perfect-matching can be audited one finite
fiber at a time.

The paper trail for the two constructions defines only the collapsible
(upper) side; the inverse splits used here are completed so that the
audit can certify, per fiber, that (a) the matching is perfect off the
essential cells and (b) reversing matched edges leaves the fiber's face
graph acyclic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .artin import ArtinMonoid
from .bar import BarCell, cell_length, iter_cells_of_grade, merge_faces
from .coxeter import Word
from .errors import AuditFailure, InternalError, NotMu1Essential

Grade = tuple[int, int]


@dataclass(frozen=True)
class MatchEdge:
    """A matched pair: `lower` is the merge of `upper` at the depth slot."""

    upper: BarCell
    lower: BarCell
    kind: str  # "M1" or "M2"


@dataclass
class GradeAudit:
    grade: Grade
    cells: int
    edges: int
    essential: list[BarCell]


class BarMatching:
    """Cell classification and partner computation for one monoid."""

    def __init__(self, mon: ArtinMonoid):
        self.mon = mon
        self.system = mon.system
        self._delta_of: dict[Word, frozenset[str]] | None = None

    @property
    def delta_of(self) -> dict[Word, frozenset[str]]:
        """Map from each fundamental element to its generating subset."""
        if self._delta_of is None:
            self._delta_of = {
                delta: T for T, delta in self.mon.deltas().items()
            }
        return self._delta_of

    # -- tail data ----------------------------------------------------------

    def suffix_products(self, cell: BarCell) -> list[Word]:
        """P[j] = x_{j+1} ... x_n for j = 0..n (so P[n] is the identity)."""
        n = len(cell)
        products: list[Word] = [()] * (n + 1)
        for j in range(n - 1, -1, -1):
            products[j] = self.mon.mul(cell[j], products[j + 1])
        return products

    def mu1_essential(self, cell: BarCell) -> bool:
        """Every tail product is a fundamental element."""
        products = self.suffix_products(cell)
        return all(products[j] in self.delta_of for j in range(len(cell)))

    def d1(self, cell: BarCell) -> int:
        """Least j (1-based) whose tail cell is depth-essential; n+1 if none."""
        products = self.suffix_products(cell)
        j = len(cell) + 1
        while j > 1 and products[j - 2] in self.delta_of:
            j -= 1
        return j

    def tail_sets(self, cell: BarCell) -> dict[int, frozenset[str]]:
        """The subsets I_j with product(x_j..x_n) = delta(I_j), plus I_{n+1} = {}."""
        products = self.suffix_products(cell)
        n = len(cell)
        out = {n + 1: frozenset()}
        for j in range(self.d1(cell), n + 1):
            out[j] = self.delta_of[products[j - 1]]
        return out

    def mu1_collapsible(self, cell: BarCell) -> bool:
        d = self.d1(cell)
        if d < 2:
            return False
        products = self.suffix_products(cell)
        target = (
            self.delta_of[products[d - 1]] if d <= len(cell) else frozenset()
        )
        return self.mon.finishing_set(products[d - 2]) == target

    def m1_partner(self, cell: BarCell) -> MatchEdge | None:
        """The first-matching edge containing a non-essential cell."""
        if self.mu1_essential(cell):
            return None
        d = self.d1(cell)
        if self.mu1_collapsible(cell):
            return MatchEdge(cell, self._merge_at(cell, d), "M1")
        products = self.suffix_products(cell)
        R = self.mon.finishing_set(products[d - 2])
        upper = self._split_at(cell, d, R)
        return MatchEdge(upper, cell, "M1")

    # -- the second matching, on depth-essential cells -----------------------

    def _chain(self, cell: BarCell) -> list[frozenset[str]]:
        """I_1 .. I_{n+1} for a depth-essential cell (strictly decreasing)."""
        if not self.mu1_essential(cell):
            raise NotMu1Essential(f"{cell} has a tail product outside D")
        products = self.suffix_products(cell)
        sets = [self.delta_of[p] for p in products[:-1]]
        sets.append(frozenset())
        return sets

    def _chain_step_ok(self, sets: list[frozenset[str]], k: int) -> bool:
        """Whether I_k drops exactly the maximum of I_k (1-based k)."""
        removed = sets[k - 1] - sets[k]
        return len(removed) == 1 and next(iter(removed)) == max(
            sets[k - 1], key=self.system.index
        )

    def mu2_essential(self, cell: BarCell) -> bool:
        sets = self._chain(cell)
        return all(self._chain_step_ok(sets, k) for k in range(1, len(cell) + 1))

    def d2(self, cell: BarCell) -> int:
        sets = self._chain(cell)
        j = len(cell) + 1
        while j > 1 and self._chain_step_ok(sets, j - 1):
            j -= 1
        return j

    def mu2_collapsible(self, cell: BarCell) -> bool:
        d = self.d2(cell)
        if d < 2 or d > len(cell):
            return False
        sets = self._chain(cell)
        key = self.system.index
        return max(sets[d - 2], key=key) == max(sets[d - 1], key=key)

    def m2_partner(self, cell: BarCell) -> MatchEdge | None:
        """The second-matching edge containing a depth-essential cell."""
        sets = self._chain(cell)
        if self.mu2_essential(cell):
            return None
        d = self.d2(cell)
        if self.mu2_collapsible(cell):
            return MatchEdge(cell, self._merge_at(cell, d), "M2")
        top = max(sets[d - 2], key=self.system.index)
        repaired = sets[d - 1] | {top}
        upper = self._split_at(cell, d, repaired)
        return MatchEdge(upper, cell, "M2")

    def partner(self, cell: BarCell) -> MatchEdge | None:
        """The unique matched edge containing the cell, None if essential."""
        if self.mu1_essential(cell):
            return self.m2_partner(cell)
        return self.m1_partner(cell)

    # -- edge construction ----------------------------------------------------

    def _merge_at(self, cell: BarCell, d: int) -> BarCell:
        return (
            cell[: d - 2]
            + (self.mon.mul(cell[d - 2], cell[d - 1]),)
            + cell[d:]
        )

    def _split_at(self, cell: BarCell, d: int, target: frozenset[str]) -> BarCell:
        """Split x_{d-1} = beta * y so the new tail product equals delta(target)."""
        products = self.suffix_products(cell)
        y = self.mon.right_quotient(self.mon.delta(target), products[d - 1])
        if y is None:
            raise InternalError(
                f"tail of {cell} does not divide delta of {sorted(target)}"
            )
        beta = self.mon.right_quotient(cell[d - 2], y)
        if beta is None or not beta:
            raise InternalError(f"degenerate split of {cell} at position {d}")
        return cell[: d - 2] + (beta, y) + cell[d - 1 :]

    # -- grading and per-fiber audits ------------------------------------------

    def eta(self, cell: BarCell) -> Grade:
        return (cell_length(cell), 0 if self.mu1_essential(cell) else 1)

    def essential_cell(self, T: Iterable[str]) -> BarCell:
        """The unique fully essential cell whose top tail set is T."""
        T = self.system.check_subset(T)
        factors = []
        current = T
        while current:
            rest = current - {max(current, key=self.system.index)}
            factor = self.mon.right_quotient(
                self.mon.delta(current), self.mon.delta(rest)
            )
            if factor is None:
                raise InternalError(f"fundamental elements on {sorted(T)} do not nest")
            factors.append(factor)
            current = rest
        return tuple(factors)

    def essential_cells(self) -> dict[frozenset[str], BarCell]:
        return {T: self.essential_cell(T) for T in self.system.sf()}

    def fiber(self, grade: Grade) -> list[BarCell]:
        length, flag = grade
        return [
            cell
            for cell in iter_cells_of_grade(self.mon, length)
            if self.mu1_essential(cell) == (flag == 0)
        ]

    def matching_for_grade(self, grade: Grade) -> set[MatchEdge]:
        edges = set()
        for cell in self.fiber(grade):
            edge = self.partner(cell)
            if edge is not None:
                edges.add(edge)
        return edges

    def audit_grade(
        self, grade: Grade, edges: set[MatchEdge] | None = None
    ) -> GradeAudit:
        """Certify the fiber: perfect matching off essentials, grading
        compatibility, regular matched faces, and acyclicity."""
        cells = self.fiber(grade)
        cell_set = set(cells)
        if edges is None:
            edges = self.matching_for_grade(grade)
        occurrences: dict[BarCell, int] = {}
        for edge in edges:
            for endpoint in (edge.upper, edge.lower):
                occurrences[endpoint] = occurrences.get(endpoint, 0) + 1
                if endpoint not in cell_set:
                    raise AuditFailure(
                        f"{grade}: edge endpoint {endpoint} escapes the fiber"
                    )
            if len(edge.upper) != len(edge.lower) + 1:
                raise AuditFailure(f"{grade}: edge {edge} is not codimension 1")
            incidence = sum(
                sign for sign, face in merge_faces(self.mon, edge.upper)
                if face == edge.lower
            )
            if incidence not in (1, -1):
                raise AuditFailure(
                    f"{grade}: matched face of {edge.upper} has incidence {incidence}"
                )
            expected = "M2" if grade[1] == 0 else "M1"
            if edge.kind != expected:
                raise AuditFailure(f"{grade}: edge {edge} has kind {edge.kind}")
        for cell, count in occurrences.items():
            if count > 1:
                raise AuditFailure(f"{grade}: cell {cell} lies on {count} edges")
        essential = []
        for cell in cells:
            matched = cell in occurrences
            is_essential = self.mu1_essential(cell) and self.mu2_essential(cell)
            if is_essential and matched:
                raise AuditFailure(f"{grade}: essential cell {cell} is matched")
            if not is_essential and not matched:
                raise AuditFailure(f"{grade}: cell {cell} is unmatched")
            if is_essential:
                essential.append(cell)
        self._check_fiber_acyclic(grade, cells, cell_set, edges)
        return GradeAudit(grade, len(cells), len(edges), essential)

    def _check_fiber_acyclic(self, grade, cells, cell_set, edges):
        reversed_pairs = {(edge.upper, edge.lower) for edge in edges}
        successors: dict[BarCell, list[BarCell]] = {cell: [] for cell in cells}
        indegree: dict[BarCell, int] = {cell: 0 for cell in cells}
        for cell in cells:
            for _, face in merge_faces(self.mon, cell):
                if face not in cell_set:
                    continue
                if (cell, face) in reversed_pairs:
                    source, target = face, cell
                else:
                    source, target = cell, face
                successors[source].append(target)
                indegree[target] += 1
        queue = [cell for cell in cells if indegree[cell] == 0]
        visited = 0
        while queue:
            cell = queue.pop()
            visited += 1
            for target in successors[cell]:
                indegree[target] -= 1
                if indegree[target] == 0:
                    queue.append(target)
        if visited != len(cells):
            stuck = sorted(
                (cell for cell in cells if indegree[cell] > 0),
                key=lambda c: (len(c), c),
            )
            raise AuditFailure(
                f"{grade}: matched fiber graph has a cycle through {stuck[:4]}"
            )

"""Coxeter systems: matrix validation, the word problem, finite-type tools.

Group elements are plain words (tuples of generator names).  Equality is
decided exactly by rewriting: the defining relations split into braid
moves, which preserve word length, and square deletions ``ss -> 1``,
which shorten.  Any word can therefore be reduced by alternating braid
closure with square deletion, and all reduced words of an element form a
single braid-closure class.  The ShortLex-least reduced word (with
respect to the generator order given at construction) is the canonical
form; that same generator order is the total order consumed by the
matching machinery downstream, so there is one global convention.

Finite-type recognition classifies each connected component of the
Coxeter graph against the catalogue A_n, B_n, D_n, E6, E7, E8, F4, H3,
H4, I2(m).  Everything is exact integer arithmetic.
"""

from __future__ import annotations

import math
import os
from itertools import combinations
from typing import Iterable, Mapping

from .errors import (
    AsymmetricMatrix,
    BadDiagonal,
    BadEntry,
    DuplicateGenerator,
    InfiniteType,
    InternalError,
    UnknownGenerator,
)

Word = tuple[str, ...]

CACHE_LIMIT_ENV = "ARTINHOM_CACHE_LIMIT"


def cache_limit() -> int | None:
    """Optional cap on memoization caches, read from the environment."""
    raw = os.environ.get(CACHE_LIMIT_ENV)
    if not raw:
        return None
    return max(0, int(raw))


def cache_put(cache: dict, key, value, limit: int | None):
    """Insert-if-absent with an optional size cap; caches act as pure memos."""
    if limit is None or len(cache) < limit:
        cache.setdefault(key, value)
    return value


def alternating_word(first: str, second: str, count: int) -> Word:
    """The alternating word ``first second first ...`` of the given length."""
    return tuple(first if i % 2 == 0 else second for i in range(count))


def _pair(s: str, t: str) -> tuple[str, str]:
    return (s, t) if s <= t else (t, s)


class CoxeterSystem:
    """An ordered generating set with a validated Coxeter matrix.

    `gens` fixes the total order used for ShortLex canonical forms.
    `orders` maps unordered generator pairs to m(s, t); missing pairs
    default to 2 (commuting) and ``math.inf`` marks absent relations.
    """

    def __init__(self, gens: Iterable[str], orders: Mapping | None = None):
        self.gens: Word = tuple(gens)
        if len(set(self.gens)) != len(self.gens):
            raise DuplicateGenerator(f"duplicate generators in {self.gens}")
        self._index = {s: i for i, s in enumerate(self.gens)}
        self._m: dict[tuple[str, str], int | float] = {}
        for (s, t), value in (orders or {}).items():
            if s not in self._index or t not in self._index:
                raise UnknownGenerator(f"m given for unknown pair ({s}, {t})")
            if s == t:
                raise BadDiagonal(f"m({s},{s}) is fixed at 1 and cannot be set")
            if value != math.inf and (not isinstance(value, int) or value < 2):
                raise BadEntry(f"m({s},{t}) = {value!r}; need an integer >= 2 or inf")
            key = _pair(s, t)
            if key in self._m and self._m[key] != value:
                raise AsymmetricMatrix(
                    f"m({s},{t}) given twice with different values "
                    f"({self._m[key]} vs {value})"
                )
            self._m[key] = value
        # braid-move substitutions, shared by the Coxeter and Artin rewriters
        self._moves: list[tuple[Word, Word]] = []
        for s, t in combinations(self.gens, 2):
            m = self.m(s, t)
            if m != math.inf:
                left = alternating_word(s, t, m)
                right = alternating_word(t, s, m)
                self._moves.append((left, right))
                self._moves.append((right, left))
        self._limit = cache_limit()
        self._closure: dict[Word, frozenset[Word]] = {}
        self._canon: dict[Word, Word] = {}
        self._finite: dict[frozenset[str], bool] = {}

    # -- basic structure ------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.gens)

    def m(self, s: str, t: str) -> int | float:
        if s not in self._index or t not in self._index:
            raise UnknownGenerator(f"unknown generator in pair ({s}, {t})")
        if s == t:
            return 1
        return self._m.get(_pair(s, t), 2)

    def index(self, s: str) -> int:
        try:
            return self._index[s]
        except KeyError:
            raise UnknownGenerator(f"unknown generator {s!r}") from None

    def key(self, word: Iterable[str]) -> tuple[int, ...]:
        """ShortLex sort key of a word (all comparisons go through this)."""
        return tuple(self._index[s] for s in word)

    def check_word(self, word: Iterable[str]) -> Word:
        word = tuple(word)
        for s in word:
            if s not in self._index:
                raise UnknownGenerator(f"unknown generator {s!r} in word")
        return word

    def check_subset(self, T: Iterable[str]) -> frozenset[str]:
        T = frozenset(T)
        for s in T:
            if s not in self._index:
                raise UnknownGenerator(f"unknown generator {s!r} in subset")
        return T

    def sorted_subset(self, T: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(T, key=self._index.__getitem__))

    def validate(self) -> None:
        """Re-check all invariants; construction already enforces them."""
        assert len(set(self.gens)) == len(self.gens)
        for s, t in combinations(self.gens, 2):
            m = self.m(s, t)
            assert m == self.m(t, s)
            assert m == math.inf or (isinstance(m, int) and m >= 2)
        for s in self.gens:
            assert self.m(s, s) == 1

    # -- word problem ----------------------------------------------------

    def braid_closure(self, word: Word) -> frozenset[Word]:
        """All words reachable from `word` by braid moves alone."""
        cached = self._closure.get(word)
        if cached is not None:
            return cached
        seen = {word}
        stack = [word]
        while stack:
            w = stack.pop()
            for pattern, replacement in self._moves:
                k = len(pattern)
                for i in range(len(w) - k + 1):
                    if w[i : i + k] == pattern:
                        new = w[:i] + replacement + w[i + k :]
                        if new not in seen:
                            seen.add(new)
                            stack.append(new)
        closure = frozenset(seen)
        for w in closure:
            cache_put(self._closure, w, closure, self._limit)
        return closure

    def canon(self, word: Iterable[str]) -> Word:
        """ShortLex-least reduced word of the element `word` represents."""
        word = self.check_word(word)
        current = word
        trace = []
        while True:
            hit = self._canon.get(current)
            if hit is not None:
                result = hit
                break
            trace.append(current)
            closure = self.braid_closure(current)
            shorter = None
            for w in closure:
                for i in range(len(w) - 1):
                    if w[i] == w[i + 1]:
                        shorter = w[:i] + w[i + 2 :]
                        break
                if shorter is not None:
                    break
            if shorter is None:
                # every word in the closure is reduced (Tits)
                result = min(closure, key=self.key)
                for w in closure:
                    cache_put(self._canon, w, result, self._limit)
                break
            current = shorter
        for w in trace:
            cache_put(self._canon, w, result, self._limit)
        return result

    def length(self, word: Iterable[str]) -> int:
        return len(self.canon(word))

    def mul(self, *words: Iterable[str]) -> Word:
        combined: tuple[str, ...] = ()
        for w in words:
            combined = combined + tuple(w)
        return self.canon(combined)

    def inverse(self, word: Iterable[str]) -> Word:
        # generators are involutions, so reversal inverts
        return self.canon(tuple(reversed(tuple(word))))

    def equal(self, u: Iterable[str], v: Iterable[str]) -> bool:
        return self.canon(u) == self.canon(v)

    # -- finite-type recognition ------------------------------------------

    def is_finite_type(self, T: Iterable[str]) -> bool:
        """Whether the standard subgroup generated by T is finite."""
        T = self.check_subset(T)
        cached = self._finite.get(T)
        if cached is not None:
            return cached
        result = all(
            _finite_component(comp, self.m) for comp in self._components(T)
        )
        cache_put(self._finite, T, result, self._limit)
        return result

    def _components(self, T: frozenset[str]) -> list[list[str]]:
        remaining = set(T)
        components = []
        while remaining:
            start = remaining.pop()
            comp = {start}
            stack = [start]
            while stack:
                s = stack.pop()
                for t in list(remaining):
                    if self.m(s, t) != 2:
                        remaining.discard(t)
                        comp.add(t)
                        stack.append(t)
            components.append(sorted(comp, key=self._index.__getitem__))
        return components

    def sf(self) -> list[frozenset[str]]:
        """All subsets T with finite standard subgroup, smallest first."""
        out = []
        for size in range(self.rank + 1):
            for combo in combinations(self.gens, size):
                T = frozenset(combo)
                if self.is_finite_type(T):
                    out.append(T)
        return out

    # -- finite standard subgroups ----------------------------------------

    def enumerate_group(self, T: Iterable[str]) -> list[Word]:
        """All elements of the standard subgroup on T, canonical words."""
        T = self.check_subset(T)
        if not self.is_finite_type(T):
            raise InfiniteType(f"subgroup on {sorted(T)} is infinite")
        letters = self.sorted_subset(T)
        seen = {()}
        frontier = [()]
        while frontier:
            new = []
            for w in frontier:
                for s in letters:
                    u = self.canon(w + (s,))
                    if u not in seen:
                        seen.add(u)
                        new.append(u)
            frontier = new
        return sorted(seen, key=lambda w: (len(w), self.key(w)))

    def longest_element(self, T: Iterable[str]) -> Word:
        elements = self.enumerate_group(T)
        top = max(len(w) for w in elements)
        longest = [w for w in elements if len(w) == top]
        if len(longest) != 1:
            raise InternalError(
                f"length maximum not unique on {sorted(T)}: {longest}"
            )
        return longest[0]

    def is_t_minimal(self, word: Iterable[str], T: Iterable[str]) -> bool:
        """Shortest-in-coset test via the descent criterion."""
        T = self.check_subset(T)
        w = self.canon(word)
        return all(len(self.canon(w + (s,))) > len(w) for s in T)


def _finite_component(comp: list[str], m) -> bool:
    """Catalogue lookup for one connected Coxeter-graph component."""
    n = len(comp)
    edges = [
        (s, t, m(s, t)) for s, t in combinations(comp, 2) if m(s, t) != 2
    ]
    if any(label == math.inf for _, _, label in edges):
        return False
    if n <= 2:
        return True  # A1 or I2(m) with m finite
    if len(edges) != n - 1:
        return False  # a cycle: affine or worse
    degree = {s: 0 for s in comp}
    for s, t, _ in edges:
        degree[s] += 1
        degree[t] += 1
    if max(degree.values()) > 3:
        return False
    branch = [s for s in comp if degree[s] == 3]
    if len(branch) > 1:
        return False
    heavy = sorted(label for _, _, label in edges if label > 3)
    if not heavy:
        if not branch:
            return True  # A_n
        arms = sorted(_arm_lengths(branch[0], comp, edges))
        if arms[0] == 1 and arms[1] == 1:
            return True  # D_n
        return arms in ([1, 2, 2], [1, 2, 3], [1, 2, 4])  # E6, E7, E8
    if branch or len(heavy) > 1 or heavy[0] > 5:
        return False
    # a path with exactly one marked edge
    s, t, label = next(e for e in edges if e[2] > 3)
    at_end = degree[s] == 1 or degree[t] == 1
    if label == 4:
        return at_end or n == 4  # B_n, else F4's middle edge
    # label == 5: H3 or H4 with the marked edge at an end
    return at_end and n in (3, 4)


def _arm_lengths(center: str, comp: list[str], edges) -> list[int]:
    adjacency: dict[str, list[str]] = {s: [] for s in comp}
    for s, t, _ in edges:
        adjacency[s].append(t)
        adjacency[t].append(s)
    arms = []
    for start in adjacency[center]:
        length = 1
        prev, node = center, start
        while True:
            nxt = [x for x in adjacency[node] if x != prev]
            if not nxt:
                break
            prev, node = node, nxt[0]
            length += 1
        arms.append(length)
    return arms

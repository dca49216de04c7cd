"""Shared systems and independent oracles for the test suite.

The oracles here decide the word problem through faithful models that
never touch the rewriting code under test: symmetric groups acting by
adjacent transpositions for the linear diagrams, and affine maps
x -> sign*x + shift on Z (mod 2m) for the dihedral systems.
"""

import math

import pytest

from artinhom import ArtinMonoid, CoxeterSystem


def make_a2():
    return CoxeterSystem("ab", {("a", "b"): 3})


def make_b2():
    return CoxeterSystem("ab", {("a", "b"): 4})


def make_i25():
    return CoxeterSystem("ab", {("a", "b"): 5})


def make_a1a1():
    return CoxeterSystem("ab", {("a", "b"): 2})


def make_ainf():
    return CoxeterSystem("ab", {("a", "b"): math.inf})


def make_a3():
    return CoxeterSystem("abc", {("a", "b"): 3, ("b", "c"): 3})


@pytest.fixture(scope="session")
def a2():
    return make_a2()


@pytest.fixture(scope="session")
def b2():
    return make_b2()


@pytest.fixture(scope="session")
def i25():
    return make_i25()


@pytest.fixture(scope="session")
def a1a1():
    return make_a1a1()


@pytest.fixture(scope="session")
def ainf():
    return make_ainf()


@pytest.fixture(scope="session")
def a3():
    return make_a3()


@pytest.fixture(scope="session")
def mon_a2(a2):
    return ArtinMonoid(a2)


@pytest.fixture(scope="session")
def mon_b2(b2):
    return ArtinMonoid(b2)


@pytest.fixture(scope="session")
def mon_i25(i25):
    return ArtinMonoid(i25)


@pytest.fixture(scope="session")
def mon_a1a1(a1a1):
    return ArtinMonoid(a1a1)


@pytest.fixture(scope="session")
def mon_ainf(ainf):
    return ArtinMonoid(ainf)


@pytest.fixture(scope="session")
def mon_a3(a3):
    return ArtinMonoid(a3)


# -- symmetric group oracle (type A chains) ----------------------------------


def perm_of_word(word, letters, n):
    """Image of a word in S_n, generators as adjacent transpositions."""
    index = {s: i for i, s in enumerate(letters)}
    perm = list(range(n))
    for s in word:
        i = index[s]
        # compose on the right with the transposition (i, i+1)
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    return tuple(perm)


def inversions(perm):
    return sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )


# -- dihedral oracle (rank-2 systems, m possibly infinite) ---------------------


def dihedral_of_word(word, m):
    """Image of a word over {a, b} as x -> sign*x + shift (mod 2m)."""
    sign, shift = 1, 0
    for s in word:
        gen_sign, gen_shift = (-1, 0) if s == "a" else (-1, 2)
        sign, shift = sign * gen_sign, sign * gen_shift + shift
    if m != math.inf:
        shift %= 2 * m
    return sign, shift


def all_words(letters, max_len):
    words = [()]
    frontier = [()]
    for _ in range(max_len):
        frontier = [w + (s,) for w in frontier for s in letters]
        words.extend(frontier)
    return words

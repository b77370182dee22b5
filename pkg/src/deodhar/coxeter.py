"""Permutations of [n], words in adjacent transpositions, shifted Gale orders.

Conventions used throughout the package:

- A permutation of [n] is a tuple in one-line notation with 1-based values:
  ``p[i - 1]`` is the image of ``i``.
- A word multiplies left to right starting from the identity.  Each letter
  acts as a right multiplication, i.e. the prefix after ``i`` letters is the
  one-line tuple obtained by successively swapping *positions* ``l, l+1``.

  >>> evaluate_word(Word(4, (1, 2, 1)))
  (3, 2, 1, 4)
  >>> evaluate_word(Word(4, (2, 1, 2)))
  (3, 2, 1, 4)

- Subexpression tests (distinguished / positive) scan the word from its last
  letter toward the first, maintaining the product of the selected letters
  seen so far.  A letter whose multiplication would shorten that product is
  forced; skipping a forced letter breaks the distinguished property.  This
  is the scan direction under which a selected-letter product equals
  ``evaluate_word`` of the selected subword.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

Permutation = tuple[int, ...]


class InvalidWordError(ValueError):
    pass


class NoSubexpressionError(ValueError):
    pass


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def is_permutation(images: Sequence[int]) -> bool:
    n = len(images)
    return sorted(images) == list(range(1, n + 1))


def right_mul(p: Permutation, l: int) -> Permutation:
    """Multiply by s_l on the right (swap positions l, l+1)."""
    q = list(p)
    q[l - 1], q[l] = q[l], q[l - 1]
    return tuple(q)


def left_mul(l: int, p: Permutation) -> Permutation:
    """Multiply by s_l on the left (swap values l, l+1)."""
    swap = {l: l + 1, l + 1: l}
    return tuple(swap.get(x, x) for x in p)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """The permutation i -> p(q(i))."""
    return tuple(p[q[i] - 1] for i in range(len(q)))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x - 1] = i + 1
    return tuple(inv)


def length(p: Permutation) -> int:
    """Number of inversions: pairs i < j with p(i) > p(j).

    >>> length((4, 3, 2, 1))
    6
    """
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])


def descents(p: Permutation) -> frozenset[int]:
    return frozenset(i + 1 for i in range(len(p) - 1) if p[i] > p[i + 1])


def is_grassmannian(p: Permutation, k: int) -> bool:
    """At most one descent, located at position k."""
    return descents(p) <= {k}


@dataclass(frozen=True)
class Word:
    """A word in the generators s_1 .. s_{n-1} of the symmetric group on [n]."""

    n: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(self.letters))
        for l in self.letters:
            if not 1 <= l <= self.n - 1:
                raise InvalidWordError(f"letter {l} out of range for n={self.n}")


def evaluate_word(w: Word) -> Permutation:
    p = identity(w.n)
    for l in w.letters:
        p = right_mul(p, l)
    return p


def is_reduced(w: Word) -> bool:
    """True iff the length strictly increases along the prefixes.

    >>> is_reduced(Word(4, (1, 2, 1)))
    True
    >>> is_reduced(Word(4, (1, 1)))
    False
    """
    p = identity(w.n)
    for l in w.letters:
        if p[l - 1] > p[l]:
            return False
        p = right_mul(p, l)
    return True


@dataclass(frozen=True)
class SubexpressionMask:
    word: Word
    selected: tuple[bool, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "selected", tuple(bool(b) for b in self.selected))
        if len(self.selected) != len(self.word.letters):
            raise InvalidWordError("mask length differs from word length")


def selected_word(m: SubexpressionMask) -> Word:
    return Word(m.word.n, tuple(l for l, b in zip(m.word.letters, m.selected) if b))


def subexpression_permutation(m: SubexpressionMask) -> Permutation:
    return evaluate_word(selected_word(m))


def _scan_from_right(m: SubexpressionMask):
    """Yield (letter, selected, forced) scanning the word right to left.

    The running product u is the composition of the selected letters seen so
    far; the letter at the current position is forced when prepending it
    shortens u, i.e. when value l appears after value l+1 in u.
    """
    u = list(identity(m.word.n))
    for l, sel in zip(reversed(m.word.letters), reversed(m.selected)):
        forced = u.index(l) > u.index(l + 1)
        yield l, sel, forced
        if sel:
            i, j = u.index(l), u.index(l + 1)
            u[i], u[j] = u[j], u[i]


def is_distinguished(m: SubexpressionMask) -> bool:
    return all(sel or not forced for _, sel, forced in _scan_from_right(m))


def is_positive(m: SubexpressionMask) -> bool:
    """Distinguished and the selected letters form a reduced word."""
    return is_distinguished(m) and is_reduced(selected_word(m))


def positive_subexpression(v: Word, u: Permutation) -> SubexpressionMask:
    """The unique positive subexpression of the reduced word v multiplying to u.

    Raises NoSubexpressionError when u is not reachable as a subword of v
    (equivalently, u is not below the value of v in Bruhat order).
    """
    if not is_reduced(v):
        raise InvalidWordError("positive_subexpression requires a reduced word")
    if len(u) != v.n or not is_permutation(u):
        raise InvalidWordError("target is not a permutation of [n]")

    letters = v.letters
    m = len(letters)
    found: list[tuple[bool, ...]] = []

    # Scan right to left; positive masks never meet a length decrease, so a
    # decrease prunes the branch whether or not the letter is selected.
    def grow(pos: int, prod: Permutation, chosen: list[bool]) -> None:
        if pos < 0:
            if prod == u:
                found.append(tuple(chosen))
            return
        l = letters[pos]
        if prod.index(l) > prod.index(l + 1):
            return
        for take in (False, True):
            chosen[pos] = take
            grow(pos - 1, left_mul(l, prod) if take else prod, chosen)
        chosen[pos] = False

    grow(m - 1, identity(v.n), [False] * m)
    if not found:
        raise NoSubexpressionError("target permutation is not reachable in the word")
    if len(found) > 1:
        raise AssertionError("positive subexpression is not unique")
    return SubexpressionMask(v, found[0])


def all_positive_masks(v: Word, u: Permutation) -> list[SubexpressionMask]:
    """Brute-force oracle: positive masks for u among all 2^m subexpressions."""
    masks = []
    for bits in itertools.product((False, True), repeat=len(v.letters)):
        m = SubexpressionMask(v, bits)
        if subexpression_permutation(m) == u and is_positive(m):
            masks.append(m)
    return masks


def gale_key(i: int, x: int, n: int) -> int:
    return (x - i) % n


def gale_sorted(i: int, subset: Iterable[int], n: int) -> tuple[int, ...]:
    return tuple(sorted(subset, key=lambda x: gale_key(i, x, n)))


def gale_leq(i: int, I: Iterable[int], J: Iterable[int], *, n: int) -> bool:
    """Shifted Gale order: I is componentwise <=_i J after sorting by <_i.

    >>> gale_leq(1, {1, 3, 5, 6}, {1, 4, 5, 6}, n=6)
    True
    >>> gale_leq(4, {1, 3, 5, 6}, {1, 4, 5, 6}, n=6)
    False
    """
    a, b = gale_sorted(i, I, n), gale_sorted(i, J, n)
    if len(a) != len(b):
        raise ValueError("shifted Gale order compares subsets of equal size")
    return all(gale_key(i, x, n) <= gale_key(i, y, n) for x, y in zip(a, b))


def gale_lt(i: int, I: Iterable[int], J: Iterable[int], *, n: int) -> bool:
    """Strict shifted Gale order: I <|_i J and I != J."""
    return frozenset(I) != frozenset(J) and gale_leq(i, I, J, n=n)


def gale_maximal(i: int, sets: Iterable[Iterable[int]], *, n: int) -> list[frozenset[int]]:
    """The <|_i-maximal elements of a family of equal-size subsets."""
    family = [frozenset(s) for s in sets]
    return [s for s in family if not any(gale_lt(i, s, t, n=n) for t in family)]

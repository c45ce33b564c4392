"""Green's relations on the diagram monoid, class keys, and enumeration.

The R-class of a diagram is determined by its left cups (blocks inside
the unprimed points), the L-class by its right cups, and the D-class by
the rank.  A class key is a "partial matching": a sorted tuple of
disjoint 1-based pairs, which is hashable and orderable.
"""
from __future__ import annotations

import itertools
from math import comb, factorial
from typing import Iterator, Sequence

from .diagrams import Diagram

PartialMatching = tuple[tuple[int, int], ...]

ENUMERATION_LIMIT = 7


def left_cups(a: Diagram) -> PartialMatching:
    """Blocks of a inside {1..n}, as a sorted pair tuple."""
    n = a.n
    return tuple(
        (x + 1, p + 1) for x, p in enumerate(a.partner[:n]) if x < p < n
    )


def right_cups(a: Diagram) -> PartialMatching:
    """Blocks of a inside {1'..n'}, with unprimed labels."""
    n = a.n
    return tuple(
        (x - n + 1, p - n + 1)
        for x in range(n, 2 * n)
        if x < (p := a.partner[x])
    )


def related(a: Diagram, b: Diagram, rel: str) -> bool:
    """Green's relation test; rel is one of 'L', 'R', 'H', 'D', 'J'."""
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} != {b.n}")
    if rel == "R":
        return left_cups(a) == left_cups(b)
    if rel == "L":
        return right_cups(a) == right_cups(b)
    if rel == "H":
        return left_cups(a) == left_cups(b) and right_cups(a) == right_cups(b)
    if rel in ("D", "J"):
        return len(left_cups(a)) == len(left_cups(b))
    raise ValueError(f"unknown relation {rel!r}")


def double_factorial(k: int) -> int:
    """(2k-1)!! = number of perfect matchings on 2k points; 1 for k=0."""
    result = 1
    for i in range(3, 2 * k, 2):
        result *= i
    return result


def brauer_order(n: int) -> int:
    """(2n-1)!!, the number of diagrams on n strands."""
    return double_factorial(n)


def r_class_count_of_corank(n: int, corank: int) -> int:
    """Number of R-classes of the given (even) corank: C(n,2k)(2k-1)!!."""
    if corank % 2:
        raise ValueError("corank must be even")
    k = corank // 2
    return comb(n, 2 * k) * double_factorial(k)


def r_class_count(n: int) -> int:
    return sum(r_class_count_of_corank(n, 2 * k) for k in range(n // 2 + 1))


def partial_matchings(n: int, k: int | None = None) -> Iterator[PartialMatching]:
    """All partial matchings on {1..n}; restricted to k pairs if k is given.

    Each matching is emitted exactly once, pairs sorted, in a
    deterministic order (smallest unpaired point first).
    """
    sizes = range(n // 2 + 1) if k is None else (k,)
    for size in sizes:
        yield from _matchings_of_size(tuple(range(1, n + 1)), size)


def _matchings_of_size(points, size) -> Iterator[PartialMatching]:
    if size == 0:
        yield ()
        return
    first, rest = points[0], points[1:]
    # first point stays single
    if len(rest) >= 2 * size:
        yield from _matchings_of_size(rest, size)
    # or pairs with a later point
    for i, second in enumerate(rest):
        for tail in _matchings_of_size(rest[:i] + rest[i + 1:], size - 1):
            yield ((first, second),) + tail


def all_diagrams(n: int, limit: int = ENUMERATION_LIMIT) -> Iterator[Diagram]:
    """All (2n-1)!! diagrams, by recursive pairing of the smallest free point."""
    if n > limit:
        raise ValueError(f"n={n} exceeds enumeration limit {limit}")
    for partner in _involutions(2 * n):
        yield Diagram(n, partner)


def _involutions(size: int) -> Iterator[list[int]]:
    partner = [-1] * size

    def fill(start: int) -> Iterator[list[int]]:
        while start < size and partner[start] >= 0:
            start += 1
        if start == size:
            yield partner
            return
        for other in range(start + 1, size):
            if partner[other] < 0:
                partner[start] = other
                partner[other] = start
                yield from fill(start + 1)
                partner[start] = -1
                partner[other] = -1

    yield from fill(0)


def all_permutations(n: int) -> Iterator[tuple[int, ...]]:
    """All of S_n as 0-based words."""
    return itertools.permutations(range(n))

"""Permutations of {0, ..., n-1} in one-line image form, with right-action composition."""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterable, Sequence

Point = int


class DegreeMismatch(ValueError):
    """Operands act on point sets of different sizes."""


class PointOutOfRange(ValueError):
    """Point index outside [0, degree)."""


@dataclass(frozen=True)
class Perm:
    """A bijection on {0, ..., n-1}; ``images[i]`` is the image of point ``i``."""

    images: tuple[Point, ...]

    def __post_init__(self) -> None:
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"images {images!r} are not a bijection on 0..{len(images) - 1}")

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[Point]]) -> "Perm":
        """Build a permutation from disjoint cycles; points not mentioned stay fixed."""
        images = list(range(degree))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:]):
                images[a] = b
            if cycle:
                images[cycle[-1]] = cycle[0]
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[Point, ...]]:
        """Nontrivial cycles, each starting at its smallest point, in increasing order."""
        seen: set[Point] = set()
        out: list[tuple[Point, ...]] = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self.images[start]
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self.images[nxt]
            out.append(tuple(cycle))
        return out

    def cycle_string(self, offset: int = 0) -> str:
        """Cycle notation like ``(0 1)(2 3)``; ``offset`` shifts displayed labels."""
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(p + offset) for p in c) + ")" for c in cycles)

    def __str__(self) -> str:
        return self.cycle_string()

    def __mul__(self, other: "Perm") -> "Perm":
        # left factor acts first, matching the right-action convention
        return compose(self, other)

    def __pow__(self, exponent: int) -> "Perm":
        return power(self, exponent)


def compose(p: Perm, q: Perm) -> Perm:
    """Permutation applying ``p`` first and then ``q``."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"cannot compose degree {p.degree} with degree {q.degree}")
    return Perm(tuple(q.images[i] for i in p.images))


def inverse(p: Perm) -> Perm:
    """Permutation undoing ``p``: compose(p, inverse(p)) is the identity."""
    images = [0] * p.degree
    for i, j in enumerate(p.images):
        images[j] = i
    return Perm(tuple(images))


def apply(a: Point, p: Perm) -> Point:
    """Image of point ``a`` under ``p`` (right-action notation: a then p)."""
    if not 0 <= a < p.degree:
        raise PointOutOfRange(f"point {a} outside [0, {p.degree})")
    return p.images[a]


def power(p: Perm, exponent: int) -> Perm:
    """``p`` composed with itself ``exponent`` times; negative powers use the inverse."""
    if exponent < 0:
        return power(inverse(p), -exponent)
    result = Perm.identity(p.degree)
    square = p
    while exponent:
        if exponent & 1:
            result = compose(result, square)
        square = compose(square, square)
        exponent >>= 1
    return result


def element_order(p: Perm) -> int:
    """Least t >= 1 with p**t the identity: the lcm of the cycle lengths."""
    return lcm(1, *(len(c) for c in p.cycles()))

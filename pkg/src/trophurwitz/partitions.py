"""Integer partitions used as ramification profiles.

Parts are always stored weakly decreasing, so two partitions compare equal
iff they have the same multiset of parts and can be used as dict keys.
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Sequence

from .errors import InvalidInput


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    >>> Partition([1, 3, 1])
    Partition(3, 1, 1)
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = list(parts)
        for p in parts:
            if isinstance(p, bool) or not isinstance(p, int):
                raise InvalidInput(f"partition parts must be integers, got {p!r}")
            if p < 1:
                raise InvalidInput(f"partition parts must be positive, got {p}")
        if not parts:
            raise InvalidInput("a partition needs at least one part")
        return super().__new__(cls, sorted(parts, reverse=True))

    @property
    def degree(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicities(self) -> Counter:
        return Counter(self)

    def to_json(self) -> list[int]:
        return list(self)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"3,1,1"`` (any order, whitespace tolerated)."""
        try:
            parts = [int(tok) for tok in text.replace(" ", "").split(",") if tok]
        except ValueError as exc:
            raise InvalidInput(f"cannot parse partition {text!r}") from exc
        return cls(parts)

    def __repr__(self) -> str:
        return f"Partition({', '.join(map(str, self))})"

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"


def simple_profile(d: int) -> Partition:
    """The profile (2,1,...,1) of a simple branch point in degree ``d``."""
    if d < 2:
        raise InvalidInput("simple branching needs degree at least 2")
    return Partition([2] + [1] * (d - 2))


class ProfileTuple(tuple):
    """Ordered tuple of partitions sharing one degree."""

    __slots__ = ()

    def __new__(cls, profiles: Iterable[Sequence[int]]):
        items = [p if isinstance(p, Partition) else Partition(p) for p in profiles]
        if not items:
            raise InvalidInput("profile tuple is empty")
        degrees = {p.degree for p in items}
        if len(degrees) != 1:
            raise InvalidInput(f"profiles have mixed degrees {sorted(degrees)}")
        return super().__new__(cls, items)

    @property
    def degree(self) -> int:
        return self[0].degree


@lru_cache(maxsize=None)
def _partitions(d: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if d == 0:
        return ((),)
    out = []
    for first in range(min(d, largest), 0, -1):
        for rest in _partitions(d - first, first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_partitions(d: int) -> list[Partition]:
    """All partitions of ``d`` in lexicographically decreasing order."""
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise InvalidInput(f"degree must be a positive integer, got {d!r}")
    return [Partition(p) for p in _partitions(d, d)]


def aut_count(mu: Sequence[int]) -> int:
    """Order of the group permuting equal parts: product of multiplicity factorials."""
    mu = mu if isinstance(mu, Partition) else Partition(mu)
    return prod(factorial(m) for m in mu.multiplicities().values())


def aut_count_tuple(mu: Iterable[Sequence[int]]) -> int:
    mu = mu if isinstance(mu, ProfileTuple) else ProfileTuple(mu)
    return prod(aut_count(p) for p in mu)

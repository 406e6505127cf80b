"""Brute-force Hurwitz numbers of the sphere from permutation factorizations.

A degree-d cover of the sphere branched over n points is a tuple
(s_1, ..., s_n) in S_d with s_1 s_2 ... s_n = id, cycle types prescribed by
the ramification profiles, generating a transitive group. Dividing the
number of such tuples by d! gives the automorphism-weighted count.

This module is the ground truth the tropical enumeration is checked
against, so it deliberately shares no code with ``graphs``.
"""
from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Iterable, Sequence

from .errors import DegreeCeilingExceeded, InvalidInput, SignLengthMismatch
from .partitions import Partition, ProfileTuple, simple_profile

DEFAULT_MAX_DEGREE = 7


def default_max_degree() -> int:
    return int(os.environ.get("TROPHURWITZ_MAX_DEGREE", DEFAULT_MAX_DEGREE))


@dataclass(frozen=True)
class Perm:
    """A permutation of {1, ..., d}, stored as the tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise InvalidInput(f"{self.images} is not a permutation of 1..{len(self.images)}")

    @classmethod
    def identity(cls, d: int) -> "Perm":
        return cls(tuple(range(1, d + 1)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], d: int) -> "Perm":
        images = list(range(1, d + 1))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                images[x - 1] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def _zero_based(self) -> tuple[int, ...]:
        return tuple(x - 1 for x in self.images)


@dataclass(frozen=True)
class FactorizationCount:
    """Raw tuple count together with its normalised value raw/d!."""

    raw_count: int
    degree: int
    vanishing: bool = False
    note: str = field(default="", compare=False)

    @property
    def value(self) -> Fraction:
        return Fraction(self.raw_count, factorial(self.degree))


def _as_tuple(sigma) -> tuple[int, ...]:
    if isinstance(sigma, Perm):
        return sigma._zero_based()
    return tuple(sigma)


def _cycle_lengths(p: tuple[int, ...]) -> tuple[int, ...]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if not seen[i]:
            n = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                n += 1
            out.append(n)
    out.sort(reverse=True)
    return tuple(out)


def cycle_type(sigma) -> Partition:
    """Cycle type of a ``Perm`` (or a 0-based image tuple) as a partition."""
    return Partition(_cycle_lengths(_as_tuple(sigma)))


def _orbit_labels(perms: Iterable[tuple[int, ...]], d: int) -> tuple[int, ...]:
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for i in range(d):
            a, b = find(i), find(p[i])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return tuple(find(i) for i in range(d))


def is_transitive(perms: Sequence, d: int) -> bool:
    """True iff the group generated by ``perms`` acts transitively on d points."""
    if d <= 1:
        return True
    labels = _orbit_labels([_as_tuple(p) for p in perms], d)
    return len(set(labels)) == 1


@lru_cache(maxsize=None)
def _all_perms(d: int) -> tuple[tuple[int, ...], ...]:
    return tuple(permutations(range(d)))


@lru_cache(maxsize=None)
def conjugacy_class(mu: Partition) -> tuple[tuple[int, ...], ...]:
    """All elements of S_d with cycle type ``mu`` (0-based image tuples)."""
    return tuple(p for p in _all_perms(mu.degree) if _cycle_lengths(p) == tuple(mu))


def _representative(mu: Partition) -> tuple[int, ...]:
    images = []
    start = 0
    for part in mu:
        images.extend(start + (k + 1) % part for k in range(part))
        start += part
    return tuple(images)


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # apply p first, then q
    return tuple(q[x] for x in p)


def _inverse(p: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def _merge_orbits(labels: tuple[int, ...], p: tuple[int, ...]) -> tuple[int, ...]:
    parent = list(labels)

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for i, x in enumerate(p):
        a, b = find(i), find(x)
        if a != b:
            parent[max(a, b)] = min(a, b)
    return tuple(find(i) for i in range(len(p)))


def riemann_hurwitz_genus(profiles: ProfileTuple) -> Fraction:
    """Source genus forced by Riemann-Hurwitz over a sphere target."""
    d = profiles.degree
    ramification = sum(d - p.length for p in profiles)
    # 2 - 2g = 2d - ramification
    return Fraction(ramification - 2 * d + 2, 2)


def complex_hurwitz_sphere(g: int, profiles, max_degree: int | None = None) -> FactorizationCount:
    """Automorphism-weighted count of connected genus-g covers of the sphere.

    Fixes the first factor to one representative of its class (multiplying
    by the class size), sweeps the middle factors, and forces the last one
    as the inverse of the running product. The sweep aggregates tuples
    sharing the same (running product, orbit partition), which counts the
    tuples exactly while keeping memory bounded by |S_d| times the number of
    set partitions.
    """
    profiles = profiles if isinstance(profiles, ProfileTuple) else ProfileTuple(profiles)
    d = profiles.degree
    ceiling = default_max_degree() if max_degree is None else max_degree
    if d > ceiling:
        raise DegreeCeilingExceeded(f"degree {d} exceeds the oracle ceiling {ceiling}")
    if riemann_hurwitz_genus(profiles) != g:
        return FactorizationCount(0, d, vanishing=True, note="Riemann-Hurwitz fails")

    first = profiles[0]
    rep = _representative(first)
    class_size = factorial(d)
    for part, mult in first.multiplicities().items():
        class_size //= part**mult * factorial(mult)

    if len(profiles) == 1:
        ok = rep == tuple(range(d)) and is_transitive([rep], d)
        return FactorizationCount(class_size if ok else 0, d)

    states: dict[tuple, int] = {(rep, _orbit_labels([rep], d)): 1}
    for mu in profiles[1:-1]:
        elements = conjugacy_class(mu)
        nxt: dict[tuple, int] = defaultdict(int)
        for (prod_, labels), count in states.items():
            for sigma in elements:
                key = (_compose(prod_, sigma), _merge_orbits(labels, sigma))
                nxt[key] += count
        states = nxt

    last_type = tuple(profiles[-1])
    total = 0
    for (prod_, labels), count in states.items():
        if _cycle_lengths(prod_) != last_type:
            continue
        # the forced last factor lies in the group already generated
        if len(set(labels)) == 1:
            total += count
    return FactorizationCount(total * class_size, d)


def double_hurwitz_profiles(g: int, lam: Partition, nu: Partition) -> ProfileTuple | None:
    """(lambda, nu, r simple profiles), or None when r is negative."""
    r = 2 * g - 2 + lam.length + nu.length
    if r < 0 or (r > 0 and lam.degree < 2):
        return None
    simple = [simple_profile(lam.degree)] * r if r else []
    return ProfileTuple([lam, nu] + simple)


def complex_double_hurwitz_oracle(g: int, lam, nu, max_degree: int | None = None) -> FactorizationCount:
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    nu = nu if isinstance(nu, Partition) else Partition(nu)
    if lam.degree != nu.degree:
        raise InvalidInput(f"degrees differ: {lam} vs {nu}")
    profiles = double_hurwitz_profiles(g, lam, nu)
    if profiles is None:
        return FactorizationCount(0, lam.degree, vanishing=True, note="no simple branch points possible")
    return complex_hurwitz_sphere(g, profiles, max_degree=max_degree)


@lru_cache(maxsize=None)
def _involutions(d: int) -> tuple[tuple[int, ...], ...]:
    return tuple(p for p in _all_perms(d) if all(p[p[i]] == i for i in range(d)))


@lru_cache(maxsize=None)
def _involution_steps(d: int, mu: Partition) -> dict:
    """For each involution t, the pairs (t', t t') with t t' of cycle type mu."""
    target = tuple(mu)
    steps = {}
    invs = _involutions(d)
    for t in invs:
        steps[t] = []
        for u in invs:
            sigma = _compose(u, t)
            if _cycle_lengths(sigma) == target:
                steps[t].append((u, sigma))
    return steps


def real_hurwitz_circle(profiles, max_degree: int | None = None) -> FactorizationCount:
    """Automorphism-weighted count of connected real covers of the circle RP^1.

    ``profiles`` lists the branch points in their cyclic order along the real
    circle. A real cover is a monodromy tuple together with the complex
    conjugation, which reads off as a cyclic chain of involutions
    t_0, ..., t_{n-1} with k-th monodromy t_{k-1} t_k (indices mod n). Counts
    chains with prescribed cycle types and transitive monodromy, over d!.
    """
    profiles = profiles if isinstance(profiles, ProfileTuple) else ProfileTuple(profiles)
    d = profiles.degree
    ceiling = default_max_degree() if max_degree is None else max_degree
    if d > ceiling:
        raise DegreeCeilingExceeded(f"degree {d} exceeds the oracle ceiling {ceiling}")
    identity = tuple(range(d))
    total = 0
    # the number of chains starting at t_0 only depends on its conjugacy class
    by_class: dict[tuple, list] = defaultdict(list)
    for t0 in _involutions(d):
        by_class[_cycle_lengths(t0)].append(t0)
    for members in by_class.values():
        t0 = members[0]
        states: dict[tuple, int] = {(t0, identity): 1}
        for mu in profiles[:-1]:
            steps = _involution_steps(d, mu)
            nxt: dict[tuple, int] = defaultdict(int)
            for (t, labels), count in states.items():
                for u, sigma in steps[t]:
                    nxt[(u, _merge_orbits(labels, sigma))] += count
            states = nxt
        last = tuple(profiles[-1])
        found = 0
        for (t, labels), count in states.items():
            sigma = _compose(t0, t)
            if _cycle_lengths(sigma) == last and len(set(_merge_orbits(labels, sigma))) == 1:
                found += count
        total += found * len(members)
    return FactorizationCount(total, d)


def real_double_hurwitz_oracle(g: int, lam, nu, signs, max_degree: int | None = None) -> FactorizationCount:
    """Real double Hurwitz number with simple branch points at the signed positions.

    Negative branch points, then 0 (profile lam), then the positive ones, then
    infinity (profile nu) is the cyclic order on the real circle; only the
    number of each sign matters.
    """
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    nu = nu if isinstance(nu, Partition) else Partition(nu)
    if lam.degree != nu.degree:
        raise InvalidInput(f"degrees differ: {lam} vs {nu}")
    r = 2 * g - 2 + lam.length + nu.length
    signs = tuple(signs)
    if r >= 0 and len(signs) != r:
        raise SignLengthMismatch(f"expected {r} signs, got {len(signs)}")
    profiles = double_hurwitz_profiles(g, lam, nu)
    if profiles is None:
        return FactorizationCount(0, lam.degree, vanishing=True, note="no simple branch points possible")
    d = lam.degree
    n_neg = sum(1 for s in signs if s == "-")
    simple = [simple_profile(d)] if r else []
    circle = simple * n_neg + [lam] + simple * (r - n_neg) + [nu]
    return real_hurwitz_circle(circle, max_degree=max_degree)

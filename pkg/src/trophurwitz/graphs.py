"""Combinatorial tropical covers of the line (monodromy graphs).

A cover of degree d with r simple branch points x_1 < ... < x_r is drawn as a
graph with one trivalent inner vertex per level 1..r. Level 0 stands for
-inf and level r+1 for +inf: an edge (source, target, weight) with
source == 0 is a left end, target == r+1 a right end, anything else is an
interior edge.

Isomorphisms of covers fix the target, hence fix every vertex, and may only
permute edges with identical (source, target, weight). Sorting the edge
triples therefore gives a canonical form, and the automorphism group is
generated by swapping the two members of each balanced wiener or fork.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import prod
from typing import Iterable, Iterator

from .errors import InvalidInput
from .parallel import ordered_map
from .partitions import Partition

CUT = "cut"
JOIN = "join"


@dataclass(frozen=True, order=True)
class Edge:
    id: int
    weight: int
    source: int
    target: int

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.source, self.target, self.weight)


@dataclass(frozen=True)
class MonodromyGraph:
    """A tropical cover of the caterpillar line, up to isomorphism.

    ``edges`` are sorted by (source, target, weight) and their ids equal
    their position, so two graphs are isomorphic iff they compare equal.
    """

    d: int
    g: int
    r: int
    edges: tuple[Edge, ...]

    @classmethod
    def from_triples(cls, d: int, g: int, r: int, triples: Iterable[tuple[int, int, int]]) -> "MonodromyGraph":
        ordered = sorted(triples)
        return cls(d, g, r, tuple(Edge(i, w, s, t) for i, (s, t, w) in enumerate(ordered)))

    @classmethod
    def bare_edge(cls, d: int) -> "MonodromyGraph":
        return cls.from_triples(d, 0, 0, [(0, 1, d)])

    def role(self, e: Edge) -> str:
        if e.source == 0:
            return "left_end"
        if e.target == self.r + 1:
            return "right_end"
        return "interior"

    def is_end(self, e: Edge) -> bool:
        return e.source == 0 or e.target == self.r + 1

    @property
    def interior_edges(self) -> list[Edge]:
        return [e for e in self.edges if not self.is_end(e)]

    @property
    def lam(self) -> Partition:
        return Partition(e.weight for e in self.edges if e.source == 0)

    @property
    def nu(self) -> Partition:
        return Partition(e.weight for e in self.edges if e.target == self.r + 1)

    def in_edges(self, level: int) -> list[Edge]:
        return [e for e in self.edges if e.target == level]

    def out_edges(self, level: int) -> list[Edge]:
        return [e for e in self.edges if e.source == level]

    def vertex_kind(self, level: int) -> str:
        return CUT if len(self.in_edges(level)) == 1 else JOIN

    @property
    def vertex_kinds(self) -> tuple[str, ...]:
        return tuple(self.vertex_kind(k) for k in range(1, self.r + 1))

    def betti_number(self) -> int:
        if self.r == 0:
            return 0
        return len(self.interior_edges) - self.r + 1

    def is_connected(self) -> bool:
        if self.r >= 1 and any(e.source == 0 and e.target == self.r + 1 for e in self.edges):
            return False
        if self.r <= 1:
            return True
        parent = list(range(self.r + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.interior_edges:
            parent[find(e.source)] = find(e.target)
        return len({find(k) for k in range(1, self.r + 1)}) == 1

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "g": self.g,
            "levels": self.r,
            "edges": [
                {"id": e.id, "weight": e.weight, "from_level": e.source, "to_level": e.target, "role": self.role(e)}
                for e in self.edges
            ],
            "vertices": [{"level": k, "kind": self.vertex_kind(k)} for k in range(1, self.r + 1)],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "MonodromyGraph":
        triples = [(e["from_level"], e["to_level"], e["weight"]) for e in obj["edges"]]
        return cls.from_triples(obj["d"], obj["g"], obj["levels"], triples)


@dataclass(frozen=True)
class WienersForks:
    wieners: tuple[tuple[int, int], ...]
    forks: tuple[tuple[int, int], ...]

    @property
    def all(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.wieners + self.forks))


def wieners_and_forks(G: MonodromyGraph) -> WienersForks:
    """Pairs of equal-weight edges sharing both endpoints (ends share one vertex)."""
    groups: dict[tuple, list[int]] = {}
    for e in G.edges:
        groups.setdefault(e.key, []).append(e.id)
    wieners, forks = [], []
    for (s, t, _w), ids in groups.items():
        if len(ids) < 2:
            continue
        # trivalence allows at most two parallel copies
        assert len(ids) == 2, f"{len(ids)} parallel edges in {G}"
        pair = (ids[0], ids[1])
        if s == 0 or t == G.r + 1:
            forks.append(pair)
        else:
            wieners.append(pair)
    return WienersForks(tuple(wieners), tuple(forks))


def canonicalize(G: MonodromyGraph) -> bytes:
    """Byte string equal for two graphs iff they are isomorphic covers.

    Format: ``d=<d>;r=<r>;`` followed by ``<source>-<target>:<weight>`` for
    every edge in sorted order, comma separated. The bare edge of degree 3
    encodes as ``b"d=3;r=0;0-1:3"``.
    """
    body = ",".join(f"{s}-{t}:{w}" for s, t, w in sorted(e.key for e in G.edges))
    return f"d={G.d};r={G.r};{body}".encode()


def automorphism_count(G: MonodromyGraph) -> int:
    return 2 ** len(wieners_and_forks(G).all)


def expected_r(g: int, lam: Partition, nu: Partition) -> int:
    return 2 * g - 2 + lam.length + nu.length


def _coerce(lam, nu) -> tuple[Partition, Partition]:
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    nu = nu if isinstance(nu, Partition) else Partition(nu)
    if lam.degree != nu.degree:
        raise InvalidInput(f"degrees differ: {lam} has {lam.degree}, {nu} has {nu.degree}")
    return lam, nu


# A sweep state: (open edges as sorted (origin, weight), closed edges as sorted triples)
_State = tuple[tuple[tuple[int, int], ...], tuple[tuple[int, int, int], ...]]


def _successors(state: _State, level: int) -> Iterator[_State]:
    open_, closed = state
    distinct = sorted(set(open_))
    for item in distinct:
        origin, w = item
        rest = list(open_)
        rest.remove(item)
        for a in range(1, w // 2 + 1):
            new_open = tuple(sorted(rest + [(level, a), (level, w - a)]))
            yield new_open, tuple(sorted(closed + ((origin, level, w),)))
    for i, first in enumerate(distinct):
        for second in distinct[i:]:
            if first == second and open_.count(first) < 2:
                continue
            rest = list(open_)
            rest.remove(first)
            rest.remove(second)
            new_open = tuple(sorted(rest + [(level, first[1] + second[1])]))
            new_closed = closed + ((first[0], level, first[1]), (second[0], level, second[1]))
            yield new_open, tuple(sorted(new_closed))


def _sweep(states: set[_State], start: int, r: int, n_final: int) -> set[_State]:
    for level in range(start, r + 1):
        remaining = r - level
        nxt = set()
        for state in states:
            for succ in _successors(state, level):
                if abs(len(succ[0]) - n_final) <= remaining:
                    nxt.add(succ)
        states = nxt
    return states


def _finish(states: Iterable[_State], g: int, lam: Partition, nu: Partition, r: int) -> list[MonodromyGraph]:
    out = []
    target = tuple(nu)
    for open_, closed in states:
        if tuple(sorted((w for _, w in open_), reverse=True)) != target:
            continue
        triples = list(closed) + [(origin, r + 1, w) for origin, w in open_]
        G = MonodromyGraph.from_triples(lam.degree, g, r, triples)
        if G.is_connected():
            out.append(G)
    return out


def _sweep_branch(args) -> list[MonodromyGraph]:
    state, g, lam, nu, r = args
    return _finish(_sweep({state}, 2, r, nu.length), g, lam, nu, r)


def enumerate_covers(g: int, lam, nu, workers: int = 1) -> list[MonodromyGraph]:
    """One representative per isomorphism class, sorted by canonical encoding.

    Sweeps the levels left to right; each level applies a single cut or
    join to the open edges. Partial graphs are deduplicated per level, so
    no isomorphism class is produced twice. With ``workers > 1`` the
    branches after the first level are distributed over processes.
    """
    lam, nu = _coerce(lam, nu)
    r = expected_r(g, lam, nu)
    if r < 0:
        return []
    if r == 0:
        if len(lam) == 1 and lam == nu:
            return [MonodromyGraph.bare_edge(lam.degree)]
        return []
    start: _State = (tuple(sorted((0, w) for w in lam)), ())
    first = sorted(s for s in _successors(start, 1) if abs(len(s[0]) - nu.length) <= r - 1)
    jobs = [(s, g, lam, nu, r) for s in first]
    found: dict[bytes, MonodromyGraph] = {}
    for graphs in ordered_map(_sweep_branch, jobs, workers):
        for G in graphs:
            found[canonicalize(G)] = G
    return [found[k] for k in sorted(found)]


def check_graph(G: MonodromyGraph) -> list[str]:
    """Structural violations of ``G`` (empty list when valid)."""
    problems = []
    if G.r == 0:
        if [e.key for e in G.edges] != [(0, 1, G.d)]:
            problems.append("r = 0 graph must be a single bare edge")
        return problems
    for k in range(1, G.r + 1):
        ins, outs = G.in_edges(k), G.out_edges(k)
        if len(ins) + len(outs) != 3 or not ins or not outs:
            problems.append(f"vertex {k} is not trivalent with both sides occupied")
        if sum(e.weight for e in ins) != sum(e.weight for e in outs):
            problems.append(f"balancing fails at vertex {k}")
    for e in G.edges:
        if not (0 <= e.source < e.target <= G.r + 1) or e.weight < 1:
            problems.append(f"bad edge {e}")
    for x in range(G.r + 1):
        # weight crossing the open interval (x, x+1) of the target
        crossing = sum(e.weight for e in G.edges if e.source <= x < e.target)
        if crossing != G.d:
            problems.append(f"degree over interval {x} is {crossing}, expected {G.d}")
    if not G.is_connected():
        problems.append("graph is disconnected")
    if G.betti_number() != G.g:
        problems.append(f"first Betti number {G.betti_number()} differs from genus {G.g}")
    return problems


def complex_multiplicity(G: MonodromyGraph) -> Fraction:
    """Product of interior weights over |Aut|; the bare edge counts 1/d."""
    if G.r == 0:
        return Fraction(1, G.d)
    return Fraction(prod(e.weight for e in G.interior_edges), automorphism_count(G))


def complex_tropical_double_hurwitz(g: int, lam, nu, workers: int = 1) -> Fraction:
    return sum((complex_multiplicity(G) for G in enumerate_covers(g, lam, nu, workers)), Fraction(0))


def marked_end_count(g: int, lam, nu) -> Fraction:
    """Tropical count with labelled left and right ends.

    Every way of attaching the labels 1..len(lam) and 1..len(nu) to ends of
    matching weight is generated explicitly and deduplicated; labels break
    fork symmetry, so only wiener swaps remain as automorphisms.
    """
    lam, nu = _coerce(lam, nu)
    total = Fraction(0)
    for G in enumerate_covers(g, lam, nu):
        if G.r == 0:
            total += complex_multiplicity(G)
            continue
        left = [e for e in G.edges if e.source == 0]
        right = [e for e in G.edges if e.target == G.r + 1 and e.source != 0]
        seen = set()
        for lperm in set(permutations(range(len(left)))):
            if any(lam[i] != left[j].weight for j, i in enumerate(lperm)):
                continue
            for rperm in set(permutations(range(len(right)))):
                if any(nu[i] != right[j].weight for j, i in enumerate(rperm)):
                    continue
                labels = {e.id: ("L", lperm[j]) for j, e in enumerate(left)}
                labels.update({e.id: ("R", rperm[j]) for j, e in enumerate(right)})
                seen.add(tuple(sorted((e.key, labels.get(e.id, ())) for e in G.edges)))
        weight = Fraction(prod(e.weight for e in G.interior_edges), 2 ** len(wieners_and_forks(G).wieners))
        total += len(seen) * weight
    return total


def to_dot(G: MonodromyGraph, styles: dict[int, dict[str, str]] | None = None, name: str = "cover") -> str:
    """Left-to-right DOT drawing with one rank per level; labels are weights."""
    styles = styles or {}
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  node [shape=point];"]
    for k in range(1, G.r + 1):
        lines.append(f'  v{k} [shape=circle, label="{k}", width=0.3];')
    for e in G.edges:
        src = f"v{e.source}" if e.source != 0 else f"lin{e.id}"
        dst = f"v{e.target}" if e.target != G.r + 1 else f"rout{e.id}"
        if e.source == 0:
            lines.append(f"  lin{e.id};")
        if e.target == G.r + 1:
            lines.append(f"  rout{e.id};")
        attrs = {"label": str(e.weight)}
        attrs.update(styles.get(e.id, {}))
        attr_text = ", ".join(f'{k}="{v}"' for k, v in sorted(attrs.items()))
        lines.append(f"  {src} -> {dst} [{attr_text}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_json_text(G: MonodromyGraph) -> str:
    return json.dumps(G.to_json(), sort_keys=True)

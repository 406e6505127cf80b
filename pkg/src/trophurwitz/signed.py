"""Signed real covers of the line and their multiplicities.

A signed cover decorates a monodromy graph with a set I of conjugated
wieners/forks and a sign on every even interior edge outside the
conjugated wieners. The sign records which of the two real fixed points of
the target circle the edge's fixed points lie over. A decoration is real
when each vertex looks like one of the admissible local pictures for the
sign of its branch point; those pictures live in ``data/local_rules.json``.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from itertools import product
from math import prod
from pathlib import Path
from typing import Iterator, Sequence

from .errors import InvalidInput, SignLengthMismatch
from .graphs import (
    CUT,
    MonodromyGraph,
    _coerce,
    canonicalize,
    enumerate_covers,
    expected_r,
    to_dot,
    wieners_and_forks,
)
from .parallel import ordered_map
from .partitions import aut_count_tuple

SIGNS = ("+", "-")
_SIGN_ALIASES = {"+": "+", "-": "-", "−": "-", "p": "+", "m": "-"}


def parse_signs(signs: str | Sequence[str]) -> tuple[str, ...]:
    """Normalise ``"+-"``, ``["+", "-"]`` or ``"+−"`` to a tuple of '+'/'-'."""
    out = []
    for ch in signs:
        if ch in (" ", ","):
            continue
        try:
            out.append(_SIGN_ALIASES[ch])
        except KeyError:
            raise InvalidInput(f"invalid sign {ch!r}; use '+' or '-'") from None
    return tuple(out)


def all_sign_vectors(r: int) -> list[tuple[str, ...]]:
    return [tuple(s) for s in product(SIGNS, repeat=r)]


def flip(sign: str) -> str:
    return "-" if sign == "+" else "+"


@dataclass(frozen=True)
class LocalRule:
    sign: str
    family: str
    big_parity: str
    small_parities: tuple[str, str]
    conjugated: bool
    big_sign: str | None
    small_signs: tuple[str | None, str | None]


def _parity_ok(required: str, weight: int) -> bool:
    if required == "any":
        return True
    return (weight % 2 == 0) == (required == "even")


@dataclass(frozen=True)
class LocalRuleTable:
    """Admissible vertex pictures, keyed by the sign of the branch point.

    Entries describe the picture with one edge on the left; mirrored
    pictures use the same entry with the sides exchanged.
    """

    entries: tuple[LocalRule, ...]

    @classmethod
    def from_json(cls, obj: dict) -> "LocalRuleTable":
        if obj.get("base_orientation", CUT) != CUT:
            raise InvalidInput("rule tables must be written with one edge on the left")
        entries = []
        for raw in obj["entries"]:
            sign = parse_signs(raw["sign"])
            if len(sign) != 1:
                raise InvalidInput(f"bad entry sign {raw['sign']!r}")
            small_signs = tuple(None if s is None else parse_signs(s)[0] for s in raw["signs"]["small"])
            big_sign = raw["signs"]["big"]
            entries.append(
                LocalRule(
                    sign=sign[0],
                    family=raw["family"],
                    big_parity=raw["parities"]["big"],
                    small_parities=tuple(raw["parities"]["small"]),
                    conjugated=bool(raw["conjugated"]),
                    big_sign=None if big_sign is None else parse_signs(big_sign)[0],
                    small_signs=small_signs,
                )
            )
        return cls(tuple(entries))

    @classmethod
    def load(cls, path: str | Path | None = None) -> "LocalRuleTable":
        if path is None:
            text = resources.files("trophurwitz").joinpath("data/local_rules.json").read_text()
        else:
            text = Path(path).read_text()
        return cls.from_json(json.loads(text))

    def digest(self) -> str:
        return hashlib.sha256(repr(self.entries).encode()).hexdigest()[:16]

    def matches(self, sign: str, big: int, small: tuple[int, int], conjugated: bool):
        """All (entry index, required signs) for one vertex.

        Required signs are returned as (big, small[0], small[1]) in the order
        the small edges were passed in.
        """
        found = {}
        for idx, rule in enumerate(self.entries):
            if rule.sign != sign or rule.conjugated != conjugated:
                continue
            if not _parity_ok(rule.big_parity, big):
                continue
            for order in ((0, 1), (1, 0)):
                if all(_parity_ok(rule.small_parities[order[j]], small[j]) for j in range(2)):
                    req = (rule.big_sign, rule.small_signs[order[0]], rule.small_signs[order[1]])
                    found[(idx, req)] = None
        return list(found)


@lru_cache(maxsize=1)
def default_table() -> LocalRuleTable:
    return LocalRuleTable.load()


@dataclass(frozen=True)
class SignedCover:
    graph: MonodromyGraph
    conjugated: tuple[tuple[int, int], ...]
    edge_signs: tuple[tuple[int, str], ...]

    @property
    def conjugated_wieners(self) -> tuple[tuple[int, int], ...]:
        wieners = set(wieners_and_forks(self.graph).wieners)
        return tuple(p for p in self.conjugated if p in wieners)

    @property
    def sign_map(self) -> dict[int, str]:
        return dict(self.edge_signs)

    def to_json(self) -> dict:
        obj = self.graph.to_json()
        obj["conjugated"] = [list(p) for p in self.conjugated]
        obj["edge_signs"] = {str(i): s for i, s in self.edge_signs}
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "SignedCover":
        graph = MonodromyGraph.from_json(obj)
        conjugated = tuple(sorted(tuple(sorted(p)) for p in obj.get("conjugated", [])))
        signs = tuple(sorted((int(k), parse_signs(v)[0]) for k, v in obj.get("edge_signs", {}).items()))
        return cls(graph, conjugated, signs)

    def encoding(self) -> bytes:
        """Canonical bytes; insensitive to relabelling inside parallel pairs."""
        G = self.graph
        key_of = {e.id: e.key for e in G.edges}
        conj = sorted(key_of[a] for a, _ in self.conjugated)
        signs = sorted((key_of[i], s) for i, s in self.edge_signs)
        conj_text = ";".join(f"{s}-{t}:{w}" for s, t, w in conj)
        sign_text = ";".join(f"{s}-{t}:{w}{sg}" for (s, t, w), sg in signs)
        return canonicalize(G) + f"|I={conj_text}|S={sign_text}".encode()


def even_edges(graph: MonodromyGraph, conjugated: Sequence[tuple[int, int]]) -> list[int]:
    """Ids of even interior edges outside conjugated wieners (the set EE)."""
    in_conj = {i for pair in conjugated for i in pair}
    return [e.id for e in graph.interior_edges if e.weight % 2 == 0 and e.id not in in_conj]


def vertex_star(graph: MonodromyGraph, level: int):
    """(big edge, (small edge, small edge)) at a vertex, whichever side is which."""
    ins, outs = graph.in_edges(level), graph.out_edges(level)
    if len(ins) == 1:
        return ins[0], (outs[0], outs[1])
    return outs[0], (ins[0], ins[1])


def _check_signs(signs: Sequence[str], r: int) -> tuple[str, ...]:
    signs = parse_signs(signs)
    if len(signs) != r:
        raise SignLengthMismatch(f"expected {r} signs, got {len(signs)}")
    return signs


def decorations(graph: MonodromyGraph, signs, table: LocalRuleTable | None = None) -> list[SignedCover]:
    """Every real decoration (I, S) of ``graph`` over the sign vector."""
    table = table or default_table()
    signs = _check_signs(signs, graph.r)
    wf = wieners_and_forks(graph).all
    wieners = set(wieners_and_forks(graph).wieners)
    out = []
    for mask in range(2 ** len(wf)):
        conj = tuple(p for i, p in enumerate(wf) if mask >> i & 1)
        conj_set = set(conj)
        ee = set(even_edges(graph, [p for p in conj if p in wieners]))
        for assignment in _assign(graph, signs, table, conj_set, ee, 1, {}):
            if set(assignment) != ee:
                raise AssertionError(f"sign domain {sorted(assignment)} differs from EE {sorted(ee)}")
            out.append(SignedCover(graph, conj, tuple(sorted(assignment.items()))))
    return out


def _assign(graph, signs, table, conj_set, ee, level, assigned) -> Iterator[dict[int, str]]:
    if level > graph.r:
        yield dict(assigned)
        return
    big, small = vertex_star(graph, level)
    pair = tuple(sorted((small[0].id, small[1].id)))
    matches = table.matches(signs[level - 1], big.weight, (small[0].weight, small[1].weight), pair in conj_set)
    for _idx, req in matches:
        new = dict(assigned)
        ok = True
        for edge, need in zip((big, small[0], small[1]), req):
            if need is None or edge.id not in ee:
                continue
            have = new.get(edge.id)
            if have is None:
                new[edge.id] = need
            elif have != need:
                ok = False
                break
        if ok:
            yield from _assign(graph, signs, table, conj_set, ee, level + 1, new)


def multiplicity_signed(cover: SignedCover) -> Fraction:
    """2^|EE| / 2^|WF| times the weights of the conjugated wieners."""
    G = cover.graph
    n_ee = len(cover.edge_signs)
    n_wf = len(wieners_and_forks(G).all)
    weight = {e.id: e.weight for e in G.edges}
    return Fraction(2**n_ee, 2**n_wf) * prod(weight[a] for a, _ in cover.conjugated_wieners)


def _graph_real_total(args) -> Fraction:
    graph, signs, table = args
    return sum((multiplicity_signed(c) for c in decorations(graph, signs, table)), Fraction(0))


def real_tropical_double_hurwitz(g: int, lam, nu, signs, table: LocalRuleTable | None = None, workers: int = 1) -> Fraction:
    """Sum of signed multiplicities over all real decorations of all covers."""
    lam, nu = _coerce(lam, nu)
    r = expected_r(g, lam, nu)
    if r < 0:
        return Fraction(0)
    signs = _check_signs(signs, r)
    table = table or default_table()
    graphs = enumerate_covers(g, lam, nu)
    totals = ordered_map(_graph_real_total, [(G, signs, table) for G in graphs], workers)
    return sum(totals, Fraction(0))


def marked_number(h, mu) -> Fraction:
    """Marked count from an unmarked one: multiply by |Aut(mu)|."""
    return aut_count_tuple(mu) * Fraction(h)


def signed_dot(cover: SignedCover, name: str = "signed_cover") -> str:
    """DOT with conjugated pairs bold, negative edges dashed, positive solid."""
    styles: dict[int, dict[str, str]] = {}
    for pair in cover.conjugated:
        for i in pair:
            styles[i] = {"style": "bold", "penwidth": "3"}
    for i, s in cover.edge_signs:
        styles[i] = {"style": "dashed" if s == "-" else "solid"}
    return to_dot(cover.graph, styles, name=name)

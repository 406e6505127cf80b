"""Local real Hurwitz numbers and the unshrunk covers of the caterpillar line.

Two families of local covers occur over a vertex of the real caterpillar
line: cylinders with profiles (d), (d), (1,...,1), which become 2-valent
subdivision vertices once the leaf ends are shrunk, and pairs of pants with
profiles (d), (a,b), (2,1,...,1), which become the trivalent vertices of a
signed cover. Their refined real Hurwitz numbers have closed forms.

``expand`` regrows the leaf ends of a signed cover and ``shrink`` removes
them again; ``general_multiplicity`` evaluates the multiplicity of a real
tropical cover on the regrown cover, so that comparing it with
``multiplicity_signed`` checks the bookkeeping of the shrinking procedure.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import factorial, prod

from .errors import InvalidInput, UnsupportedConfiguration
from .graphs import JOIN, MonodromyGraph
from .signed import LocalRuleTable, SignedCover, default_table, flip, parse_signs, vertex_star


class Case53(str, Enum):
    ODD = "ODD"
    EVEN_ARC = "EVEN_ARC"
    EVEN_ENDPOINTS = "EVEN_ENDPOINTS"


class Case54(str, Enum):
    D_ODD = "D_ODD"
    D_EVEN_AB_ODD = "D_EVEN_AB_ODD"
    ALL_EVEN = "ALL_EVEN"
    CONJUGATED_AB = "CONJUGATED_AB"


# real (fixed) unramified leaves in each local picture; the rest come in conjugate pairs
REAL_LEAVES_53 = {Case53.ODD: 1, Case53.EVEN_ARC: 0, Case53.EVEN_ENDPOINTS: 2}
REAL_LEAVES_54 = {Case54.D_ODD: 1, Case54.D_EVEN_AB_ODD: 0, Case54.ALL_EVEN: 2, Case54.CONJUGATED_AB: 0}


@dataclass(frozen=True)
class LocalCase53:
    d: int
    case: Case53

    def __post_init__(self):
        case = Case53(self.case)
        object.__setattr__(self, "case", case)
        if self.d < 1:
            raise InvalidInput("degree must be positive")
        if (case is Case53.ODD) != (self.d % 2 == 1):
            raise InvalidInput(f"case {case.value} is inconsistent with d={self.d}")


@dataclass(frozen=True)
class LocalCase54:
    d: int
    a: int
    b: int
    case: Case54
    orientation: str = "-"

    def __post_init__(self):
        case = Case54(self.case)
        object.__setattr__(self, "case", case)
        object.__setattr__(self, "orientation", parse_signs(self.orientation)[0])
        d, a, b = self.d, self.a, self.b
        if a < 1 or b < 1 or a + b != d:
            raise InvalidInput(f"need a + b = d with positive parts, got ({a},{b}) for d={d}")
        ok = {
            Case54.D_ODD: d % 2 == 1,
            Case54.D_EVEN_AB_ODD: d % 2 == 0 and a % 2 == 1,
            Case54.ALL_EVEN: d % 2 == 0 and a % 2 == 0 and d >= 4,
            Case54.CONJUGATED_AB: a == b,
        }[case]
        if not ok:
            raise InvalidInput(f"case {case.value} is inconsistent with d={d}, (a,b)=({a},{b})")


def local_h53(c: LocalCase53) -> Fraction:
    d = c.d
    if c.case is Case53.ODD:
        k = (d - 1) // 2
        return Fraction(2**k * factorial(k))
    if c.case is Case53.EVEN_ARC:
        return Fraction(2 ** (d // 2 - 1) * factorial(d // 2))
    k = (d - 2) // 2
    return Fraction(2**k * factorial(k))


def local_h54(c: LocalCase54) -> Fraction:
    d = c.d
    if c.case is Case54.D_ODD:
        k = (d - 3) // 2
        return Fraction(2**k * factorial(k))
    if c.case is Case54.ALL_EVEN:
        return Fraction(2 ** ((d - 2) // 2) * factorial((d - 4) // 2))
    # D_EVEN_AB_ODD and CONJUGATED_AB share a value but stay distinct cases
    k = (d - 2) // 2
    return Fraction(2**k * factorial(k))


def leaf_symmetry(real_leaves: int, leaf_pairs: int) -> int:
    """Real automorphisms permuting leaves only: fixed leaves freely, pairs as pairs."""
    return factorial(real_leaves) * 2**leaf_pairs * factorial(leaf_pairs)


def cases_53(d: int) -> list[Case53]:
    return [Case53.ODD] if d % 2 else [Case53.EVEN_ARC, Case53.EVEN_ENDPOINTS]


def cases_54(a: int, b: int) -> list[Case54]:
    d = a + b
    if d % 2:
        return [Case54.D_ODD]
    out = [Case54.D_EVEN_AB_ODD if a % 2 else Case54.ALL_EVEN]
    if a == b:
        out.append(Case54.CONJUGATED_AB)
    return out


def unmarked_local_total_53(d: int) -> Fraction:
    """Sum over real cylinder covers of H / (number of leaf markings)."""
    return sum(
        (local_h53(LocalCase53(d, c)) / leaf_symmetry(REAL_LEAVES_53[c], (d - REAL_LEAVES_53[c]) // 2) for c in cases_53(d)),
        Fraction(0),
    )


def unmarked_local_total_54(a: int, b: int) -> Fraction:
    """Same for pairs of pants; equal parts add the swap of the two preimages of 0."""
    d = a + b
    total = Fraction(0)
    for c in cases_54(a, b):
        n_real = REAL_LEAVES_54[c]
        markings = leaf_symmetry(n_real, (d - 2 - n_real) // 2) * (2 if a == b else 1)
        total += local_h54(LocalCase54(d, a, b, c)) / markings
    return total


@dataclass(frozen=True)
class UVertex:
    id: int
    level: int
    kind: str  # "branch" or "subdivision"
    degree: int
    partner: int | None = None
    case: str | None = None
    small: tuple[int, int] | None = None
    orientation: str | None = None
    real_leaves: int = 0
    leaf_pairs: int = 0
    leaves: int = 0  # weight-1 leaves attached to this vertex
    ramified_leaf: bool = False


@dataclass(frozen=True)
class UEdge:
    id: int
    weight: int
    tail: int | None  # None: the end coming from -inf
    head: int | None  # None: the end going to +inf
    partner: int | None = None
    fixed_point: str | None = None

    @property
    def bounded(self) -> bool:
        return self.tail is not None and self.head is not None


@dataclass(frozen=True)
class UnshrunkCover:
    """Real tropical cover of the caterpillar line with all leaf ends present."""

    d: int
    g: int
    r: int
    signs: tuple[str, ...]
    vertices: tuple[UVertex, ...]
    edges: tuple[UEdge, ...]

    @property
    def fixed_vertices(self) -> list[UVertex]:
        return [v for v in self.vertices if v.partner is None]

    @property
    def conjugate_vertex_pairs(self) -> list[tuple[UVertex, UVertex]]:
        by_id = {v.id: v for v in self.vertices}
        return [(v, by_id[v.partner]) for v in self.vertices if v.partner is not None and v.id < v.partner]

    @property
    def conjugate_edge_pairs(self) -> list[tuple[UEdge, UEdge]]:
        by_id = {e.id: e for e in self.edges}
        return [(e, by_id[e.partner]) for e in self.edges if e.partner is not None and e.id < e.partner]


def _vertex_requirements(graph: MonodromyGraph, signs, conj_pairs, table: LocalRuleTable, sign_of):
    """Match every vertex against the table; return the fixed point of each even fixed edge."""
    forced: dict[int, str] = {}
    for level in range(1, graph.r + 1):
        big, small = vertex_star(graph, level)
        pair = tuple(sorted((small[0].id, small[1].id)))
        candidates = []
        for _idx, req in table.matches(signs[level - 1], big.weight, (small[0].weight, small[1].weight), pair in conj_pairs):
            consistent = all(
                need is None or sign_of.get(e.id, need) == need for e, need in zip((big, small[0], small[1]), req)
            )
            if consistent:
                candidates.append(req)
        if len(set(candidates)) != 1:
            raise UnsupportedConfiguration(
                f"vertex {level} matches {len(set(candidates))} admissible local pictures, expected exactly one"
            )
        for e, need in zip((big, small[0], small[1]), candidates[0]):
            if need is not None:
                if forced.setdefault(e.id, need) != need:
                    raise UnsupportedConfiguration(f"edge {e.id} receives two fixed points")
    return forced


def expand(cover: SignedCover, signs, table: LocalRuleTable | None = None) -> UnshrunkCover:
    """Regrow the leaf ends and subdivision vertices of a signed cover."""
    table = table or default_table()
    G = cover.graph
    signs = parse_signs(signs)
    if len(signs) != G.r:
        raise InvalidInput(f"expected {G.r} signs, got {len(signs)}")
    if G.r == 0:
        edge = UEdge(0, G.d, None, None)
        return UnshrunkCover(G.d, G.g, 0, (), (), (edge,))

    conj_pairs = set(cover.conjugated)
    partner_of = {}
    for a, b in cover.conjugated:
        partner_of[a], partner_of[b] = b, a
    sign_of = cover.sign_map
    fixed_point = _vertex_requirements(G, signs, conj_pairs, table, sign_of)

    vertices: dict[int, UVertex] = {}
    edges: list[UEdge] = []
    # branch vertex at level k gets id k - 1
    for level in range(1, G.r + 1):
        big, small = vertex_star(G, level)
        d = big.weight
        a, b = sorted((small[0].weight, small[1].weight), reverse=True)
        pair = tuple(sorted((small[0].id, small[1].id)))
        if d % 2:
            case = Case54.D_ODD
        elif pair in conj_pairs:
            case = Case54.CONJUGATED_AB
        elif a % 2:
            case = Case54.D_EVEN_AB_ODD
        else:
            case = Case54.ALL_EVEN
        n_real = REAL_LEAVES_54[case]
        orientation = signs[level - 1] if G.vertex_kind(level) == JOIN else flip(signs[level - 1])
        vertices[level - 1] = UVertex(
            id=level - 1, level=level, kind="branch", degree=d, case=case.value, small=(a, b),
            orientation=orientation, real_leaves=n_real, leaf_pairs=(d - 2 - n_real) // 2,
            leaves=d - 2, ramified_leaf=True,
        )

    next_vertex = G.r
    chain_vertices: dict[int, list[int]] = {}
    for e in G.edges:
        if e.id in partner_of and partner_of[e.id] < e.id:
            # the conjugate chain is created together with its partner
            continue
        levels = [j for j in range(max(e.source, 0) + 1, min(e.target, G.r + 1)) if 1 <= j <= G.r]
        ids = []
        for j in levels:
            if e.id in partner_of:
                v1, v2 = next_vertex, next_vertex + 1
                next_vertex += 2
                for v, p in ((v1, v2), (v2, v1)):
                    vertices[v] = UVertex(id=v, level=j, kind="subdivision", degree=e.weight, partner=p, leaves=e.weight)
                ids.append((v1, v2))
            else:
                F = fixed_point.get(e.id) if e.weight % 2 == 0 else None
                if e.weight % 2:
                    case53 = Case53.ODD
                elif F is None:
                    raise UnsupportedConfiguration(f"even edge {e.id} has no fixed point")
                elif F == signs[j - 1]:
                    case53 = Case53.EVEN_ENDPOINTS
                else:
                    case53 = Case53.EVEN_ARC
                n_real = REAL_LEAVES_53[case53]
                vertices[next_vertex] = UVertex(
                    id=next_vertex, level=j, kind="subdivision", degree=e.weight, case=case53.value,
                    real_leaves=n_real, leaf_pairs=(e.weight - n_real) // 2, leaves=e.weight,
                )
                ids.append((next_vertex,))
                next_vertex += 1
        chain_vertices[e.id] = ids

    def endpoint(level: int) -> int | None:
        return None if level == 0 or level == G.r + 1 else level - 1

    next_edge = 0
    for e in G.edges:
        if e.id in partner_of and partner_of[e.id] < e.id:
            continue
        ids = chain_vertices[e.id]
        if e.id in partner_of:
            stops_a = [endpoint(e.source)] + [v[0] for v in ids] + [endpoint(e.target)]
            stops_b = [endpoint(e.source)] + [v[1] for v in ids] + [endpoint(e.target)]
            for i in range(len(stops_a) - 1):
                edges.append(UEdge(next_edge, e.weight, stops_a[i], stops_a[i + 1], partner=next_edge + 1))
                edges.append(UEdge(next_edge + 1, e.weight, stops_b[i], stops_b[i + 1], partner=next_edge))
                next_edge += 2
        else:
            F = fixed_point.get(e.id) if e.weight % 2 == 0 else None
            stops = [endpoint(e.source)] + [v[0] for v in ids] + [endpoint(e.target)]
            for i in range(len(stops) - 1):
                edges.append(UEdge(next_edge, e.weight, stops[i], stops[i + 1], fixed_point=F))
                next_edge += 1

    return UnshrunkCover(G.d, G.g, G.r, signs, tuple(vertices[k] for k in sorted(vertices)), tuple(edges))


def _chains(u: UnshrunkCover):
    """Maximal edge paths between branch vertices and ends."""
    by_id = {v.id: v for v in u.vertices}
    out_of: dict[int | None, list[UEdge]] = {}
    for e in u.edges:
        out_of.setdefault(e.tail, []).append(e)
    chains = []
    for e in u.edges:
        if e.tail is not None and by_id[e.tail].kind == "subdivision":
            continue
        path = [e]
        while path[-1].head is not None and by_id[path[-1].head].kind == "subdivision":
            nxt = [x for x in out_of[path[-1].head]]
            if len(nxt) != 1:
                raise UnsupportedConfiguration("subdivision vertex must have one outgoing edge")
            path.append(nxt[0])
        chains.append(path)
    return chains


def _chain_level(u: UnshrunkCover, vertex_id: int | None, start: bool) -> int:
    if vertex_id is None:
        return 0 if start else u.r + 1
    return next(v.level for v in u.vertices if v.id == vertex_id)


def shrink(u: UnshrunkCover) -> SignedCover:
    """Drop leaf ends, merge through subdivision vertices, read off (I, S)."""
    if u.r == 0:
        return SignedCover(MonodromyGraph.bare_edge(u.d), (), ())
    chains = _chains(u)
    triples = []
    info = []
    edge_to_chain = {}
    for ci, path in enumerate(chains):
        s = _chain_level(u, path[0].tail, True)
        t = _chain_level(u, path[-1].head, False)
        triples.append((s, t, path[0].weight))
        for e in path:
            edge_to_chain[e.id] = ci
        fixed_points = {e.fixed_point for e in path if e.bounded and e.partner is None and e.weight % 2 == 0}
        if len(fixed_points) > 1:
            raise UnsupportedConfiguration("pieces of one even edge carry different fixed points")
        info.append(fixed_points.pop() if fixed_points else None)
    graph = MonodromyGraph.from_triples(u.d, u.g, u.r, triples)
    slots: dict[tuple, list[int]] = {}
    for e in graph.edges:
        slots.setdefault(e.key, []).append(e.id)
    chain_edge = {}
    for ci, key in enumerate(triples):
        chain_edge[ci] = slots[(key[0], key[1], key[2])].pop(0)
    conjugated = set()
    signs = {}
    for ci, path in enumerate(chains):
        eid = chain_edge[ci]
        if path[0].partner is not None:
            other = chain_edge[edge_to_chain[path[0].partner]]
            conjugated.add(tuple(sorted((eid, other))))
        elif 0 < triples[ci][0] and triples[ci][1] <= u.r and path[0].weight % 2 == 0:
            signs[eid] = info[ci]
    return SignedCover(graph, tuple(sorted(conjugated)), tuple(sorted(signs.items())))


def vertex_alpha(v: UVertex) -> int:
    """Automorphisms of the cover exchanging only the leaves at ``v``."""
    if v.partner is not None:
        return factorial(v.degree)
    return leaf_symmetry(v.real_leaves, v.leaf_pairs)


def local_real_number(v: UVertex) -> Fraction:
    if v.partner is not None:
        raise InvalidInput("conjugate vertices carry complex local numbers")
    if v.kind == "subdivision":
        return local_h53(LocalCase53(v.degree, Case53(v.case)))
    a, b = v.small
    return local_h54(LocalCase54(v.degree, a, b, Case54(v.case), v.orientation))


def local_complex_number(v: UVertex) -> Fraction:
    # marked one-vertex cyclic cover: w!/w
    return Fraction(factorial(v.degree), v.degree)


def general_multiplicity(u: UnshrunkCover) -> Fraction:
    """2^|EE| / |Aut| times local real numbers, conjugate weights and local complex numbers.

    EE counts bounded fixed edges of even weight; ends never contribute.
    |Aut| is the parallel-chain swaps of the shrunk cover times the leaf
    symmetries at every vertex orbit.
    """
    if not u.vertices:
        return Fraction(1)
    n_ee = sum(1 for e in u.edges if e.bounded and e.partner is None and e.weight % 2 == 0)
    chains = _chains(u)
    groups: dict[tuple, int] = {}
    for path in chains:
        key = (path[0].tail, path[-1].head, path[0].weight)
        groups[key] = groups.get(key, 0) + 1
    aut_shrunk = 2 ** sum(1 for n in groups.values() if n == 2)
    orbits_alpha = [vertex_alpha(v) for v in u.fixed_vertices] + [vertex_alpha(a) for a, _ in u.conjugate_vertex_pairs]
    aut = aut_shrunk * prod(orbits_alpha)
    real_local = prod((local_real_number(v) for v in u.fixed_vertices), start=Fraction(1))
    conj_edges = prod(a.weight for a, _ in u.conjugate_edge_pairs if a.bounded)
    complex_local = prod((local_complex_number(a) for a, _ in u.conjugate_vertex_pairs), start=Fraction(1))
    return Fraction(2**n_ee, aut) * real_local * conj_edges * complex_local

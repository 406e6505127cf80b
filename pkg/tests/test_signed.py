import json
from fractions import Fraction

import pytest

import naive
from trophurwitz.checks import double_hurwitz_cases
from trophurwitz.errors import InvalidInput, SignLengthMismatch
from trophurwitz.graphs import MonodromyGraph, enumerate_covers
from trophurwitz.signed import (
    LocalRuleTable,
    SignedCover,
    all_sign_vectors,
    decorations,
    default_table,
    even_edges,
    marked_number,
    multiplicity_signed,
    parse_signs,
    real_tropical_double_hurwitz,
    signed_dot,
)

SPLIT_FIRST = MonodromyGraph.from_triples(5, 0, 2, [(0, 1, 5), (1, 2, 2), (1, 3, 3), (2, 3, 1), (2, 3, 1)])
SPLIT_FOUR = MonodromyGraph.from_triples(5, 0, 2, [(0, 1, 5), (1, 2, 4), (1, 3, 1), (2, 3, 1), (2, 3, 3)])


@pytest.mark.parametrize("text, out", [("+-", ("+", "-")), ("+ −", ("+", "-")), (["-", "+"], ("-", "+")), ("pm", ("+", "-")), ("", ())])
def test_parse_signs(text, out):
    assert parse_signs(text) == out


def test_parse_signs_rejects_other_characters():
    with pytest.raises(InvalidInput):
        parse_signs("+x")


def test_sign_vectors():
    assert all_sign_vectors(0) == [()]
    assert len(all_sign_vectors(3)) == 8


def test_example_values():
    assert real_tropical_double_hurwitz(0, [5], [3, 1, 1], "++") == 1
    assert real_tropical_double_hurwitz(0, [5], [3, 1, 1], "-+") == 3


def test_example_decorations():
    plus = decorations(SPLIT_FIRST, "++")
    # the real cover over ++ conjugates the fork of right ends
    assert len(plus) == 1 and plus[0].conjugated == ((3, 4),)
    assert multiplicity_signed(plus[0]) == Fraction(2, 2)
    assert decorations(SPLIT_FOUR, "++") == []
    minus_plus = decorations(SPLIT_FOUR, "-+")
    assert len(minus_plus) == 1
    assert minus_plus[0].edge_signs == ((1, "-"),)
    assert multiplicity_signed(minus_plus[0]) == 2
    first = decorations(SPLIT_FIRST, "-+")
    assert [multiplicity_signed(c) for c in first] == [1]


def test_sign_domain_is_even_edges():
    for G in enumerate_covers(1, [4], [2, 2]):
        for signs in all_sign_vectors(G.r):
            for c in decorations(G, signs):
                assert sorted(dict(c.edge_signs)) == sorted(even_edges(G, c.conjugated_wieners))


def test_sign_length_mismatch():
    with pytest.raises(SignLengthMismatch):
        real_tropical_double_hurwitz(0, [5], [3, 1, 1], "+")
    with pytest.raises(SignLengthMismatch):
        decorations(SPLIT_FIRST, "+++")


def test_r_zero_convention():
    assert real_tropical_double_hurwitz(0, [4], [4], "") == 1


@pytest.mark.parametrize("g, lam, nu", double_hurwitz_cases(4, 4, min_degree=2))
def test_matches_involution_chains(g, lam, nu):
    r = 2 * g - 2 + len(lam) + len(nu)
    for signs in all_sign_vectors(r):
        assert real_tropical_double_hurwitz(g, lam, nu, signs) == naive.real_double(g, lam, nu, signs)


def test_table_loads_and_is_stable():
    table = default_table()
    assert len(table.entries) == 8
    assert {e.family for e in table.entries} == {"d_odd", "d_even_ab_odd", "all_even", "conjugated_ab"}
    assert table.digest() == LocalRuleTable.load().digest()


def test_table_rejects_join_orientation(tmp_path):
    obj = {"format": 1, "base_orientation": "join", "entries": []}
    path = tmp_path / "t.json"
    path.write_text(json.dumps(obj))
    with pytest.raises(InvalidInput):
        LocalRuleTable.load(path)


def test_json_round_trip_and_encoding():
    c = decorations(SPLIT_FOUR, "-+")[0]
    back = SignedCover.from_json(json.loads(json.dumps(c.to_json())))
    assert back == c
    assert back.encoding() == c.encoding()
    assert c.encoding().endswith(b"|I=|S=1-2:4-")


def test_dot_conventions():
    conj = signed_dot(decorations(SPLIT_FIRST, "++")[0])
    assert conj.count('style="bold"') == 2
    neg = signed_dot(decorations(SPLIT_FOUR, "-+")[0])
    assert 'style="dashed"' in neg


def test_marked_number():
    assert marked_number(3, [[5], [3, 1, 1]]) == 6


def test_parallel_matches_serial():
    serial = real_tropical_double_hurwitz(1, [3, 1], [2, 2], "+-+-")
    assert real_tropical_double_hurwitz(1, [3, 1], [2, 2], "+-+-", workers=2) == serial

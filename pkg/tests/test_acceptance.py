"""Acceptance criteria, one test per criterion.

Run with ``pytest tests/test_acceptance.py`` (summary lines appear at the end)
or directly with ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import os
import sys
import time
from fractions import Fraction

import pytest

from trophurwitz.checks import (
    bridge_sweep,
    double_hurwitz_cases,
    oracle_sweep,
    run_check,
    local_table_rows,
)
from trophurwitz.graphs import (
    canonicalize,
    check_graph,
    complex_tropical_double_hurwitz,
    enumerate_covers,
    marked_end_count,
)
from trophurwitz.local import (
    REAL_LEAVES_53,
    REAL_LEAVES_54,
    LocalCase53,
    LocalCase54,
    cases_53,
    cases_54,
    leaf_symmetry,
    local_h53,
    local_h54,
    unmarked_local_total_53,
)
from trophurwitz.partitions import Partition, aut_count
from trophurwitz.signed import marked_number, real_tropical_double_hurwitz
from trophurwitz.symgroup import complex_double_hurwitz_oracle, complex_hurwitz_sphere
from trophurwitz.values import format_value

EXAMPLE = (0, Partition([5]), Partition([3, 1, 1]))


def criterion_1():
    start = time.perf_counter()
    plus = real_tropical_double_hurwitz(*EXAMPLE, "++")
    minus_plus = real_tropical_double_hurwitz(*EXAMPLE, "-+")
    elapsed = time.perf_counter() - start
    ok = plus == 1 and minus_plus == 3 and elapsed < 1.0
    return ok, f"(+,+) -> {format_value(plus)}, (-,+) -> {format_value(minus_plus)}, {elapsed:.3f}s (limit 1s)"


def criterion_2():
    start = time.perf_counter()
    rows = oracle_sweep(6, 6)
    elapsed = time.perf_counter() - start
    failed = [r for r in rows if not r.ok]
    ok = not failed and elapsed < 600
    return ok, f"{len(rows) - len(failed)}/{len(rows)} cases equal for d<=6, r<=6, {elapsed:.1f}s (limit 600s)"


def criterion_3():
    values = {}
    for d in range(2, 7):
        values[d] = complex_hurwitz_sphere(0, [[d], [d], [1] * d]).value
    ok = all(v == Fraction(1, d) for d, v in values.items())
    return ok, "values " + ", ".join(f"d={d}: {format_value(v)}" for d, v in values.items())


def criterion_4():
    checked = 0
    bad = []
    for d in range(1, 11):
        for case in cases_53(d):
            n_real = REAL_LEAVES_53[case]
            alpha = leaf_symmetry(n_real, (d - n_real) // 2)
            expected = alpha if d % 2 else Fraction(alpha, 2)
            checked += 1
            if local_h53(LocalCase53(d, case)) != expected:
                bad.append(f"cylinder d={d} {case.value}")
        for a in range(1, d):
            for case in cases_54(a, d - a):
                n_real = REAL_LEAVES_54[case]
                expected = leaf_symmetry(n_real, (d - 2 - n_real) // 2)
                for orientation in "+-":
                    checked += 1
                    if local_h54(LocalCase54(d, a, d - a, case, orientation)) != expected:
                        bad.append(f"pants d={d} a={a} {case.value}")
    sums = [unmarked_local_total_53(d) for d in range(1, 11)]
    pants = [row for row in local_table_rows(10) if row.name.startswith("pants")]
    ok = not bad and all(s == 1 for s in sums) and all(row.ok for row in pants)
    return ok, f"{checked - len(bad)}/{checked} local values match; weighted cylinder sums {set(map(str, sums))}; pants sums ok={all(r.ok for r in pants)}"


def criterion_5():
    start = time.perf_counter()
    rows = bridge_sweep(6, 4)
    elapsed = time.perf_counter() - start
    covers = sum(int(r.detail.split()[0].split("=")[1]) for r in rows)
    failed = [r for r in rows if not r.ok]
    ok = not failed and elapsed < 300
    return ok, f"{covers} signed covers over {len(rows)} cases agree, {len(failed)} failing cases, {elapsed:.1f}s (limit 300s)"


def criterion_6():
    graphs = 0
    problems = []
    for g, lam, nu in double_hurwitz_cases(8, 5):
        covers = enumerate_covers(g, lam, nu)
        codes = [canonicalize(G) for G in covers]
        if len(set(codes)) != len(codes):
            problems.append(f"duplicate encodings for g={g} {lam} {nu}")
        for G in covers:
            graphs += 1
            issues = check_graph(G)
            if issues:
                problems.append(f"g={g} {lam} {nu}: {issues[0]}")
    return not problems, f"{graphs} graphs (d<=8, r<=5) checked, {len(problems)} problems"


def criterion_7():
    checked = 0
    bad = []
    for g, lam, nu in double_hurwitz_cases(6, 6):
        h = complex_tropical_double_hurwitz(g, lam, nu)
        marked = marked_end_count(g, lam, nu)
        oracle_marked = marked_number(complex_double_hurwitz_oracle(g, lam, nu).value, [lam, nu])
        checked += 1
        if not (marked == aut_count(lam) * aut_count(nu) * h == oracle_marked):
            bad.append(f"g={g} {lam} {nu}")
    for signs in ("++", "-+"):
        h = real_tropical_double_hurwitz(*EXAMPLE, signs)
        checked += 1
        if marked_number(h, [EXAMPLE[1], EXAMPLE[2]]) != 2 * h:
            bad.append(f"example {signs}")
    return not bad, f"{checked - len(bad)}/{checked} cases satisfy marked = |Aut(lambda)||Aut(nu)| * unmarked"


def criterion_8():
    workers = max(2, os.cpu_count() or 1)
    ok1, serial = run_check(workers=1)
    okn, parallel = run_check(workers=workers)
    same = serial == parallel
    text = "\n".join(serial).encode()
    return same and ok1 and okn, f"{len(text)} bytes, identical for 1 and {workers} workers: {same}; check status {ok1 and okn}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]
TITLES = {
    1: "pinned real values for (5) and (3,1,1)",
    2: "tropical count equals permutation count",
    3: "one-cycle pin equals 1/d",
    4: "local closed forms and weighted sums",
    5: "signed multiplicity equals general multiplicity",
    6: "structural invariants and canonical uniqueness",
    7: "marked and unmarked counts consistent",
    8: "check output independent of worker count",
}


def _line(n: int, ok: bool, detail: str) -> str:
    return f"{'PASS' if ok else 'FAIL'} criterion {n} ({TITLES[n]}): {detail}"


@pytest.mark.parametrize("n", range(1, 9))
def test_criterion(n, acceptance_report):
    ok, detail = CRITERIA[n - 1]()
    acceptance_report(_line(n, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    all_ok = True
    for n, fn in enumerate(CRITERIA, start=1):
        ok, detail = fn()
        all_ok = all_ok and ok
        print(_line(n, ok, detail), flush=True)
    sys.exit(0 if all_ok else 1)

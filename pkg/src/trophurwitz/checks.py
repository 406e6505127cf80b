"""Cross-check sweeps shared by the ``check`` command and the acceptance tests."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UnsupportedConfiguration
from .graphs import complex_tropical_double_hurwitz, enumerate_covers
from .local import (
    cases_53,
    cases_54,
    expand,
    general_multiplicity,
    shrink,
    unmarked_local_total_53,
    unmarked_local_total_54,
)
from .parallel import ordered_map
from .partitions import Partition, enumerate_partitions
from .signed import (
    LocalRuleTable,
    all_sign_vectors,
    decorations,
    default_table,
    multiplicity_signed,
    real_tropical_double_hurwitz,
)
from .symgroup import complex_double_hurwitz_oracle, real_double_hurwitz_oracle
from .values import format_value


def double_hurwitz_cases(max_degree: int, max_r: int, min_degree: int = 1):
    """(g, lam, nu) with lam, nu of equal degree and 0 <= r <= max_r, in fixed order."""
    out = []
    for d in range(min_degree, max_degree + 1):
        parts = enumerate_partitions(d)
        for lam in parts:
            for nu in parts:
                base = lam.length + nu.length - 2
                g = 0
                while 2 * g + base <= max_r:
                    r = 2 * g + base
                    if r >= 0 and not (r > 0 and d < 2):
                        out.append((g, lam, nu))
                    g += 1
    return out


@dataclass(frozen=True)
class CheckRow:
    name: str
    ok: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}: {self.detail}"


def _oracle_case(case) -> CheckRow:
    g, lam, nu = case
    trop = complex_tropical_double_hurwitz(g, lam, nu)
    oracle = complex_double_hurwitz_oracle(g, lam, nu).value
    return CheckRow(
        f"complex g={g} lambda={lam} nu={nu}",
        trop == oracle,
        f"tropical={format_value(trop)} oracle={format_value(oracle)}",
    )


def oracle_sweep(max_degree: int = 6, max_r: int = 6, workers: int = 1) -> list[CheckRow]:
    return ordered_map(_oracle_case, double_hurwitz_cases(max_degree, max_r), workers)


def _bridge_case(args) -> CheckRow:
    (g, lam, nu), table = args
    r = 2 * g - 2 + lam.length + nu.length
    graphs = enumerate_covers(g, lam, nu)
    checked = mismatches = roundtrip_failures = 0
    for signs in all_sign_vectors(r):
        for G in graphs:
            for c in decorations(G, signs, table):
                checked += 1
                try:
                    u = expand(c, signs, table)
                except UnsupportedConfiguration:
                    mismatches += 1
                    continue
                if general_multiplicity(u) != multiplicity_signed(c):
                    mismatches += 1
                if shrink(u).encoding() != c.encoding():
                    roundtrip_failures += 1
    return CheckRow(
        f"bridge g={g} lambda={lam} nu={nu}",
        mismatches == 0 and roundtrip_failures == 0,
        f"covers={checked} multiplicity_mismatches={mismatches} roundtrip_failures={roundtrip_failures}",
    )


def bridge_sweep(max_degree: int = 6, max_r: int = 4, table: LocalRuleTable | None = None, workers: int = 1) -> list[CheckRow]:
    table = table or default_table()
    cases = double_hurwitz_cases(max_degree, max_r)
    return ordered_map(_bridge_case, [(c, table) for c in cases], workers)


def _real_case(args) -> CheckRow:
    (g, lam, nu), table = args
    r = 2 * g - 2 + lam.length + nu.length
    by_negatives: dict[int, Fraction] = {}
    bad = []
    for signs in all_sign_vectors(r):
        n_neg = signs.count("-")
        if n_neg not in by_negatives:
            by_negatives[n_neg] = real_double_hurwitz_oracle(g, lam, nu, signs, max_degree=lam.degree).value
        got = real_tropical_double_hurwitz(g, lam, nu, signs, table)
        if got != by_negatives[n_neg]:
            bad.append(f"{''.join(signs)}:{format_value(got)}!={format_value(by_negatives[n_neg])}")
    return CheckRow(
        f"real g={g} lambda={lam} nu={nu}",
        not bad,
        f"sign_vectors={2**r} mismatches={len(bad)}" + (f" [{' '.join(bad[:4])}]" if bad else ""),
    )


def real_oracle_sweep(max_degree: int = 6, max_r: int = 4, table: LocalRuleTable | None = None, workers: int = 1) -> list[CheckRow]:
    """Tropical real counts against real covers built from involution chains."""
    table = table or default_table()
    cases = double_hurwitz_cases(max_degree, max_r)
    return ordered_map(_real_case, [(c, table) for c in cases], workers)


# pinned (signs, value) pairs for g=0, lambda=(5), nu=(3,1,1)
EXAMPLE_PINS = ((("+", "+"), Fraction(1)), (("-", "+"), Fraction(3)))


def example_pins(table: LocalRuleTable | None = None) -> list[CheckRow]:
    rows = []
    for signs, expected in EXAMPLE_PINS:
        got = real_tropical_double_hurwitz(0, Partition([5]), Partition([3, 1, 1]), signs, table)
        rows.append(
            CheckRow(
                f"real g=0 lambda=(5) nu=(3,1,1) signs={''.join(signs)}",
                got == expected,
                f"value={format_value(got)} expected={format_value(expected)}",
            )
        )
    return rows


def local_table_rows(max_degree: int = 10) -> list[CheckRow]:
    rows = []
    for d in range(1, max_degree + 1):
        total = unmarked_local_total_53(d)
        rows.append(CheckRow(f"cylinder d={d} cases={len(cases_53(d))}", total == 1, f"unmarked total={format_value(total)}"))
    for d in range(2, max_degree + 1):
        for a in range(d - 1, (d - 1) // 2, -1):
            b = d - a
            if a < b:
                continue
            total = unmarked_local_total_54(a, b)
            rows.append(
                CheckRow(f"pants d={d} (a,b)=({a},{b}) cases={len(cases_54(a, b))}", total == 1, f"unmarked total={format_value(total)}")
            )
    return rows


def run_check(
    sweep_degree: int = 6,
    max_r: int = 6,
    bridge_r: int = 4,
    table: LocalRuleTable | None = None,
    workers: int = 1,
) -> tuple[bool, list[str]]:
    """Run every sweep; return overall status and a deterministic report."""
    table = table or default_table()
    sections = [
        ("example", example_pins(table)),
        ("local tables", local_table_rows(max(sweep_degree, 2))),
        ("oracle equality", oracle_sweep(sweep_degree, max_r, workers)),
        ("bridge", bridge_sweep(sweep_degree, bridge_r, table, workers)),
        ("real oracle equality", real_oracle_sweep(sweep_degree, bridge_r, table, workers)),
    ]
    lines = []
    ok = True
    for title, rows in sections:
        failed = sum(1 for row in rows if not row.ok)
        ok = ok and failed == 0
        lines.append(f"== {title}: {len(rows) - failed}/{len(rows)} passed")
        lines.extend(row.line() for row in rows)
    lines.append(f"== overall: {'PASS' if ok else 'FAIL'}")
    return ok, lines

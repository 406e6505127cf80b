"""Command-line front end.

    trophurwitz complex  -g 0 -l 5 -n 3,1,1
    trophurwitz oracle   -g 0 -l 5 -n 3,1,1
    trophurwitz real     -g 0 -l 5 -n 3,1,1 -s -+
    trophurwitz real-all -g 0 -l 5 -n 3,1,1 --format csv
    trophurwitz enumerate -g 0 -l 5 -n 3,1,1 [-s ++] --format dot
    trophurwitz check --threads 4
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .cache import ResultCache
from .checks import run_check
from .errors import DegreeCeilingExceeded, InvalidInput, SignLengthMismatch, UnsupportedConfiguration
from .graphs import (
    canonicalize,
    complex_multiplicity,
    complex_tropical_double_hurwitz,
    enumerate_covers,
    expected_r,
    to_dot,
)
from .partitions import Partition
from .signed import (
    LocalRuleTable,
    all_sign_vectors,
    decorations,
    default_table,
    multiplicity_signed,
    parse_signs,
    real_tropical_double_hurwitz,
    signed_dot,
)
from .symgroup import complex_double_hurwitz_oracle, default_max_degree
from .values import format_value, value_to_json

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BAD_PARTITION = 3
EXIT_SIGN_MISMATCH = 4
EXIT_CEILING = 5
EXIT_UNSUPPORTED = 6

COMMANDS = ("complex", "oracle", "real", "real-all", "enumerate", "check")
FORMATS = ("text", "json", "csv", "dot")


@dataclass
class JobSpec:
    command: str
    g: int = 0
    lam: Partition | None = None
    nu: Partition | None = None
    signs: tuple[str, ...] | None = None
    max_degree: int = field(default_factory=default_max_degree)
    fmt: str = "text"
    cache: str | None = None
    threads: int = 1
    rules: str | None = None
    sweep_degree: int = 6
    sweep_r: int = 6
    bridge_r: int = 4

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise InvalidInput(f"unknown command {self.command!r}")
        if self.command == "check":
            if self.sweep_degree > self.max_degree:
                raise DegreeCeilingExceeded(f"sweep degree {self.sweep_degree} exceeds the oracle ceiling {self.max_degree}")
            return
        if self.lam is None or self.nu is None:
            raise InvalidInput("both --lambda and --nu are required")
        if self.lam.degree != self.nu.degree:
            raise InvalidInput(f"degrees differ: |lambda|={self.lam.degree}, |nu|={self.nu.degree}")
        if self.g < 0:
            raise InvalidInput("genus must be non-negative")
        if self.command == "real" and self.signs is None:
            raise InvalidInput("command real needs --signs")
        if self.command not in ("real", "enumerate") and self.signs is not None:
            raise InvalidInput(f"command {self.command} takes no signs")
        if self.signs is not None:
            r = expected_r(self.g, self.lam, self.nu)
            if len(self.signs) != r:
                raise SignLengthMismatch(f"expected {r} signs for g={self.g}, lambda={self.lam}, nu={self.nu}; got {len(self.signs)}")
        if self.fmt == "dot" and self.command != "enumerate":
            raise InvalidInput("--format dot is only available for enumerate")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except InvalidInput as exc:
        raise _BadPartition(str(exc)) from None


class _BadPartition(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="trophurwitz", description="Tropical complex and real double Hurwitz numbers of the line.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("-g", "--genus", dest="g", type=int, default=0)
    parser.add_argument("-l", "--lambda", dest="lam", help="profile over 0, comma separated")
    parser.add_argument("-n", "--nu", dest="nu", help="profile over infinity, comma separated")
    parser.add_argument("-s", "--signs", dest="signs", help="one of + or - per simple branch point")
    parser.add_argument("--format", dest="fmt", choices=FORMATS, default="text")
    parser.add_argument("--max-degree", type=int, default=None, help="oracle degree ceiling (env TROPHURWITZ_MAX_DEGREE)")
    parser.add_argument("--threads", type=int, default=1, help="worker processes; 0 means all cores")
    parser.add_argument("--cache", default=None, help="append-only result store (env TROPHURWITZ_CACHE)")
    parser.add_argument("--rules", default=None, help="alternative local rule table (JSON)")
    parser.add_argument("--sweep-degree", type=int, default=None, help="check: largest degree swept (default min(ceiling, 6))")
    parser.add_argument("--sweep-r", type=int, default=6, help="check: largest r in the oracle sweep")
    parser.add_argument("--bridge-r", type=int, default=4, help="check: largest r in the bridge sweep")
    return parser


def _glue_sign_args(argv: list[str]) -> list[str]:
    """Let ``-s -+`` through argparse, which would read ``-+`` as an option."""
    out = []
    it = iter(argv)
    for arg in it:
        value = next(it, None) if arg in ("-s", "--signs") else None
        out.append(f"--signs={value}" if value is not None else arg)
    return out


def parse_job(argv: list[str]) -> JobSpec:
    ns = build_parser().parse_args(_glue_sign_args(argv))
    max_degree = ns.max_degree if ns.max_degree is not None else default_max_degree()
    job = JobSpec(
        command=ns.command,
        g=ns.g,
        lam=_partition(ns.lam) if ns.lam is not None else None,
        nu=_partition(ns.nu) if ns.nu is not None else None,
        signs=parse_signs(ns.signs) if ns.signs is not None else None,
        max_degree=max_degree,
        fmt=ns.fmt,
        cache=ns.cache or os.environ.get("TROPHURWITZ_CACHE"),
        threads=ns.threads,
        rules=ns.rules,
        sweep_degree=ns.sweep_degree if ns.sweep_degree is not None else min(max_degree, 6),
        sweep_r=ns.sweep_r,
        bridge_r=ns.bridge_r,
    )
    job.validate()
    return job


def _table(job: JobSpec) -> LocalRuleTable:
    return LocalRuleTable.load(job.rules) if job.rules else default_table()


def _cache_fields(job: JobSpec, table: LocalRuleTable | None) -> dict:
    fields = {"command": job.command, "g": job.g, "lambda": list(job.lam), "nu": list(job.nu)}
    if job.signs is not None:
        fields["signs"] = "".join(job.signs)
    if table is not None:
        fields["rules"] = table.digest()
    return fields


def _cached(job: JobSpec, table: LocalRuleTable | None, compute) -> Fraction:
    store = ResultCache(job.cache) if job.cache else None
    fields = _cache_fields(job, table)
    if store is not None:
        hit = store.get(fields)
        if hit is not None:
            return hit
    value = compute()
    if store is not None:
        store.put(fields, value)
    return value


def _emit_value(job: JobSpec, value: Fraction) -> str:
    if job.fmt == "json":
        obj = {"command": job.command, "g": job.g, "lambda": list(job.lam), "nu": list(job.nu), "value": value_to_json(value)}
        if job.signs is not None:
            obj["signs"] = "".join(job.signs)
        return json.dumps(obj, sort_keys=True) + "\n"
    if job.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header = ["command", "g", "lambda", "nu"] + (["signs"] if job.signs is not None else []) + ["value"]
        row = [job.command, job.g, ",".join(map(str, job.lam)), ",".join(map(str, job.nu))]
        if job.signs is not None:
            row.append("".join(job.signs))
        writer.writerows([header, row + [format_value(value)]])
        return buf.getvalue()
    return format_value(value) + "\n"


def _run_real_all(job: JobSpec, table: LocalRuleTable) -> str:
    r = expected_r(job.g, job.lam, job.nu)
    rows = []
    for signs in all_sign_vectors(max(r, 0)):
        sub = JobSpec("real", job.g, job.lam, job.nu, signs, job.max_degree, job.fmt, job.cache, job.threads, job.rules)
        value = _cached(sub, table, lambda: real_tropical_double_hurwitz(job.g, job.lam, job.nu, signs, table, job.threads))
        rows.append(("".join(signs), value))
    if job.fmt == "json":
        obj = {
            "command": job.command,
            "g": job.g,
            "lambda": list(job.lam),
            "nu": list(job.nu),
            "values": [{"signs": s, "value": value_to_json(v)} for s, v in rows],
        }
        return json.dumps(obj, sort_keys=True) + "\n"
    if job.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["signs", "value"])
        writer.writerows((s, format_value(v)) for s, v in rows)
        return buf.getvalue()
    return "".join(f"{s or '()'} {format_value(v)}\n" for s, v in rows)


def _run_enumerate(job: JobSpec, table: LocalRuleTable) -> str:
    graphs = enumerate_covers(job.g, job.lam, job.nu, workers=job.threads)
    if job.signs is None:
        if job.fmt == "dot":
            return "".join(to_dot(G, name=f"cover_{i}") for i, G in enumerate(graphs))
        if job.fmt == "json":
            items = [dict(G.to_json(), multiplicity=value_to_json(complex_multiplicity(G))) for G in graphs]
            return json.dumps(items, sort_keys=True, indent=1) + "\n"
        return "".join(f"{canonicalize(G).decode()} {format_value(complex_multiplicity(G))}\n" for G in graphs)
    covers = [c for G in graphs for c in decorations(G, job.signs, table)]
    if job.fmt == "dot":
        return "".join(signed_dot(c, name=f"signed_cover_{i}") for i, c in enumerate(covers))
    if job.fmt == "json":
        items = [dict(c.to_json(), multiplicity=value_to_json(multiplicity_signed(c))) for c in covers]
        return json.dumps(items, sort_keys=True, indent=1) + "\n"
    return "".join(f"{c.encoding().decode()} {format_value(multiplicity_signed(c))}\n" for c in covers)


def run(job: JobSpec, out=None) -> int:
    out = out or sys.stdout
    table = _table(job)
    if job.command == "check":
        ok, lines = run_check(job.sweep_degree, job.sweep_r, job.bridge_r, table, job.threads)
        if job.fmt == "json":
            out.write(json.dumps({"ok": ok, "report": lines}, sort_keys=True) + "\n")
        else:
            out.write("\n".join(lines) + "\n")
        return EXIT_OK if ok else EXIT_CHECK_FAILED
    if job.command == "complex":
        value = _cached(job, None, lambda: complex_tropical_double_hurwitz(job.g, job.lam, job.nu, job.threads))
        out.write(_emit_value(job, value))
    elif job.command == "oracle":
        if job.lam.degree > job.max_degree:
            raise DegreeCeilingExceeded(f"degree {job.lam.degree} exceeds the oracle ceiling {job.max_degree}")
        value = _cached(job, None, lambda: complex_double_hurwitz_oracle(job.g, job.lam, job.nu, job.max_degree).value)
        out.write(_emit_value(job, value))
    elif job.command == "real":
        value = _cached(job, table, lambda: real_tropical_double_hurwitz(job.g, job.lam, job.nu, job.signs, table, job.threads))
        out.write(_emit_value(job, value))
    elif job.command == "real-all":
        out.write(_run_real_all(job, table))
    else:
        out.write(_run_enumerate(job, table))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        job = parse_job(argv)
        return run(job)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _BadPartition as exc:
        print(f"error: malformed partition: {exc}", file=sys.stderr)
        return EXIT_BAD_PARTITION
    except SignLengthMismatch as exc:
        print(f"error: sign vector length: {exc}", file=sys.stderr)
        return EXIT_SIGN_MISMATCH
    except InvalidInput as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return EXIT_BAD_PARTITION
    except DegreeCeilingExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CEILING
    except UnsupportedConfiguration as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())

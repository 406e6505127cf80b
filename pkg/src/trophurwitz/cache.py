"""Append-only JSON-lines result cache.

Each line stores the key fields, the exact value and a sha256 over both;
lines whose hash does not verify are ignored, so a torn write can never
produce a wrong answer. Later lines win.
"""
from __future__ import annotations

import hashlib
import json
import os
from fractions import Fraction
from pathlib import Path

from .values import value_from_json, value_to_json

ENV_VAR = "TROPHURWITZ_CACHE"


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


class ResultCache:
    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)
        self._entries: dict[str, Fraction] | None = None

    @classmethod
    def from_env(cls, path: str | None = None) -> "ResultCache | None":
        path = path or os.environ.get(ENV_VAR)
        return cls(path) if path else None

    @staticmethod
    def key(fields: dict) -> str:
        return _digest(fields)

    def _load(self) -> dict[str, Fraction]:
        if self._entries is None:
            self._entries = {}
            if self.path.exists():
                for line in self.path.read_text().splitlines():
                    try:
                        rec = json.loads(line)
                        body = {"key": rec["key"], "fields": rec["fields"], "value": rec["value"]}
                        if _digest(body) != rec["sha256"] or _digest(rec["fields"]) != rec["key"]:
                            continue
                        self._entries[rec["key"]] = value_from_json(rec["value"])
                    except (ValueError, KeyError, TypeError):
                        continue
        return self._entries

    def get(self, fields: dict) -> Fraction | None:
        return self._load().get(self.key(fields))

    def put(self, fields: dict, value: Fraction) -> None:
        body = {"key": self.key(fields), "fields": fields, "value": value_to_json(value)}
        rec = dict(body, sha256=_digest(body))
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a") as fh:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
        self._load()[body["key"]] = Fraction(value)

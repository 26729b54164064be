"""Canonical JSON helpers shared by transcripts, logs and the wire protocol.

One encoding everywhere keeps golden files and replay comparisons
byte-stable: sorted keys, compact separators, ASCII-only.
"""

from __future__ import annotations

import json


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def dumps_jsonl(records) -> str:
    """One canonical JSON object per line, trailing newline included."""
    return "".join(canonical_json(r) + "\n" for r in records)


def loads_jsonl(text: str) -> list:
    records = []
    for line in text.splitlines():
        if line.strip():
            records.append(json.loads(line))
    return records

"""Trade file I/O: CSV and NDJSON, cost or price columns, s or ns clocks.

Two row layouts are supported, named by their columns:

    ts_cost_volume   — ts, cost, volume
    ts_price_volume  — ts, price, volume  (cost is derived as price*volume)

Timestamps are decimal seconds, or integer nanoseconds converted to
seconds at load (precision past microseconds is lost in the conversion).
Files are UTF-8 text with '.' decimal separators; CSV carries an exact
header line, NDJSON one object per line with the same field names.

write_trades + load_trades round-trip a series bit-exactly in both
layouts: floats are serialized with shortest round-trip formatting, and
the price column is chosen so that price*volume reproduces the stored
cost exactly (see _price_for_exact_cost).
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass

from .errors import ParseError
from .trades import TradeSeries, validate_series

SCHEMA_VARIANTS = ("ts_cost_volume", "ts_price_volume")
TIMESTAMP_UNITS = ("seconds", "nanoseconds")

_FIELDS = {
    "ts_cost_volume": ("ts", "cost", "volume"),
    "ts_price_volume": ("ts", "price", "volume"),
}


@dataclass(frozen=True)
class IngestSchema:
    """Row layout plus timestamp unit for a trade file."""

    variant: str
    timestamp_unit: str = "seconds"

    def __post_init__(self):
        if self.variant not in SCHEMA_VARIANTS:
            raise ValueError(
                f"unknown schema variant {self.variant!r}; expected one of {SCHEMA_VARIANTS}"
            )
        if self.timestamp_unit not in TIMESTAMP_UNITS:
            raise ValueError(
                f"unknown timestamp unit {self.timestamp_unit!r}; expected one of {TIMESTAMP_UNITS}"
            )

    @property
    def fields(self) -> tuple[str, str, str]:
        return _FIELDS[self.variant]


def _parse_ts(text: str, schema: IngestSchema, line: int) -> float:
    if schema.timestamp_unit == "nanoseconds":
        try:
            return int(text) / 1e9
        except ValueError:
            raise ParseError(f"line {line}: timestamp must be integer nanoseconds, got {text!r}", line)
    try:
        return float(text)
    except ValueError:
        raise ParseError(f"line {line}: timestamp must be a decimal number, got {text!r}", line)


def _parse_num(text: str, name: str, line: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise ParseError(f"line {line}: {name} must be a number, got {text!r}", line)


def _json_ts(value, schema: IngestSchema, line: int) -> float:
    if schema.timestamp_unit == "nanoseconds":
        if isinstance(value, bool) or not isinstance(value, int):
            raise ParseError(f"line {line}: timestamp must be integer nanoseconds, got {value!r}", line)
        return value / 1e9
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"line {line}: timestamp must be a number, got {value!r}", line)
    return float(value)


def load_trades(path: str | os.PathLike, schema: IngestSchema) -> TradeSeries:
    """Load and validate a trade file.

    The format is sniffed from the first non-blank character ('{' means
    NDJSON, anything else CSV). Parse failures raise ParseError with the
    line number; invariant violations propagate from series validation.
    """
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        rows = _parse_ndjson(text, schema)
    else:
        rows = _parse_csv(text, schema)
    triples = []
    for t, mid, vol in rows:
        cost = mid * vol if schema.variant == "ts_price_volume" else mid
        triples.append((t, cost, vol))
    return validate_series(triples)


def _parse_csv(text: str, schema: IngestSchema) -> list[tuple[float, float, float]]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()  # trailing newline is fine
    if not lines:
        raise ParseError("empty file: missing header", 1)
    expected = ",".join(schema.fields)
    if lines[0].strip() != expected:
        raise ParseError(f"line 1: expected header {expected!r}, got {lines[0].strip()!r}", 1)
    _, mid_name, _ = schema.fields
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if line.strip() == "":
            raise ParseError(f"line {lineno}: blank line inside data", lineno)
        parts = line.split(",")
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 3 fields, got {len(parts)}", lineno)
        t = _parse_ts(parts[0].strip(), schema, lineno)
        mid = _parse_num(parts[1].strip(), mid_name, lineno)
        vol = _parse_num(parts[2].strip(), "volume", lineno)
        rows.append((t, mid, vol))
    return rows


def _parse_ndjson(text: str, schema: IngestSchema) -> list[tuple[float, float, float]]:
    ts_name, mid_name, vol_name = schema.fields
    rows = []
    for lineno, line in enumerate(text.split("\n"), start=1):
        if line.strip() == "":
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {lineno}: invalid JSON ({exc.msg})", lineno)
        if not isinstance(obj, dict):
            raise ParseError(f"line {lineno}: expected an object", lineno)
        if set(obj) != set(schema.fields):
            raise ParseError(
                f"line {lineno}: expected fields {sorted(schema.fields)}, got {sorted(obj)}",
                lineno,
            )
        t = _json_ts(obj[ts_name], schema, lineno)
        mid = obj[mid_name]
        vol = obj[vol_name]
        for name, value in ((mid_name, mid), (vol_name, vol)):
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ParseError(f"line {lineno}: {name} must be a number, got {value!r}", lineno)
        rows.append((t, float(mid), float(vol)))
    return rows


def _price_for_exact_cost(cost: float, volume: float) -> float:
    """Price double whose product with volume reproduces cost exactly.

    cost/volume itself often fails fl(fl(C/V)*V) == C by an ulp; a short
    walk over neighbouring doubles finds the exact preimages (when cost
    was built as price*volume, that price is one of them). Among exact
    preimages the shortest decimal wins, which keeps files built from
    round prices humanly round. Falls back to the plain quotient if no
    preimage exists nearby.
    """
    q = cost / volume
    candidates = []
    p = q
    for _ in range(5):
        if p * volume == cost:
            candidates.append(p)
        p = math.nextafter(p, math.inf)
    p = math.nextafter(q, -math.inf)
    for _ in range(4):
        if p * volume == cost:
            candidates.append(p)
        p = math.nextafter(p, -math.inf)
    if not candidates:
        return q
    return min(candidates, key=lambda c: (len(repr(c)), abs(c - q)))


def _format_ts(t: float, schema: IngestSchema) -> str:
    if schema.timestamp_unit == "nanoseconds":
        return str(round(t * 1e9))
    return repr(t)


def render_trades(series: TradeSeries, schema: IngestSchema, fmt: str) -> str:
    """Serialize a series as CSV or NDJSON text.

    Floats use shortest round-trip formatting. Nanosecond output rounds to
    the nearest integer and loses sub-microsecond precision.
    """
    if fmt not in ("csv", "ndjson"):
        raise ValueError(f"unknown trade file format {fmt!r}")
    ts_name, mid_name, vol_name = schema.fields
    lines = []
    if fmt == "csv":
        lines.append(",".join(schema.fields))
    for i in range(len(series)):
        t = float(series.timestamps[i])
        cost = float(series.costs[i])
        vol = float(series.volumes[i])
        mid = _price_for_exact_cost(cost, vol) if schema.variant == "ts_price_volume" else cost
        if fmt == "csv":
            lines.append(f"{_format_ts(t, schema)},{mid!r},{vol!r}")
        else:
            ts_text = _format_ts(t, schema)
            lines.append(f'{{"{ts_name}": {ts_text}, "{mid_name}": {mid!r}, "{vol_name}": {vol!r}}}')
    lines.append("")
    return "\n".join(lines)


def write_trades(series: TradeSeries, path: str | os.PathLike, schema: IngestSchema,
                 fmt: str | None = None) -> None:
    """Write a series as CSV (default) or NDJSON ('.ndjson'/'.jsonl' paths)."""
    if fmt is None:
        suffix = os.path.splitext(os.fspath(path))[1].lower()
        fmt = "ndjson" if suffix in (".ndjson", ".jsonl") else "csv"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_trades(series, schema, fmt))

"""Command-line surface: every computation as a batch command.

Subcommands emit plot-ready tables (CSV or JSON) on stdout or to a file;
diagnostics go to stderr only. Numbers in tables serialize with 17
significant digits, which round-trips doubles exactly, so CSV and JSON
outputs of the same run carry identical values and diff cleanly.

Exit codes: 0 success/pass, 1 identity-check fail, 2 config error,
3 input error, 4 unsupported configuration.

High-degree note: sums of C^n mix magnitudes badly; if p(2)*N approaches
1e300, rescale the input units before asking for high degrees.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys

import numpy as np

from .charfun import PairSeries, charfun_truncated, moment_provider
from .errors import (
    ConfigError,
    LagTooLargeError,
    ParseError,
    TickvolError,
    UnsupportedWindowOverlapError,
    ValidationError,
)
from .ingest import IngestSchema, load_trades, render_trades, write_trades
from .moments import DEFAULT_DEGREE_CAP, collect_price_moments, window_centers
from .returns import (
    build_returns,
    mean_return,
    records_in_window,
    returns_volatility_report,
)
from .synth import SimConfig, simulate_trades
from .trades import TradeSeries, WindowSpec, select_window
from .volatility import price_volatility_report

EXIT_OK = 0
EXIT_IDENTITY_FAIL = 1
EXIT_CONFIG = 2
EXIT_INPUT = 3
EXIT_UNSUPPORTED = 4

IDENTITY_TOLERANCE = 1e-10


def _fmt(value) -> str:
    """Table cell text; floats get 17 significant digits."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    return str(value)


def _json_dump(obj, out: io.TextIOBase, indent: int = 0) -> None:
    """Minimal JSON writer so floats carry the same 17-digit text as CSV."""
    pad = " " * indent
    if obj is None:
        out.write("null")
    elif isinstance(obj, bool):
        out.write("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.write(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.write(f"{float(obj):.17g}")
    elif isinstance(obj, str):
        out.write('"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"')
    elif isinstance(obj, dict):
        out.write("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                out.write(",")
            out.write(f'\n{pad}  "{k}": ')
            _json_dump(v, out, indent + 2)
        out.write(f"\n{pad}}}" if obj else "}")
    elif isinstance(obj, (list, tuple)):
        out.write("[")
        for i, v in enumerate(obj):
            if i:
                out.write(",")
            out.write(f"\n{pad}  ")
            _json_dump(v, out, indent + 2)
        out.write(f"\n{pad}]" if len(obj) else "]")
    else:
        raise TypeError(f"cannot serialize {type(obj)!r}")


def _emit(rows: list[dict], columns: list[str], args) -> None:
    """Write a table as CSV or JSON to --output (default stdout)."""
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row.get(col)) for col in columns])
        text = buf.getvalue()
    else:
        buf = io.StringIO()
        _json_dump([{col: row.get(col) for col in columns} for row in rows], buf)
        buf.write("\n")
        text = buf.getvalue()
    _write_output(text, args)


def _write_output(text: str, args) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _schema(args) -> IngestSchema:
    try:
        return IngestSchema(args.schema, args.ts_unit)
    except ValueError as exc:
        raise ConfigError(str(exc))


def _load_input(args) -> TradeSeries:
    try:
        series = load_trades(args.input, _schema(args))
    except FileNotFoundError:
        raise ParseError(f"input file not found: {args.input}")
    if len(series) == 0:
        raise ParseError(f"input file has no trades: {args.input}")
    return series


def _parse_degrees(text: str) -> list[int]:
    try:
        degrees = sorted({int(part) for part in text.split(",") if part.strip() != ""})
    except ValueError:
        raise ConfigError(f"--degrees must be a comma list of integers, got {text!r}")
    if not degrees:
        raise ConfigError("--degrees must name at least one degree")
    if degrees[0] < 1 or degrees[-1] > DEFAULT_DEGREE_CAP:
        raise ConfigError(f"degrees must lie in [1, {DEFAULT_DEGREE_CAP}], got {text!r}")
    return degrees


def _window_stride(args) -> tuple[float, float]:
    if not args.window > 0:
        raise ConfigError(f"--window must be positive, got {args.window}")
    stride = args.stride if args.stride is not None else args.window
    if not stride > 0:
        raise ConfigError(f"--stride must be positive, got {stride}")
    return args.window, stride


def cmd_moments(args) -> int:
    series = _load_input(args)
    width, stride = _window_stride(args)
    degrees = _parse_degrees(args.degrees)
    columns = ["t", "n_trades"]
    for n in degrees:
        columns += [f"C{n}", f"V{n}", f"p{n}"]
    rows = []
    for center in window_centers(series, width, stride):
        view = select_window(series, WindowSpec(float(center), width))
        pm = collect_price_moments(view, degrees)
        row = {"t": float(center), "n_trades": pm.trade_count}
        for n in degrees:
            if pm.empty:
                row[f"C{n}"] = row[f"V{n}"] = row[f"p{n}"] = None
            else:
                c, v, p = pm.entries[n]
                row[f"C{n}"], row[f"V{n}"], row[f"p{n}"] = c, v, p
        rows.append(row)
    _emit(rows, columns, args)
    return EXIT_OK


def cmd_price_vol(args) -> int:
    series = _load_input(args)
    width, stride = _window_stride(args)
    columns = ["t", "n_trades", "sigma2_direct", "sigma2_closed",
               "sigma_c2", "sigma_v2", "phi_c2", "phi_v2", "negative_flag"]
    rows = []
    for center in window_centers(series, width, stride):
        view = select_window(series, WindowSpec(float(center), width))
        row = {"t": float(center), "n_trades": len(view)}
        if len(view) > 0:
            rep = price_volatility_report(view)
            row.update(
                sigma2_direct=rep.sigma_p2_direct,
                sigma2_closed=rep.sigma_p2_closed,
                sigma_c2=rep.stats.sigma_c2,
                sigma_v2=rep.stats.sigma_v2,
                phi_c2=rep.stats.phi_c2,
                phi_v2=rep.stats.phi_v2,
                negative_flag=rep.negative_flag,
            )
        rows.append(row)
    _emit(rows, columns, args)
    return EXIT_OK


def cmd_returns_vol(args) -> int:
    series = _load_input(args)
    width, stride = _window_stride(args)
    if args.lag < 1:
        raise ConfigError(f"--lag must be >= 1, got {args.lag}")
    try:
        records = build_returns(series, args.lag)
    except LagTooLargeError as exc:
        raise ConfigError(str(exc))
    columns = ["t", "n_records", "mean_return", "sigma2_direct", "sigma2_rform",
               "sigma2_closed", "r11", "r21", "r22", "negative_flag"]
    rows = []
    for center in window_centers(series, width, stride):
        in_win = records_in_window(records, WindowSpec(float(center), width))
        row = {"t": float(center), "n_records": len(in_win)}
        if len(in_win) > 0:
            rep = returns_volatility_report(in_win)
            row.update(
                mean_return=mean_return(in_win),
                sigma2_direct=rep.sigma_q2_direct,
                sigma2_rform=rep.sigma_q2_rform,
                sigma2_closed=rep.sigma_q2_closed,
                r11=rep.r11,
                r21=rep.r21,
                r22=rep.r22,
                negative_flag=rep.negative_flag,
            )
        rows.append(row)
    _emit(rows, columns, args)
    return EXIT_OK


def _parse_grid(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"--grid must be start:step:count, got {text!r}")
    try:
        start, step = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError:
        raise ConfigError(f"--grid must be start:step:count, got {text!r}")
    if count < 1 or not step > 0:
        raise ConfigError(f"--grid needs count >= 1 and step > 0, got {text!r}")
    return start, step, count


def _load_testfn(path: str, count: int) -> list[float]:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    except FileNotFoundError:
        raise ParseError(f"test-function file not found: {path}")
    try:
        values = [float(ln) for ln in lines]
    except ValueError as exc:
        raise ParseError(f"test-function file {path}: {exc}")
    if len(values) != count:
        raise ConfigError(
            f"test-function file has {len(values)} values but the grid has {count} points"
        )
    return values


def cmd_charfun(args) -> int:
    series = _load_input(args)
    if not args.window > 0:
        raise ConfigError(f"--window must be positive, got {args.window}")
    start, step, count = _parse_grid(args.grid)
    xs = _load_testfn(args.testfn, count)
    grid = [start + k * step for k in range(count)]
    provider = moment_provider(PairSeries.from_trades(series), args.window)
    result = charfun_truncated(provider, grid, xs, step, args.nmax)
    partial = 1.0 + 0.0j
    orders = []
    for n, term in enumerate(result.order_terms, start=1):
        partial += term
        orders.append({
            "order": n,
            "term_re": term.real,
            "term_im": term.imag,
            "partial_re": partial.real,
            "partial_im": partial.imag,
        })
    if args.format == "json":
        record = {
            "grid_start": start,
            "grid_step": step,
            "grid_points": count,
            "window": args.window,
            "n_max": args.nmax,
            "value_re": result.value.real,
            "value_im": result.value.imag,
            "orders": orders,
        }
        buf = io.StringIO()
        _json_dump(record, buf)
        buf.write("\n")
        _write_output(buf.getvalue(), args)
    else:
        columns = ["order", "term_re", "term_im", "partial_re", "partial_im"]
        _emit(orders, columns, args)
    return EXIT_OK


def cmd_simulate(args) -> int:
    try:
        config = SimConfig(
            n_trades=args.n_trades,
            seed=args.seed if args.seed is not None else int(np.random.SeedSequence().entropy % 2**31),
            sigma_step=args.sigma_step,
            start_price=args.start_price,
            volume_mu=args.vol_mu,
            volume_sigma=args.vol_sigma,
            arrival_rate=args.rate,
            start_time=args.start_time,
        )
    except ValueError as exc:
        raise ConfigError(str(exc))
    series = simulate_trades(config)
    schema = _schema(args)
    if args.output:
        write_trades(series, args.output, schema)
    else:
        sys.stdout.write(render_trades(series, schema, "csv"))
    print(f"seed: {config.seed}", file=sys.stderr)
    return EXIT_OK


def _identity_rows(series: TradeSeries, width: float, stride: float, lags: list[int]):
    centers = window_centers(series, width, stride)
    views = [select_window(series, WindowSpec(float(c), width)) for c in centers]
    rows = []

    dev = 0.0
    n_windows = 0
    for view in views:
        if len(view) == 0:
            continue
        rep = price_volatility_report(view)
        dev = max(dev, abs(rep.sigma_p2_direct - rep.sigma_p2_closed)
                  / max(1.0, abs(rep.sigma_p2_direct)))
        n_windows += 1
    rows.append(("price_vol_direct_vs_closed", None, n_windows, dev))

    for m in lags:
        if m >= len(series):
            rows.append(("returns_vol_three_way", m, 0, 0.0))
            continue
        records = build_returns(series, m)
        dev = 0.0
        n_windows = 0
        for center in centers:
            in_win = records_in_window(records, WindowSpec(float(center), width))
            if len(in_win) == 0:
                continue
            rep = returns_volatility_report(in_win)
            scale = max(1.0, abs(rep.sigma_q2_direct))
            dev = max(
                dev,
                abs(rep.sigma_q2_direct - rep.sigma_q2_rform) / scale,
                abs(rep.sigma_q2_direct - rep.sigma_q2_closed) / scale,
                abs(rep.sigma_q2_rform - rep.sigma_q2_closed) / scale,
            )
            n_windows += 1
        rows.append(("returns_vol_three_way", m, n_windows, dev))
    return rows


def cmd_identity_check(args) -> int:
    if args.input:
        series = _load_input(args)
    else:
        seed = args.seed if args.seed is not None else 0
        series = simulate_trades(SimConfig(n_trades=args.n_trades, seed=seed))
        print(f"seed: {seed}", file=sys.stderr)
    if args.window is not None:
        width, stride = _window_stride(args)
    else:
        t0, t1 = series.span()
        width = (t1 - t0) / 16 if t1 > t0 else 1.0
        stride = width
    try:
        lags = sorted({int(p) for p in args.lags.split(",") if p.strip()})
    except ValueError:
        raise ConfigError(f"--lags must be a comma list of integers, got {args.lags!r}")
    if not lags or lags[0] < 1:
        raise ConfigError(f"--lags must be integers >= 1, got {args.lags!r}")

    rows = []
    all_pass = True
    for name, lag, n_windows, dev in _identity_rows(series, width, stride, lags):
        status = "PASS" if dev <= IDENTITY_TOLERANCE else "FAIL"
        all_pass &= status == "PASS"
        rows.append({
            "identity": name,
            "lag": lag,
            "windows": n_windows,
            "max_rel_dev": dev,
            "threshold": IDENTITY_TOLERANCE,
            "status": status,
        })
    columns = ["identity", "lag", "windows", "max_rel_dev", "threshold", "status"]
    _emit(rows, columns, args)
    return EXIT_OK if all_pass else EXIT_IDENTITY_FAIL


def _add_io_flags(sub, input_required=True):
    sub.add_argument("--input", required=input_required, help="trade file (CSV or NDJSON)")
    sub.add_argument("--schema", default="ts_cost_volume",
                     choices=["ts_cost_volume", "ts_price_volume"],
                     help="row layout of the trade file")
    sub.add_argument("--ts-unit", default="seconds", choices=["seconds", "nanoseconds"],
                     help="timestamp unit in the trade file")


def _add_output_flags(sub):
    sub.add_argument("--format", default="csv", choices=["csv", "json"],
                     help="output table format")
    sub.add_argument("--output", default=None, help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tickvol",
        description="Volume-weighted price/returns moments and volatility tables from tick trades.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("moments", help="per-window degree-n cost/volume sums and price moments")
    _add_io_flags(sub)
    sub.add_argument("--window", type=float, required=True, help="averaging window width (seconds)")
    sub.add_argument("--stride", type=float, default=None, help="window center step (default: window width)")
    sub.add_argument("--degrees", default="1,2", help="comma list of degrees, e.g. 1,2,3")
    _add_output_flags(sub)
    sub.set_defaults(func=cmd_moments)

    sub = subs.add_parser("price-vol", help="price volatility, direct and dispersion-decomposed forms")
    _add_io_flags(sub)
    sub.add_argument("--window", type=float, required=True)
    sub.add_argument("--stride", type=float, default=None)
    _add_output_flags(sub)
    sub.set_defaults(func=cmd_price_vol)

    sub = subs.add_parser("returns-vol", help="lag-m returns volatility in three equivalent forms")
    _add_io_flags(sub)
    sub.add_argument("--window", type=float, required=True)
    sub.add_argument("--stride", type=float, default=None)
    sub.add_argument("--lag", type=int, default=1, help="returns lag m (index-based)")
    _add_output_flags(sub)
    sub.set_defaults(func=cmd_returns_vol)

    sub = subs.add_parser("charfun", help="truncated characteristic functional on a time grid")
    _add_io_flags(sub)
    sub.add_argument("--window", type=float, required=True, help="averaging window width per grid point")
    sub.add_argument("--grid", required=True, help="grid as start:step:count")
    sub.add_argument("--testfn", required=True, help="file with one test-function value per grid point")
    sub.add_argument("--nmax", type=int, default=3, help="truncation order")
    _add_output_flags(sub)
    sub.set_defaults(func=cmd_charfun)

    sub = subs.add_parser("simulate", help="write a reproducible synthetic trade file")
    sub.add_argument("--schema", default="ts_cost_volume",
                     choices=["ts_cost_volume", "ts_price_volume"])
    sub.add_argument("--ts-unit", default="seconds", choices=["seconds", "nanoseconds"])
    sub.add_argument("--seed", type=int, default=None, help="RNG seed (default: fresh entropy, printed)")
    sub.add_argument("--n-trades", type=int, default=1000)
    sub.add_argument("--sigma-step", type=float, default=0.02)
    sub.add_argument("--start-price", type=float, default=100.0)
    sub.add_argument("--vol-mu", type=float, default=0.0)
    sub.add_argument("--vol-sigma", type=float, default=0.5)
    sub.add_argument("--rate", type=float, default=1.0)
    sub.add_argument("--start-time", type=float, default=0.0)
    sub.add_argument("--output", default=None, help="trade file path (default stdout)")
    sub.set_defaults(func=cmd_simulate, format="csv")

    sub = subs.add_parser("identity-check", help="verify the volatility identities on data or a simulation")
    _add_io_flags(sub, input_required=False)
    sub.add_argument("--window", type=float, default=None, help="window width (default: span/16)")
    sub.add_argument("--stride", type=float, default=None)
    sub.add_argument("--lags", default="1,2,10", help="comma list of returns lags")
    sub.add_argument("--seed", type=int, default=None, help="simulation seed when no --input is given")
    sub.add_argument("--n-trades", type=int, default=2000, help="simulation size when no --input is given")
    _add_output_flags(sub)
    sub.set_defaults(func=cmd_identity_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UnsupportedWindowOverlapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except TickvolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

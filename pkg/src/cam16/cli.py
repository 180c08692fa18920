"""
Command line front end: ``cam16 forward``, ``cam16 inverse``, ``cam16 bench``.

Forward reads columns X,Y,Z and writes J,C,h,Q,M,s,H,H_c. Inverse reads the
three columns named by ``--select`` (default J,C,h) and writes X,Y,Z. CSV
input needs a header row; JSON-lines input is one object per line with the
same keys. Numbers are written as the shortest repr that round-trips.

A row that fails is still written (empty fields in CSV, ``{"row", "error"}``
in JSON-lines) and reported on stderr; the run continues.

Exit codes: 0 success, 1 usage/config error, 2 I/O error, 3 every row failed.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from itertools import islice
from typing import Iterable, Iterator, TextIO

from .core import (
    Cam16Error,
    CorrelateSelection,
    SurroundSpec,
    ViewingConditions,
    forward,
    inverse,
    surround_interpolate,
    surround_preset,
    viewing_conditions,
)

logger = logging.getLogger("cam16")

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_ALL_FAILED = 0, 1, 2, 3

FORWARD_IN = ("X", "Y", "Z")
FORWARD_OUT = ("J", "C", "h", "Q", "M", "s", "H", "H_c")
INVERSE_OUT = ("X", "Y", "Z")

DEFAULTS = {
    "white": "95.047,100,108.883",
    "yb": 20.0,
    "la": 318.31,
    "surround": "average",
    "discount": False,
    "format": "csv",
    "select": "J,C,h",
    "input": "-",
    "output": "-",
    "jobs": 1,
}

_CHUNK = 512


class ConfigError(Exception):
    pass


@dataclass
class JobConfig:
    direction: str
    vc: ViewingConditions
    input: str = "-"
    output: str = "-"
    format: str = "csv"
    select: tuple[str, str, str] = ("J", "C", "h")
    jobs: int = 1

    @property
    def in_columns(self) -> tuple[str, ...]:
        return FORWARD_IN if self.direction == "forward" else self.select

    @property
    def out_columns(self) -> tuple[str, ...]:
        return FORWARD_OUT if self.direction == "forward" else INVERSE_OUT


@dataclass
class JobReport:
    converted: int = 0
    failed: int = 0
    errors: list[tuple[int, str]] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        if self.failed and not self.converted:
            return EXIT_ALL_FAILED
        return EXIT_OK


# ------------------------------------------------------------------ config


def parse_triple(text) -> tuple[float, float, float]:
    if isinstance(text, (list, tuple)):
        parts = list(text)
    else:
        parts = str(text).split(",")
    if len(parts) != 3:
        raise ConfigError(f"expected three comma-separated numbers, got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise ConfigError(f"not a number in {text!r}") from None


def parse_surround(text: str) -> SurroundSpec:
    text = str(text).strip().lower()
    try:
        if text.startswith("c="):
            return surround_interpolate(float(text[2:]))
        return surround_preset(text)
    except (ValueError, Cam16Error) as exc:
        raise ConfigError(f"bad surround {text!r}: {exc}") from None


def parse_select(text: str) -> tuple[str, str, str]:
    parts = tuple(p.strip() for p in str(text).split(","))
    if len(parts) != 3 or parts[0] not in ("J", "Q") or parts[1] not in ("C", "M", "s") \
            or parts[2] not in ("h", "H"):
        raise ConfigError(f"--select needs <J|Q>,<C|M|s>,<h|H>, got {text!r}")
    return parts


def load_config_file(path: str) -> dict:
    """Flat JSON object with the same keys as the long flags."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    unknown = set(data) - set(DEFAULTS)
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return data


def job_config(direction: str, args: argparse.Namespace) -> JobConfig:
    merged = dict(DEFAULTS)
    if args.config:
        merged.update(load_config_file(args.config))
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None and value is not False:
            merged[key] = value

    try:
        vc = viewing_conditions(
            parse_triple(merged["white"]),
            float(merged["yb"]),
            float(merged["la"]),
            parse_surround(merged["surround"]),
            bool(merged["discount"]),
        )
    except (ValueError, Cam16Error) as exc:
        raise ConfigError(str(exc)) from None
    if merged["format"] not in ("csv", "jsonl"):
        raise ConfigError(f"format must be csv or jsonl, got {merged['format']!r}")
    jobs = int(merged["jobs"])
    if jobs < 1:
        raise ConfigError("--jobs must be at least 1")
    return JobConfig(
        direction=direction,
        vc=vc,
        input=merged["input"],
        output=merged["output"],
        format=merged["format"],
        select=parse_select(merged["select"]),
        jobs=jobs,
    )


# --------------------------------------------------------------- row logic


def _fmt(v: float) -> str:
    # + 0.0 folds -0.0 into 0.0
    return repr(float(v) + 0.0)


def _convert(direction: str, select: tuple[str, ...], vc: ViewingConditions, values):
    if direction == "forward":
        res = forward(values, vc)
        return [res.j, res.c, res.h, res.q, res.m, res.s, res.big_h, res.h_c]
    sel = CorrelateSelection(**dict(zip(select, values)))
    return list(inverse(sel, vc))


def _convert_chunk(direction, select, vc, chunk):
    out = []
    for rownum, values, error in chunk:
        if error is None:
            try:
                out.append((rownum, _convert(direction, select, vc, values), None))
                continue
            except Cam16Error as exc:
                error = str(exc)
        out.append((rownum, None, error))
    return out


def _parse_values(record: dict, columns: tuple[str, ...]):
    values = []
    for col in columns:
        raw = record.get(col)
        if raw is None or (isinstance(raw, str) and not raw.strip()):
            return None, f"missing value for {col}"
        try:
            values.append(float(raw))
        except (TypeError, ValueError):
            return None, f"{col}={raw!r} is not a number"
    return values, None


def _records(fh: TextIO, fmt: str, columns: tuple[str, ...]) -> Iterator[tuple[int, list | None, str | None]]:
    if fmt == "csv":
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            return
        missing = [c for c in columns if c not in reader.fieldnames]
        if missing:
            raise ConfigError(f"input lacks column(s) {missing}; header is {reader.fieldnames}")
        for rownum, record in enumerate(reader, start=1):
            if None in record:
                yield rownum, None, "too many fields"
                continue
            yield (rownum, *_parse_values(record, columns))
    else:
        rownum = 0
        for line in fh:
            if not line.strip():
                continue
            rownum += 1
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                yield rownum, None, f"invalid JSON: {exc.msg}"
                continue
            if not isinstance(record, dict):
                yield rownum, None, "record is not a JSON object"
                continue
            yield (rownum, *_parse_values(record, columns))


def _chunks(it: Iterable, size: int) -> Iterator[list]:
    it = iter(it)
    while chunk := list(islice(it, size)):
        yield chunk


class _Writer:
    def __init__(self, fh: TextIO, fmt: str, columns: tuple[str, ...]):
        self.fh = fh
        self.fmt = fmt
        self.columns = columns
        if fmt == "csv":
            self.csv = csv.writer(fh, lineterminator="\n")
            self.csv.writerow(columns)

    def write(self, rownum: int, values, error):
        if self.fmt == "csv":
            if values is None:
                self.csv.writerow([""] * len(self.columns))
            else:
                self.csv.writerow([v if isinstance(v, str) else _fmt(v) for v in values])
        else:
            if values is None:
                record = {"row": rownum, "error": error}
            else:
                record = {k: (v if isinstance(v, str) else float(v) + 0.0)
                          for k, v in zip(self.columns, values)}
            self.fh.write(json.dumps(record) + "\n")


def _run_job(cfg: JobConfig) -> JobReport:
    report = JobReport()
    convert = partial(_convert_chunk, cfg.direction, cfg.select, cfg.vc)
    try:
        fin = sys.stdin if cfg.input == "-" else open(cfg.input, newline="")
    except OSError as exc:
        raise _IOFailure(f"cannot open input {cfg.input}: {exc}") from None
    try:
        try:
            fout = sys.stdout if cfg.output == "-" else open(cfg.output, "w", newline="")
        except OSError as exc:
            raise _IOFailure(f"cannot open output {cfg.output}: {exc}") from None
        try:
            writer = _Writer(fout, cfg.format, cfg.out_columns)
            chunks = _chunks(_records(fin, cfg.format, cfg.in_columns), _CHUNK)
            pool = ProcessPoolExecutor(max_workers=cfg.jobs) if cfg.jobs > 1 else None
            try:
                # pool.map keeps input order
                results = pool.map(convert, chunks) if pool else map(convert, chunks)
                for chunk in results:
                    for rownum, values, error in chunk:
                        writer.write(rownum, values, error)
                        if values is None:
                            report.failed += 1
                            report.errors.append((rownum, error))
                            logger.warning("row %d: %s", rownum, error)
                        else:
                            report.converted += 1
            finally:
                if pool is not None:
                    pool.shutdown()
        finally:
            if fout is not sys.stdout:
                fout.close()
    except UnicodeDecodeError as exc:
        raise _IOFailure(f"cannot decode input: {exc}") from None
    finally:
        if fin is not sys.stdin:
            fin.close()
    logger.info("converted %d, failed %d", report.converted, report.failed)
    return report


class _IOFailure(Exception):
    pass


def run_forward_job(cfg: JobConfig) -> JobReport:
    if cfg.direction != "forward":
        raise ValueError("config is not a forward job")
    return _run_job(cfg)


def run_inverse_job(cfg: JobConfig) -> JobReport:
    if cfg.direction != "inverse":
        raise ValueError("config is not an inverse job")
    return _run_job(cfg)


# ------------------------------------------------------------------ parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_job_flags(p: argparse.ArgumentParser, inverse_job: bool) -> None:
    p.add_argument("--white", help="adopted white X,Y,Z (default 95.047,100,108.883)")
    p.add_argument("--yb", type=float, help="background luminance factor Y_b (default 20)")
    p.add_argument("--la", type=float, help="adapting luminance L_A in cd/m^2 (default 318.31)")
    p.add_argument("--surround", help="average|dim|dark|c=<value> (default average)")
    p.add_argument("--discount", action="store_true", default=None,
                   help="discount the illuminant (degree of adaptation D = 1)")
    p.add_argument("--format", choices=("csv", "jsonl"))
    if inverse_job:
        p.add_argument("--select", help="input correlates <J|Q>,<C|M|s>,<h|H> (default J,C,h)")
    p.add_argument("--input", help="input file (default stdin)")
    p.add_argument("--output", help="output file (default stdout)")
    p.add_argument("--jobs", type=int, help="worker processes (default 1)")
    p.add_argument("--config", help="JSON file with default values for the flags above")


def _parse_sizes(text: str) -> list[int]:
    try:
        return [int(float(s)) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cam16", description="CAM16 color appearance model conversions")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add_job_flags(sub.add_parser("forward", help="XYZ -> correlates"), inverse_job=False)
    _add_job_flags(sub.add_parser("inverse", help="correlates -> XYZ"), inverse_job=True)

    b = sub.add_parser("bench", help="time streamlined vs original inverse")
    b.add_argument("--sizes", type=_parse_sizes,
                   default=_parse_sizes("1e5,2e5,3e5,4e5,5e5,6e5,7e5,8e5,9e5,1e6"))
    b.add_argument("--reps", type=int, default=5)
    b.add_argument("--seed", type=int, default=42)
    b.add_argument("--out", help="write the JSON report here")
    b.add_argument("--backend", default="auto", help="auto|cython|python|both")
    return parser


def _bench_main(args) -> int:
    from . import batch
    from .bench import PUBLISHED_SECONDS_1E6, run_benchmark

    names = batch.available_backends() if args.backend == "both" else [args.backend]
    reports = []
    try:
        for name in names:
            reports.append(run_benchmark(args.sizes, args.reps, args.seed, backend=name))
    except ValueError as exc:
        print(f"cam16 bench: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for rep in reports:
        print(rep.table())
        print(f"fixed/legacy at {rep.sizes[-1]}: {rep.ratio_at_largest():.3f}"
              f"  (published curve at 1e6: "
              f"{PUBLISHED_SECONDS_1E6['fixed'] / PUBLISHED_SECONDS_1E6['legacy']:.3f})\n")
    if args.out:
        doc = reports[0].to_json() if len(reports) == 1 else \
            "[" + ",\n".join(r.to_json() for r in reports) + "]"
        try:
            with open(args.out, "w") as fh:
                fh.write(doc + "\n")
        except OSError as exc:
            print(f"cam16 bench: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(name)s: %(message)s",
        stream=sys.stderr,
    )
    if args.command == "bench":
        return _bench_main(args)
    try:
        cfg = job_config(args.command, args)
        report = _run_job(cfg)
    except ConfigError as exc:
        print(f"cam16 {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _IOFailure as exc:
        print(f"cam16 {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())

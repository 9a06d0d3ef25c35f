"""Command-line entry point: ``twinarray {gen,sort,bench,analyze}``.

Exit codes: 0 success, 2 invalid arguments/spec/grid/CSV, 3 I/O failure,
4 malformed dataset file, 5 verification failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from .baselines import ALGORITHMS, get_sorter, reference_sort
from .bench import DEFAULT_REPS, SuiteConfig, read_csv, run_suite, write_csv
from .core import DEFAULT_MAX_SLOTS
from .datagen import (
    DEFAULT_DISPLACEMENT,
    DatasetSpec,
    Distribution,
    content_digest,
    decode_dataset,
    derive_seed,
    encode_dataset,
    generate,
)
from .errors import MalformedFile, RangeGuardExceeded, SpecInvalid
from .report import analyze, render_markdown, write_plotdata

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_MALFORMED = 4
EXIT_VERIFY = 5

log = logging.getLogger("twinarray")

DIST_NAMES = [d.value for d in Distribution]


def _non_negative(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {value}")
    return value


def _positive(text: str) -> int:
    value = _non_negative(text)
    if value == 0:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _fraction(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1]: {value}")
    return value


def _name_list(choices: list[str]):
    def parse(text: str) -> list[str]:
        names = [t.strip() for t in text.split(",") if t.strip()]
        bad = [t for t in names if t not in choices]
        if bad:
            raise argparse.ArgumentTypeError(f"unknown name(s) {', '.join(bad)}; choose from {', '.join(choices)}")
        if not names:
            raise argparse.ArgumentTypeError("empty list")
        return names
    return parse


def _size_list(text: str) -> list[int]:
    sizes = [_non_negative(t.strip()) for t in text.split(",") if t.strip()]
    if not sizes:
        raise argparse.ArgumentTypeError("empty size list")
    return sizes


def _k_mode(text: str) -> list[int] | None:
    """``equal_n`` -> None; ``fixed:V[,V...]`` -> list of bounds."""
    if text == "equal_n":
        return None
    if text.startswith("fixed:"):
        return _size_list(text[len("fixed:"):])
    raise argparse.ArgumentTypeError("expected 'equal_n' or 'fixed:<k>[,<k>...]'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twinarray", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a TAS1 dataset file")
    p.add_argument("--dist", required=True, choices=DIST_NAMES)
    p.add_argument("--n", required=True, type=_non_negative)
    p.add_argument("--k", type=_non_negative, help="inclusive value bound (default: n)")
    p.add_argument("--seed", type=_non_negative, default=0)
    p.add_argument("--displacement", type=_fraction, default=DEFAULT_DISPLACEMENT)
    p.add_argument("--out", required=True, type=Path)

    p = sub.add_parser("sort", help="sort a TAS1 dataset file")
    p.add_argument("--algo", required=True, choices=list(ALGORITHMS))
    p.add_argument("--in", dest="input", required=True, type=Path)
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--verify", action="store_true", help="check against the reference sort")
    p.add_argument("--max-slots", type=_positive, default=DEFAULT_MAX_SLOTS)

    p = sub.add_parser("bench", help="run the algorithm x distribution x size grid")
    p.add_argument("--algos", type=_name_list(list(ALGORITHMS)), default=list(ALGORITHMS))
    p.add_argument("--dists", type=_name_list(DIST_NAMES), default=DIST_NAMES)
    p.add_argument("--sizes", required=True, type=_size_list)
    p.add_argument("--k-mode", type=_k_mode, default=None, metavar="{equal_n,fixed:<k>[,<k>...]}")
    p.add_argument("--reps", type=_positive, default=DEFAULT_REPS)
    p.add_argument("--seed", type=_non_negative, default=0)
    p.add_argument("--max-slots", type=_positive, default=DEFAULT_MAX_SLOTS)
    p.add_argument("--csv", required=True, type=Path)

    p = sub.add_parser("analyze", help="summarise a benchmark CSV")
    p.add_argument("--csv", required=True, type=Path)
    p.add_argument("--report", required=True, type=Path)
    p.add_argument("--plotdata", required=True, type=Path)
    return parser


def cmd_gen(args: argparse.Namespace) -> int:
    k = args.n if args.k is None else args.k
    spec = DatasetSpec(Distribution(args.dist), args.n, k, args.seed, args.displacement)
    try:
        data = generate(spec)
    except SpecInvalid as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    blob = encode_dataset(data, k)
    try:
        args.out.write_bytes(blob)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"n={spec.n} k={k} seed={spec.seed} digest={content_digest(blob)}")
    return EXIT_OK


def cmd_sort(args: argparse.Namespace) -> int:
    try:
        blob = args.input.read_bytes()
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        data, k = decode_dataset(blob)
    except MalformedFile as exc:
        print(f"error: {args.input}: {exc}", file=sys.stderr)
        return EXIT_MALFORMED

    fn = get_sorter(args.algo)
    try:
        t0 = time.perf_counter()
        report = fn(data, max_slots=args.max_slots)
        elapsed = time.perf_counter() - t0
    except RangeGuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        args.out.write_bytes(encode_dataset(report.output, k))
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO

    parts = [f"algo={args.algo}", f"n={len(data)}", f"wall_time_s={elapsed:.6f}", f"aux_words={report.aux_words}"]
    if report.path is not None:
        parts.append(f"path={report.path.value}")
    status = EXIT_OK
    if args.verify:
        passed = report.output == reference_sort(data)
        parts.append("verify=pass" if passed else "verify=fail")
        status = EXIT_OK if passed else EXIT_VERIFY
    print(" ".join(parts))
    return status


def bench_specs(dists: list[str], sizes: list[int], ks: list[int] | None, seed: int) -> list[DatasetSpec]:
    """Grid cells in (dist, size, k) order, each with a seed derived from its index."""
    specs = []
    for dist in dists:
        for n in sizes:
            for k in ([n] if ks is None else ks):
                specs.append(DatasetSpec(Distribution(dist), n, k, derive_seed(seed, len(specs))))
    return specs


def cmd_bench(args: argparse.Namespace) -> int:
    specs = bench_specs(args.dists, args.sizes, args.k_mode, args.seed)
    if not specs or not args.algos:
        print("error: empty benchmark grid", file=sys.stderr)
        return EXIT_USAGE
    try:
        args.csv.parent.mkdir(parents=True, exist_ok=True)
        with open(args.csv, "w", newline="") as fh:
            records = run_suite(SuiteConfig(args.algos, specs, args.reps, args.max_slots))
            write_csv(records, fh)
    except OSError as exc:
        print(f"error: cannot write {args.csv}: {exc}", file=sys.stderr)
        return EXIT_IO
    failed = sum(1 for r in records if not r.ok)
    print(f"rows={len(records)} failed={failed} csv={args.csv}")
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        records = read_csv(args.csv)
    except OSError as exc:
        print(f"error: cannot read {args.csv}: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, UnicodeDecodeError) as exc:
        print(f"error: malformed CSV {args.csv}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    analysis = analyze(records)
    for warning in analysis.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    try:
        args.report.parent.mkdir(parents=True, exist_ok=True)
        args.report.write_text(render_markdown(analysis))
        files = write_plotdata(analysis, args.plotdata)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"cells={len(analysis.cells)} sweeps={len(analysis.sweeps)} fits={len(analysis.fits)} plotfiles={len(files)}")
    return EXIT_OK


COMMANDS = {"gen": cmd_gen, "sort": cmd_sort, "bench": cmd_bench, "analyze": cmd_analyze}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())

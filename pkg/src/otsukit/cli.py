"""Command-line interface.

Subcommands:
  hist            histogram of an image as index,count CSV
  profile         variance profile as t,sigma CSV (256 rows)
  threshold       run one search; optionally emit the trace and a mask
  compare         exhaustive versus bisection on one image
  bench           compare over a directory tree of images
  check-unimodal  plateau analysis of an image's variance profile
  root-demo       bisection root-finder iteration table
  synth           write a synthetic bimodal PGM
  kernel-bench    time the pure and compiled kernel backends

Data goes to standard output (or --out), diagnostics to standard error.
Exit codes: 0 success, 1 domain error (degenerate image, bad bracket,
malformed file), 2 usage error (bad flags, missing paths).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import asdict
from pathlib import Path

from otsukit import analysis, kernels
from otsukit.errors import OtsuKitError
from otsukit.histogram import build_moments, compute_histogram, histogram_csv
from otsukit.imageio import load_image, write_binary_mask, write_image
from otsukit.rootfind import bisect_root
from otsukit.search import BisectionConfig, bisection_otsu, exhaustive_otsu
from otsukit.synth import BimodalSpec, bimodal_histogram, image_from_histogram
from otsukit.variance import VarianceEvaluator, full_profile, profile_csv


class _UsageError(Exception):
    pass


def main() -> None:
    sys.exit(run(sys.argv[1:]))


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except OtsuKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="otsukit",
        description="Otsu thresholding, bisection-accelerated, with benchmarks.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("hist", help="image histogram as CSV")
    p.add_argument("image")
    p.add_argument("-o", "--out")
    p.set_defaults(func=_cmd_hist)

    p = sub.add_parser("profile", help="variance profile as CSV")
    p.add_argument("image")
    p.add_argument("-o", "--out")
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("threshold", help="search for the optimal threshold")
    p.add_argument("image")
    p.add_argument(
        "--method", choices=("exhaustive", "bisection"), default="bisection"
    )
    p.add_argument("--trace", action="store_true", help="emit JSON-lines trace")
    p.add_argument("--plateau-eps", type=float, default=None)
    p.add_argument("--mask", help="write the binary mask PGM here")
    p.add_argument(
        "--invert-mask", action="store_true",
        help="map pixels below the threshold to 255 instead of above",
    )
    p.set_defaults(func=_cmd_threshold)

    p = sub.add_parser("compare", help="exhaustive vs bisection on one image")
    p.add_argument("image")
    p.add_argument("--plateau-eps", type=float, default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("bench", help="compare all images under a directory")
    p.add_argument("directory")
    p.add_argument("--format", choices=("csv", "markdown", "json"), default="csv")
    p.add_argument("--plateau-eps", type=float, default=None)
    p.add_argument(
        "--categories",
        help="JSON file mapping image ids to category names; adds a "
        "per-category summary to the report",
    )
    p.add_argument("-o", "--out")
    p.add_argument("--quiet", action="store_true", help="suppress progress")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("check-unimodal", help="profile plateau analysis")
    p.add_argument("image")
    p.set_defaults(func=_cmd_check_unimodal)

    p = sub.add_parser("root-demo", help="bisection root-finder table")
    p.add_argument("--a", type=float, default=2.0)
    p.add_argument("--b", type=float, default=3.0)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--max-iter", type=int, default=60)
    p.set_defaults(func=_cmd_root_demo)

    p = sub.add_parser("synth", help="write a synthetic bimodal PGM")
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--width", type=int, default=128)
    p.add_argument("--height", type=int, default=128)
    p.add_argument("--mean0", type=float, default=60.0)
    p.add_argument("--mean1", type=float, default=190.0)
    p.add_argument("--sigma0", type=float, default=12.0)
    p.add_argument("--sigma1", type=float, default=15.0)
    p.add_argument("--mix", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--ascii", action="store_true", help="plain P2 instead of P5")
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("kernel-bench", help="time pure vs compiled kernels")
    p.add_argument("--pixels", type=int, default=1 << 20)
    p.add_argument("--repeats", type=int, default=3)
    p.set_defaults(func=_cmd_kernel_bench)

    return parser


def _load(path: str):
    if not os.path.isfile(path):
        raise _UsageError(f"no such file: {path}")
    with open(path, "rb") as fh:
        return load_image(fh)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)


def _evaluator(path: str) -> VarianceEvaluator:
    return VarianceEvaluator(build_moments(compute_histogram(_load(path))))


def _cmd_hist(args) -> int:
    _emit(histogram_csv(compute_histogram(_load(args.image))), args.out)
    return 0


def _cmd_profile(args) -> int:
    _emit(profile_csv(full_profile(_evaluator(args.image))), args.out)
    return 0


def _cmd_threshold(args) -> int:
    image = _load(args.image)
    ev = VarianceEvaluator(build_moments(compute_histogram(image)))
    if args.method == "exhaustive":
        result = exhaustive_otsu(ev)
        trace = None
    else:
        cfg = BisectionConfig(plateau_epsilon=args.plateau_eps)
        result, trace = bisection_otsu(ev, cfg)
    if args.trace and trace is not None:
        sys.stdout.write(trace.to_json_lines())
    print(json.dumps(asdict(result), sort_keys=True))
    if args.mask:
        with open(args.mask, "wb") as fh:
            write_binary_mask(image, result.threshold, fh, invert=args.invert_mask)
    return 0


def _cmd_compare(args) -> int:
    cfg = BisectionConfig(plateau_epsilon=args.plateau_eps)
    record = analysis.compare(_load(args.image), cfg, image_id=args.image)
    if args.format == "csv":
        sys.stdout.write(analysis.record_csv([record]))
    else:
        print(json.dumps(asdict(record), sort_keys=True))
    return 0


def _cmd_bench(args) -> int:
    root = Path(args.directory)
    if not root.is_dir():
        raise _UsageError(f"no such directory: {args.directory}")
    paths = sorted(
        (p for p in root.rglob("*") if p.suffix.lower() in (".pgm", ".png")),
        key=lambda p: p.relative_to(root).as_posix(),
    )
    if not paths:
        raise _UsageError(f"no .pgm or .png files under {args.directory}")
    category_map = _load_categories(args.categories)
    cfg = BisectionConfig(plateau_epsilon=args.plateau_eps)
    records = []
    for path in paths:
        image_id = path.relative_to(root).as_posix()
        with open(path, "rb") as fh:
            image = load_image(fh)
        records.append(analysis.compare(image, cfg, image_id=image_id))
        if not args.quiet:
            print(f"done {image_id}", file=sys.stderr)
    stats = analysis.aggregate(records)
    _emit(
        analysis.render_report(stats, records, args.format, category_map),
        args.out,
    )
    return 0


def _load_categories(path: str | None):
    if path is None:
        return None
    if not os.path.isfile(path):
        raise _UsageError(f"no such file: {path}")
    with open(path, encoding="utf-8") as fh:
        try:
            mapping = json.load(fh)
        except json.JSONDecodeError as exc:
            raise _UsageError(f"bad category map {path}: {exc}") from None
    if not isinstance(mapping, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in mapping.items()
    ):
        raise _UsageError(f"bad category map {path}: expected a string-to-string object")
    return mapping


def _cmd_check_unimodal(args) -> int:
    report = analysis.check_unimodal(full_profile(_evaluator(args.image)))
    print(f"unimodal: {str(report.is_unimodal).lower()}")
    print(f"local_maxima: {len(report.local_maxima)}")
    for start, end in report.local_maxima:
        print(f"  plateau: {start}-{end}")
    print(f"argmax_plateau: {report.argmax_plateau[0]}-{report.argmax_plateau[1]}")
    print(f"init_condition_holds: {str(report.init_condition_holds).lower()}")
    return 0


def _cmd_root_demo(args) -> int:
    def f(x: float) -> float:
        return math.exp(x) - 3.0 * x - 2.0

    fa, fb = f(args.a), f(args.b)
    result = bisect_root(f, args.a, args.b, args.tol, args.max_iter)
    print("iteration,a,f(a),b,f(b),c,f(c),new_a,new_b")
    a, b = min(args.a, args.b), max(args.a, args.b)
    for step in result.bracket_history:
        print(
            f"{step.iteration},{step.a:.6f},{f(step.a):.6f},"
            f"{step.b:.6f},{f(step.b):.6f},{step.c:.6f},{step.fc:.6f},"
            f"{step.new_a:.6f},{step.new_b:.6f}"
        )
    print(f"# root {result.root!r} after {result.iterations} iterations")
    return 0


def _cmd_synth(args) -> int:
    spec = BimodalSpec(
        mean0=args.mean0, mean1=args.mean1, sigma0=args.sigma0,
        sigma1=args.sigma1, mix=args.mix, total=args.width * args.height,
        seed=args.seed,
    )
    try:
        hist = bimodal_histogram(spec)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    image = image_from_histogram(hist, args.width, args.height, args.seed)
    with open(args.out, "wb") as fh:
        write_image(image, fh, "P2" if args.ascii else "P5")
    return 0


def _cmd_kernel_bench(args) -> int:
    native = kernels.load_native()
    pure = kernels.pure
    data = pure.shuffle_u8(bytes(range(256)) * (args.pixels // 256 + 1), 42)
    data = data[: args.pixels]
    rgb = (data * 3)[: 3 * args.pixels]
    cases = [
        ("histogram_u8", lambda mod: mod.histogram_u8(data)),
        ("binarize_u8", lambda mod: mod.binarize_u8(data, 128)),
        ("luma_rec601", lambda mod: mod.luma_rec601(rgb)),
        ("shuffle_u8", lambda mod: mod.shuffle_u8(data, 7)),
        (
            "bimodal_counts",
            lambda mod: mod.bimodal_counts(
                args.pixels // 16, 60.0, 12.0, 190.0, 15.0, 0.5, 7
            ),
        ),
    ]
    print(f"pixels={args.pixels} repeats={args.repeats} active={kernels.BACKEND}")
    print("kernel,pure_ms,native_ms,speedup")
    for name, call in cases:
        pure_ms = _best_ms(call, pure, args.repeats)
        if native is None:
            print(f"{name},{pure_ms:.2f},n/a,n/a")
            continue
        native_ms = _best_ms(call, native, args.repeats)
        print(f"{name},{pure_ms:.2f},{native_ms:.2f},{pure_ms / native_ms:.1f}x")
    return 0


def _best_ms(call, module, repeats: int) -> float:
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        call(module)
        best = min(best, time.perf_counter() - start)
    return 1000.0 * best


if __name__ == "__main__":
    main()

"""Command-line frontend: enumerate, count, verify, generate, bench."""
from __future__ import annotations

import argparse
import itertools
import json
import sys
from dataclasses import dataclass
from typing import Callable

from .enumerator import count_distinct_as_words, enumerate_op_squares
from .genbench import (BoundViolation, SplitMix64, generate_lower_bound_family,
                       generate_random, reports_to_csv, sweep)
from .opcore import Sequence
from .oracle import brute_force_enumerate

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class InputSpec:
    path: str | None = None      # None or "-" means stdin
    inline: str | None = None
    format: str = "ascii"
    normalize: bool = True


def read_sequence(spec: InputSpec, stdin=None) -> Sequence:
    if spec.inline is not None:
        raw = spec.inline.encode()
    elif spec.path in (None, "-"):
        stream = stdin if stdin is not None else sys.stdin.buffer
        raw = stream.read()
        if isinstance(raw, str):
            raw = raw.encode()
    else:
        try:
            with open(spec.path, "rb") as fh:
                raw = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {spec.path}: {exc.strerror}") from exc

    if spec.format == "ints":
        try:
            values = [int(tok) for tok in raw.split()]
        except ValueError as exc:
            raise InputError("ints input must be whitespace-separated integers") from exc
        if any(v < 1 for v in values):
            raise InputError("ints input must be positive")
    else:
        values = list(raw.strip())
    if not values:
        raise InputError("empty input")
    return Sequence.from_values(values, normalize=spec.normalize)


def _spec(args) -> InputSpec:
    return InputSpec(args.file, args.string, args.format, not args.no_normalize)


def format_occurrences(occs, output: str) -> str:
    if output == "jsonl":
        lines = [json.dumps({"start": o.start, "len": o.length}) for o in occs]
    elif output == "csv":
        lines = ["start,len"] + [f"{o.start},{o.length}" for o in occs]
    else:
        lines = [f"{o.start} {o.length}" for o in occs]
    return "".join(line + "\n" for line in lines)


def cmd_enumerate(args, out) -> int:
    s = read_sequence(_spec(args))
    out.write(format_occurrences(enumerate_op_squares(s), args.output))
    return EXIT_OK


def cmd_count(args, out) -> int:
    s = read_sequence(_spec(args))
    occs = enumerate_op_squares(s)
    distinct = count_distinct_as_words(occs, s)
    if args.output == "jsonl":
        out.write(json.dumps({"occurrences": len(occs), "distinct": distinct}) + "\n")
    elif args.output == "csv":
        out.write(f"occurrences,distinct\n{len(occs)},{distinct}\n")
    else:
        out.write(f"occurrences={len(occs)}\ndistinct={distinct}\n")
    return EXIT_OK


def _mismatch(s: Sequence, enumerate_fn) -> tuple | None:
    got = sorted((o.start, o.length) for o in enumerate_fn(s))
    want = brute_force_enumerate(s)
    return None if got == want else (want, got)


def shrink(s: Sequence, enumerate_fn) -> Sequence:
    """Greedily drop characters while the mismatch persists."""
    values = list(s.chars)
    changed = True
    while changed and len(values) > 1:
        changed = False
        for p in range(len(values)):
            trial = Sequence.from_values(values[:p] + values[p + 1:])
            if _mismatch(trial, enumerate_fn):
                values = list(trial.chars)
                changed = True
                break
    return Sequence.from_values(values)


def _report_failure(s: Sequence, enumerate_fn, out) -> int:
    small = shrink(s, enumerate_fn)
    want, got = _mismatch(small, enumerate_fn)
    out.write(f"counterexample: {' '.join(map(str, small.chars))}\n")
    out.write(f"  expected {want}\n  got      {got}\n")
    return EXIT_MISMATCH


def run_verify(max_n: int = 10, sigma_max: int = 3, cases: int = 1000, seed: int = 0,
               random_max_n: int = 200, random_sigma: int = 8,
               enumerate_fn: Callable = enumerate_op_squares, out=None) -> int:
    """Exhaustive small strings, then seeded random ones, against the brute force."""
    out = out or sys.stdout
    checked = 0
    for n in range(1, max_n + 1):
        for chars in itertools.product(range(1, sigma_max + 1), repeat=n):
            s = Sequence(chars, sigma_max)
            checked += 1
            if _mismatch(s, enumerate_fn):
                out.write(f"exhaustive n<={max_n} sigma<={sigma_max}: FAIL after {checked} strings\n")
                return _report_failure(s, enumerate_fn, out)
    out.write(f"exhaustive n<={max_n} sigma<={sigma_max}: PASS ({checked} strings)\n")
    if cases <= 0:
        return EXIT_OK

    rng = SplitMix64(seed)
    for c in range(cases):
        n = 1 + rng.below(random_max_n)
        sigma = 1 + rng.below(min(random_sigma, n))
        s = generate_random(n, sigma, rng.next())
        if _mismatch(s, enumerate_fn):
            out.write(f"random {cases} cases: FAIL at case {c + 1}\n")
            return _report_failure(s, enumerate_fn, out)
    out.write(f"random {cases} cases: PASS\n")
    return EXIT_OK


def cmd_verify(args, out, enumerate_fn: Callable = enumerate_op_squares) -> int:
    for name in ("max_n", "sigma", "random_max_n", "random_sigma"):
        if getattr(args, name) < 1:
            raise InputError(f"--{name.replace('_', '-')} must be positive")
    if args.cases < 0:
        raise InputError("--cases must be non-negative")
    return run_verify(args.max_n, args.sigma, args.cases, args.seed,
                      args.random_max_n, args.random_sigma, enumerate_fn, out)


def cmd_generate(args, out) -> int:
    if args.family:
        if args.sigma is None or args.k is None:
            raise InputError("--family needs --sigma and --k")
        s = generate_lower_bound_family(args.sigma, args.k)
    else:
        if args.sigma is None or args.n is None:
            raise InputError("random generation needs --n and --sigma")
        s = generate_random(args.n, args.sigma, args.seed)
    if args.format == "ascii":
        if s.sigma > 9:
            raise InputError("ascii output supports sigma <= 9")
        out.write("".join(map(str, s.chars)) + "\n")
    else:
        out.write(" ".join(map(str, s.chars)) + "\n")
    return EXIT_OK


def _int_list(text: str) -> list:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc
    if not values or any(v < 1 for v in values):
        raise InputError(f"expected positive integers, got {text!r}")
    return values


def cmd_bench(args, out) -> int:
    sigmas = _int_list(args.sigma)
    ns = _int_list(args.n)
    reports = []
    try:
        for report in sweep(sigmas, ns, family=args.family, seed=args.seed, repeat=args.repeat):
            if args.output == "csv":
                reports.append(report)
            else:
                out.write(report.to_json() + "\n")
                out.flush()
    except BoundViolation as exc:
        sys.stderr.write(f"bound violation: {exc}\n")
        return EXIT_MISMATCH
    if args.output == "csv":
        out.write(reports_to_csv(reports))
    return EXIT_OK


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="opsquares",
                                     description="Order-preserving square enumeration.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("file", nargs="?", help="input file (default: stdin)")
        p.add_argument("-s", "--string", help="inline input instead of a file")
        p.add_argument("--format", choices=("ascii", "ints"), default="ascii")
        p.add_argument("--no-normalize", action="store_true",
                       help="keep raw values instead of remapping to ranks")

    p = sub.add_parser("enumerate", help="list op-square occurrences")
    add_input(p)
    p.add_argument("--output", choices=("text", "jsonl", "csv"), default="text")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("count", help="count occurrences and distinct words")
    add_input(p)
    p.add_argument("--output", choices=("text", "jsonl", "csv"), default="text")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="check the enumerator against brute force")
    p.add_argument("--max-n", type=int, default=10, help="exhaustive length limit")
    p.add_argument("--sigma", type=int, default=3, help="exhaustive alphabet size")
    p.add_argument("--cases", type=int, default=1000, help="random cases (0 skips)")
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--random-max-n", type=int, default=200)
    p.add_argument("--random-sigma", type=int, default=8)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="emit a family or random sequence")
    p.add_argument("--family", action="store_true", help="1^k 2^k ... sigma^k")
    p.add_argument("--sigma", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--format", choices=("ascii", "ints"), default="ints")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="audit bounds over a sweep")
    p.add_argument("--family", action="store_true", help="family inputs (default: random)")
    p.add_argument("--sigma", default="2,4", help="comma-separated alphabet sizes")
    p.add_argument("--n", default="1024,2048", help="comma-separated lengths")
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--repeat", type=int, default=1, help="timing repetitions (median)")
    p.add_argument("--output", choices=("jsonl", "csv"), default="jsonl")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (InputError, ValueError) as exc:
        sys.stderr.write(f"opsquares {args.command}: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

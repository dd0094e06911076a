"""Command-line front end.

    nielsen-bip analyze theorem1:m=1
    nielsen-bip analyze --spec my_map.txt --format structured
    nielsen-bip certificate theorem2 --m 1..64
    nielsen-bip oracle-check --seed 7
    nielsen-bip describe --spec my_map.txt

Structured output is one record per line of space-separated ``key=value``
fields; values containing whitespace are shell-quoted (read them back with
``shlex.split``). Exit status: 0 success, 1 a check failed or the spec is
degenerate, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import itertools
import random
import re
import shlex
import sys
from dataclasses import dataclass
from typing import Callable, Sequence, TextIO

from .errors import NielsenError, SpecError, SpecParseError
from .exact_linalg import INFINITE
from .fibered_map import FiberedMapSpec, format_spec, load_spec, make_family, parse_family, validate_spec
from .groups import FiberElement
from .invariants import analyze, bip_certificate, fixed_subgroup, row_is_valid, same_reidemeister_class
from .oracles import SuiteResult, brute_force_fixed_subgroup, run_oracle_suites, torus_fixed_points, verify_merge_witness

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

COMMANDS = ("analyze", "certificate", "oracle-check", "describe")


@dataclass(frozen=True)
class RunConfig:
    command: str
    spec_source: str | None = None
    spec_path: str | None = None
    m_range: tuple[int, int] | None = None
    output_format: str = "text"
    seed: int | None = None


class UsageError(Exception):
    pass


def parse_range(text: str) -> tuple[int, int]:
    match = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", text)
    if not match:
        raise UsageError(f"bad range {text!r}; expected N or A..B")
    lo = int(match.group(1))
    hi = int(match.group(2)) if match.group(2) else lo
    if lo < 1 or hi < lo:
        raise UsageError(f"bad range {text!r}; need 1 <= A <= B")
    return lo, hi


def _fmt(value) -> str:
    if value is None:
        return "none"
    if value is True or value is False:
        return "true" if value else "false"
    if value == INFINITE:
        return "infinite"
    return str(value)


def _record(fields: Sequence[tuple[str, object]]) -> str:
    return " ".join(f"{k}={shlex.quote(_fmt(v))}" for k, v in fields)


def _table(fields: Sequence[tuple[str, object]]) -> str:
    width = max(len(k) for k, _ in fields)
    return "\n".join(f"{k:<{width}}  {_fmt(v)}" for k, v in fields)


def _specs_for(config: RunConfig) -> list[FiberedMapSpec]:
    if config.spec_path is not None:
        if config.spec_source is not None:
            raise UsageError("give either an inline family or --spec, not both")
        if config.m_range is not None:
            raise UsageError("--m does not apply to a spec file")
        return [load_spec(config.spec_path)]
    if config.spec_source is None:
        raise UsageError("a spec is required: theorem1:m=<int>, theorem2:m=<int> or --spec <path>")
    name, m = parse_family(config.spec_source)
    if m is not None and config.m_range is not None:
        raise UsageError("give m either inline or with --m, not both")
    if m is not None:
        return [make_family(name, m)]
    if config.m_range is None:
        raise UsageError(f"family {name} needs m: {name}:m=<int> or --m A..B")
    lo, hi = config.m_range
    return [make_family(name, m) for m in range(lo, hi + 1)]


def _analysis_fields(spec: FiberedMapSpec) -> list[tuple[str, object]]:
    report = analyze(spec)
    sub = fixed_subgroup(spec)
    conditions = "; ".join(str(c) for c in sub.lattice_conditions) or "none (all of Z^%d)" % (2 * spec.genus)
    return [
        ("label", spec.label or "-"),
        ("fiber_lefschetz", report.fiber_lefschetz),
        ("fiber_nielsen", report.fiber_nielsen),
        ("euler_characteristic", report.euler_characteristic),
        ("total_lefschetz", report.total_lefschetz),
        ("class_count", report.class_count),
        ("class_index_abs", report.class_index_abs),
        ("empty_classes_exist", report.empty_classes_exist),
        ("lattice_conditions", conditions),
        ("lattice_index", sub.lattice_index),
        ("fiber_formula", str(sub.fiber_formula)),
    ]


def _cmd_analyze(config: RunConfig, out: TextIO) -> int:
    blocks = [_analysis_fields(spec) for spec in _specs_for(config)]
    if config.output_format == "structured":
        for fields in blocks:
            print(_record(fields), file=out)
    else:
        print("\n\n".join(_table(fields) for fields in blocks), file=out)
    return EXIT_OK


def _cmd_describe(config: RunConfig, out: TextIO) -> int:
    for spec in _specs_for(config):
        diag = validate_spec(spec)
        fields = [
            ("label", spec.label or "-"),
            ("genus", spec.genus),
            ("fiber_rank", spec.fiber_rank),
            ("retraction", str(spec.retraction)),
            ("fiber_matrix", str(spec.fiber_matrix)),
            ("fiber_det", diag.fiber_det),
            ("is_fiber_automorphism", diag.is_fiber_automorphism),
            ("lefschetz_det", diag.lefschetz_det),
            ("degenerate", diag.degenerate),
        ]
        if config.output_format == "structured":
            print(_record(fields), file=out)
        else:
            print(format_spec(spec).rstrip(), file=out)
            print(_table(fields[5:]), file=out)
    return EXIT_OK


def _cmd_certificate(config: RunConfig, out: TextIO) -> int:
    if config.spec_path is not None:
        raise UsageError("certificate works on a named family, not a spec file")
    if config.spec_source is None:
        raise UsageError("certificate needs a family: theorem1 or theorem2")
    name, m = parse_family(config.spec_source)
    if m is not None and config.m_range is not None:
        raise UsageError("give m either inline or with --m, not both")
    if m is not None:
        lo, hi = m, m
    elif config.m_range is not None:
        lo, hi = config.m_range
    else:
        raise UsageError("certificate needs --m A..B")
    cert = bip_certificate(name, hi, m_min=lo)

    if config.output_format == "structured":
        for row in cert.rows:
            print(_record([
                ("family", name),
                ("m", row.m),
                ("total_lefschetz", row.total_lefschetz),
                ("class_count", row.class_count),
                ("class_index_abs", row.class_index_abs),
                ("valid", row_is_valid(row)),
            ]), file=out)
    else:
        header = ("family", "m", "L(f)", "classes", "|ind|", "status")
        body = [
            (name, _fmt(r.m), _fmt(r.total_lefschetz), _fmt(r.class_count), _fmt(r.class_index_abs),
             "VALID" if row_is_valid(r) else "INVALID")
            for r in cert.rows
        ]
        widths = [max(len(x[i]) for x in [header, *body]) for i in range(len(header))]
        for line in [header, *body]:
            print("  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip(), file=out)
        indices = ", ".join(_fmt(r.class_index_abs) for r in cert.rows)
        print(f"|ind| = {indices}; {'VALID' if cert.valid else 'INVALID'}", file=out)
    return EXIT_OK if cert.valid else EXIT_FAILED


def _spec_suites(spec: FiberedMapSpec, seed: int) -> list[SuiteResult]:
    """Oracle checks specific to one user-supplied spec."""
    rng = random.Random(seed)
    results = []

    fp = torus_fixed_points(spec.fiber_matrix)
    nielsen = analyze(spec).fiber_nielsen
    results.append(SuiteResult("spec: torus fixed points = fiber Nielsen number", *((1, 0) if fp.count == nielsen else (0, 1))))

    ok = bad = 0
    k = spec.fiber_rank
    for _ in range(50):
        v1 = FiberElement(k, tuple(rng.randint(-5, 5) for _ in range(k)))
        v2 = FiberElement(k, tuple(rng.randint(-5, 5) for _ in range(k)))
        mw = verify_merge_witness(spec, v1, v2)
        if (mw.witness is not None) == same_reidemeister_class(spec, v1, v2) and (mw.witness is None or mw.verified):
            ok += 1
        else:
            bad += 1
    results.append(SuiteResult("spec: merge witness agrees with Reidemeister cokernel", ok, bad))

    bound = 3 if spec.genus == 2 else 1
    report = fixed_subgroup(spec)
    pairs = dict(brute_force_fixed_subgroup(spec, bound))
    ok = bad = 0
    for alpha in itertools.product(range(-bound, bound + 1), repeat=2 * spec.genus):
        if (alpha in pairs) == report.contains(alpha) and (
            alpha not in pairs or tuple(report.fiber_formula(alpha)) == pairs[alpha]
        ):
            ok += 1
        else:
            bad += 1
    results.append(SuiteResult("spec: brute-force fixed subgroup = congruence lattice", ok, bad))
    return results


def _cmd_oracle_check(config: RunConfig, out: TextIO) -> int:
    seed = 0 if config.seed is None else config.seed
    results = run_oracle_suites(seed)
    if config.spec_source is not None or config.spec_path is not None:
        for spec in _specs_for(config):
            results += _spec_suites(spec, seed)
    for r in results:
        if config.output_format == "structured":
            print(_record([("suite", r.name), ("seed", seed), ("passed", r.passed), ("failed", r.failed), ("ok", r.ok)]), file=out)
        else:
            print(f"{'PASS' if r.ok else 'FAIL'}  {r.name}: {r.passed} passed, {r.failed} failed", file=out)
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAILED


_HANDLERS: dict[str, Callable[[RunConfig, TextIO], int]] = {
    "analyze": _cmd_analyze,
    "certificate": _cmd_certificate,
    "oracle-check": _cmd_oracle_check,
    "describe": _cmd_describe,
}


def run(config: RunConfig, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        return _HANDLERS[config.command](config, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except (SpecParseError, SpecError) as exc:
        print(f"error: {exc.code}: {exc}", file=err)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: cannot read spec: {exc}", file=err)
        return EXIT_USAGE
    except NielsenError as exc:
        print(f"error: {exc.code}: {exc}", file=err)
        return EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nielsen-bip",
        description="Nielsen fixed point invariants of fiber-preserving maps of Sigma_g x T^k.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("family", nargs="?", help="theorem1, theorem2, optionally with :m=<int>")
    parser.add_argument("--m", dest="m_range", help="inclusive range A..B, or a single N")
    parser.add_argument("--format", dest="output_format", choices=("text", "structured"), default="text")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--spec", dest="spec_path", help="path to a key-value spec file")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        m_range = parse_range(args.m_range) if args.m_range is not None else None
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    config = RunConfig(
        command=args.command,
        spec_source=args.family,
        spec_path=args.spec_path,
        m_range=m_range,
        output_format=args.output_format,
        seed=args.seed,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())

"""``zm``: tables, classification, sampling and the verification suites.

Exit codes: 0 success, 2 usage or parse error, 3 pole or capacity error
(and other domain errors such as sampling a non-admissible measure),
4 a verification suite failed.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable

from .errors import ZMeasureError
from .groups import (
    check_cocycle_additivity,
    check_cocycle_stability,
    check_quasi_invariance,
)
from .matchings import check_ewens_normalization, check_pushforward, sample_matchings
from .partitions import hook_length_product, hook_products, double, enumerate_partitions
from .reports import CheckReport, SuiteReport
from .scalar import ExactScalar, as_rational, format_scalar, parse_scalar
from .spherical import (
    check_characteristic_map,
    check_decomposition,
    check_embedding_L,
    check_explicit_formula,
    check_reproducing_identity,
    check_zonal_orthogonality,
    check_zonal_routes,
    explicit_zmeasure_table,
    zmeasure_by_inner_product,
)
from .symfunc import check_generating_identity, check_jack_orthogonality, check_jack_specialization
from .zmeasure import (
    DEGENERATE_READINGS,
    MeasureTable,
    Plancherel,
    ZMeasureParams,
    check_normalization,
    check_transposition_symmetry,
    classify_parameters,
    format_partition,
    plancherel_table,
    sample_partitions,
    zmeasure_table,
)

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_FAILED = 0, 2, 3, 4

Z_GRID = ("2", "5/3", "1+1i")
THETA_GRID = ("1/2", "1", "2")
EWENS_T_GRID = ("1/2", "1", "3/2", "5")
QUASI_T_GRID = ("1/2", "1", "2")
EMBEDDING_Z_GRID = ("2", "1+1i")
GENERATING_N_GRID = ("2", "4", "7/3")
SPECIALIZATION_N_GRID = ("2", "4", "6")
COCYCLE_SAMPLES = 10_000


def _scalar(text: str) -> ExactScalar:
    try:
        return parse_scalar(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _count(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


# ---------------------------------------------------------------------------
# verification suites

Job = Callable[[], CheckReport]


def _z_values(args) -> list[ExactScalar]:
    return [args.z] if args.z is not None else [parse_scalar(z) for z in Z_GRID]


def _theta_values(args) -> list[Fraction]:
    return [args.theta] if args.theta is not None else [as_rational(x) for x in THETA_GRID]


def _zmeasure_grid(args, n: int) -> list[ZMeasureParams]:
    out = []
    for z in _z_values(args):
        zps = [args.zp] if args.zp is not None else [ExactScalar(3), z.conjugate()]
        for zp in zps:
            for theta in _theta_values(args):
                out.append(ZMeasureParams(z, zp, theta, n))
    return out


def _t_values(args, grid) -> list[Fraction]:
    return [args.t] if args.t is not None else [as_rational(x) for x in grid]


def _suite_normalization(args, n):
    return [lambda p=p: check_normalization(p) for p in _zmeasure_grid(args, n)]


def _suite_transposition(args, n):
    return [lambda p=p: check_transposition_symmetry(p) for p in _zmeasure_grid(args, n)]


def _suite_pushforward(args, n):
    jobs = []
    for t in _t_values(args, EWENS_T_GRID):
        jobs.append(lambda t=t: check_ewens_normalization(t, n))
        jobs.append(lambda t=t: check_pushforward(t, n))
    return jobs


def _suite_cocycle(args, n):
    samples = None if n <= 3 else COCYCLE_SAMPLES
    return [
        lambda: check_cocycle_stability(n, samples=samples, seed=args.seed),
        lambda: check_cocycle_additivity(n, samples=samples, seed=args.seed),
    ]


def _suite_quasi_invariance(args, n):
    return [lambda t=t: check_quasi_invariance(t, n) for t in _t_values(args, QUASI_T_GRID)]


def _suite_orthogonality(args, n):
    return [
        lambda: check_zonal_orthogonality(n),
        lambda: check_reproducing_identity(n),
        lambda: check_zonal_routes(n),
        lambda: check_characteristic_map(n),
    ]


def _suite_decomposition(args, n):
    return [lambda z=z: check_decomposition(z, n) for z in _z_values(args)]


def _suite_explicit_formula(args, n):
    return [lambda z=z: check_explicit_formula(z, n) for z in _z_values(args)] + [
        lambda: _check_hook_reconciliation(n)
    ]


def _suite_embedding(args, n):
    zs = [args.z] if args.z is not None else [parse_scalar(z) for z in EMBEDDING_Z_GRID]
    return [lambda z=z: check_embedding_L(z, n) for z in zs]


def _suite_generating_identity(args, n):
    m = max(3, n)
    jobs = [lambda N=N: check_generating_identity(as_rational(N), n, m) for N in GENERATING_N_GRID]
    jobs += [lambda N=N: check_jack_specialization(n, as_rational(N)) for N in SPECIALIZATION_N_GRID]
    jobs.append(lambda: check_jack_orthogonality(n, 2))
    return jobs


def _check_hook_reconciliation(n: int) -> CheckReport:
    """``h(2 lam) == 4^n H(lam, 1/2) H'(lam, 1/2)``."""
    bad = None
    parts = enumerate_partitions(n)
    for lam in parts:
        H, Hp = hook_products(lam, Fraction(1, 2))
        if hook_length_product(double(lam)) != 4**n * H * Hp:
            bad = {"lam": list(lam), "h(2lam)": hook_length_product(double(lam)), "4^n H H'": 4**n * H * Hp}
            break
    return CheckReport(
        identity="hook-reconciliation",
        anchor="h(2lam) = 4^n H(lam,1/2) H'(lam,1/2)",
        n=n,
        params={},
        status=bad is None,
        counterexample=bad,
        cases=len(parts),
    )


SUITES: dict[str, Callable] = {
    "normalization": _suite_normalization,
    "transposition": _suite_transposition,
    "pushforward": _suite_pushforward,
    "cocycle": _suite_cocycle,
    "quasi-invariance": _suite_quasi_invariance,
    "orthogonality": _suite_orthogonality,
    "decomposition": _suite_decomposition,
    "explicit-formula": _suite_explicit_formula,
    "embedding": _suite_embedding,
    "generating-identity": _suite_generating_identity,
}


def build_jobs(suite: str, args, levels: list[int]) -> list[Job]:
    names = list(SUITES) if suite == "all" else [suite]
    jobs = []
    for name in names:
        for n in levels:
            jobs.extend(SUITES[name](args, n))
    return jobs


def run_suite(suite: str, args, levels: list[int], threads: int = 1) -> SuiteReport:
    """Run every job; the report order does not depend on ``threads``."""
    start = time.perf_counter()
    jobs = build_jobs(suite, args, levels)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            cases = list(pool.map(lambda job: job(), jobs))
    else:
        cases = [job() for job in jobs]
    elapsed = int((time.perf_counter() - start) * 1000)
    return SuiteReport(suite=suite, cases=cases, elapsed_ms=elapsed)


# ---------------------------------------------------------------------------
# commands


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if text and not text.endswith("\n"):
            sys.stdout.write("\n")


def _table_text(table: MeasureTable) -> str:
    rows = [(format_partition(lam), format_scalar(w), f"{float(w.re):.10g}") for lam, w in table.entries.items()]
    width = max((len(r[0]) for r in rows), default=9)
    wwidth = max((len(r[1]) for r in rows), default=6)
    lines = [f"{'partition':<{width}}  {'weight':<{wwidth}}  decimal"]
    lines += [f"{p:<{width}}  {w:<{wwidth}}  {d}" for p, w, d in rows]
    lines.append(f"sum = {format_scalar(table.total)}")
    return "\n".join(lines) + "\n"


def cmd_table(args) -> int:
    if args.plancherel:
        theta = args.theta if args.theta is not None else Fraction(1)
        table = plancherel_table(theta, args.n)
    elif args.source != "general":
        if args.z is None:
            raise argparse.ArgumentTypeError("--z is required")
        build = zmeasure_by_inner_product if args.source == "inner-product" else explicit_zmeasure_table
        table = build(args.z, args.n)
    else:
        if args.z is None or args.zp is None or args.theta is None:
            raise argparse.ArgumentTypeError("--z, --zp and --theta are required (or pass --plancherel)")
        table = zmeasure_table(ZMeasureParams(args.z, args.zp, args.theta, args.n))
    if args.format == "csv":
        text = table.to_csv()
    elif args.format == "json":
        text = table.to_json(indent=2)
    else:
        text = _table_text(table)
    _emit(text, args.output)
    return EXIT_OK


def cmd_classify(args) -> int:
    cls = classify_parameters(args.z, args.zp, args.theta, args.degenerate_reading)
    if args.format == "json":
        text = json.dumps({"series": cls.series.value, "branch": cls.branch, "reading": cls.reading})
    else:
        text = cls.series.value
        if args.format == "text" and cls.reading:
            text += f" (reading: {cls.reading})"
    _emit(text + "\n", args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.n is not None:
        levels = [args.n]
    else:
        levels = list(range(1, (args.max_n or 3) + 1))
    report = run_suite(args.suite, args, levels, args.threads)
    if args.format == "text":
        lines = [
            f"{'PASS' if c.status else 'FAIL'}  {c.identity:<22} n={c.n:<2} {json.dumps(c.to_dict()['params'])}"
            for c in report.cases
        ]
        lines.append(f"{report.suite}: {'pass' if report.passed else 'fail'} ({report.elapsed_ms} ms)")
        text = "\n".join(lines) + "\n"
    else:
        text = report.to_json(indent=2) + "\n"
    _emit(text, args.output)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_sample(args) -> int:
    if args.what == "matching":
        if args.t is None:
            raise argparse.ArgumentTypeError("--t is required")
        draws = sample_matchings(args.t, args.n, args.count, args.seed)
        records = [x.to_json_obj() for x in draws]
        plain = [json.dumps(r) for r in records]
    else:
        if args.plancherel:
            params = Plancherel(args.theta if args.theta is not None else Fraction(1), args.n)
        else:
            if args.z is None or args.zp is None or args.theta is None:
                raise argparse.ArgumentTypeError("--z, --zp and --theta are required (or pass --plancherel)")
            params = ZMeasureParams(args.z, args.zp, args.theta, args.n)
        draws = sample_partitions(params, args.count, args.seed, args.degenerate_reading)
        records = [list(lam) for lam in draws]
        plain = [format_partition(lam) for lam in draws]
    if args.format == "json":
        text = json.dumps(records) + "\n"
    elif args.format == "csv":
        header = "matching" if args.what == "matching" else "partition"
        text = "\n".join([header] + [f'"{p}"' for p in plain]) + "\n"
    else:
        text = "".join(p + "\n" for p in plain)
    _emit(text, args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(p: argparse.ArgumentParser, formats=("csv", "json", "text"), default="text") -> None:
    p.add_argument("--format", choices=formats, default=default)
    p.add_argument("--output", "-o", help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="exact z-measure or Plancherel table over partitions of n")
    p.add_argument("--z", type=_scalar)
    p.add_argument("--zp", type=_scalar)
    p.add_argument("--theta", type=_rational)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--plancherel", action="store_true")
    p.add_argument(
        "--source",
        choices=("general", "inner-product", "explicit"),
        default="general",
        help="general-theta formula, or the theta=1/2 measure of z via inner products / the explicit product",
    )
    _add_common(p, default="csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("classify", help="admissible series of (z, z', theta)")
    p.add_argument("--z", type=_scalar, required=True)
    p.add_argument("--zp", type=_scalar, required=True)
    p.add_argument("--theta", type=_rational, required=True)
    p.add_argument("--degenerate-reading", choices=DEGENERATE_READINGS, default="corrected")
    _add_common(p, formats=("text", "json"))
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="run an identity suite; JSON report")
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    level = p.add_mutually_exclusive_group()
    level.add_argument("--n", type=_positive_int, help="check this level only")
    level.add_argument("--max-n", type=_positive_int, help="check levels 1..max-n (default 3)")
    p.add_argument("--z", type=_scalar, help="restrict the z grid to one value")
    p.add_argument("--zp", type=_scalar, help="restrict the z' grid to one value")
    p.add_argument("--theta", type=_rational, help="restrict the theta grid to one value")
    p.add_argument("--t", type=_rational, help="restrict the Ewens t grid to one value")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized cocycle checks")
    p.add_argument("--threads", type=_positive_int, default=1)
    _add_common(p, formats=("json", "text"), default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sample", help="i.i.d. draws of matchings or partitions")
    p.add_argument("what", choices=("matching", "partition"))
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--count", type=_count, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--t", type=_rational)
    p.add_argument("--z", type=_scalar)
    p.add_argument("--zp", type=_scalar)
    p.add_argument("--theta", type=_rational)
    p.add_argument("--plancherel", action="store_true")
    p.add_argument("--degenerate-reading", choices=DEGENERATE_READINGS, default="corrected")
    _add_common(p)
    p.set_defaults(func=cmd_sample)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    except (ZMeasureError, ValueError) as exc:
        print(f"zm: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())

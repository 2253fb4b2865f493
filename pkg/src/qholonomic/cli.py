"""Command-line front end, file formats, and the benchmark harness.

One subcommand per library deliverable.  All outputs are exact: decimal
integers for mod-p values (canonical representative in [0, p)) and
"a/b" strings for rationals; no floating point appears anywhere except
benchmark timings, which are seconds from a monotonic clock.

Exit codes: 0 success, 1 input error (bad flags, unparsable files,
domain violations), 2 compute error (singular leading coefficients,
poles, non-invertible elements).
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time
from fractions import Fraction
from pathlib import Path

from .curvature import (
    QDifferenceSystem,
    curvature_cyclotomic,
    curvature_mod_p,
    curvature_scan,
)
from .errors import ComputeError, InputError, ParameterDomain, ParseError
from .exact import exact_nth_term
from .field import PrimeField
from .holonomic import (
    QRecurrence,
    from_recurrence,
    nth_term,
    q_exp_trunc,
    q_hermite_eval,
    terms_multi,
    theta_sum,
)
from .oracles import naive_geom_product
from .qspecial import (
    alg1_product,
    cube_eta_eval,
    euler_pentagonal_eval,
    geometric_point_product,
    q_binomial,
    q_factorial,
    q_pochhammer,
)

DEFAULT_BENCH_PRIME = 2**30 + 3
BENCH_ALGOS = ("naive", "alg1", "alg2", "alg3")
CSV_HEADER = "algo,N,median_seconds,result_checksum"


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------

def _load_json(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"{path}: invalid JSON at line {exc.lineno}, column "
            f"{exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be a JSON object")
    return doc


def _parse_exact_number(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"{where}: booleans are not numbers")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise ParseError(
                f"{where}: {value!r} is not an integer or a/b rational"
            ) from None
    raise ParseError(
        f"{where}: numbers must be strings or integers, not "
        f"{type(value).__name__} (no floating point)")


def _parse_monomial(obj, where: str) -> tuple[int, int, Fraction]:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: each monomial must be an object")
    for key in ("dx", "dy", "c"):
        if key not in obj:
            raise ParseError(f"{where}: missing field '{key}'")
    dx, dy = obj["dx"], obj["dy"]
    if not isinstance(dx, int) or not isinstance(dy, int) \
            or isinstance(dx, bool) or isinstance(dy, bool):
        raise ParseError(f"{where}: 'dx' and 'dy' must be integers")
    return dx, dy, _parse_exact_number(obj["c"], f"{where}.c")


def parse_recurrence_file(path) -> QRecurrence:
    """Load and validate a recurrence description.

    Format: {"order": r, "coeffs": [<r+1 monomial lists, lowest shift
    first, leading last>], "initials": [<r exact numbers as strings>]},
    each monomial an object {"dx": int, "dy": int, "c": "int-or-a/b"}
    meaning c * q^dx * (q^n)^dy.
    """
    doc = _load_json(path)
    for key in ("order", "coeffs", "initials"):
        if key not in doc:
            raise ParseError(f"{path}: missing field '{key}'")
    order = doc["order"]
    if not isinstance(order, int) or isinstance(order, bool):
        raise ParseError(f"{path}: 'order' must be an integer")
    raw_coeffs = doc["coeffs"]
    if not isinstance(raw_coeffs, list):
        raise ParseError(f"{path}: 'coeffs' must be a list")
    coeffs = []
    for i, poly in enumerate(raw_coeffs):
        if not isinstance(poly, list):
            raise ParseError(f"{path}: coeffs[{i}] must be a list")
        coeffs.append([
            _parse_monomial(mono, f"{path}: coeffs[{i}][{j}]")
            for j, mono in enumerate(poly)])
    raw_initials = doc["initials"]
    if not isinstance(raw_initials, list):
        raise ParseError(f"{path}: 'initials' must be a list")
    initials = [_parse_exact_number(v, f"{path}: initials[{i}]")
                for i, v in enumerate(raw_initials)]
    return from_recurrence(order, coeffs, initials)


def recurrence_to_dict(rec: QRecurrence) -> dict:
    """Serialization inverse of parse_recurrence_file (exact round-trip)."""
    return {
        "order": rec.order,
        "coeffs": [[{"dx": dx, "dy": dy, "c": str(c)} for dx, dy, c in poly]
                   for poly in rec.coeffs],
        "initials": [str(u) for u in rec.initials],
    }


def _parse_system_poly(obj, where: str):
    if isinstance(obj, int) and not isinstance(obj, bool):
        return obj
    if not isinstance(obj, list):
        raise ParseError(
            f"{where}: polynomial must be an integer or a monomial list")
    monos = []
    for j, mono in enumerate(obj):
        here = f"{where}[{j}]"
        if not isinstance(mono, dict):
            raise ParseError(f"{here}: each monomial must be an object")
        for key in ("dq", "dx", "c"):
            if key not in mono:
                raise ParseError(f"{here}: missing field '{key}'")
        dq, dx, c = mono["dq"], mono["dx"], mono["c"]
        if isinstance(c, str):
            try:
                c = int(c)
            except ValueError:
                raise ParseError(
                    f"{here}: 'c' must be an integer") from None
        if not all(isinstance(v, int) and not isinstance(v, bool)
                   for v in (dq, dx, c)):
            raise ParseError(f"{here}: 'dq', 'dx', 'c' must be integers")
        monos.append((dq, dx, c))
    return monos


def parse_system_file(path) -> QDifferenceSystem:
    """Load a q-difference system.

    Either {"entries": [[{"num": <poly>, "den": <poly>}, ...], ...]} for
    an explicit matrix, or {"scalar": [<poly>, ...]} for the companion
    system of a scalar equation (coefficients a_0 .. a_nu).  A <poly> is
    an integer constant or a list of {"dq", "dx", "c"} monomials.
    """
    doc = _load_json(path)
    if ("entries" in doc) == ("scalar" in doc):
        raise ParseError(
            f"{path}: exactly one of 'entries' or 'scalar' is required")
    if "scalar" in doc:
        raw = doc["scalar"]
        if not isinstance(raw, list):
            raise ParseError(f"{path}: 'scalar' must be a list")
        polys = [_parse_system_poly(c, f"{path}: scalar[{i}]")
                 for i, c in enumerate(raw)]
        return QDifferenceSystem.from_scalar_equation(polys)
    raw = doc["entries"]
    if not isinstance(raw, list):
        raise ParseError(f"{path}: 'entries' must be a list")
    rows = []
    for i, row in enumerate(raw):
        if not isinstance(row, list):
            raise ParseError(f"{path}: entries[{i}] must be a list")
        out_row = []
        for j, e in enumerate(row):
            where = f"{path}: entries[{i}][{j}]"
            if not isinstance(e, dict) or "num" not in e:
                raise ParseError(f"{where}: must be an object with 'num'")
            num = _parse_system_poly(e["num"], where + ".num")
            den = _parse_system_poly(e.get("den", 1), where + ".den")
            out_row.append((num, den))
        rows.append(out_row)
    return QDifferenceSystem(rows)


# ---------------------------------------------------------------------------
# benchmark harness
# ---------------------------------------------------------------------------

def _bench_value(algo: str, field: PrimeField, q: int, n: int) -> int:
    """One computation of prod_{k<N} (3 - q^k) mod p along the chosen path."""
    if algo == "naive":
        return naive_geom_product(field, 3, q, n)
    if algo == "alg1":
        return alg1_product(field, 3, q, n)
    if algo == "alg2":
        return geometric_point_product(field, 3, q, n)
    if algo == "alg3":
        rec = from_recurrence(1, [[(0, 1, 1), (0, 0, -3)], [(0, 0, 1)]], [1])
        return nth_term(rec, field, q, n, use_shortcut=False)
    raise ParameterDomain(
        f"algo must be one of {', '.join(BENCH_ALGOS)}; got {algo!r}")


def run_bench(algo, sizes, prime: int = DEFAULT_BENCH_PRIME,
              trials: int = 3, q: int = 2) -> list[str]:
    """CSV rows (header first) timing the selected product paths.

    algo may be one name, "all", or a list of names.  Every row carries
    the computed value as its checksum so timing runs double as
    correctness runs.
    """
    if isinstance(algo, str):
        algos = list(BENCH_ALGOS) if algo == "all" else [algo]
    else:
        algos = list(algo)
    for name in algos:
        if name not in BENCH_ALGOS:
            raise ParameterDomain(
                f"algo must be one of {', '.join(BENCH_ALGOS)}; got {name!r}")
    if trials < 1:
        raise ParameterDomain("trials must be positive")
    field = PrimeField(prime)
    qv = field.reduce(q)
    rows = [CSV_HEADER]
    for name in algos:
        for n in sizes:
            if n < 0:
                raise ParameterDomain("sizes must be non-negative")
            times = []
            value = None
            for _ in range(trials):
                t0 = time.perf_counter()
                value = _bench_value(name, field, qv, n)
                times.append(time.perf_counter() - t0)
            rows.append(f"{name},{n},{statistics.median(times):.6f},{value}")
    return rows


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    """argparse with input errors mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error:ParseError: {message}", file=sys.stderr)
        raise SystemExit(1)


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(
            f"{text!r} is not an integer or a/b rational") from None


def _indices_arg(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"{text!r} is not a comma-separated integer list") from None


def _sizes_arg(text: str) -> list[int]:
    return _indices_arg(text)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qholo",
                     description="q-holonomic sequence term extraction")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        return p

    def modular(p, with_q=True):
        p.add_argument("--mod", type=int, required=True,
                       help="odd prime modulus")
        if with_q:
            p.add_argument("--q", type=_fraction_arg, default=Fraction(2),
                           help="base q (integer or a/b, reduced mod p)")

    p = add("fact", "q-factorial [N]_q! mod p")
    modular(p)
    p.add_argument("--N", type=int, required=True)

    p = add("poch", "q-Pochhammer (alpha; q)_N mod p")
    modular(p)
    p.add_argument("--alpha", type=_fraction_arg, required=True)
    p.add_argument("--N", type=int, required=True)

    p = add("binom", "Gaussian binomial [N choose k]_q mod p")
    modular(p)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("nth", "single term of a recurrence from --rec")
    modular(p)
    p.add_argument("--rec", required=True, help="recurrence JSON file")
    p.add_argument("--N", type=int, required=True)

    p = add("terms", "several terms of a recurrence from --rec")
    modular(p)
    p.add_argument("--rec", required=True, help="recurrence JSON file")
    p.add_argument("--indices", type=_indices_arg, required=True,
                   help="strictly increasing comma list, e.g. 1,2,3")

    p = add("theta", "partial theta sum_{k<N} p^k q^(a k^2 + b k) mod p")
    modular(p)
    p.add_argument("--p", dest="ratio", type=_fraction_arg, required=True,
                   help="term ratio multiplier")
    p.add_argument("--a", type=int, required=True,
                   help="quadratic exponent coefficient (integer)")
    p.add_argument("--b", type=int, required=True,
                   help="linear exponent coefficient (integer)")
    p.add_argument("--N", type=int, required=True)

    p = add("exp", "truncated q-exponential sum_{k<N} alpha^k/[k]_q! mod p")
    modular(p)
    p.add_argument("--alpha", type=_fraction_arg, required=True)
    p.add_argument("--N", type=int, required=True)

    p = add("hermite", "N-th q-Hermite polynomial value mod p")
    modular(p)
    p.add_argument("--alpha", type=_fraction_arg, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--kind", choices=("discrete", "continuous"),
                   default="discrete")

    p = add("pentagonal", "truncated product prod_{k<N}(1-q^k) via "
                          "pentagonal-number sparse sum, mod p")
    modular(p)
    p.add_argument("--N", type=int, required=True)

    p = add("eta3", "truncated cube prod(1-q^k)^3 via the triangular-number "
                    "sparse sum, mod p")
    modular(p)
    p.add_argument("--N", type=int, required=True)

    p = add("exact", "exact rational term of a recurrence from --rec")
    p.add_argument("--rec", required=True, help="recurrence JSON file")
    p.add_argument("--q", type=_fraction_arg, required=True,
                   help="exact base (integer or a/b)")
    p.add_argument("--N", type=int, required=True)

    p = add("curvature", "curvature heuristics for a q-difference system")
    p.add_argument("--system", required=True, help="system JSON file")
    p.add_argument("--q", type=_fraction_arg, default=Fraction(2))
    p.add_argument("--prime-bound", type=int, default=None,
                   help="scan all primes up to this bound")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mod", type=int, default=None,
                   help="single-prime mode: test only this prime")
    p.add_argument("--x0", type=int, default=1,
                   help="evaluation point for single-prime/cyclotomic mode")
    p.add_argument("--cyclotomic", type=int, default=None, metavar="n",
                   help="work over F_p[q]/(1+q+...+q^(n-1)) instead of "
                        "specializing q")

    p = add("bench", "timing harness, CSV output")
    p.add_argument("--algo", default="all",
                   help="naive|alg1|alg2|alg3 or 'all' or comma list")
    p.add_argument("--sizes", type=_sizes_arg, required=True,
                   help="comma list of N values")
    p.add_argument("--mod", type=int, default=DEFAULT_BENCH_PRIME)
    p.add_argument("--q", type=_fraction_arg, default=Fraction(2))
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--csv", default=None, help="write CSV here (else stdout)")

    return parser


def _format_exact(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else str(value)


def _print_scan_report(report) -> None:
    tested = len(report.verdicts) - len(report.skipped)
    print(f"prime_bound={report.prime_bound} seed={report.seed} "
          f"tested={tested} identity={len(report.identity_primes)} "
          f"non_identity={len(report.non_identity_primes)} "
          f"skipped={len(report.skipped)}")
    print(f"note: {report.note}")
    for v in report.verdicts:
        if v.status == "skipped":
            print(f"p={v.prime} skipped reason={v.reason}")
        else:
            print(f"p={v.prime} {v.status} x0={v.x0} retries={v.retries}")


def _run_curvature(args) -> None:
    sys_obj = parse_system_file(args.system)
    if args.cyclotomic is not None:
        if args.mod is None:
            raise ParameterDomain("--cyclotomic needs --mod for the base prime")
        result = curvature_cyclotomic(sys_obj, args.cyclotomic, args.mod,
                                      args.x0)
        print(f"n={result.index} p={result.modulus} x0={result.x0} "
              f"{'identity' if result.identity else 'non-identity'}")
        for row in result.entries:
            print(" ".join("[" + ",".join(str(c) for c in e) + "]"
                           for e in row))
        return
    if args.mod is not None:
        matrix, identity = curvature_mod_p(sys_obj, args.q, args.mod, args.x0)
        print(f"p={args.mod} x0={matrix.field.reduce(args.x0)} "
              f"{'identity' if identity else 'non-identity'}")
        for row in matrix.rows:
            print(" ".join(str(v) for v in row))
        return
    if args.prime_bound is None:
        raise ParameterDomain(
            "curvature needs --prime-bound (scan) or --mod (single prime)")
    _print_scan_report(curvature_scan(sys_obj, args.q, args.prime_bound,
                                      args.seed))


def _dispatch(args) -> None:
    cmd = args.command
    if cmd == "exact":
        rec = parse_recurrence_file(args.rec)
        print(_format_exact(exact_nth_term(rec, args.q, args.N)))
        return
    if cmd == "curvature":
        _run_curvature(args)
        return
    if cmd == "bench":
        rows = run_bench(args.algo.split(",") if "," in args.algo
                         else args.algo, args.sizes, args.mod,
                         args.trials, PrimeField(args.mod).reduce(args.q))
        text = "\n".join(rows) + "\n"
        if args.csv:
            Path(args.csv).write_text(text)
        else:
            sys.stdout.write(text)
        return

    field = PrimeField(args.mod)
    q = field.reduce(args.q)
    if cmd == "fact":
        print(q_factorial(field, q, args.N))
    elif cmd == "poch":
        print(q_pochhammer(field, field.reduce(args.alpha), q, args.N))
    elif cmd == "binom":
        print(q_binomial(field, args.N, args.k, q))
    elif cmd == "nth":
        rec = parse_recurrence_file(args.rec)
        print(nth_term(rec, field, q, args.N))
    elif cmd == "terms":
        rec = parse_recurrence_file(args.rec)
        values = terms_multi(rec, field, q, args.indices)
        print(",".join(str(v) for v in values))
    elif cmd == "theta":
        print(theta_sum(field, field.reduce(args.ratio), args.a, args.b,
                        q, args.N))
    elif cmd == "exp":
        print(q_exp_trunc(field, field.reduce(args.alpha), q, args.N))
    elif cmd == "hermite":
        print(q_hermite_eval(field, field.reduce(args.alpha), q, args.N,
                             args.kind))
    elif cmd == "pentagonal":
        print(euler_pentagonal_eval(field, args.N, q))
    elif cmd == "eta3":
        print(cube_eta_eval(field, args.N, q))
    else:  # pragma: no cover - argparse enforces the choices
        raise ParameterDomain(f"unknown command {cmd!r}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _dispatch(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    except InputError as exc:
        print(f"error:{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ComputeError as exc:
        print(f"error:{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

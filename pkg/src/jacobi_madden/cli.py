"""Command-line front end: JSON lines on stdout, a short summary on stderr."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .corpus_io import CorpusError, corpus_load, shipped_corpus
from .ecurve import GeneratorSet, NotOnCurve, curve_from_t, known_generator, parse_generator
from .exactmath import FactorizationTooHard, format_rational
from .search import curve_method_hits, roundtrip, search_quartic_method
from .sieve import QUADRIC_ORDERS, STAGES, TValue, normalize_t, sieve
from .solutions import Verdict, brute_force, t_orbit, verify_solution

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

log = logging.getLogger("jacobi_madden")


class UsageError(Exception):
    pass


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def parse_t(text: str) -> TValue:
    try:
        frac = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed t {text!r}; expected m/n") from None
    m, n = frac.numerator, frac.denominator
    if m <= n:
        raise UsageError(f"t must exceed 1, got {text}")
    if (m - n) % 2 == 0:
        raise UsageError(f"t = {m}/{n} has m and n both odd; use the paired value {normalize_t(m, n)}")
    return TValue(m, n)


def parse_solution(text: str) -> tuple[int, int, int, int]:
    try:
        parts = tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        parts = ()
    if len(parts) != 4:
        raise UsageError(f"malformed solution {text!r}; expected a,b,c,d")
    return parts  # type: ignore[return-value]


def _threads(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("JM_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"JM_THREADS={env!r} is not an integer") from None
    return os.cpu_count() or 1


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_sieve(args: argparse.Namespace) -> int:
    if args.max_sum < 3:
        raise UsageError("--max-sum must be at least 3")
    order = [s.strip() for s in args.order.split(",") if s.strip()]
    bad = [s for s in order if s not in STAGES]
    if bad or len(set(order)) != len(order):
        raise UsageError(f"--order takes distinct stages from {', '.join(STAGES)}")
    if args.no_conjecture:
        order = [s for s in order if s != "conjecture"]
    reports = sieve(args.max_sum, order, args.quadric_order, _threads(args.threads))
    for r in reports:
        _emit(r.to_json())
    survivors = [str(r.t) for r in reports if r.passed]
    undecided = [str(r.t) for r in reports if r.failed_stage and r.flags.get(r.failed_stage) is None]
    _say(f"{len(reports)} values of t, {len(survivors)} survivors: {' '.join(survivors) or '-'}")
    if undecided:
        _say(f"undecided (factorization limit): {' '.join(undecided)}")
    if args.figure:
        from .plotting import sieve_figure

        _say(f"figure written to {sieve_figure(reports, args.figure)}")
    return EXIT_OK


def _solution_json(sol, t: TValue, method: str, **extra) -> dict:
    return {"t": str(t), "method": method, "a": str(sol.a), "b": str(sol.b), "c": str(sol.c), "d": str(sol.d), **extra}


def cmd_search(args: argparse.Namespace) -> int:
    t = parse_t(args.t)
    if args.method == "quartic":
        if args.height is None:
            raise UsageError("search quartic needs --height")
        sols = search_quartic_method(t, args.height, workers=_threads(args.threads))
        for sol in sols:
            _emit(_solution_json(sol, t, "quartic"))
        _say(f"t = {t}: {len(sols)} solution classes at height <= {args.height}")
        return EXIT_OK

    curve = curve_from_t(t.value)
    gens = [known_generator(t.value)] if args.with_g1 else []
    try:
        gens += [parse_generator(curve, g) for g in args.gens or ()]
    except (ValueError, ZeroDivisionError, NotOnCurve) as exc:
        raise UsageError(f"bad generator: {exc}") from None
    seen = set()
    for comb, sol in curve_method_hits(t, GeneratorSet(curve, tuple(gens), args.bound)):
        if sol in seen:
            continue
        seen.add(sol)
        _emit(_solution_json(sol, t, "curve", coefficients=list(comb.coefficients), torsion=comb.with_torsion))
    _say(f"t = {t}: {len(seen)} solution classes from {len(gens)} generators, bound {args.bound}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        records = corpus_load(args.input, verify=False) if args.input else shipped_corpus()
    except CorpusError as exc:
        raise UsageError(str(exc)) from None
    failures = 0
    for rec in records:
        try:
            rec.check()
            ok, reason = True, None
        except CorpusError as exc:
            ok, reason = False, str(exc)
            failures += 1
            _say(reason)
        _emit({"line": rec.line, "source": rec.source, "t": format_rational(rec.t), "ok": ok, "error": reason})
    _say(f"{len(records) - failures}/{len(records)} records verified")
    return EXIT_VERIFY if failures else EXIT_OK


def cmd_orbit(args: argparse.Namespace) -> int:
    sol = parse_solution(args.solution)
    if verify_solution(*sol) is not Verdict.VALID:
        _say(f"{args.solution} is not a nontrivial solution")
        return EXIT_VERIFY
    orbit = sorted(t_orbit(sol))
    for t in orbit:
        _emit({"t": format_rational(t), "normalized": str(normalize_t(t.numerator, t.denominator))})
    _say(" ".join(format_rational(t) for t in orbit))
    return EXIT_OK


def cmd_roundtrip(args: argparse.Namespace) -> int:
    sol = parse_solution(args.solution)
    if verify_solution(*sol) is not Verdict.VALID:
        _say(f"{args.solution} is not a nontrivial solution")
        return EXIT_VERIFY
    entries = roundtrip(sol)
    for e in entries:
        _emit(e)
    good = sum(1 for e in entries if e.get("ok"))
    _say(f"{good}/{len(entries)} permutations verified at every stage")
    return EXIT_OK if good == len(entries) else EXIT_VERIFY


def cmd_brute(args: argparse.Namespace) -> int:
    found = brute_force(args.bound)
    nontrivial = 0
    for quad in found:
        verdict = verify_solution(*quad)
        nontrivial += verdict is Verdict.VALID
        _emit({"a": quad[0], "b": quad[1], "c": quad[2], "d": quad[3], "verdict": verdict.value})
    _say(f"bound {args.bound}: {len(found)} classes, {nontrivial} nontrivial")
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jm", description="Search for solutions of a^4+b^4+c^4+d^4=(a+b+c+d)^4.")
    parser.add_argument("--threads", type=_positive, default=None, help="worker processes (default: JM_THREADS or CPU count)")
    parser.add_argument("--digit-limit", type=_positive, default=None,
                        help="largest cofactor (in digits) worth a full factorization attempt")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sieve", help="sieve t = m/n by local solubility")
    p.add_argument("--max-sum", type=int, required=True)
    p.add_argument("--order", default=",".join(STAGES), help="comma-separated stage order")
    p.add_argument("--no-conjecture", action="store_true")
    p.add_argument("--quadric-order", choices=QUADRIC_ORDERS, default="rs")
    p.add_argument("--threads", type=_positive, default=argparse.SUPPRESS)
    p.add_argument("--figure", type=Path, help="also write a PNG/PDF/SVG scatter of the run")
    p.set_defaults(func=cmd_sieve)

    p = sub.add_parser("search", help="search one t for solutions")
    p.add_argument("method", choices=("quartic", "curve"))
    p.add_argument("--t", required=True)
    p.add_argument("--height", type=_positive)
    p.add_argument("--gens", nargs="+", metavar="U[,V]", help="generators on E_t as u or u,v")
    p.add_argument("--with-g1", action="store_true", help="prepend the generator u = 48t")
    p.add_argument("--bound", type=_positive, default=1, help="coefficient bound L")
    p.add_argument("--threads", type=_positive, default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="verify a corpus file (default: the shipped corpus)")
    p.add_argument("--input", type=Path)
    p.set_defaults(func=cmd_verify)

    for name, func, text in (
        ("orbit", cmd_orbit, "the six t-values of a solution"),
        ("roundtrip", cmd_roundtrip, "staged forward and back maps for a solution"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--solution", required=True, help="a,b,c,d (write --solution=-1,... for a leading minus)")
        p.set_defaults(func=func)

    p = sub.add_parser("brute", help="exhaustive search with |a|,|b|,|c|,|d| <= B")
    p.add_argument("--bound", type=_positive, required=True)
    p.set_defaults(func=cmd_brute)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.digit_limit:
        os.environ["JM_DIGIT_LIMIT"] = str(args.digit_limit)
    try:
        return args.func(args)
    except UsageError as exc:
        _say(f"jm: error: {exc}")
        return EXIT_USAGE
    except FactorizationTooHard as exc:
        _say(f"jm: factorization limit reached: {exc}")
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())

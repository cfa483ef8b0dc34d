"""Command-line front end with deterministic text and JSON output.

Subcommands: schur, qfun, hook, expand, polarizations, verify, sweep, vev.
Exit codes: 0 on success, 1 when a verification reports a mismatch, 2 on
invalid input (with a one-line diagnostic on stderr).

Set SQK_CACHE_DIR to persist the h/q generating-series caches between runs.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from .expansion import (
    bilinear_expansion,
    dedupe_symmetric,
    evaluate_expansion,
    sweep,
    verify_identity,
)
from .fock import Generator, vev
from .partitions import (
    FrobeniusCoords,
    Partition,
    StrictPartition,
    frobenius_from_partition,
    partition_from_frobenius,
)
from .polarization import binary_marking, enumerate_polarizations, s_and_t
from .symfunc import (
    hook_schur,
    load_series_cache,
    save_series_cache,
    schur,
    schur_q,
    schur_q_half,
)


class InputError(Exception):
    """Invalid command-line input; maps to exit code 2."""


def _parse_partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _parse_strict(text: str) -> StrictPartition:
    try:
        return StrictPartition.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _parse_frobenius(text: str) -> FrobeniusCoords:
    try:
        return FrobeniusCoords.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _resolve_lambda(args) -> tuple[Partition, FrobeniusCoords]:
    if getattr(args, "partition", None):
        lam = _parse_partition(args.partition)
        return lam, frobenius_from_partition(lam)
    if getattr(args, "frobenius", None):
        fc = _parse_frobenius(args.frobenius)
        return partition_from_frobenius(fc), fc
    raise InputError("one of --partition or --frobenius is required")


def _check_weight(value: int | None, minimum: int = 0) -> int | None:
    if value is not None and value < minimum:
        raise InputError(f"weight cutoff must be >= {minimum}")
    return value


def _emit_json(payload) -> str:
    return json.dumps(payload, separators=(",", ":"))


def _frobenius_json(fc: FrobeniusCoords) -> dict:
    return {"alpha": list(fc.alpha.parts), "beta": list(fc.beta.parts)}


def _terms_json(terms) -> list:
    return [
        {
            "coeff": str(term.coeff),
            "q_plus": list(term.q_plus.parts),
            "q_minus": list(term.q_minus.parts),
        }
        for term in terms
    ]


def _table(headers: list[str], rows: list[list[str]]) -> list[str]:
    widths = [len(h) for h in headers]
    for row in rows:
        for k, cell in enumerate(row):
            widths[k] = max(widths[k], len(cell))
    lines = ["  ".join(h.ljust(widths[k]) for k, h in enumerate(headers)).rstrip()]
    for row in rows:
        lines.append("  ".join(c.ljust(widths[k]) for k, c in enumerate(row)).rstrip())
    return lines


# -- subcommand handlers -------------------------------------------------------


def _cmd_schur(args, out) -> int:
    lam, _ = _resolve_lambda(args)
    cutoff = _check_weight(args.weight)
    if cutoff is None:
        cutoff = lam.weight
    poly = schur(lam, cutoff)
    if args.odd:
        poly = poly.restrict_to_odd()
    if args.format == "json":
        payload = {
            "lambda": list(lam.parts),
            "weight": cutoff,
            "odd": bool(args.odd),
            "poly": str(poly),
        }
        print(_emit_json(payload), file=out)
    else:
        print(poly, file=out)
    return 0


def _cmd_qfun(args, out) -> int:
    alpha = _parse_strict(args.strict)
    cutoff = _check_weight(args.weight)
    if cutoff is None:
        cutoff = alpha.weight
    poly = schur_q_half(alpha, cutoff) if args.half else schur_q(alpha, cutoff)
    if args.format == "json":
        payload = {
            "alpha": list(alpha.parts),
            "weight": cutoff,
            "half": bool(args.half),
            "poly": str(poly),
        }
        print(_emit_json(payload), file=out)
    else:
        print(poly, file=out)
    return 0


def _cmd_hook(args, out) -> int:
    fc = _parse_frobenius(args.frobenius)
    if fc.rank != 1:
        raise InputError("hook expects a single pair, e.g. -f 3|1")
    arm, leg = fc.alpha.parts[0], fc.beta.parts[0]
    cutoff = _check_weight(args.weight)
    if cutoff is None:
        cutoff = arm + leg + 1
    poly = hook_schur(arm, leg, cutoff)
    if args.odd:
        poly = poly.restrict_to_odd()
    if args.format == "json":
        payload = {
            "arm": arm,
            "leg": leg,
            "weight": cutoff,
            "odd": bool(args.odd),
            "poly": str(poly),
        }
        print(_emit_json(payload), file=out)
    else:
        print(poly, file=out)
    return 0


def _cmd_expand(args, out) -> int:
    lam, fc = _resolve_lambda(args)
    terms = bilinear_expansion(fc)
    if args.dedupe:
        terms = dedupe_symmetric(terms)
    if args.format == "json":
        payload = {
            "lambda": list(lam.parts),
            "frobenius": _frobenius_json(fc),
            "deduped": bool(args.dedupe),
            "terms": _terms_json(terms),
        }
        print(_emit_json(payload), file=out)
    else:
        shared, union = s_and_t(fc)
        print(
            f"frobenius {fc}  r={fc.rank} s={shared.cardinality}",
            file=out,
        )
        rows = [[str(t.coeff), str(t.q_plus), str(t.q_minus)] for t in terms]
        for line in _table(["coeff", "q+", "q-"], rows):
            print(line, file=out)
    return 0


def _cmd_polarizations(args, out) -> int:
    lam, fc = _resolve_lambda(args)
    shared, union = s_and_t(fc)
    pols = enumerate_polarizations(fc)
    sigma_by_j: list[tuple[int, int]] = []
    vanishing: list[int] = []
    for j in range(1 << (2 * fc.rank)):
        hit = binary_marking(fc, j)
        if hit is None:
            vanishing.append(j)
        else:
            sigma_by_j.append((j, hit[1]))
    if args.format == "json":
        payload = {
            "lambda": list(lam.parts),
            "frobenius": _frobenius_json(fc),
            "r": fc.rank,
            "s": shared.cardinality,
            "S": list(shared.parts),
            "T": list(union.parts),
            "polarizations": [
                {
                    "j0": p.canonical_j.j,
                    "mu_plus": list(p.mu_plus.parts),
                    "mu_minus": list(p.mu_minus.parts),
                    "sgn": p.sgn,
                    "pi": p.pi,
                    "pi_tilde": p.pi_tilde,
                    "m_plus": p.m_plus,
                    "m_minus": p.m_minus,
                    "hat_mu_plus": list(p.hat_mu_plus.parts),
                    "hat_mu_minus": list(p.hat_mu_minus.parts),
                    "hat_m_minus": p.hat_m_minus,
                }
                for p in pols
            ],
            "sigma": [[j, sig] for j, sig in sigma_by_j],
            "vanishing": vanishing,
        }
        print(_emit_json(payload), file=out)
        return 0
    print(f"frobenius {fc}  r={fc.rank} s={shared.cardinality}", file=out)
    print(f"S = {shared}", file=out)
    print(f"T = {union}", file=out)
    rows = [
        [
            str(p.canonical_j.j),
            str(p.mu_plus),
            str(p.mu_minus),
            f"{p.sgn:+d}",
            str(p.pi),
            str(p.hat_m_minus),
        ]
        for p in pols
    ]
    for line in _table(["j0", "mu+", "mu-", "sgn", "pi", "mhat-"], rows):
        print(line, file=out)
    plus_js = ",".join(str(j) for j, sig in sigma_by_j if sig > 0) or "-"
    minus_js = ",".join(str(j) for j, sig in sigma_by_j if sig < 0) or "-"
    vanish = ",".join(str(j) for j in vanishing) or "-"
    print(f"sigma +1 at j: {plus_js}", file=out)
    print(f"sigma -1 at j: {minus_js}", file=out)
    print(f"vanishing j: {vanish}", file=out)
    return 0


def _report_json(report, terms) -> dict:
    fc = frobenius_from_partition(report.lam)
    return {
        "lambda": list(report.lam.parts),
        "frobenius": _frobenius_json(fc),
        "terms": _terms_json(terms),
        "ok": report.ok,
        "residual": str(report.residual),
    }


def _cmd_verify(args, out) -> int:
    lam, fc = _resolve_lambda(args)
    cutoff = _check_weight(args.weight)
    report = verify_identity(lam, cutoff)
    terms = bilinear_expansion(fc)
    if args.dedupe:
        terms = dedupe_symmetric(terms)
    if args.format == "json":
        print(_emit_json(_report_json(report, terms)), file=out)
    else:
        status = "OK" if report.ok else "FAIL"
        print(
            f"{status} ({report.term_count} terms, residual {report.residual})",
            file=out,
        )
    return 0 if report.ok else 1


def _cmd_sweep(args, out) -> int:
    if args.weight is None or args.weight < 1:
        raise InputError("sweep requires a weight cutoff >= 1")
    jobs = args.jobs or 1
    if jobs < 1:
        raise InputError("jobs must be >= 1")
    reports = sweep(args.weight, jobs=jobs)
    all_ok = all(r.ok for r in reports)
    if args.format == "json":
        payload = {
            "max_weight": args.weight,
            "ok": all_ok,
            "reports": [
                _report_json(r, bilinear_expansion(frobenius_from_partition(r.lam)))
                for r in reports
            ],
        }
        print(_emit_json(payload), file=out)
    else:
        for r in reports:
            status = "OK" if r.ok else "FAIL"
            print(
                f"{r.lam}: {status} ({r.term_count} terms, residual {r.residual})",
                file=out,
            )
        good = sum(1 for r in reports if r.ok)
        print(f"sweep: {good}/{len(reports)} ok (weights 1..{args.weight})", file=out)
    return 0 if all_ok else 1


_TOKEN_RE = re.compile(r"^(psi|psidag|phi\+|phi-)\((-?\d+)(,t)?\)$")


def parse_word(text: str) -> tuple[tuple[Generator, ...], int | None]:
    """Parse the vev mini-language: `psi(2) psidag(-2) | W=4`."""
    weight = None
    if "|" in text:
        body, _, opts = text.partition("|")
        opts = opts.strip()
        match = re.fullmatch(r"W\s*=\s*(\d+)", opts)
        if not match:
            raise InputError(f"bad word options {opts!r} (expected W=<int>)")
        weight = int(match.group(1))
    else:
        body = text
    gens = []
    for token in body.split():
        match = _TOKEN_RE.match(token)
        if not match:
            raise InputError(f"bad generator token {token!r}")
        kind, index, dressed = match.group(1), int(match.group(2)), bool(match.group(3))
        gens.append(Generator(kind, index, dressed))
    return tuple(gens), weight


def _cmd_vev(args, out) -> int:
    word, weight = parse_word(args.word)
    if weight is None:
        weight = args.weight if args.weight is not None else 4
    _check_weight(weight)
    value = vev(word, weight)
    if args.format == "json":
        payload = {
            "word": " ".join(str(g) for g in word),
            "weight": weight,
            "re": str(value.re),
            "im": str(value.im),
        }
        print(_emit_json(payload), file=out)
    else:
        print(value, file=out)
    return 0


# -- parser --------------------------------------------------------------------


def _add_common(sub, partition=False, frobenius=False, strict=False, weight=False):
    if partition:
        sub.add_argument("-p", "--partition", help="partition, e.g. 3,2 (empty: -)")
    if frobenius:
        sub.add_argument("-f", "--frobenius", help="Frobenius coordinates, e.g. 2,0|1,0")
    if strict:
        sub.add_argument("-s", "--strict", required=True, help="strict partition, e.g. 2,1")
    if weight:
        sub.add_argument("-w", "--weight", type=int, default=None, help="weight cutoff")
    sub.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqk",
        description="Exact Schur functions, Schur Q-functions and bilinear Q-expansions.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("schur", help="Schur function via Jacobi-Trudi")
    _add_common(p, partition=True, frobenius=True, weight=True)
    p.add_argument("--odd", action="store_true", help="zero out even flow variables")
    p.set_defaults(handler=_cmd_schur)

    p = subs.add_parser("qfun", help="Schur Q-function via the Pfaffian")
    _add_common(p, strict=True, weight=True)
    p.add_argument("--half", action="store_true", help="evaluate at half variables")
    p.set_defaults(handler=_cmd_qfun)

    p = subs.add_parser("hook", help="hook Schur function s_(a|b)")
    p.add_argument("-f", "--frobenius", required=True, help="hook coordinates, e.g. 3|1")
    p.add_argument("-w", "--weight", type=int, default=None, help="weight cutoff")
    p.add_argument("--odd", action="store_true", help="zero out even flow variables")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_hook)

    p = subs.add_parser("expand", help="bilinear Q-function expansion terms")
    _add_common(p, partition=True, frobenius=True)
    p.add_argument("--dedupe", action="store_true", help="merge swap-symmetric terms")
    p.set_defaults(handler=_cmd_expand)

    p = subs.add_parser("polarizations", help="polarization/binary-marking table")
    _add_common(p, partition=True, frobenius=True)
    p.set_defaults(handler=_cmd_polarizations)

    p = subs.add_parser("verify", help="check the expansion against Jacobi-Trudi")
    _add_common(p, partition=True, frobenius=True, weight=True)
    p.add_argument("--dedupe", action="store_true", help="merge terms in JSON output")
    p.set_defaults(handler=_cmd_verify)

    p = subs.add_parser("sweep", help="verify every partition up to a weight")
    p.add_argument("-w", "--weight", type=int, required=True, help="maximum weight")
    p.add_argument("--jobs", type=int, default=1, help="parallel verification jobs")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_sweep)

    p = subs.add_parser("vev", help="vacuum expectation value of an operator word")
    p.add_argument("word", help="e.g. 'phi+(2,t) phi-(0) | W=3'")
    p.add_argument("-w", "--weight", type=int, default=None, help="weight cutoff")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_vev)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    cache_file = None
    cache_dir = os.environ.get("SQK_CACHE_DIR")
    if cache_dir:
        cache_file = Path(cache_dir) / "series_cache_v1.bin"
        load_series_cache(cache_file)

    try:
        code = args.handler(args, sys.stdout)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if cache_file is not None:
        try:
            cache_file.parent.mkdir(parents=True, exist_ok=True)
            save_series_cache(cache_file)
        except OSError:
            pass  # persistence is best-effort; never fail the computation
    return code


def console_main() -> None:
    raise SystemExit(main())

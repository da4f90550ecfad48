"""Command-line front end: build, check, analyze and refute algebras.

Commands: make | check | series | prove | verify-cert.  Every report exists as
one internal dict rendered either as text or JSON (--format), so the two views
always carry identical facts.  Exit codes: 0 success/decided, 1 check failure
or bad input, 2 inconclusive proof.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import document
from .constructions import FACTORY_FORMS, NamedAlgebra, UnknownFactory, make_algebra
from .core import (check_compatibility, check_left_symmetric, check_lie,
                   check_novikov, check_operator_identity)
from .properties import lemma_suite
from .solver import NonexistenceCertificate, prove, verify_certificate
from .subspaces import derived_series, lower_central_series, upper_central_series

CHECK_NAMES = ("lie", "lsa", "novikov", "compat", "opid", "lemmas")


def resolve_input(arg: str) -> NamedAlgebra:
    """An input is a factory spec (e.g. 'cex13'), a file path, or '-' for stdin."""
    try:
        return make_algebra(arg)
    except UnknownFactory:
        pass
    if arg == "-":
        return document.parse(sys.stdin.read())
    if os.path.exists(arg):
        return document.load(arg)
    raise UnknownFactory(
        f"{arg!r} is neither a known factory spec nor an existing file; "
        f"factory forms: {', '.join(FACTORY_FORMS)}")


def _witness_labels(named: NamedAlgebra, witness) -> list[str] | None:
    if witness is None:
        return None
    labels = named.lie.labels
    return [labels[i] if isinstance(i, int) and 0 <= i < len(labels) else str(i)
            for i in witness]


def run_checks(named: NamedAlgebra, selected: list[str]) -> dict:
    results = []
    for name in selected:
        if name == "lie":
            reports = [check_lie(named.lie)]
        elif named.product is None:
            raise ValueError(f"check {name!r} needs a Novikov product, "
                             f"but {named.name or 'the input'} is bracket-only")
        elif name == "lsa":
            reports = [check_left_symmetric(named.product)]
        elif name == "novikov":
            reports = [check_novikov(named.product)]
        elif name == "compat":
            reports = [check_compatibility(named.product, named.lie)]
        elif name == "opid":
            reports = [check_operator_identity(named.product, named.lie)]
        elif name == "lemmas":
            reports = lemma_suite(named.structure)
        else:
            raise ValueError(f"unknown check {name!r}")
        for rep in reports:
            results.append({
                "check": rep.name,
                "passed": rep.passed,
                "witness": _witness_labels(named, rep.witness),
                "detail": rep.detail or None,
            })
    return {
        "command": "check",
        "name": named.name,
        "dim": named.dim,
        "checks": results,
        "passed": all(r["passed"] for r in results),
    }


def run_series(named: NamedAlgebra) -> dict:
    lower = lower_central_series(named.lie)
    derived = derived_series(named.lie)
    upper = upper_central_series(named.lie)
    return {
        "command": "series",
        "name": named.name,
        "dim": named.dim,
        "lower_central": {"ranks": list(lower.ranks()), "nilpotency_class": lower.cls},
        "derived": {"ranks": list(derived.ranks()), "solvability_class": derived.cls},
        "upper_central": {"ranks": list(upper.ranks()), "class": upper.cls},
    }


def run_prove(named: NamedAlgebra, case_split_depth: int = 0,
              shuffle_seed: int | None = None) -> tuple[dict, NonexistenceCertificate | None]:
    result = prove(named.lie, name=named.name, case_split_depth=case_split_depth,
                   shuffle_seed=shuffle_seed)
    report = {
        "command": "prove",
        "name": named.name,
        "dim": named.dim,
        "unknowns": named.dim ** 3,
        "forced_zeros": result.forced_count,
        "stage_counts": [[stage, count] for stage, count in result.stage_counts],
        "stage_determined": [
            [stage, prev - count]
            for (_, prev), (stage, count) in zip(result.stage_counts,
                                                 result.stage_counts[1:])
        ],
        "outcome": result.outcome,
        "residual_quadratics": result.residual_count,
    }
    if result.certificate is not None:
        con = result.certificate.contradiction
        report["contradiction"] = {
            "kind": con.kind,
            "pair": [p + 1 for p in con.pair] if con.pair else None,
            "entry": [e + 1 for e in con.entry] if con.entry else None,
            "constant": str(con.constant),
        }
    if result.outcome == "inconclusive":
        report["zero_probe_failed_checks"] = list(result.failed_checks)
    return report, result.certificate


def render_text(report: dict) -> str:
    cmd = report["command"]
    lines = [f"{cmd} {report.get('name', '')} (dim {report.get('dim', '?')})".rstrip()]
    if cmd == "check":
        for r in report["checks"]:
            line = f"  {r['check']}: {'pass' if r['passed'] else 'FAIL'}"
            if r["witness"]:
                line += f" at ({', '.join(r['witness'])})"
            if r["detail"]:
                line += f" [{r['detail']}]"
            lines.append(line)
        lines.append("result: " + ("pass" if report["passed"] else "FAIL"))
    elif cmd == "series":
        lc = report["lower_central"]
        dv = report["derived"]
        uc = report["upper_central"]
        lines.append(f"  lower central ranks: {lc['ranks']}  nilpotency class: "
                     f"{lc['nilpotency_class'] if lc['nilpotency_class'] is not None else 'not nilpotent'}")
        lines.append(f"  derived ranks: {dv['ranks']}  solvability class: "
                     f"{dv['solvability_class'] if dv['solvability_class'] is not None else 'not solvable'}")
        lines.append(f"  upper central ranks: {uc['ranks']}  class: "
                     f"{uc['class'] if uc['class'] is not None else 'does not reach the whole space'}")
    elif cmd == "prove":
        lines.append(f"  unknowns: {report['unknowns']}, grading-forced zeros: {report['forced_zeros']}")
        determined = dict((s, n) for s, n in report.get("stage_determined", ()))
        for stage, count in report["stage_counts"]:
            extra = f" ({determined[stage]} determined)" if stage in determined else ""
            lines.append(f"  after {stage}: {count} free{extra}")
        lines.append(f"  outcome: {report['outcome']}")
        if "contradiction" in report:
            con = report["contradiction"]
            where = ""
            if con["pair"]:
                where = f" from [R(b_{con['pair'][0]}), R(b_{con['pair'][1]})]"
                if con["entry"]:
                    where += f" entry ({con['entry'][0]},{con['entry'][1]})"
            lines.append(f"  contradiction{where}: 0 = {con['constant']}")
        if report["outcome"] == "inconclusive":
            lines.append(f"  residual quadratics: {report['residual_quadratics']}, "
                         f"zero probe failed: {', '.join(report['zero_probe_failed_checks'])}")
    elif cmd == "verify-cert":
        lines.append(f"  verified: {report['verified']}")
    return "\n".join(lines)


def emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=1, sort_keys=True))
    else:
        print(render_text(report))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="novikov",
                                description="Exact toolkit for Novikov structures on Lie algebras")
    sub = p.add_subparsers(dest="cmd", required=True)

    mk = sub.add_parser("make", help="build a named algebra and write its document")
    mk.add_argument("spec", help=f"factory spec, one of: {', '.join(FACTORY_FORMS)}")
    mk.add_argument("-o", "--out", default="-", help="output path (default stdout)")

    ck = sub.add_parser("check", help="run identity checks on an algebra")
    ck.add_argument("input", help="factory spec, document path, or - for stdin")
    ck.add_argument("--checks", default=None,
                    help=f"comma-separated subset of {','.join(CHECK_NAMES)}")
    ck.add_argument("--all", action="store_true", help="run every applicable check")
    ck.add_argument("--format", choices=("text", "json"), default="text")

    se = sub.add_parser("series", help="lower central, derived and upper central series")
    se.add_argument("input")
    se.add_argument("--format", choices=("text", "json"), default="text")

    pv = sub.add_parser("prove", help="run the Novikov nonexistence pipeline")
    pv.add_argument("input")
    pv.add_argument("--case-split-depth", type=int, default=0)
    pv.add_argument("--shuffle-seed", type=int, default=None)
    pv.add_argument("--emit-certificate", default=None, metavar="PATH")
    pv.add_argument("--format", choices=("text", "json"), default="text")

    vc = sub.add_parser("verify-cert", help="replay a nonexistence certificate")
    vc.add_argument("certificate", help="certificate JSON path")
    vc.add_argument("--algebra", default=None,
                    help="optional algebra input to cross-check the recorded constants")
    vc.add_argument("--format", choices=("text", "json"), default="text")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.cmd == "make":
            named = make_algebra(args.spec)
            text = document.serialize(named)
            if args.out == "-":
                sys.stdout.write(text)
            else:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(text)
            return 0
        if args.cmd == "check":
            named = resolve_input(args.input)
            if args.checks:
                selected = [c.strip() for c in args.checks.split(",") if c.strip()]
                for c in selected:
                    if c not in CHECK_NAMES:
                        raise ValueError(f"unknown check {c!r}; choose from {', '.join(CHECK_NAMES)}")
            elif named.product is None:
                selected = ["lie"]
            else:
                selected = list(CHECK_NAMES)
            report = run_checks(named, selected)
            emit(report, args.format)
            return 0 if report["passed"] else 1
        if args.cmd == "series":
            named = resolve_input(args.input)
            emit(run_series(named), args.format)
            return 0
        if args.cmd == "prove":
            named = resolve_input(args.input)
            report, cert = run_prove(named, args.case_split_depth, args.shuffle_seed)
            if cert is not None and args.emit_certificate:
                with open(args.emit_certificate, "w", encoding="utf-8") as fh:
                    fh.write(cert.to_json() + "\n")
            emit(report, args.format)
            return 0 if report["outcome"] in ("certificate", "structure") else 2
        if args.cmd == "verify-cert":
            with open(args.certificate, "r", encoding="utf-8") as fh:
                cert = NonexistenceCertificate.from_json(fh.read())
            lie = None
            if args.algebra:
                lie = resolve_input(args.algebra).lie
            ok = verify_certificate(cert, lie)
            emit({"command": "verify-cert", "name": cert.algebra_name,
                  "dim": cert.dim, "verified": ok}, args.format)
            return 0 if ok else 1
    except (UnknownFactory, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())

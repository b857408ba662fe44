"""Command-line entry point.

Exit codes: 0 every check passed, 1 a check failed, 2 the input could not be
parsed, 3 the configuration is invalid.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, TextIO

from . import algebras as alg
from . import corpus
from .errors import InvalidConfig, OTKError, ParseError, UsageError
from .matroid import (
    VectorConfig,
    broken_circuits,
    circuits,
    complex_summary,
    flats,
    is_unimodular,
    one_based,
    signed_circuit,
    validate,
)
from .verify import (
    CHECK_GROUPS,
    VerificationReport,
    default_degree_bound,
    parse_orders,
    psi_degree_table,
    series_summary,
    verify_all,
    verify_tp1,
)

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_INVALID = 0, 1, 2, 3

COMMANDS = ("validate", "circuits", "presentations", "hilbert", "psi-report", "verify-all", "tp1")


@dataclass
class RunSpec:
    subcommand: str
    input: Optional[str] = None
    example: Optional[str] = None
    max_degree: Optional[int] = None
    orders: Optional[str] = None
    json: Optional[str] = None
    seed: int = 0
    skip: List[str] = field(default_factory=list)
    jobs: int = 1
    timing: bool = False


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="otk", description="Presentations and degree-by-degree checks for hypertoric rings.")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        if name != "tp1":
            src = p.add_mutually_exclusive_group(required=True)
            src.add_argument("--input", help="configuration JSON file")
            src.add_argument("--example", choices=corpus.names(), help="built-in configuration")
        p.add_argument("--json", help="write the machine-readable result to this file ('-' for stdout)")
        if name in ("psi-report", "verify-all", "tp1"):
            p.add_argument("--max-degree", type=int, help="highest internal degree to check")
        if name == "verify-all":
            p.add_argument("--orders", help="comma-separated: default, lex, deglex, degrevlex")
            p.add_argument("--seed", type=int, default=0, help="seed for sampled monomial orders")
            p.add_argument("--skip", action="append", default=[], choices=CHECK_GROUPS, help="check group to skip")
            p.add_argument("--jobs", type=int, default=1, help="worker processes")
            p.add_argument("--timing", action="store_true", help="include per-check milliseconds in the JSON")
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> RunSpec:
    ns = build_parser().parse_args(argv)
    return RunSpec(**{k.replace("-", "_"): v for k, v in vars(ns).items()})


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def load_config(spec: RunSpec) -> VectorConfig:
    if spec.example:
        return corpus.get(spec.example)
    path = Path(spec.input)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    try:
        return VectorConfig.from_json(text, name=path.stem)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def emit_json(spec: RunSpec, payload, out: TextIO):
    if not spec.json:
        return
    text = json.dumps(payload, indent=2) + "\n"
    if spec.json == "-":
        out.write(text)
    else:
        Path(spec.json).write_text(text)


def _require_valid(config: VectorConfig):
    report = validate(config, check_simple=config.theta is not None)
    if not report.ok:
        raise InvalidConfig("configuration fails validation", report)
    if config.theta is None:
        raise InvalidConfig("this command needs theta", report)


def _sets(sets) -> str:
    return ", ".join("{" + ",".join(map(str, one_based(s))) + "}" for s in sets) or "none"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_validate(spec: RunSpec, out: TextIO) -> int:
    config = load_config(spec)
    report = validate(config)
    for key in ("full_rank", "no_coloops", "unimodular", "simple"):
        value = getattr(report, key)
        out.write(f"{key:12} {'n/a' if value is None else 'yes' if value else 'no'}\n")
    for v in report.violations:
        out.write(f"  {v}\n")
    out.write("VALID\n" if report.ok else "INVALID\n")
    emit_json(spec, {"config": config.to_dict(), "validation": report.to_dict()}, out)
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_circuits(spec: RunSpec, out: TextIO) -> int:
    config = load_config(spec)
    circs = circuits(config)
    payload = {"config": config.to_dict(), "circuits": [one_based(C) for C in circs]}
    out.write(f"circuits: {_sets(circs)}\n")
    if is_unimodular(config):
        signed = []
        for C in circs:
            sc = signed_circuit(config, C)
            tau = sc.tau(config.theta) if config.theta is not None else None
            signed.append({**sc.to_dict(), "tau": tau})
            out.write(f"  C+ = {_sets([sc.plus])}  C- = {_sets([sc.minus]) if sc.minus else '{}'}"
                      + (f"  tau = {tau}" if tau is not None else "") + "\n")
        payload["signed_circuits"] = signed
        payload["orientation"] = "theta" if config.theta is not None else "min(C) in C+"
    bcs = broken_circuits(config)
    out.write(f"broken circuits: {_sets(bcs)}\n")
    fl = flats(config)
    out.write(f"flats: {len(fl)}\n")
    payload["broken_circuits"] = [one_based(B) for B in bcs]
    payload["flats"] = [one_based(F) for F in fl]
    for which, label in (("ind", "independence complex"), ("bc", "broken circuit complex")):
        s = complex_summary(config, which)
        out.write(f"{label}: f = {s.f_vector}, h = {s.h_vector}\n")
        payload[f"complex_{which}"] = s.to_dict()
    emit_json(spec, payload, out)
    return EXIT_OK


def cmd_presentations(spec: RunSpec, out: TextIO) -> int:
    config = load_config(spec)
    pres = alg.all_presentations(config)
    for p in pres:
        out.write(f"{p.name} ({p.description}) in Q[{', '.join(p.ring.names)}]\n")
        for g in p.generators:
            out.write(f"    {g}\n")
        if not p.generators:
            out.write("    (zero ideal)\n")
    if pres and pres[0].structure_map:
        out.write("structure map: " + ", ".join(f"x{j + 1} -> {f}" for j, f in enumerate(pres[0].structure_map)) + "\n")
    payload = {"config": config.to_dict(), "presentations": [p.to_dict() for p in pres]}
    if config.theta is not None and is_unimodular(config):
        payload["curve_classes"] = alg.CurveClassLattice.of(config).to_dict()
    emit_json(spec, payload, out)
    return EXIT_OK


def cmd_hilbert(spec: RunSpec, out: TextIO) -> int:
    config = load_config(spec)
    series = series_summary(config)
    for key, value in series.items():
        out.write(f"{key}: {value}\n")
    emit_json(spec, {"config": config.to_dict(), "series": series}, out)
    return EXIT_OK


def cmd_psi_report(spec: RunSpec, out: TextIO) -> int:
    config = load_config(spec)
    _require_valid(config)
    bound = spec.max_degree if spec.max_degree is not None else default_degree_bound(config)
    rows = psi_degree_table(config, bound)
    header = ("deg", "coh.deg", "dim H", "dim R'", "rank psi", "dim Ker", "dim W", "W in Ker")
    out.write("  ".join(f"{h:>8}" for h in header) + "\n")
    ok = True
    for r in rows:
        good = r["W_in_ker"] and r["dim_W"] == r["dim_ker"] and r["rank_psi"] == r["dim_R"]
        ok = ok and good
        cells = (r["degree"], r["cohomological_degree"], r["dim_H"], r["dim_R"], r["rank_psi"], r["dim_ker"], r["dim_W"],
                 "yes" if r["W_in_ker"] else "NO")
        out.write("  ".join(f"{c:>8}" for c in cells) + "\n")
    out.write(f"Ker psi = W verified through degree {bound}: {'PASS' if ok else 'FAIL'}\n")
    emit_json(spec, {"config": config.to_dict(), "degree_bound": bound, "degrees": rows, "status": "pass" if ok else "fail"}, out)
    return EXIT_OK if ok else EXIT_FAIL


def render_report(report: VerificationReport, out: TextIO, label: str = ""):
    for c in report.checks:
        through = f" (through degree {c.degrees})" if c.degrees is not None else ""
        out.write(f"{'PASS' if c.passed else 'FAIL'}  {c.name}{through}\n")
        if not c.passed and c.witness:
            out.write(f"      witness: {json.dumps(c.witness)}\n")
    for key, value in report.series.items():
        out.write(f"  {key}: {value}\n")
    out.write(f"{label}{'PASS' if report.passed else 'FAIL'}\n")


def cmd_verify_all(spec: RunSpec, out: TextIO) -> int:
    config = load_config(spec)
    if config.theta is None:
        raise InvalidConfig("verify-all needs theta", validate(config, check_simple=False))
    orders = parse_orders(spec.orders, config.n, spec.seed) if spec.orders else None
    report = verify_all(config, spec.max_degree, orders, spec.skip, spec.seed, spec.jobs)
    render_report(report, out)
    emit_json(spec, report.to_dict(timing=spec.timing), out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_tp1(spec: RunSpec, out: TextIO) -> int:
    bound = spec.max_degree if spec.max_degree is not None else 4
    config = corpus.get("tp1")
    for p in alg.all_presentations(config):
        if p.name in ("J0", "J", "J1", "J1prime"):
            out.write(f"{p.name}: <{', '.join(str(g) for g in p.generators)}>\n")
    report = verify_tp1(bound)
    render_report(report, out)
    emit_json(spec, report.to_dict(), out)
    return EXIT_OK if report.passed else EXIT_FAIL


HANDLERS = {
    "validate": cmd_validate,
    "circuits": cmd_circuits,
    "presentations": cmd_presentations,
    "hilbert": cmd_hilbert,
    "psi-report": cmd_psi_report,
    "verify-all": cmd_verify_all,
    "tp1": cmd_tp1,
}


def run(spec: RunSpec, out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    try:
        return HANDLERS[spec.subcommand](spec, out)
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except InvalidConfig as exc:
        err.write(f"invalid configuration: {exc}\n")
        if exc.report is not None:
            err.write(json.dumps(exc.report.to_dict(), indent=2) + "\n")
        return EXIT_INVALID
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE
    except OTKError as exc:
        err.write(f"check failed: {exc}\n")
        return EXIT_FAIL


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(parse_args(argv))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

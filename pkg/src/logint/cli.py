"""Command-line front end.

Subcommands: ``verify``, ``sweep``, ``region``, ``table``, ``selftest``.
Exit codes: 0 when everything matched, 1 on any Mismatch/Divergent record,
2 on usage or parse errors (and for ``verify`` on InvalidParams).

Set ``SOURCE_DATE_EPOCH`` to pin report timestamps for byte-stable output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

from . import __version__
from .closed_forms import PARAM_NAMES, REQUIRED_PARAMS, IdentityFamily, ParamSet
from .harness import (
    ABS_MATCH_TOL,
    DERIVATIVE_MATCH_TOL,
    MATCH_TOL,
    REGION_TOL,
    BranchLabel,
    Verdict,
    VerificationRecord,
    region_map_grad,
    render_table,
    reproduce_summary_table,
    selftest_checks,
    summarize,
    sweep,
    verify,
)
from .literals import format_complex, format_params, parse_complex, parse_grid, parse_values
from .quadrature import QuadConfig, QuadResult, QuadStatus

REPORT_VERSION = 1

#: values used for parameters a family needs but the command line omits
DEFAULT_PARAMS = {
    "a": 1 + 0j, "k": 0j, "z": 1j, "p": 0j, "q": 1 + 0j,
    "r": 2 + 0j, "t": complex(math.pi / 4), "b": 0.5 + 0j,
}

CSV_COLUMNS = ["family", *PARAM_NAMES, "lhs_re", "lhs_im", "rhs_re", "rhs_im",
               "abs_err", "rel_err", "verdict"]


# -- serialization ---------------------------------------------------------------


def _num(x: float):
    """JSON-safe float: non-finite values become strings."""
    x = float(x)
    return x if math.isfinite(x) else repr(x)


def _unnum(x) -> float:
    return float(x)


def _cplx(v: complex | None):
    return None if v is None else {"re": _num(v.real), "im": _num(v.imag)}


def _uncplx(d) -> complex | None:
    return None if d is None else complex(_unnum(d["re"]), _unnum(d["im"]))


def record_to_dict(rec: VerificationRecord) -> dict:
    q = rec.quad
    return {
        "family": rec.family.value,
        "params": {n: _cplx(v) for n, v in rec.params.present().items()},
        "lhs": _cplx(rec.lhs),
        "rhs": _cplx(rec.rhs),
        "abs_err": _num(rec.abs_err),
        "rel_err": _num(rec.rel_err),
        "quad": None if q is None else {
            "value": _cplx(q.value),
            "err_estimate": _num(q.err_estimate),
            "evaluations": q.evaluations,
            "status": q.status.value,
            "panels": q.panels,
        },
        "verdict": rec.verdict.value,
        "sign": rec.sign,
        "row": rec.row,
        "note": rec.note,
    }


def record_from_dict(d: dict) -> VerificationRecord:
    q = d["quad"]
    quad = None if q is None else QuadResult(
        _uncplx(q["value"]), _unnum(q["err_estimate"]), q["evaluations"],
        QuadStatus(q["status"]), q["panels"],
    )
    return VerificationRecord(
        family=IdentityFamily(d["family"]),
        params=ParamSet(**{n: _uncplx(v) for n, v in d["params"].items()}),
        lhs=_uncplx(d["lhs"]),
        rhs=_uncplx(d["rhs"]),
        abs_err=_unnum(d["abs_err"]),
        rel_err=_unnum(d["rel_err"]),
        quad=quad,
        verdict=Verdict(d["verdict"]),
        sign=d["sign"],
        row=d["row"],
        note=d["note"],
    )


def utc_timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    now = (datetime.fromtimestamp(int(epoch), tz=timezone.utc) if epoch
           else datetime.now(timezone.utc))
    return now.replace(microsecond=0).isoformat().replace("+00:00", "Z")


@dataclass
class Report:
    records: list[VerificationRecord]
    config: QuadConfig
    tolerances: dict = field(default_factory=lambda: {
        "match_rel": MATCH_TOL, "match_abs": ABS_MATCH_TOL,
        "derivative_rel": DERIVATIVE_MATCH_TOL, "region_rel": REGION_TOL,
    })
    timestamp: str = field(default_factory=utc_timestamp)
    version: int = REPORT_VERSION

    @property
    def summary(self) -> dict[str, int]:
        return summarize(self.records)

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "timestamp": self.timestamp,
            "config": {**asdict(self.config), "tolerances": dict(self.tolerances)},
            "records": [record_to_dict(r) for r in self.records],
            "summary": self.summary,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        cfg = dict(d["config"])
        tolerances = cfg.pop("tolerances")
        rep = cls(
            records=[record_from_dict(r) for r in d["records"]],
            config=QuadConfig(**cfg),
            tolerances=tolerances,
            timestamp=d["timestamp"],
            version=d["version"],
        )
        if rep.summary != d["summary"]:
            raise ValueError("report summary does not match its records")
        return rep


def records_csv(records: list[VerificationRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rec in records:
        present = rec.params.present()
        w.writerow([
            rec.family.value,
            *(format_complex(present[n]) if n in present else "" for n in PARAM_NAMES),
            repr(rec.lhs.real), repr(rec.lhs.imag), repr(rec.rhs.real), repr(rec.rhs.imag),
            repr(rec.abs_err), repr(rec.rel_err), rec.verdict.value,
        ])
    return buf.getvalue()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


# -- argument handling -----------------------------------------------------------


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _values_arg(text: str) -> list[complex]:
    try:
        return parse_values(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _grid_arg(text: str) -> list[float]:
    try:
        return parse_grid(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("quadrature")
    g.add_argument("--abs-tol", type=float, default=QuadConfig.abs_tol)
    g.add_argument("--rel-tol", type=float, default=QuadConfig.rel_tol)
    g.add_argument("--max-panels", type=int, default=QuadConfig.max_panels)
    p.add_argument("--json", metavar="PATH", help="write a JSON report")
    p.add_argument("--csv", metavar="PATH", help="write CSV records")


def _family_arg(text: str) -> IdentityFamily:
    try:
        return IdentityFamily(text.lower())
    except ValueError:
        choices = ", ".join(f.value for f in IdentityFamily)
        raise argparse.ArgumentTypeError(f"unknown family {text!r} (choose from {choices})") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logint",
        description="Verify closed-form real-line log integrals by adaptive quadrature.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify one parameter set")
    p.add_argument("family", type=_family_arg)
    for n in PARAM_NAMES:
        p.add_argument(f"--{n}", type=_complex_arg, default=None)
    _common(p)

    p = sub.add_parser("sweep", help="verify a Cartesian parameter grid")
    p.add_argument("family", type=_family_arg)
    for n in PARAM_NAMES:
        p.add_argument(f"--{n}", type=_values_arg, default=None,
                       help="comma list of complex literals, start:stop:count, or RE@IM rectangle")
    _common(p)

    p = sub.add_parser("region", help="map the sin t / |sin t| branches over an (r, t) grid")
    p.add_argument("--r", type=_grid_arg, default=parse_grid("0.1:3:21"))
    p.add_argument("--t", type=_grid_arg, default=parse_grid(f"{-math.pi!r}:{math.pi!r}:21"))
    _common(p)

    p = sub.add_parser("table", help="reproduce the nine-row integral table")
    p.add_argument("--row", type=int, action="append", help="restrict to table row (repeatable)")
    _common(p)

    p = sub.add_parser("selftest", help="quadrature known answers and branch checks")
    _common(p)
    return parser


def _config(args) -> QuadConfig:
    return QuadConfig(abs_tol=args.abs_tol, rel_tol=args.rel_tol, max_panels=args.max_panels)


def _params_for(family: IdentityFamily, given: dict) -> dict:
    values = {n: v for n, v in given.items() if v is not None}
    for n in REQUIRED_PARAMS[family]:
        values.setdefault(n, DEFAULT_PARAMS[n])
    return values


def _emit(records, cfg, args) -> None:
    if args.json:
        _write(args.json, Report(records, cfg).to_json())
    if args.csv:
        _write(args.csv, records_csv(records))


def _exit_code(records) -> int:
    return 0 if all(r.verdict is Verdict.MATCH for r in records) else 1


def describe(rec: VerificationRecord) -> str:
    q = rec.quad
    lines = [
        f"family   {rec.family.value}",
        f"params   {format_params(rec.params) or '-'}",
        f"lhs      {rec.lhs.real:.15g}{rec.lhs.imag:+.15g}i",
        f"rhs      {rec.rhs.real:.15g}{rec.rhs.imag:+.15g}i",
        f"abs_err  {rec.abs_err:.3e}",
        f"rel_err  {rec.rel_err:.3e}",
    ]
    if q is not None:
        lines.append(f"quad     {q.status.value}, err {q.err_estimate:.2e}, "
                     f"{q.evaluations} evaluations, {q.panels} panels")
    lines.append(f"verdict  {rec.verdict.value}" + (f" (sign {rec.sign:+d})" if rec.sign != 1 else ""))
    if rec.note:
        lines.append(f"note     {rec.note}")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    cfg = _config(args)
    given = {n: getattr(args, n) for n in PARAM_NAMES}
    rec = verify(args.family, _params_for(args.family, given), cfg)
    print(describe(rec))
    _emit([rec], cfg, args)
    if rec.verdict is Verdict.INVALID:
        return 2
    return _exit_code([rec])


def cmd_sweep(args) -> int:
    cfg = _config(args)
    grid = {}
    for n in REQUIRED_PARAMS[args.family]:
        vals = getattr(args, n)
        grid[n] = vals if vals is not None else [DEFAULT_PARAMS[n]]
    if not grid:
        print(f"{args.family.value} has no free parameters; use verify", file=sys.stderr)
        return 2
    records = sweep(args.family, grid, cfg)
    print(render_table(records))
    print(" ".join(f"{k}={v}" for k, v in summarize(records).items()))
    _emit(records, cfg, args)
    return _exit_code(records)


def region_csv(cells) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r", "t", "label", "lhs_re", "lhs_im", "plain_sin", "abs_sin",
                "rel_err_plain", "rel_err_abs", "note"])
    for row in cells:
        for c in row:
            w.writerow([repr(c.r), repr(c.t), c.label.value, repr(c.lhs.real), repr(c.lhs.imag),
                        repr(c.plain.real), repr(c.abs_sin.real),
                        repr(c.rel_err_plain), repr(c.rel_err_abs), c.note])
    return buf.getvalue()


def cmd_region(args) -> int:
    cfg = _config(args)
    cells = region_map_grad(args.r, args.t, cfg)
    text = region_csv(cells)
    if args.csv:
        _write(args.csv, text)
    else:
        sys.stdout.write(text)
    if args.json:
        payload = {
            "version": REPORT_VERSION,
            "timestamp": utc_timestamp(),
            "config": asdict(cfg),
            "cells": [{"r": c.r, "t": c.t, "label": c.label.value} for row in cells for c in row],
        }
        _write(args.json, json.dumps(payload, indent=2, allow_nan=False) + "\n")
    counts = {lab.value: 0 for lab in BranchLabel}
    for row in cells:
        for c in row:
            counts[c.label.value] += 1
    print(" ".join(f"{k}={v}" for k, v in counts.items()), file=sys.stderr)
    return 0 if counts[BranchLabel.NEITHER.value] == 0 else 1


def cmd_table(args) -> int:
    cfg = _config(args)
    try:
        records = reproduce_summary_table(cfg, args.row)
    except ValueError as exc:
        print(f"logint table: {exc}", file=sys.stderr)
        return 2
    print(render_table(records))
    notes = [f"row {r.row}: {r.note}" for r in records if r.note]
    if notes:
        print()
        print("\n".join(notes))
    _emit(records, cfg, args)
    return _exit_code(records)


def cmd_selftest(args) -> int:
    checks = selftest_checks(_config(args))
    for name, ok, detail in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {name}  [{detail}]")
    return 0 if all(ok for _, ok, _ in checks) else 1


COMMANDS = {
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "region": cmd_region,
    "table": cmd_table,
    "selftest": cmd_selftest,
}


_VALUE_FLAGS = {f"--{n}" for n in PARAM_NAMES} | {"--r", "--t", "--abs-tol", "--rel-tol"}


def _attach_negative_values(argv: list[str]) -> list[str]:
    """Rewrite ``--z -i`` as ``--z=-i`` so argparse does not read ``-i`` as a flag."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and len(argv[i + 1]) > 1:
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_attach_negative_values(argv))
    try:
        return COMMANDS[args.command](args)
    except ValueError as exc:
        print(f"logint {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

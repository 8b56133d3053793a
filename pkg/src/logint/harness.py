"""Verification harness: quadrature LHS against closed-form RHS.

Errors are data here.  Every comparison produces a
:class:`VerificationRecord` whose verdict is one of Match, Mismatch,
Divergent or InvalidParams; nothing in this module raises for a bad
parameter set.
"""

from __future__ import annotations

import cmath
import enum
import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence

from . import closed_forms as cf
from .closed_forms import IdentityFamily, ParamSet
from .complex_core import DomainError, principal_log, real_log
from .integrands import InvalidSpecError, make_spec
from .literals import format_params
from .quadrature import (
    QuadConfig,
    QuadResult,
    QuadStatus,
    integrate_finite,
    integrate_real_line,
    integrate_tail,
)

__all__ = [
    "Verdict",
    "VerificationRecord",
    "MATCH_TOL",
    "ABS_MATCH_TOL",
    "DERIVATIVE_MATCH_TOL",
    "REGION_TOL",
    "verify",
    "sweep",
    "summarize",
    "BranchLabel",
    "RegionCell",
    "region_map_grad",
    "derivative_check",
    "reproduce_summary_table",
    "render_table",
    "selftest_checks",
    "default_workers",
]

MATCH_TOL = 1e-6
ABS_MATCH_TOL = 1e-8
DERIVATIVE_MATCH_TOL = 1e-4
REGION_TOL = 1e-5

# families whose printed constant is compared up to an overall sign
SIGN_SEARCH = frozenset({IdentityFamily.EXAMPLE5, IdentityFamily.EXAMPLE6})


class Verdict(str, enum.Enum):
    MATCH = "Match"
    MISMATCH = "Mismatch"
    DIVERGENT = "Divergent"
    INVALID = "InvalidParams"


@dataclass(frozen=True)
class VerificationRecord:
    family: IdentityFamily
    params: ParamSet
    lhs: complex
    rhs: complex
    abs_err: float
    rel_err: float
    quad: QuadResult | None
    verdict: Verdict
    sign: int = 1
    row: int | None = None
    note: str = ""

    @property
    def matched(self) -> bool:
        return self.verdict is Verdict.MATCH


NAN = complex(math.nan, math.nan)


def _errors(lhs: complex, rhs: complex) -> tuple[float, float]:
    abs_err = abs(lhs - rhs)
    mag = abs(rhs)
    if mag > 0:
        return abs_err, abs_err / mag
    return abs_err, (0.0 if abs_err == 0 else math.inf)


def _finite(v: complex) -> bool:
    return math.isfinite(v.real) and math.isfinite(v.imag)


def _judge(
    lhs: complex,
    rhs: complex,
    quad: QuadResult | None,
    match_tol: float,
    abs_match_tol: float,
    signs: Sequence[int] = (1,),
) -> tuple[float, float, Verdict, int]:
    if quad is None or quad.status is not QuadStatus.CONVERGED:
        abs_err, rel_err = _errors(lhs, rhs) if _finite(rhs) and _finite(lhs) else (math.nan, math.nan)
        return abs_err, rel_err, Verdict.DIVERGENT, 1
    if not _finite(rhs):
        return math.nan, math.nan, Verdict.MISMATCH, 1
    best = None
    for s in signs:
        abs_err, rel_err = _errors(lhs, s * rhs)
        if best is None or abs_err < best[0]:
            best = (abs_err, rel_err, s)
    abs_err, rel_err, s = best
    ok = rel_err <= match_tol or abs_err <= abs_match_tol
    return abs_err, rel_err, (Verdict.MATCH if ok else Verdict.MISMATCH), s


def _as_params(family: IdentityFamily, params) -> ParamSet:
    if isinstance(params, ParamSet):
        params.require(family)
        return params
    return ParamSet.for_family(family, **dict(params or {}))


def verify(
    family: IdentityFamily,
    params: ParamSet | Mapping | None = None,
    config: QuadConfig | None = None,
    *,
    match_tol: float = MATCH_TOL,
    abs_match_tol: float = ABS_MATCH_TOL,
) -> VerificationRecord:
    """Integrate the printed integrand of ``family`` and compare with its closed form."""
    family = IdentityFamily(family)
    cfg = config or QuadConfig()
    try:
        ps = _as_params(family, params)
        spec = make_spec(family, ps)
    except (InvalidSpecError, ValueError) as exc:
        ps = params if isinstance(params, ParamSet) else ParamSet(**dict(params or {}))
        return VerificationRecord(
            family, ps, NAN, NAN, math.nan, math.nan, None, Verdict.INVALID, note=str(exc)
        )

    notes = []
    try:
        rhs = cf.rhs_for(family, ps)
    except DomainError as exc:
        rhs = NAN
        notes.append(f"closed form undefined: {exc}")

    try:
        quad = integrate_real_line(spec, config=cfg)
        lhs = quad.value
    except DomainError as exc:
        quad, lhs = None, NAN
        notes.append(f"integrand hit a branch point: {exc}")

    signs = (1, -1) if family in SIGN_SEARCH else (1,)
    abs_err, rel_err, verdict, sign = _judge(lhs, rhs, quad, match_tol, abs_match_tol, signs)
    if quad is not None and quad.status is not QuadStatus.CONVERGED:
        notes.append(f"quadrature {quad.status.value}")
    return VerificationRecord(
        family, ps, lhs, rhs, abs_err, rel_err, quad, verdict, sign, note="; ".join(notes)
    )


def default_workers() -> int:
    """Worker cap from ``LOGINT_THREADS`` (default 1)."""
    raw = os.environ.get("LOGINT_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _verify_star(job):
    family, values, cfg = job
    return verify(family, values, cfg)


def sweep(
    family: IdentityFamily,
    grid: Mapping[str, Iterable],
    config: QuadConfig | None = None,
    workers: int | None = None,
) -> list[VerificationRecord]:
    """Verify every point of the Cartesian product of ``grid``.

    Records come back in product order (parameters iterated in
    ``a, k, z, p, q, r, t, b`` order, last one fastest) whatever the worker
    count.
    """
    family = IdentityFamily(family)
    cfg = config or QuadConfig()
    names = [n for n in cf.PARAM_NAMES if n in grid]
    unknown = set(grid) - set(names)
    if unknown:
        raise ValueError(f"unknown parameters: {sorted(unknown)}")
    axes = [list(grid[n]) for n in names]
    if not names or any(not ax for ax in axes):
        raise ValueError("sweep grid must be nonempty")
    jobs = [(family, dict(zip(names, combo)), cfg) for combo in itertools.product(*axes)]
    workers = default_workers() if workers is None else max(1, workers)
    if workers == 1 or len(jobs) == 1:
        return [_verify_star(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_verify_star, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def summarize(records: Iterable[VerificationRecord]) -> dict[str, int]:
    counts = {v.value: 0 for v in Verdict}
    for rec in records:
        counts[rec.verdict.value] += 1
    return counts


# -- analytic-continuation region map --------------------------------------


class BranchLabel(str, enum.Enum):
    PLAIN_SIN = "PlainSin"
    ABS_SIN = "AbsSin"
    BOTH = "Both"
    NEITHER = "Neither"


@dataclass(frozen=True)
class RegionCell:
    r: float
    t: float
    label: BranchLabel
    lhs: complex
    plain: complex
    abs_sin: complex
    rel_err_plain: float
    rel_err_abs: float
    note: str = ""


def _close(lhs: complex, rhs: complex, tol: float) -> tuple[bool, float]:
    abs_err, rel_err = _errors(lhs, rhs)
    return (rel_err <= tol or abs_err <= ABS_MATCH_TOL), rel_err


def _region_cell(job) -> RegionCell:
    r, t, cfg, tol = job
    plain = cf.grad_branch_plain(r, t)
    absb = cf.grad_branch_abs(r, t)
    try:
        spec = make_spec(IdentityFamily.GRAD_CONDITIONAL, ParamSet(r=r, t=t))
        quad = integrate_real_line(spec, config=cfg)
    except DomainError as exc:
        return RegionCell(r, t, BranchLabel.NEITHER, NAN, plain, absb, math.nan, math.nan, str(exc))
    if quad.status is not QuadStatus.CONVERGED:
        return RegionCell(
            r, t, BranchLabel.NEITHER, quad.value, plain, absb, math.nan, math.nan,
            f"quadrature {quad.status.value}",
        )
    ok_p, rel_p = _close(quad.value, plain, tol)
    ok_a, rel_a = _close(quad.value, absb, tol)
    label = {
        (True, True): BranchLabel.BOTH,
        (True, False): BranchLabel.PLAIN_SIN,
        (False, True): BranchLabel.ABS_SIN,
        (False, False): BranchLabel.NEITHER,
    }[(ok_p, ok_a)]
    return RegionCell(r, t, label, quad.value, plain, absb, rel_p, rel_a)


def region_map_grad(
    r_values: Sequence[float],
    t_values: Sequence[float],
    config: QuadConfig | None = None,
    tol: float = REGION_TOL,
    workers: int | None = None,
) -> list[list[RegionCell]]:
    """Label which branch (sin t or |sin t|) the quadrature of the
    ``log(r^2 - 2ry cos t + y^2)/(y^2+1)`` integral follows, on a real grid.

    Returns one row per ``r`` value, one cell per ``t`` value.
    """
    cfg = config or QuadConfig()
    jobs = [(float(r), float(t), cfg, tol) for r in r_values for t in t_values]
    workers = default_workers() if workers is None else max(1, workers)
    if workers == 1:
        cells = [_region_cell(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            cells = list(pool.map(_region_cell, jobs))
    n = len(t_values)
    return [cells[i * n:(i + 1) * n] for i in range(len(r_values))]


# -- derivative-in-k consistency ---------------------------------------------


def derivative_check(
    a, k, z, step: float = 1e-4, config: QuadConfig | None = None,
    match_tol: float = DERIVATIVE_MATCH_TOL,
) -> VerificationRecord:
    """Central difference in ``k`` of the master quadrature vs
    ``rhs_master(a, k, z) * log(log(ia))``."""
    cfg = config or QuadConfig()
    fam = IdentityFamily.MASTER
    base = ParamSet.for_family(fam, a=a, k=k, z=z)
    try:
        rhs = cf.rhs_master(a, k, z) * principal_log(principal_log(1j * base.a))
    except DomainError as exc:
        return VerificationRecord(fam, base, NAN, NAN, math.nan, math.nan, None,
                                  Verdict.INVALID, note=str(exc))
    results = []
    try:
        for kk in (base.k + step, base.k - step):
            spec = make_spec(fam, ParamSet(a=base.a, k=kk, z=base.z))
            results.append(integrate_real_line(spec, config=cfg))
    except (InvalidSpecError, DomainError) as exc:
        return VerificationRecord(fam, base, NAN, rhs, math.nan, math.nan, None,
                                  Verdict.INVALID, note=str(exc))
    hi, lo = results
    lhs = (hi.value - lo.value) / (2 * step)
    worst = max((hi, lo), key=lambda q: list(QuadStatus).index(q.status))
    quad = QuadResult(
        lhs,
        (hi.err_estimate + lo.err_estimate) / (2 * step),
        hi.evaluations + lo.evaluations,
        worst.status,
        hi.panels + lo.panels,
    )
    abs_err, rel_err, verdict, _ = _judge(lhs, rhs, quad, match_tol, ABS_MATCH_TOL)
    return VerificationRecord(fam, base, lhs, rhs, abs_err, rel_err, quad, verdict,
                              note=f"central difference in k, step {step:g}")


# -- summary table -------------------------------------------------------------

TABLE_ROWS: dict[int, tuple[str, list[tuple[IdentityFamily, dict]]]] = {
    1: ("log(a^2-2aby+y^2)/(y^2+z^2)", [(IdentityFamily.PRUDNIKOV, dict(a=1, b=0.5, z=2))]),
    2: ("log(r^2-2ry cos t+y^2)/(y^2+1)", [
        (IdentityFamily.GRAD_CONDITIONAL, dict(r=2, t=math.pi / 4)),
        (IdentityFamily.GRAD_CONDITIONAL, dict(r=2, t=-math.pi / 4)),
    ]),
    3: ("log^k(y) log(1-yz)/(a^2+y^2)", [
        (IdentityFamily.MASTER, dict(a=1, k=0, z=1j)),
        (IdentityFamily.MASTER, dict(a=1, k=1, z=1j)),
    ]),
    **{
        n + 3: (f"example {n}", [(IdentityFamily.example(n), {})])
        for n in range(1, 7)
    },
}


def reproduce_summary_table(
    config: QuadConfig | None = None, rows: Iterable[int] | None = None
) -> list[VerificationRecord]:
    """One or more records per row of the nine-row integral table.

    Rows 1-3 are parametric and get canonical spot checks; rows 4-9 are the
    fixed constants of examples 1-6.
    """
    wanted = sorted(TABLE_ROWS) if rows is None else sorted(set(rows))
    out = []
    for row in wanted:
        if row not in TABLE_ROWS:
            raise ValueError(f"no table row {row}")
        for family, values in TABLE_ROWS[row][1]:
            rec = verify(family, values, config)
            if family in SIGN_SEARCH:
                n = family.example_id
                ex = cf.EXAMPLE_PARAMS[n]
                deriv = cf.rhs_dzdk_master(ex["a"], ex["k"], ex["z"])
                rel = abs(rec.rhs - cf.DZDK_PRINTED_SIGN * deriv) / abs(rec.rhs)
                note = (f"printed sign {rec.sign:+d}; printed constant = "
                        f"{cf.DZDK_PRINTED_SIGN:+d} x d2/dzdk master RHS (rel {rel:.1e})")
                rec = replace(rec, note="; ".join(filter(None, [rec.note, note])))
            out.append(replace(rec, row=row))
    return out


def _fmt(v: complex | float) -> str:
    if isinstance(v, complex):
        if not _finite(v):
            return "nan"
        return f"{v.real:.15g}{v.imag:+.15g}i"
    return f"{v:.15g}" if math.isfinite(v) else str(v)


def render_table(records: Sequence[VerificationRecord]) -> str:
    """Aligned text table (row, family, params, lhs, rhs, rel_err, verdict)."""
    header = ("row", "family", "params", "lhs", "rhs", "rel_err", "verdict")
    lines = [header]
    for rec in records:
        verdict = rec.verdict.value + (f" (sign {rec.sign:+d})" if rec.sign != 1 else "")
        lines.append((
            "" if rec.row is None else str(rec.row),
            rec.family.value,
            format_params(rec.params) or "-",
            _fmt(rec.lhs),
            _fmt(rec.rhs),
            f"{rec.rel_err:.3e}" if math.isfinite(rec.rel_err) else str(rec.rel_err),
            verdict,
        ))
    widths = [max(len(line[i]) for line in lines) for i in range(len(header))]
    out = []
    for j, line in enumerate(lines):
        out.append("  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip())
        if j == 0:
            out.append("  ".join("-" * w for w in widths))
    return "\n".join(out)


# -- self-test -------------------------------------------------------------------


class _NegLogPow:
    """(-log y)^(-1/2) with exact logs next to y = 1."""

    offset_aware = True

    def __call__(self, y):
        return (-real_log(y)) ** -0.5


def selftest_checks(config: QuadConfig | None = None) -> list[tuple[str, bool, str]]:
    """Known-answer quadrature checks plus principal-branch spot checks."""
    cfg = config or QuadConfig()
    checks = []

    def add(name, err, tol):
        checks.append((name, err <= tol, f"error {err:.3e} (tol {tol:.0e})"))

    q = integrate_real_line(lambda y: 1.0 / (1.0 + y * y), [], cfg)
    add("integral of 1/(1+y^2) over R = pi", abs(q.value - math.pi), 1e-10)
    q = integrate_finite(lambda y: math.log(y), 0.0, 1.0, True, False, cfg)
    add("integral of ln y over [0,1] = -1", abs(q.value + 1.0), 1e-10)
    q = integrate_finite(_NegLogPow(), 0.0, 1.0, True, True, cfg)
    add("integral of (-ln y)^(-1/2) over [0,1] = sqrt(pi)", abs(q.value - math.sqrt(math.pi)), 1e-8)
    radius = 3.0
    q = integrate_tail(lambda y: 1.0 / (y * y), radius, +1, cfg)
    add("tail map of 1/y^2 over [R, inf) = 1/R", abs(q.value - 1.0 / radius), 1e-13)

    add("Log(1) = 0", abs(principal_log(1)), 0.0)
    add("Log(i) = i pi/2", abs(principal_log(1j) - 0.5j * math.pi), 1e-15)
    add("Log(-2) = ln 2 + i pi", abs(principal_log(-2) - complex(math.log(2), math.pi)), 1e-15)
    add("Log(-2 - 0i) = ln 2 + i pi", abs(principal_log(complex(-2.0, -0.0)) - complex(math.log(2), math.pi)), 1e-15)
    worst = 0.0
    for j in range(64):
        v = cmath.rect(0.5 + j / 16, -math.pi + 2 * math.pi * (j + 0.5) / 64)
        worst = max(worst, abs(cmath.exp(principal_log(v)) - v) / abs(v))
    add("exp(Log v) = v on a ring sample", worst, 1e-13)
    return checks

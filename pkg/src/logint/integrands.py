"""Left-hand-side integrands evaluated at real ``y`` plus their real-axis singularities."""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Callable

from .closed_forms import REAL_TOL, IdentityFamily, ParamSet
from .complex_core import (
    DomainError,
    RealPoint,
    as_complex,
    log_log,
    log_pow_k,
    principal_log,
    principal_pow,
    real_log,
    split_point,
)

__all__ = [
    "BreakKind",
    "Breakpoint",
    "InvalidSpecError",
    "IntegrandSpec",
    "integrand_master",
    "integrand_symlog",
    "integrand_prudnikov",
    "integrand_grad",
    "integrand_loglog",
    "integrand_grad_baseline",
    "integrand_example",
    "breakpoints_for",
    "make_spec",
]

I = 1j

#: Roots this close to the real axis (relative to 1 + |Re|) get a breakpoint
#: at their real part: the log factor has a dip of width |Im| there.
ROOT_REAL_TOL = 1e-2


class InvalidSpecError(ValueError):
    """Parameter set puts a pole on the real axis."""


class BreakKind(str, enum.Enum):
    LOG_BRANCH = "LogBranch"
    ALGEBRAIC_LOG = "AlgebraicLog"
    POLE = "Pole"


@dataclass(frozen=True)
class Breakpoint:
    location: float
    kind: BreakKind


def _denominator(a: complex, y: float) -> complex:
    d = a * a + y * y
    if d == 0:
        raise DomainError("pole on the real axis")
    return d


# Integrands take ``y`` as a float or an OffsetPoint; logs of ``y`` go through
# real_log so endpoint nodes near y = +-1 keep their precision.


def _linear(c0: complex, c1: complex, y: RealPoint) -> complex:
    """c0 + c1*y, keeping the offset part of ``y`` separate."""
    base, delta = split_point(y)
    return (c0 + c1 * base) + c1 * delta


def quadratic_roots(c: complex, s: complex) -> tuple[complex, complex]:
    """Roots ``c +- i s`` of ``(y - c)^2 + s^2``."""
    return c + I * s, c - I * s


def _factored(roots: tuple[complex, complex], y: RealPoint) -> complex:
    # (y - y1)(y - y2) stays accurate next to a (double) real root
    base, delta = split_point(y)
    y1, y2 = roots
    return ((base - y1) + delta) * ((base - y2) + delta)


def prudnikov_roots(a: complex, b: complex) -> tuple[complex, complex]:
    # a^2 - 2abx + x^2 = (x - ab)^2 + a^2 (1 - b^2)
    return quadratic_roots(a * b, a * cmath.sqrt(as_complex(1 - b * b)))


def grad_roots(r: complex, t: complex) -> tuple[complex, complex]:
    # r^2 - 2ry cos t + y^2 = (y - r cos t)^2 + (r sin t)^2
    return quadratic_roots(r * cmath.cos(t), r * cmath.sin(t))


def integrand_master(y: RealPoint, a, k, z) -> complex:
    a, z = as_complex(a), as_complex(z)
    arg = _linear(1 + 0j, -z, y)
    return log_pow_k(y, k) * principal_log(arg) / _denominator(a, float(y))


def integrand_symlog(y: RealPoint, a, k, r, t) -> complex:
    a, r, t = as_complex(a), as_complex(r), as_complex(t)
    yf = float(y)
    if yf == 0.0:
        raise DomainError("symlog integrand at y=0")
    s, c = cmath.sin(t), cmath.cos(t)
    neg = log_pow_k(-y, k) * principal_log(_linear(1 + 0j, I * r * s - r * c, y))
    pos = log_pow_k(y, k) * principal_log(_linear(1 + 0j, -I * r * s - r * c, y))
    return (neg + pos) / _denominator(a, yf)


def integrand_prudnikov(x: RealPoint, a, b, z) -> complex:
    a, b, z = as_complex(a), as_complex(b), as_complex(z)
    arg = _factored(prudnikov_roots(a, b), x)
    return principal_log(arg) / _denominator(z, float(x))


def integrand_grad(y: RealPoint, r, t) -> complex:
    r, t = as_complex(r), as_complex(t)
    yf = float(y)
    return principal_log(_factored(grad_roots(r, t), y)) / (yf * yf + 1)


def integrand_loglog(y: RealPoint, a, k, p, q) -> complex:
    a, p, q = as_complex(a), as_complex(p), as_complex(q)
    base, delta = split_point(y)
    s = p * p + q * q
    # 1 - y (y s + 2iq), expanded about the node base
    inner = (1 - base * (base * s + 2 * I * q)) - delta * (2 * base * s + 2 * I * q) - s * delta * delta
    return log_log(y) * log_pow_k(y, k) * principal_log(inner) / _denominator(a, float(y))


def integrand_grad_baseline(y: RealPoint, r, a) -> complex:
    r, a = as_complex(r), as_complex(a)
    return principal_log(r * r) / _denominator(a, float(y))


def _ex1(y, yf):
    return principal_log(-((yf + I) ** 2)) * log_log(y) / (yf * yf + 1)


def _ex2(y, yf):
    root = principal_pow(real_log(y), 0.5)
    return root * principal_log(-((yf + I) ** 2)) * log_log(y) / (yf * yf + 1)


def _ex3(y, yf):
    root = principal_pow(real_log(y), 0.5)
    return principal_log(-((yf + I) ** 2)) * log_log(y) / ((yf * yf + 1) * root)


def _ex4(y, yf):
    return real_log(y) * principal_log(1 - 2 * yf * (yf + I)) * log_log(y) / (yf * yf + 1)


def _ex5(y, yf):
    return yf * log_log(y) / ((1 - I * yf) * (yf * yf + 4))


def _ex6(y, yf):
    root = principal_pow(real_log(y), 0.5)
    return yf * log_log(y) / ((1 - I * yf) * (yf * yf + 1) * root)


_EXAMPLES: dict[int, Callable[[RealPoint, float], complex]] = {
    1: _ex1, 2: _ex2, 3: _ex3, 4: _ex4, 5: _ex5, 6: _ex6,
}


def integrand_example(n: int, y: RealPoint) -> complex:
    """Printed integrand of example ``n``, evaluated verbatim."""
    yf = float(y)
    if yf == 0.0:
        raise DomainError(f"example {n} integrand at branch point y=0")
    return _EXAMPLES[n](y, yf)


# -- singularity structure ---------------------------------------------------


def _real_pole_check(d: complex, name: str) -> None:
    # d^2 + y^2 = 0 has a real root iff d is zero or purely imaginary
    if d == 0 or abs(d.real) <= REAL_TOL * abs(d):
        raise InvalidSpecError(f"{name}={d} puts a pole of 1/({name}^2 + y^2) on the real axis")


def _quadratic_roots(A: complex, B: complex, C: complex) -> list[complex]:
    """Roots of A y^2 + B y + C, cancellation-free."""
    if A == 0:
        return [] if B == 0 else [-C / B]
    disc = cmath.sqrt(B * B - 4 * A * C)
    # pick the sign that avoids cancellation in B + disc
    if (B.conjugate() * disc).real < 0:
        disc = -disc
    qq = -0.5 * (B + disc)
    if qq == 0:
        return [0j, 0j]
    return [qq / A, C / qq]


def _near_real(roots: list[complex]) -> list[float]:
    return [
        rt.real for rt in roots
        if abs(rt.imag) <= ROOT_REAL_TOL * (1.0 + abs(rt.real))
    ]


def _log_k_kind(k: complex | None, loglog: bool = False) -> BreakKind:
    if loglog or (k is not None and k.real < 0):
        return BreakKind.ALGEBRAIC_LOG
    return BreakKind.LOG_BRANCH


def breakpoints_for(family: IdentityFamily, ps: ParamSet) -> list[Breakpoint]:
    """Sorted real-axis breakpoints of ``family``'s integrand.

    Raises :class:`InvalidSpecError` when the parameters put a pole on the
    real line.
    """
    F = IdentityFamily
    pts: dict[float, BreakKind] = {}

    def add(loc: float, kind: BreakKind) -> None:
        loc = float(loc) + 0.0
        if not math.isfinite(loc):
            return
        if pts.get(loc) is BreakKind.ALGEBRAIC_LOG:
            return
        pts[loc] = kind

    if family in (F.MASTER, F.SYMLOG, F.LOGLOG, F.GRAD_BASELINE):
        _real_pole_check(ps.a, "a")
    if family is F.PRUDNIKOV:
        _real_pole_check(ps.z, "z")

    if family is F.MASTER:
        add(0.0, BreakKind.LOG_BRANCH)
        add(1.0, _log_k_kind(ps.k))
        # 1 - y z vanishes on the real line only for real z
        for y0 in _near_real(_quadratic_roots(0j, -ps.z, 1 + 0j)):
            add(y0, BreakKind.LOG_BRANCH)
    elif family is F.SYMLOG:
        add(-1.0, _log_k_kind(ps.k))
        add(0.0, BreakKind.LOG_BRANCH)
        add(1.0, _log_k_kind(ps.k))
        s, c = cmath.sin(ps.t), cmath.cos(ps.t)
        for coeff in (I * ps.r * s - ps.r * c, -I * ps.r * s - ps.r * c):
            for y0 in _near_real(_quadratic_roots(0j, coeff, 1 + 0j)):
                add(y0, BreakKind.LOG_BRANCH)
    elif family is F.LOGLOG:
        add(0.0, BreakKind.LOG_BRANCH)
        add(1.0, _log_k_kind(ps.k, loglog=True))
        s = ps.p * ps.p + ps.q * ps.q
        for y0 in _near_real(_quadratic_roots(-s, -2 * I * ps.q, 1 + 0j)):
            add(y0, BreakKind.LOG_BRANCH)
    elif family is F.PRUDNIKOV:
        for y0 in _near_real(list(prudnikov_roots(ps.a, ps.b))):
            add(y0, BreakKind.LOG_BRANCH)
    elif family is F.GRAD_CONDITIONAL:
        for y0 in _near_real(list(grad_roots(ps.r, ps.t))):
            add(y0, BreakKind.LOG_BRANCH)
    elif family is F.GRAD_BASELINE:
        pass
    else:
        # the rational factors of examples 1-6 vanish only off the real axis
        add(0.0, BreakKind.LOG_BRANCH)
        add(1.0, BreakKind.ALGEBRAIC_LOG)
    return [Breakpoint(loc, kind) for loc, kind in sorted(pts.items())]


@dataclass(frozen=True)
class IntegrandSpec:
    """An evaluatable integrand ``f(y)`` with its real-axis breakpoints."""

    family: IdentityFamily
    params: ParamSet
    breakpoints: tuple[Breakpoint, ...]

    #: the quadrature engine may pass OffsetPoint nodes
    offset_aware = True

    def __call__(self, y: RealPoint) -> complex:
        return evaluate(self.family, self.params, y)

    @property
    def scale(self) -> float:
        """Largest parameter modulus among a, r, z (sets the tail radius)."""
        vals = [abs(v) for v in (self.params.a, self.params.r, self.params.z) if v is not None]
        return max(vals, default=1.0)


def evaluate(family: IdentityFamily, ps: ParamSet, y: RealPoint) -> complex:
    F = IdentityFamily
    if family is F.MASTER:
        return integrand_master(y, ps.a, ps.k, ps.z)
    if family is F.SYMLOG:
        return integrand_symlog(y, ps.a, ps.k, ps.r, ps.t)
    if family is F.PRUDNIKOV:
        return integrand_prudnikov(y, ps.a, ps.b, ps.z)
    if family is F.GRAD_CONDITIONAL:
        return integrand_grad(y, ps.r, ps.t)
    if family is F.LOGLOG:
        return integrand_loglog(y, ps.a, ps.k, ps.p, ps.q)
    if family is F.GRAD_BASELINE:
        return integrand_grad_baseline(y, ps.r, ps.a)
    return integrand_example(family.example_id, y)


def make_spec(family: IdentityFamily, ps: ParamSet) -> IntegrandSpec:
    """Validate ``ps`` for ``family`` and attach its breakpoints."""
    ps.require(family)
    return IntegrandSpec(family, ps, tuple(breakpoints_for(family, ps)))

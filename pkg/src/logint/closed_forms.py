"""Closed-form right-hand sides of the real-line log integrals.

All functions take complex (or real) parameters and evaluate eagerly with
principal branches.  Zero log arguments and zero divisors raise
:class:`~logint.complex_core.DomainError`.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

from .complex_core import DomainError, as_complex, principal_log, principal_log1p, principal_pow

__all__ = [
    "IdentityFamily",
    "ParamSet",
    "REQUIRED_PARAMS",
    "REAL_TOL",
    "DZDK_PRINTED_SIGN",
    "rhs_master",
    "rhs_symlog",
    "rhs_prudnikov",
    "rhs_grad_conditional",
    "grad_branch_plain",
    "grad_branch_abs",
    "rhs_loglog",
    "rhs_dzdk_master",
    "rhs_grad_baseline",
    "rhs_example",
    "EXAMPLE_PARAMS",
    "rhs_for",
]

PI = math.pi
I = 1j

#: Imaginary parts below this count as exactly real for the |sin t| branch switch.
REAL_TOL = 1e-14

#: Printed Example 5/6 constant = DZDK_PRINTED_SIGN * rhs_dzdk_master(...).
#: The printed integrands carry y/(1 - i y), i.e. minus the z-derivative of
#: log(1 - y z); quadrature of the printed integrands matches the printed
#: constants with sign +1, so the derivative closed form enters with -1.
DZDK_PRINTED_SIGN = -1


class IdentityFamily(str, enum.Enum):
    MASTER = "master"
    SYMLOG = "symlog"
    PRUDNIKOV = "prudnikov"
    GRAD_CONDITIONAL = "grad"
    LOGLOG = "loglog"
    EXAMPLE1 = "example1"
    EXAMPLE2 = "example2"
    EXAMPLE3 = "example3"
    EXAMPLE4 = "example4"
    EXAMPLE5 = "example5"
    EXAMPLE6 = "example6"
    GRAD_BASELINE = "baseline"

    @property
    def example_id(self) -> int | None:
        if self.value.startswith("example"):
            return int(self.value[-1])
        return None

    @classmethod
    def example(cls, n: int) -> "IdentityFamily":
        return cls(f"example{n}")


REQUIRED_PARAMS: dict[IdentityFamily, tuple[str, ...]] = {
    IdentityFamily.MASTER: ("a", "k", "z"),
    IdentityFamily.SYMLOG: ("a", "k", "r", "t"),
    IdentityFamily.PRUDNIKOV: ("a", "b", "z"),
    IdentityFamily.GRAD_CONDITIONAL: ("r", "t"),
    IdentityFamily.LOGLOG: ("a", "k", "p", "q"),
    IdentityFamily.GRAD_BASELINE: ("r", "a"),
    **{IdentityFamily.example(n): () for n in range(1, 7)},
}

PARAM_NAMES = ("a", "k", "z", "p", "q", "r", "t", "b")


@dataclass(frozen=True)
class ParamSet:
    """Complex parameters of one identity; unused ones stay ``None``."""

    a: complex | None = None
    k: complex | None = None
    z: complex | None = None
    p: complex | None = None
    q: complex | None = None
    r: complex | None = None
    t: complex | None = None
    b: complex | None = None
    flags: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        for name in PARAM_NAMES:
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, as_complex(v))

    def present(self) -> dict[str, complex]:
        return {n: getattr(self, n) for n in PARAM_NAMES if getattr(self, n) is not None}

    def require(self, family: IdentityFamily) -> None:
        missing = [n for n in REQUIRED_PARAMS[family] if getattr(self, n) is None]
        if missing:
            raise ValueError(f"{family.value} needs parameters {', '.join(missing)}")
        for n in REQUIRED_PARAMS[family]:
            v = getattr(self, n)
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError(f"parameter {n} is not finite")

    @classmethod
    def for_family(cls, family: IdentityFamily, **values) -> "ParamSet":
        ps = cls(**values)
        ps.require(family)
        ps.flags.update(domain_flags(family, ps))
        return ps


def domain_flags(family: IdentityFamily, ps: ParamSet) -> dict[str, bool]:
    """Stated-domain indicators, computed rather than assumed."""
    flags: dict[str, bool] = {}
    if ps.z is not None:
        flags["im_z_positive"] = ps.z.imag > 0
    if ps.a is not None:
        flags["a_purely_imaginary"] = ps.a != 0 and abs(ps.a.real) <= REAL_TOL * abs(ps.a)
    if ps.r is not None and ps.t is not None:
        flags["r_t_real"] = abs(ps.r.imag) < REAL_TOL and abs(ps.t.imag) < REAL_TOL
    if ps.k is not None:
        flags["re_k_negative"] = ps.k.real < 0
    return flags


def _nonzero(v: complex, what: str) -> complex:
    if v == 0:
        raise DomainError(f"{what} is zero")
    return v


def _log1p(w: complex, what: str) -> complex:
    # log(1 + w) with the argument kept as its offset from 1
    if w == -1:
        raise DomainError(f"{what} is zero")
    return principal_log1p(w)


def _log_ia_pow(a: complex, k: complex) -> complex:
    lia = principal_log(I * a)
    if lia == 0 and as_complex(k).real <= 0 and k != 0:
        raise DomainError("log(i a) = 0 with Re(k) <= 0")
    if k == 0:
        return 1 + 0j
    return principal_pow(lia, k)


def rhs_master(a, k, z) -> complex:
    """pi * log(ia)**k * log(1 - i a z) / a."""
    a, k, z = as_complex(a), as_complex(k), as_complex(z)
    _nonzero(a, "a")
    return PI * _log_ia_pow(a, k) * _log1p(-I * a * z, "1 - i a z") / a


def rhs_symlog(a, k, r, t) -> complex:
    """pi * log(ia)**k * log(a^2 r^2 + 2 a r sin t + 1) / a."""
    a, k, r, t = (as_complex(v) for v in (a, k, r, t))
    _nonzero(a, "a")
    w = a * a * r * r + 2 * a * r * cmath.sin(t)
    return PI * _log_ia_pow(a, k) * _log1p(w, "log argument") / a


def rhs_prudnikov(a, b, z) -> complex:
    """pi * log(a^2 + 2 a sqrt(1 - b^2) z + z^2) / z."""
    a, b, z = (as_complex(v) for v in (a, b, z))
    _nonzero(z, "z")
    arg = a * a + 2 * a * cmath.sqrt(as_complex(1 - b * b)) * z + z * z
    return PI * principal_log(_nonzero(arg, "log argument")) / z


def grad_branch_plain(r, t) -> complex:
    """pi * log(r^2 + 2 r sin t + 1)."""
    r, t = as_complex(r), as_complex(t)
    return PI * _log1p(r * r + 2 * r * cmath.sin(t), "log argument")


def grad_branch_abs(r, t) -> complex:
    """pi * log(r^2 + 2 r |sin t| + 1), real r and t only."""
    r, t = as_complex(r).real, as_complex(t).real
    return PI * _log1p(r * r + 2 * r * abs(math.sin(t)), "log argument")


def rhs_grad_conditional(r, t) -> complex:
    """Analytic continuation: |sin t| when r and t are real, plain sin t otherwise."""
    r, t = as_complex(r), as_complex(t)
    if abs(r.imag) < REAL_TOL and abs(t.imag) < REAL_TOL:
        return grad_branch_abs(r, t)
    return grad_branch_plain(r, t)


def rhs_loglog(a, k, p, q) -> complex:
    """pi * log(log(ia)) * log(ia)**k * log(a^2 (p^2 + q^2) + 2 a q + 1) / a."""
    a, k, p, q = (as_complex(v) for v in (a, k, p, q))
    _nonzero(a, "a")
    lia = principal_log(I * a)
    w = a * a * (p * p + q * q) + 2 * a * q
    return (
        PI
        * principal_log(_nonzero(lia, "log(i a)"))
        * _log_ia_pow(a, k)
        * _log1p(w, "log argument")
        / a
    )


def rhs_dzdk_master(a, k, z) -> complex:
    """Mixed z,k derivative of :func:`rhs_master`:
    ``-i pi log(ia)**k log(log(ia)) / (1 - i a z)``."""
    a, k, z = (as_complex(v) for v in (a, k, z))
    _nonzero(a, "a")
    lia = principal_log(I * a)
    return (
        -I
        * PI
        * _log_ia_pow(a, k)
        * principal_log(_nonzero(lia, "log(i a)"))
        / _nonzero(1 - I * a * z, "1 - i a z")
    )


def rhs_grad_baseline(r, a) -> complex:
    """pi * log(r^2) / a."""
    r, a = as_complex(r), as_complex(a)
    _nonzero(a, "a")
    return PI * principal_log(_nonzero(r * r, "r")) / a


#: Parameters each printed example is specialised from.
EXAMPLE_PARAMS: dict[int, dict[str, complex]] = {
    1: dict(a=1, k=0, p=0, q=1),
    2: dict(a=1, k=0.5, p=0, q=1),
    3: dict(a=1, k=-0.5, p=0, q=1),
    4: dict(a=1, k=1, p=-1, q=1),
    5: dict(a=2, k=0, z=1j),
    6: dict(a=1, k=-0.5, z=1j),
}


def rhs_example(n: int) -> complex:
    """Printed closed-form constant of example ``n`` (1..6)."""
    lg = principal_log(I * PI / 2)
    if n == 1:
        return PI * math.log(4) * lg
    if n == 2:
        return (1 + I) * PI**1.5 * math.log(2) * (math.log(PI / 2) + I * PI / 2)
    if n == 3:
        return (1 - I) * math.sqrt(PI) * math.log(4) * lg
    if n == 4:
        return 0.5 * I * PI**2 * math.log(5) * lg
    if n == 5:
        return I * PI / 3 * principal_log(math.log(2) + I * PI / 2)
    if n == 6:
        return cmath.exp(I * PI / 4) * math.sqrt(PI / 2) * lg
    raise ValueError(f"no example {n}")


def rhs_for(family: IdentityFamily, ps: ParamSet) -> complex:
    """Dispatch to the closed form of ``family``."""
    F = IdentityFamily
    if family is F.MASTER:
        return rhs_master(ps.a, ps.k, ps.z)
    if family is F.SYMLOG:
        return rhs_symlog(ps.a, ps.k, ps.r, ps.t)
    if family is F.PRUDNIKOV:
        return rhs_prudnikov(ps.a, ps.b, ps.z)
    if family is F.GRAD_CONDITIONAL:
        return rhs_grad_conditional(ps.r, ps.t)
    if family is F.LOGLOG:
        return rhs_loglog(ps.a, ps.k, ps.p, ps.q)
    if family is F.GRAD_BASELINE:
        return rhs_grad_baseline(ps.r, ps.a)
    return rhs_example(family.example_id)

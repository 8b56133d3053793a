"""Principal-branch complex primitives.

Every logarithm in the package goes through :func:`principal_log`, whose
imaginary part lies in ``(-pi, pi]``.  Signed zeros in the imaginary part are
folded to ``+0.0`` first, so a value that lands on the negative real axis
through roundoff (e.g. ``complex(-2.0, -0.0)``) still gets ``+i*pi``.
"""

from __future__ import annotations

import cmath
import math
from numbers import Number
from typing import NamedTuple, Union

__all__ = [
    "DomainError",
    "as_complex",
    "principal_log",
    "principal_log1p",
    "principal_pow",
    "log_pow_k",
    "log_log",
    "is_integer_exponent",
    "OffsetPoint",
    "real_log",
    "split_point",
]

_NEG_PI_INSIDE = math.nextafter(-math.pi, 0.0)

#: Largest |n| for which integer powers use repeated multiplication.
INT_POW_FAST_PATH = 8


class DomainError(ValueError):
    """Raised when a primitive is evaluated on a branch point or zero base."""


def as_complex(v: Number | complex) -> complex:
    """Coerce ``v`` to ``complex`` with a ``+0.0`` imaginary part on the real axis."""
    c = complex(v)
    if c.imag == 0.0:
        # drops the sign of -0.0
        return complex(c.real, 0.0)
    return c


class OffsetPoint(NamedTuple):
    """A real point ``base + delta`` with ``delta`` kept at full relative precision.

    Quadrature nodes clustered at a singular endpoint are passed this way so
    that ``log(y)`` near ``y = +-1`` can be formed with ``log1p(delta)``
    instead of from the rounded sum.
    """

    base: float
    delta: float

    def __float__(self) -> float:
        return self.base + self.delta

    def __neg__(self) -> "OffsetPoint":
        return OffsetPoint(-self.base, -self.delta)


RealPoint = Union[float, OffsetPoint]


def split_point(y: RealPoint) -> tuple[float, float]:
    """``(base, delta)`` of a real point; plain floats have ``delta = 0``."""
    if isinstance(y, OffsetPoint):
        return y.base, y.delta
    return float(y), 0.0


def principal_log(v) -> complex:
    """Principal logarithm, ``Im`` in ``(-pi, pi]``.

    >>> principal_log(-2)
    (0.6931471805599453+3.141592653589793j)
    """
    c = as_complex(v)
    if c == 0:
        raise DomainError("logarithm of zero (branch point)")
    w = cmath.log(c)
    if w.imag == -math.pi:
        # just below the cut, atan2 can round onto -pi itself; keep the
        # result inside the half-open range, one ulp from the boundary
        return complex(w.real, _NEG_PI_INSIDE)
    return w


def principal_log1p(w) -> complex:
    """``principal_log(1 + w)``, accurate when ``|w|`` is small."""
    w = as_complex(w)
    if abs(w) > 0.5:
        return principal_log(1 + w)
    x, y = w.real, w.imag
    # |1+w|^2 - 1 = x(2+x) + y^2; Re(1+w) >= 1/2 keeps atan2 off the cut
    return complex(0.5 * math.log1p(x * (2.0 + x) + y * y), math.atan2(y, 1.0 + x))


def real_log(y: RealPoint) -> complex:
    """Principal log of a real point; exact near ``y = +-1`` for :class:`OffsetPoint`."""
    if isinstance(y, OffsetPoint):
        base, delta = y
        if base == 1.0 or base == -1.0:
            if delta * base == -1.0:
                raise DomainError("logarithm of zero (branch point)")
            # |y| = 1 + delta*sign(base)
            mag = math.log1p(delta * base)
            return complex(mag, 0.0 if base > 0 else math.pi)
        y = base + delta
    return principal_log(float(y))


def is_integer_exponent(e: complex) -> bool:
    return e.imag == 0.0 and e.real.is_integer() and abs(e.real) <= INT_POW_FAST_PATH


def principal_pow(base, exponent) -> complex:
    """``base**exponent`` on the principal branch.

    Integer exponents with ``|n| <= 8`` are computed by repeated
    multiplication, anything else as ``exp(exponent * principal_log(base))``.
    A zero base is allowed only for exponents with positive real part.
    """
    b = as_complex(base)
    e = as_complex(exponent)
    if b == 0:
        if e.real > 0:
            return 0j
        if e == 0:
            raise DomainError("0**0 is undefined here")
        raise DomainError("zero base with non-positive exponent")
    if is_integer_exponent(e):
        n = int(e.real)
        acc = complex(1.0, 0.0)
        for _ in range(abs(n)):
            acc *= b
        return acc if n >= 0 else 1.0 / acc
    return cmath.exp(e * principal_log(b))


def log_pow_k(y: RealPoint, k) -> complex:
    """``log(y)**k`` for real ``y`` of either sign.

    For ``y < 0`` the inner log is ``ln|y| + i*pi``.  ``y == 0`` is always a
    domain error; ``y == 1`` is one when ``Re(k) <= 0`` and ``k != 0``.
    """
    if float(y) == 0.0:
        raise DomainError("log_pow_k at y=0")
    kc = as_complex(k)
    if kc == 0:
        return complex(1.0, 0.0)
    lg = real_log(y)
    if lg == 0 and kc.real <= 0:
        raise DomainError("log_pow_k at y=1 with Re(k) <= 0")
    return principal_pow(lg, kc)


def log_log(y: RealPoint) -> complex:
    """``log(log(y))`` for real ``y`` outside ``{0, 1}``."""
    lg = real_log(y)
    if lg == 0:
        raise DomainError(f"log_log at branch point y={float(y)!r}")
    return principal_log(lg)


def is_finite(v: complex) -> bool:
    return math.isfinite(v.real) and math.isfinite(v.imag)

"""Adaptive complex quadrature over the real line.

Smooth panels use a 15-point Gauss-Kronrod rule with bisection; panels with a
singular endpoint use tanh-sinh (double-exponential) quadrature with level
doubling.  The two tails ``|y| > R`` are mapped onto ``(0, 1]`` by
``y = +-R/u`` and integrated with tanh-sinh, so nothing is truncated.

Integrands that set ``offset_aware = True`` receive tanh-sinh nodes next to a
finite endpoint as :class:`~logint.complex_core.OffsetPoint` so that the
distance to the endpoint is not lost to rounding.

Panel errors are ``|K15 - G7|`` or the change between tanh-sinh levels, never
below the rounding level ``50 eps * integral of |f|``.  A run ends Divergent
on non-finite values, on an endpoint term that does not decay, or when the
total error stalls for several refinement rounds.
"""

from __future__ import annotations

import enum
import math
import sys
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .complex_core import OffsetPoint

__all__ = [
    "QuadConfig",
    "QuadStatus",
    "QuadResult",
    "gk15_panel",
    "integrate_finite",
    "integrate_real_line",
    "integrate_tail",
    "tail_radius",
]

# Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
# Gauss weights for _XGK[1], _XGK[3], _XGK[5], _XGK[7]
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)

# min node distance ~1e-101 of the half-width: y**2 cannot underflow near 0
_TS_T_MAX = 5.0
_TS_START_LEVEL = 3
# tail nodes beyond |y| = R / _TAIL_U_MIN contribute below any tolerance
_TAIL_U_MIN = 1e-100
# an endpoint term |x'(t) f| above this fraction of the panel value marks a
# non-integrable endpoint
_EDGE_TOL = 1e-5
# rounds without a 10% error reduction before the integral is declared
# divergent; long enough for under-resolved smooth panels to settle
_STALL_ROUNDS = 6
# panel errors never drop below the rounding level 50 eps * integral of |f|
_ROUNDING = 50.0 * sys.float_info.epsilon


@dataclass(frozen=True)
class QuadConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    max_panels: int = 10000
    ts_max_level: int = 12
    tail_radius_factor: float = 2.0

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_panels < 16:
            raise ValueError("max_panels must be >= 16")
        if not 4 <= self.ts_max_level <= 15:
            raise ValueError("ts_max_level must lie in [4, 15]")
        if not self.tail_radius_factor > 0:
            raise ValueError("tail_radius_factor must be positive")


class QuadStatus(str, enum.Enum):
    CONVERGED = "Converged"
    MAX_PANELS = "MaxPanels"
    DIVERGENT = "Divergent"


@dataclass(frozen=True)
class QuadResult:
    value: complex
    err_estimate: float
    evaluations: int
    status: QuadStatus
    panels: int = 0

    @property
    def converged(self) -> bool:
        return self.status is QuadStatus.CONVERGED


def gk15_panel(f: Callable[[float], complex], lo: float, hi: float) -> tuple[complex, float]:
    """15-point Kronrod estimate on ``[lo, hi]`` and ``|K15 - G7|``."""
    c = 0.5 * (lo + hi)
    h = 0.5 * (hi - lo)
    fc = complex(f(c))
    kron = fc * _WGK[7]
    gauss = fc * _WG[3]
    resabs = _WGK[7] * abs(fc)
    for j in range(7):
        dx = h * _XGK[j]
        f1, f2 = complex(f(c - dx)), complex(f(c + dx))
        s = f1 + f2
        kron += _WGK[j] * s
        resabs += _WGK[j] * (abs(f1) + abs(f2))
        if j % 2 == 1:
            gauss += _WG[j // 2] * s
    kron *= h
    gauss *= h
    return kron, max(abs(kron - gauss), _ROUNDING * abs(h) * resabs)


@lru_cache(maxsize=None)
def _ts_level_nodes(level: int) -> tuple[tuple[float, float, float], ...]:
    """Nonnegative tanh-sinh nodes first appearing at ``level`` on [-1, 1].

    Each entry is ``(t, dist, dxdt)``: ``dist`` is the distance of the node at
    ``+t`` from the endpoint +1 (by symmetry, of ``-t`` from -1).
    """
    h = 2.0 ** -level
    out = []
    j = 0 if level == 0 else 1
    step = 1 if level == 0 else 2
    while j * h <= _TS_T_MAX:
        t = j * h
        s = 0.5 * math.pi * math.sinh(t)
        e = math.exp(-2.0 * s)
        dist = 2.0 * e / (1.0 + e)
        dxdt = 0.5 * math.pi * math.cosh(t) * 4.0 * e / (1.0 + e) ** 2
        if dist > 0.0 and dxdt > 0.0:
            out.append((t, dist, dxdt))
        j += step
    return tuple(out)


def _is_finite(v: complex) -> bool:
    return math.isfinite(v.real) and math.isfinite(v.imag)


class _Panel:
    """One panel of the adaptive partition (mutable, engine-internal)."""

    __slots__ = (
        "f", "lo", "hi", "sing_lo", "sing_hi", "segment", "ts",
        "value", "err", "level", "ts_sum", "ts_abs", "prev_err", "edge", "offset",
    )

    def __init__(self, f, lo, hi, sing_lo, sing_hi, segment, offset):
        self.f = f
        self.lo = lo
        self.hi = hi
        self.sing_lo = sing_lo
        self.sing_hi = sing_hi
        self.segment = segment
        self.ts = sing_lo or sing_hi
        self.offset = offset
        self.value = 0j
        self.err = math.inf
        self.level = -1
        self.ts_sum = 0j
        self.ts_abs = 0.0
        self.prev_err = math.inf
        self.edge = {-1: (0.0, 0.0), 1: (0.0, 0.0)}

    def key(self):
        return (self.segment, self.lo)

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, cfg: QuadConfig) -> None:
        if self.ts:
            prev = None
            while self.level < _TS_START_LEVEL:
                prev = self._ts_add_level()
            self.err = self._ts_err(prev)
        else:
            self.value, self.err = gk15_panel(self.f, self.lo, self.hi)
        self._check()

    def _ts_add_level(self) -> complex:
        """Add the next tanh-sinh level; return the previous estimate."""
        prev_value = self.value
        self.level += 1
        lo, hi, f = self.lo, self.hi, self.f
        half = 0.5 * (hi - lo)
        acc = 0j
        acc_abs = 0.0
        for t, dist, dxdt in _ts_level_nodes(self.level):
            d = half * dist
            w = half * dxdt
            if w == 0.0:
                continue
            if t == 0.0:
                x = lo + half
                term = w * complex(f(x))
                acc += term
                acc_abs += abs(term)
                continue
            for side in (-1, 1):
                if side > 0:
                    x = hi - d
                    node = OffsetPoint(hi, -d) if self.offset else x
                else:
                    x = lo + d
                    node = OffsetPoint(lo, d) if self.offset else x
                if not lo < x < hi and not (self.offset and d > 0.0):
                    continue
                term = w * complex(f(node))
                acc += term
                acc_abs += abs(term)
                # keep the term of the outermost node evaluated on each side
                if t >= self.edge[side][0]:
                    self.edge[side] = (t, abs(term) / half)
        self.ts_sum += acc
        self.ts_abs += acc_abs
        self.value = self.ts_sum * 2.0 ** -self.level
        return prev_value

    def _ts_err(self, prev: complex) -> float:
        return max(abs(self.value - prev), _ROUNDING * self.ts_abs * 2.0 ** -self.level)

    def _check(self) -> None:
        if not _is_finite(self.value) or not math.isfinite(self.err):
            self.err = math.inf
        elif self.ts and self._edge_term() > _EDGE_TOL * max(1.0, abs(self.value)):
            self.err = math.inf

    def _edge_term(self) -> float:
        terms = []
        if self.sing_lo:
            terms.append(self.edge[-1][1])
        if self.sing_hi:
            terms.append(self.edge[1][1])
        return max(terms, default=0.0)

    # -- refinement ---------------------------------------------------------

    def refinable(self) -> bool:
        if not math.isfinite(self.err):
            return False
        width = self.hi - self.lo
        return width > 64 * math.ulp(max(abs(self.lo), abs(self.hi), 1e-300))

    def refine(self, cfg: QuadConfig) -> list["_Panel"]:
        if self.ts and self.level < cfg.ts_max_level and (
            self.level < _TS_START_LEVEL + 2 or self.err < 0.25 * self.prev_err
        ):
            self.prev_err = self.err
            prev = self._ts_add_level()
            self.err = self._ts_err(prev)
            self._check()
            return [self]
        mid = 0.5 * (self.lo + self.hi)
        left = _Panel(self.f, self.lo, mid, self.sing_lo, False, self.segment, self.offset)
        right = _Panel(self.f, mid, self.hi, False, self.sing_hi, self.segment, self.offset)
        left.evaluate(cfg)
        right.evaluate(cfg)
        return [left, right]


class _Counter:
    """Call-counting wrapper that forwards OffsetPoint awareness."""

    def __init__(self, f):
        self.f = f
        self.n = 0

    def __call__(self, y):
        self.n += 1
        return self.f(y)


def _run(panels: list[_Panel], cfg: QuadConfig, counter: _Counter) -> QuadResult:
    for p in panels:
        p.evaluate(cfg)
    history: list[float] = []
    while True:
        ordered = sorted(panels, key=_Panel.key)
        re = math.fsum(p.value.real for p in ordered)
        im = math.fsum(p.value.imag for p in ordered)
        value = complex(re, im)
        err = math.sqrt(math.fsum(p.err * p.err for p in ordered))
        tol = max(cfg.abs_tol, cfg.rel_tol * abs(value))

        def done(status):
            return QuadResult(value, err, counter.n, status, len(panels))

        if not _is_finite(value) or not math.isfinite(err):
            return done(QuadStatus.DIVERGENT)
        if err <= tol:
            return done(QuadStatus.CONVERGED)
        if len(panels) >= cfg.max_panels:
            return done(QuadStatus.MAX_PANELS)
        history.append(err)
        if len(history) > _STALL_ROUNDS and history[-1] > 0.9 * history[-1 - _STALL_ROUNDS]:
            return done(QuadStatus.DIVERGENT)

        threshold = tol / math.sqrt(len(panels))
        todo = [p for p in panels if p.err > threshold and p.refinable()]
        if not todo:
            return done(QuadStatus.DIVERGENT)
        todo.sort(key=lambda p: (-p.err, p.key()))
        chosen = set(map(id, todo))
        budget = cfg.max_panels - len(panels)
        nxt: list[_Panel] = []
        for p in panels:
            if id(p) in chosen and (budget > 0 or p.ts):
                kids = p.refine(cfg)
                budget -= len(kids) - 1
                nxt.extend(kids)
            else:
                nxt.append(p)
        panels = nxt


def _finite_panel(f, lo, hi, sing_lo, sing_hi, segment) -> _Panel:
    return _Panel(f, lo, hi, sing_lo, sing_hi, segment, getattr(f, "offset_aware", False))


def integrate_finite(
    f: Callable,
    lo: float,
    hi: float,
    singular_lo: bool = False,
    singular_hi: bool = False,
    config: QuadConfig | None = None,
) -> QuadResult:
    """Integrate ``f`` over ``[lo, hi]``.

    A flagged endpoint switches the panel to tanh-sinh quadrature; otherwise
    adaptive GK15 with bisection is used.
    """
    cfg = config or QuadConfig()
    lo, hi = float(lo), float(hi)
    if not lo < hi:
        raise ValueError("integrate_finite needs lo < hi")
    counter = _Counter(f)
    counter.offset_aware = getattr(f, "offset_aware", False)
    panel = _finite_panel(counter, lo, hi, singular_lo, singular_hi, 0)
    return _run([panel], cfg, counter)


def _bp_location(bp) -> float:
    return float(getattr(bp, "location", bp))


def tail_radius(breakpoints: Iterable, scale: float, config: QuadConfig) -> float:
    locs = [abs(_bp_location(b)) for b in breakpoints]
    return config.tail_radius_factor * (1.0 + max(locs + [abs(scale)]))


class _Tail:
    """``u -> f(sign R/u) R/u^2`` on (0, 1]."""

    def __init__(self, f, radius: float, sign: int):
        self.f = f
        self.radius = radius
        self.sign = sign

    def __call__(self, u) -> complex:
        u = float(u)
        if u < _TAIL_U_MIN:
            return 0j
        y = self.sign * self.radius / u
        return complex(self.f(y)) * (self.radius / (u * u))


def integrate_real_line(
    f: Callable,
    breakpoints: Sequence | None = None,
    config: QuadConfig | None = None,
    scale: float | None = None,
) -> QuadResult:
    """Integrate ``f`` over the whole real line.

    Parameters
    ----------
    f : callable
        Complex-valued integrand.  An :class:`~logint.integrands.IntegrandSpec`
        supplies its own breakpoints and scale when those are omitted.
    breakpoints : sequence of float or Breakpoint, optional
        Interior points where ``f`` is singular; they become panel edges and
        are never evaluated.
    scale : float, optional
        Typical parameter magnitude, used for the tail radius
        ``R = tail_radius_factor * (1 + max(|breakpoint|, scale))``.
    """
    cfg = config or QuadConfig()
    if breakpoints is None:
        breakpoints = getattr(f, "breakpoints", ())
    if scale is None:
        scale = getattr(f, "scale", 1.0)
    locs = sorted({_bp_location(b) + 0.0 for b in breakpoints})
    radius = tail_radius(locs, scale, cfg)

    counter = _Counter(f)
    counter.offset_aware = getattr(f, "offset_aware", False)
    edges = [-radius] + locs + [radius]
    singular = [False] + [True] * len(locs) + [False]
    panels = []
    for i in range(len(edges) - 1):
        panels.append(
            _finite_panel(counter, edges[i], edges[i + 1], singular[i], singular[i + 1], i + 1)
        )
    # tails: singular at u = 0 (|y| -> infinity)
    panels.append(_Panel(_Tail(counter, radius, -1), 0.0, 1.0, True, False, 0, False))
    panels.append(_Panel(_Tail(counter, radius, +1), 0.0, 1.0, True, False, len(edges), False))
    return _run(panels, cfg, counter)


def integrate_tail(
    f: Callable, radius: float, sign: int = 1, config: QuadConfig | None = None
) -> QuadResult:
    """Integrate ``f`` over ``[R, inf)`` (``sign=+1``) or ``(-inf, -R]`` via ``y = sign*R/u``."""
    cfg = config or QuadConfig()
    if not radius > 0:
        raise ValueError("radius must be positive")
    counter = _Counter(f)
    panel = _Panel(_Tail(counter, float(radius), 1 if sign > 0 else -1), 0.0, 1.0, True, False, 0, False)
    return _run([panel], cfg, counter)

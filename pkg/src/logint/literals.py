"""Complex literals and grids as written on the command line.

Grammar: ``[+-]ddd[.ddd][+-ddd[.ddd]i]`` plus pure imaginaries (``i``,
``-i``, ``2.5i``); exponents (``1e-05``) are accepted so that every
:func:`format_complex` output parses back.  ``j`` is accepted for ``i``.
"""

from __future__ import annotations

import re

import numpy as np

from .closed_forms import ParamSet

__all__ = [
    "parse_complex",
    "format_complex",
    "parse_values",
    "parse_grid",
    "rectangular_grid",
    "format_params",
]

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_REAL = re.compile(rf"^(?P<re>[+-]?{_NUM})$")
_IMAG = re.compile(rf"^(?P<sg>[+-]?)(?P<im>{_NUM})?[ij]$")
_BOTH = re.compile(rf"^(?P<re>[+-]?{_NUM})(?P<sg>[+-])(?P<im>{_NUM})?[ij]$")


def parse_complex(text: str) -> complex:
    """Parse a complex literal such as ``1``, ``-i``, ``2i`` or ``1+0.5i``."""
    s = text.strip().replace(" ", "")
    m = _REAL.match(s)
    if m:
        return complex(float(m["re"]), 0.0)
    m = _IMAG.match(s)
    if m:
        mag = float(m["im"]) if m["im"] else 1.0
        return complex(0.0, -mag if m["sg"] == "-" else mag)
    m = _BOTH.match(s)
    if m:
        mag = float(m["im"]) if m["im"] else 1.0
        return complex(float(m["re"]), -mag if m["sg"] == "-" else mag)
    raise ValueError(f"malformed complex literal: {text!r}")


def _fmt_real(x: float) -> str:
    if x == 0:
        return "0"
    if x.is_integer() and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def format_complex(v: complex) -> str:
    """Shortest round-tripping literal: ``format_complex(parse_complex(s)) == s`` on canonical ``s``."""
    v = complex(v)
    re_, im = v.real, v.imag
    if im == 0:
        return _fmt_real(re_)
    mag = abs(im)
    imag = ("" if mag == 1 else _fmt_real(mag)) + "i"
    if re_ == 0:
        return ("-" if im < 0 else "") + imag
    return _fmt_real(re_) + ("-" if im < 0 else "+") + imag


def rectangular_grid(re_values, im_values) -> list[complex]:
    """All ``x + iy`` for ``x`` in ``re_values`` and ``y`` in ``im_values``, imaginary part fastest."""
    return [complex(x, y) for x in re_values for y in im_values]


def parse_values(text: str) -> list[complex]:
    """Values for one sweep axis.

    ``start:stop:count`` is an inclusive real grid, ``RE@IM`` the
    rectangle of real grids (or real lists) ``RE`` and ``IM`` in the complex
    plane, anything else a comma list of complex literals.
    """
    if "@" in text:
        re_part, sep, im_part = text.partition("@")
        if "@" in im_part:
            raise ValueError(f"rectangular grid takes one '@', got {text!r}")
        return rectangular_grid(parse_grid(re_part), parse_grid(im_part))
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid must be start:stop:count, got {text!r}")
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
        if count < 1:
            raise ValueError("grid count must be >= 1")
        if count == 1:
            return [complex(start, 0.0)]
        return [complex(float(x), 0.0) for x in np.linspace(start, stop, count)]
    items = [tok for tok in text.split(",") if tok.strip()]
    if not items:
        raise ValueError("empty value list")
    return [parse_complex(tok) for tok in items]


def parse_grid(text: str) -> list[float]:
    """Real-valued ``start:stop:count`` grid (or comma list of reals)."""
    vals = parse_values(text)
    if any(v.imag != 0 for v in vals):
        raise ValueError(f"real grid expected, got {text!r}")
    return [v.real for v in vals]


def format_params(ps: ParamSet) -> str:
    return " ".join(f"{n}={format_complex(v)}" for n, v in ps.present().items())

"""Closed-form real-line logarithmic integrals and their numerical verification."""

__version__ = "0.1.0"

from .closed_forms import IdentityFamily, ParamSet
from .harness import (
    Verdict,
    VerificationRecord,
    derivative_check,
    region_map_grad,
    reproduce_summary_table,
    sweep,
    verify,
)
from .quadrature import QuadConfig, QuadResult, QuadStatus, integrate_finite, integrate_real_line

__all__ = [
    "IdentityFamily",
    "ParamSet",
    "QuadConfig",
    "QuadResult",
    "QuadStatus",
    "Verdict",
    "VerificationRecord",
    "derivative_check",
    "integrate_finite",
    "integrate_real_line",
    "region_map_grad",
    "reproduce_summary_table",
    "sweep",
    "verify",
]

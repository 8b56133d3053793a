import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logint import closed_forms as cf
from logint.closed_forms import IdentityFamily as F
from logint.harness import (
    BranchLabel,
    Verdict,
    derivative_check,
    region_map_grad,
    render_table,
    reproduce_summary_table,
    selftest_checks,
    summarize,
    sweep,
    verify,
)
from logint.quadrature import QuadStatus

PI = math.pi
LOG_IPI2 = complex(math.log(PI / 2), PI / 2)

MASTER_GRID = {"a": [0.5, 1, 2], "k": [0, 1, 2], "z": [1j, 1 + 1j, 2j]}


def assert_sound(rec):
    if rec.verdict is Verdict.MATCH:
        assert rec.quad.status is QuadStatus.CONVERGED
        assert rec.rel_err <= 1e-6 or rec.abs_err <= 1e-8


# -- verify ------------------------------------------------------------------------


def test_verify_master_pi_log2():
    rec = verify(F.MASTER, dict(a=1, k=0, z=1j))
    assert rec.verdict is Verdict.MATCH
    assert rec.lhs == pytest.approx(PI * math.log(2), rel=1e-9)
    assert_sound(rec)


def test_verify_master_z_zero_both_sides_vanish():
    rec = verify(F.MASTER, dict(a=1, k=0, z=0))
    assert rec.verdict is Verdict.MATCH
    assert rec.rhs == 0 and abs(rec.lhs) < 1e-12


def test_verify_loglog_with_example1_parameters():
    rec = verify(F.LOGLOG, cf.EXAMPLE_PARAMS[1])
    assert rec.verdict is Verdict.MATCH
    assert abs(rec.rhs - PI * math.log(4) * LOG_IPI2) < 1e-14


def test_purely_imaginary_a_is_invalid():
    rec = verify(F.MASTER, dict(a=1j, k=0, z=1j))
    assert rec.verdict is Verdict.INVALID
    assert rec.quad is None
    assert "pole" in rec.note


def test_missing_parameters_are_invalid():
    rec = verify(F.MASTER, dict(a=1, k=0))
    assert rec.verdict is Verdict.INVALID


def test_undefined_closed_form_is_a_mismatch():
    rec = verify(F.MASTER, dict(a=1, k=0, z=-1j))
    assert rec.verdict is Verdict.MISMATCH
    assert math.isnan(rec.rhs.real)
    assert "closed form undefined" in rec.note


def test_non_integrable_k_is_divergent():
    rec = verify(F.MASTER, dict(a=1, k=-1.5, z=1j))
    assert rec.verdict is Verdict.DIVERGENT


@pytest.mark.parametrize(
    "family,values",
    [
        (F.SYMLOG, dict(a=1, k=1, r=1, t=PI / 3)),
        (F.PRUDNIKOV, dict(a=1, b=0.5, z=2)),
        (F.GRAD_CONDITIONAL, dict(r=1.5, t=2.5)),
        (F.GRAD_CONDITIONAL, dict(r=2, t=0)),
        (F.LOGLOG, dict(a=2, k=1, p=0.5, q=1)),
        (F.GRAD_BASELINE, dict(r=2, a=3)),
    ],
)
def test_other_families_match(family, values):
    rec = verify(family, values)
    assert rec.verdict is Verdict.MATCH, rec
    assert_sound(rec)


# -- sweeps -------------------------------------------------------------------------


def test_master_grid_all_match_in_product_order():
    recs = sweep(F.MASTER, MASTER_GRID)
    assert len(recs) == 27
    assert summarize(recs)["Match"] == 27
    assert [(r.params.a, r.params.k, r.params.z) for r in recs][:4] == [
        (0.5, 0, 1j), (0.5, 0, 1 + 1j), (0.5, 0, 2j), (0.5, 1, 1j),
    ]


def test_lower_half_plane_z_never_matches():
    recs = sweep(F.MASTER, {"a": [0.5, 1, 2], "k": [0, 1, 2], "z": [-1j]})
    assert all(r.verdict in (Verdict.MISMATCH, Verdict.DIVERGENT) for r in recs)


def test_grad_r_zero_is_trivially_matched():
    recs = sweep(F.GRAD_CONDITIONAL, {"r": [0], "t": [-2.0, 0.5, 3.0]})
    assert all(r.verdict is Verdict.MATCH and r.rhs == 0 for r in recs)


def test_sweep_is_independent_of_worker_count():
    grid = {"a": [0.5, 2], "k": [0.5, -0.5], "z": [1j, 1 + 1j]}
    serial = sweep(F.MASTER, grid, workers=1)
    parallel = sweep(F.MASTER, grid, workers=2)
    assert [(r.lhs, r.verdict) for r in serial] == [(r.lhs, r.verdict) for r in parallel]


def test_sweep_rejects_bad_grids():
    with pytest.raises(ValueError):
        sweep(F.MASTER, {})
    with pytest.raises(ValueError):
        sweep(F.MASTER, {"a": []})
    with pytest.raises(ValueError):
        sweep(F.MASTER, {"w": [1]})


@settings(max_examples=300)
@given(
    st.floats(0.1, 5),
    st.sampled_from([0, 1, 2, 0.5, -0.5]),
    st.floats(-3, 3),
    st.floats(0.05, 3),
)
def test_master_matches_in_stated_domain(a, k, x, y):
    rec = verify(F.MASTER, dict(a=a, k=k, z=complex(x, y)))
    assert rec.verdict is Verdict.MATCH, rec
    assert_sound(rec)


@settings(max_examples=200)
@given(st.floats(0.1, 5), st.sampled_from([0, 1, 0.5, -0.5]), st.floats(-3, 3), st.floats(-3, 3))
def test_verify_is_deterministic(a, k, x, y):
    first = verify(F.MASTER, dict(a=a, k=k, z=complex(x, y)))
    second = verify(F.MASTER, dict(a=a, k=k, z=complex(x, y)))
    assert first.verdict is second.verdict
    assert repr(first.lhs) == repr(second.lhs)
    assert_sound(first)


# -- region map ---------------------------------------------------------------------


def test_region_examples():
    cells = region_map_grad([0.0, 2.0], [PI / 4, -PI / 4])
    assert cells[1][0].label is BranchLabel.BOTH
    assert cells[1][1].label is BranchLabel.ABS_SIN
    gap = PI * math.log((5 + 2 * math.sqrt(2)) / (5 - 2 * math.sqrt(2)))
    assert abs(cells[1][1].abs_sin - cells[1][1].plain) == pytest.approx(gap, rel=1e-12)
    assert [c.label for c in cells[0]] == [BranchLabel.BOTH, BranchLabel.BOTH]


def test_region_single_cell():
    cells = region_map_grad([1.0], [1.0])
    assert len(cells) == 1 and len(cells[0]) == 1


@settings(max_examples=200)
@given(st.floats(0.1, 3), st.floats(-PI, PI))
def test_region_follows_abs_sin_for_real_parameters(r, t):
    cell = region_map_grad([r], [t])[0][0]
    assert cell.label in (BranchLabel.BOTH, BranchLabel.ABS_SIN)
    if math.sin(t) >= 0:
        assert cell.label is BranchLabel.BOTH


# -- derivative check ------------------------------------------------------------


@pytest.mark.parametrize("a", [1, 2])
def test_derivative_check_matches(a):
    rec = derivative_check(a, 0, 1j, step=1e-4)
    assert rec.verdict is Verdict.MATCH
    assert rec.rel_err <= 1e-4


def test_derivative_check_z_zero():
    rec = derivative_check(1, 0, 0, step=1e-4)
    assert rec.lhs == 0 and rec.rhs == 0
    assert rec.verdict is Verdict.MATCH


# -- summary table --------------------------------------------------------------


def test_summary_table():
    recs = reproduce_summary_table()
    assert sorted({r.row for r in recs}) == list(range(1, 10))
    assert all(r.verdict is Verdict.MATCH for r in recs)
    for rec in recs:
        if rec.row >= 4:
            n = rec.row - 3
            assert rec.family is F.example(n)
            assert rec.rel_err <= 1e-5
            assert rec.sign == 1
        assert_sound(rec)
    for rec in recs:
        if rec.row in (8, 9):
            assert "-1 x d2/dzdk" in rec.note
    text = render_table(recs)
    assert text.splitlines()[0].split() == ["row", "family", "params", "lhs", "rhs", "rel_err", "verdict"]


def test_summary_table_row_filter():
    recs = reproduce_summary_table(rows=[4])
    assert [r.family for r in recs] == [F.EXAMPLE1]
    with pytest.raises(ValueError):
        reproduce_summary_table(rows=[10])


def test_selftest_passes():
    checks = selftest_checks()
    assert checks and all(ok for _, ok, _ in checks)


@pytest.mark.parametrize("r", [0.825, 1.26, 2.13])
@pytest.mark.parametrize("t", [3.14159, -3.14159])
def test_region_near_double_root(r, t):
    # roots r cos t +- i r sin t sit ~1e-6 off the real axis
    cell = region_map_grad([r], [t])[0][0]
    assert cell.label in (BranchLabel.BOTH, BranchLabel.ABS_SIN), cell


@settings(max_examples=200)
@given(
    st.floats(0.2, 3), st.sampled_from([0, 1, 2, 0.5, -0.5]),
    st.floats(0.05, 3), st.floats(1e-3, PI - 1e-3),
)
def test_symlog_matches(a, k, r, t):
    rec = verify(F.SYMLOG, dict(a=a, k=k, r=r, t=t))
    assert rec.verdict is Verdict.MATCH, rec


@settings(max_examples=200)
@given(
    st.floats(0.2, 3), st.sampled_from([0, 1, 0.5, -0.5]),
    st.floats(-2, 2), st.floats(0.01, 2),
)
def test_loglog_matches(a, k, p, q):
    rec = verify(F.LOGLOG, dict(a=a, k=k, p=p, q=q))
    assert rec.verdict is Verdict.MATCH, rec


@pytest.mark.parametrize("eps", [1e-3, 1e-6, 1e-9, 1e-12])
def test_master_z_next_to_real_axis(eps):
    for x in (-1.5, 0.5, 2.0):
        rec = verify(F.MASTER, dict(a=1.3, k=0.5, z=complex(x, eps)))
        assert rec.verdict is Verdict.MATCH, rec


def test_symlog_branch_point_on_the_path():
    # t = 0 puts the log's branch point at y = 1/r on the real line: the real
    # parts still agree, the integral picks up an imaginary part
    rec = verify(F.SYMLOG, dict(a=1, k=0, r=1, t=0.0))
    assert rec.verdict is Verdict.MISMATCH
    assert rec.lhs.real == pytest.approx(rec.rhs.real, rel=1e-10)
    assert abs(rec.lhs.imag) > 1

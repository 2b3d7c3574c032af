import io
import math

import pytest
from gmpy2 import mpq

from biharm.numeric.integrate import (COLUMNS, CaseAState, ConstraintSet, Params,
                                      convergence_order, flow_table, integrate_case_a,
                                      on_variety_initial, residual_derivative_check, rhs)

GENERIC = Params(6, 0, 0)
PROBE = Params(6, 1, 30)


@pytest.fixture(scope="module")
def generic_constraints():
    return ConstraintSet.build(GENERIC)


def test_rhs_matches_symbolic_flow():
    table = flow_table()
    pt = {"lambda1": mpq(1, 3), "phi": mpq(-2, 5), "psi": mpq(7, 4), "n": 6, "c": 1, "R": 30}
    values = [table.image(s).evaluate(pt) for s in ("lambda1", "phi", "psi")]
    got = rhs(1 / 3, -2 / 5, 7 / 4, 6.0, 1.0, 30.0)
    for a, b in zip(got, values):
        assert a == pytest.approx(float(b), rel=1e-14)


def test_state_mean_curvature():
    assert CaseAState(0.0, 3.0, 0.0, 0.0).H(6) == -1.0


def test_generic_data_has_nonzero_residuals(generic_constraints):
    traj = integrate_case_a(CaseAState(0.0, 1.0, 1.0, 1.0), GENERIC, 0.01, 0.05,
                            generic_constraints)
    state, res = traj.samples[0]
    assert state.t == 0.0
    assert res[:3] == (-62.0, -80.0, -16096.0)
    assert res[3] != 0.0
    assert all(r[0] != 0.0 for _, r in traj.samples)


def test_samples_strictly_increasing(generic_constraints):
    traj = integrate_case_a(CaseAState(0.0, 1.0, 1.0, 1.0), GENERIC, 0.01, 0.1,
                            generic_constraints)
    ts = traj.column("t")
    assert len(ts) == 11 and all(b > a for a, b in zip(ts, ts[1:]))


def test_determinism(generic_constraints):
    init = CaseAState(0.0, 0.5, 0.2, -0.3)
    a = integrate_case_a(init, GENERIC, 0.01, 0.5, generic_constraints)
    b = integrate_case_a(init, GENERIC, 0.01, 0.5, generic_constraints)
    assert list(a.rows()) == list(b.rows())


def test_rk4_order():
    order = convergence_order(CaseAState(0.0, 0.5, 0.2, -0.3), PROBE, 0.01, 1.0)
    assert abs(order - 4.0) <= 0.2


def test_on_variety_lambda_is_constant():
    cs = ConstraintSet.build(PROBE)
    init, info = on_variety_initial(PROBE, cs)
    traj = integrate_case_a(init, PROBE, 1e-4, 1.0, cs)
    assert traj.completed and len(traj.samples) == 10001
    lam = traj.column("lambda1")
    assert max(abs(x - lam[0]) for x in lam) < 1e-8
    assert info["exact_root"]


def test_residual_derivative_is_fourth_order(generic_constraints):
    init = CaseAState(0.0, 0.5, 0.2, -0.3)
    gaps = []
    for dt in (0.02, 0.01):
        traj = integrate_case_a(init, GENERIC, dt, 0.4, generic_constraints)
        worst, scale = residual_derivative_check(traj, generic_constraints)
        assert scale > 0
        gaps.append(worst)
    assert gaps[1] < gaps[0] / 8


def test_blow_up_truncates_with_diagnostic(generic_constraints):
    traj = integrate_case_a(CaseAState(0.0, 1.0, 1.0, 1.0), GENERIC, 0.1, 10.0,
                            generic_constraints)
    assert not traj.completed
    assert "blow-up" in traj.diagnostic
    assert traj.samples and traj.samples[-1][0].t < 10.0


def test_guards():
    with pytest.raises(ValueError):
        integrate_case_a(CaseAState(0.0, 1.0, 1.0, 1.0), Params(4, 0, 0), 0.1, 1.0)
    with pytest.raises(ValueError):
        integrate_case_a(CaseAState(0.0, 1.0, 1.0, 1.0), GENERIC, 0.0, 1.0)


def test_csv_format(generic_constraints):
    traj = integrate_case_a(CaseAState(0.0, 1.0, 1.0, 1.0), GENERIC, 0.1, 0.2,
                            generic_constraints)
    buf = io.StringIO()
    traj.write_csv(buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == ",".join(COLUMNS)
    first = lines[1].split(",")
    assert first[:4] == ["0.0", "1.0", "1.0", "1.0"]
    row = [float(x) for x in lines[2].split(",")]
    assert row == list(list(traj.rows())[1])
    assert all(math.isfinite(x) for x in row)

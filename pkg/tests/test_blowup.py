import random

import pytest

from monores.blowup import CURVE, Y0, FiberPoint, enumerate_fiber, fiber_outcomes, transform_curve
from monores.corpus import random_valid
from monores.field import GF
from monores.invariants import report
from monores.state import make_state, validate

F2 = GF(2, 1)


def cleaned(st):
    return report(st)[1]


def test_curve_blowup_running_example():
    st = cleaned(make_state(F2, 1, [[], [(4, 0, 1), (3, 2, 1)]], 2, [("x", 0, 5)], 64))
    out = transform_curve(st, "x")
    assert out.kind == "new"
    assert out.state.aq.terms == {(1, 2): 1}
    assert out.state.mono.on("x").m == 3
    assert out.state.prec == 62
    x = out.report.on("x")
    assert x.H * 2 == 1 and x.w_rho == 1


def test_curve_blowup_to_order_q_is_a_sigma_drop():
    st = cleaned(make_state(F2, 1, [[], [(3, 1, 1)]], 1, [("x", 0, 2)], 64))
    assert transform_curve(st, "x").kind == "sigma_drop"


def test_curve_blowup_can_leave_a_zero_exponent():
    # m_x = a: the new divisor carries exponent 0 but stays in the boundary
    st = cleaned(make_state(F2, 1, [[], [(2, 3, 1)]], 2, [("x", 0, 2), ("y", 1, 4)], 64))
    out = transform_curve(st, "x")
    assert out.state.mono.on("x").m == 0


def test_fiber_of_the_cross_form():
    st = cleaned(make_state(F2, 1, [[], [(3, 1, 1), (1, 3, 1)]], 1, [("x", 0, 1), ("y", 1, 2)], 64))
    pts = enumerate_fiber(st)
    assert pts == [Y0, FiberPoint("x", 0), FiberPoint("x", 1)]


def test_far_points_are_not_singular():
    # a_2 = y^3 + x^5 with only H_x: every point but the strict transform of x = 0 is smooth
    st = cleaned(make_state(F2, 1, [[], [(0, 3, 1), (5, 0, 1)]], 1, [("x", 0, 3)], 64))
    kinds = {str(fp): o.kind for fp, o in fiber_outcomes(st)}
    assert kinds["X(1)"] == "not_singular"


@pytest.mark.parametrize("seed", range(40))
def test_blowups_give_valid_states_or_terminal_outcomes(seed):
    st = cleaned(random_valid(random.Random(1000 + seed)))
    assert validate(st).ok
    rep, _ = report(st)
    outs = [(CURVE, transform_curve(st, d.axis)) for d in st.mono.divisors if rep.on(d.axis).H >= 1]
    outs += fiber_outcomes(st)
    for fp, out in outs:
        assert out.kind in {"new", "not_singular", "sigma_drop", "precision", "outside_setting"}
        if out.is_new:
            broken = validate(out.state).failures
            # sum m = a is the one failure allowed: the point still lies on Sing(M, a)
            assert all(c.name == "monomial-exceeds-level" for c in broken), (fp, broken)
            if broken:
                assert out.state.mono.total == out.state.mono.a
            assert out.state.prec == st.prec - st.q
            assert out.state.year == st.year + 1
            # the new divisor has the next index
            assert st.next_index in {d.index for d in out.state.mono.divisors}

"""Blow-ups of the point and of the curves {z = x = 0}, {z = y = 0}.

Charts: the fiber over the point is a projective line.  The point [0:1]
is reached in the y-chart (x -> x*y), every other point [1:c] in the
x-chart (y -> x*(y + c)).  After substituting, a_k is divided by the
k-th power of the exceptional variable, which costs q in precision.
"""

from dataclasses import dataclass, replace
from typing import Optional

from .errors import PrecisionExhausted
from .invariants import clean, report, shift_z
from .series import is_above
from .state import DivisorInfo, MonomialData, validate


@dataclass(frozen=True)
class FiberPoint:
    chart: str  # "y" (the point [0:1]), "x" (the point [1:c]) or "curve"
    c: int = 0

    def __str__(self):
        if self.chart == "y":
            return "Y0"
        if self.chart == "curve":
            return "curve"
        return f"X({self.c})"


Y0 = FiberPoint("y")
CURVE = FiberPoint("curve")


@dataclass(frozen=True)
class Center:
    kind: str  # "point", "curve" or "gamma"
    axis: Optional[str] = None
    omega: tuple = ()

    def __str__(self):
        if self.kind == "curve":
            return f"V(z,{self.axis})"
        if self.kind == "gamma":
            return f"Gamma{list(self.omega)}"
        return "P"


POINT = Center("point")


@dataclass(frozen=True)
class Outcome:
    kind: str  # "new", "not_singular", "sigma_drop", "precision", "outside_setting"
    state: object = None
    report: object = None
    detail: str = ""

    @property
    def is_new(self):
        return self.kind == "new"


def _sorted_divs(divs):
    return tuple(sorted((d for d in divs), key=lambda d: d.axis))


def _divide_all(state, var, coeffs):
    q = state.q
    out = []
    for k, c in enumerate(coeffs, start=1):
        c = c.divide_monomial(k, 0) if var == 0 else c.divide_monomial(0, k)
        out.append(c.truncate(state.prec - q))
    return out


def _dropped(state, full, kept):
    """Per-variable least order among the a_q terms the truncation discarded."""
    lost = [k for k in full.terms if k not in kept.terms]
    if not lost:
        return None
    return (min(i for i, _ in lost), min(j for _, j in lost))


def _finish(state, coeffs, divs, phase, dropped=None):
    # a non-q-th-power a_q stays one after a blow-up; losing it means truncation ate it
    residual = not is_above(state.aq.res_ord(state.e))
    new = replace(state, hyp=replace(state.hyp, coeffs=tuple(coeffs)),
                  mono=MonomialData(state.mono.a, _sorted_divs(divs)),
                  prec=state.prec - state.q, year=state.year + 1,
                  next_index=state.next_index + 1)
    return settle(new, phase, residual, dropped)


def settle(state, phase="monomial", residual=False, dropped=None):
    """Decide what kind of point a freshly transformed state is."""
    q = state.q
    if state.mono.total < state.mono.a:
        return Outcome("not_singular", detail="monomial order below level")
    if state.prec <= q:
        return Outcome("precision", detail="precision used up")
    for _ in range(2):
        orders = []
        for k, c in enumerate(state.hyp.coeffs, start=1):
            o = c.order()
            if is_above(o):
                if c.prec <= k:
                    return Outcome("precision", detail=f"order of a_{k} unknown")
                o = None
            elif o < k:
                return Outcome("not_singular", detail=f"ord a_{k} = {o} < {k}")
            orders.append(o)
        if any(o == k for k, o in enumerate(orders[:-1], start=1)):
            return Outcome("sigma_drop", detail="a middle coefficient reached its weight")
        if orders[-1] != q:
            break
        init = state.aq.initial_form()
        if phase == "tight" or not init.is_pe_power(state.e):
            return Outcome("sigma_drop", detail="ord a_q = q")
        state = shift_z(state, -init.pe_root(state.e).to_series(state.prec))
    else:
        return Outcome("sigma_drop", detail="ord a_q = q after absorbing")
    try:
        rep, state = report(state)
    except PrecisionExhausted as exc:
        return Outcome("precision", detail=str(exc))
    if residual and is_above(state.aq.res_ord(state.e)):
        return Outcome("precision", detail="non-power part of a_q fell below precision")
    if dropped is not None:
        for d in rep.divisors:
            lo = dropped[0 if d.axis == "x" else 1]
            if lo < d.H * q or (not d.good and lo == d.order):
                return Outcome("precision", detail=f"order of a_q along divisor {d.index} not certified")
    # cleaning may move z so far that a middle coefficient loses its control;
    # sum m = a is still a point of Sing(M, a) and the game goes on there
    broken = [c for c in validate(state).failures if c.name != "monomial-exceeds-level"]
    if broken:
        return Outcome("outside_setting", detail=f"after cleaning: {broken[0].name} {broken[0].witness}")
    return Outcome("new", state, rep)


def transform_curve(state, axis, phase="monomial"):
    """Blow up {z = 0, axis = 0}; the exceptional divisor replaces the old one."""
    var = 0 if axis == "x" else 1
    coeffs = _divide_all(state, var, state.hyp.coeffs)
    a = state.mono.a
    divs = []
    for d in state.mono.divisors:
        if d.axis == axis:
            divs.append(DivisorInfo(axis, state.next_index, d.m - a))
        else:
            divs.append(d)
    return _finish(state, coeffs, divs, phase)


def transform_point(state, fp, phase="monomial"):
    a = state.mono.a
    dx, dy = state.mono.on("x"), state.mono.on("y")
    mE = (dx.m if dx else 0) + (dy.m if dy else 0) - a
    new_index = state.next_index
    wide = state.aq.with_prec(2 * state.prec + 1)
    q = state.q
    if fp.chart == "y":
        coeffs = [c.substitute_y_chart() for c in state.hyp.coeffs]
        coeffs = _divide_all(state, 1, coeffs)
        full = wide.substitute_y_chart().divide_monomial(0, q)
        divs = [DivisorInfo("y", new_index, mE)]
        if dx:
            divs.append(dx)
    else:
        coeffs = [c.substitute_x_chart(fp.c) for c in state.hyp.coeffs]
        coeffs = _divide_all(state, 0, coeffs)
        full = wide.substitute_x_chart(fp.c).divide_monomial(q, 0)
        divs = [DivisorInfo("x", new_index, mE)]
        if dy and fp.c == 0:
            divs.append(dy)
    return _finish(state, coeffs, divs, phase, _dropped(state, full, coeffs[-1]))


def fiber_points(state):
    return [Y0] + [FiberPoint("x", c) for c in state.field.elements()]


def fiber_outcomes(state, phase="monomial"):
    """Every rational point of the fiber with its transform."""
    return [(fp, transform_point(state, fp, phase)) for fp in fiber_points(state)]


def enumerate_fiber(state, phase="monomial"):
    return [fp for fp, out in fiber_outcomes(state, phase) if out.kind != "not_singular"]


def transform_gamma(state, omega_axes):
    """Blow up the tight-phase center V(z, x_D : D in omega)."""
    if len(omega_axes) == 1:
        return [(CURVE, transform_curve(state, omega_axes[0], phase="tight"))]
    return fiber_outcomes(state, phase="tight")


def apply(state, center, fp, phase="monomial"):
    if center.kind == "curve":
        return transform_curve(state, center.axis, phase)
    return transform_point(state, fp, phase)

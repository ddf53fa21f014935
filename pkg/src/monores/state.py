"""States of the monomial case: a purely inseparable-type hypersurface

    h = z^q + a_1 z^(q-1) + ... + a_q,   q = p^e,

with coefficients in k[[x, y]], together with the monomial part of the
idealistic data: a level a and exponents m_D along the boundary divisors.
A boundary divisor lives on one of the two coordinate axes, "x" meaning
the divisor {x = 0}.
"""

from dataclasses import dataclass, field as dfield, replace
from fractions import Fraction
from math import ceil

from .errors import InvalidState
from .series import BiSeries, is_above

AXES = ("x", "y")
VAR = {"x": 0, "y": 1}


@dataclass(frozen=True)
class DivisorInfo:
    axis: str
    index: int
    m: int

    @property
    def var(self):
        return VAR[self.axis]


@dataclass(frozen=True)
class MonomialData:
    a: int
    divisors: tuple

    def on(self, axis):
        for d in self.divisors:
            if d.axis == axis:
                return d
        return None

    def by_index(self, index):
        for d in self.divisors:
            if d.index == index:
                return d
        return None

    @property
    def total(self):
        return sum(d.m for d in self.divisors)

    def mu(self, d):
        return Fraction(d.m, self.a)

    @property
    def mu_point(self):
        return Fraction(self.total, self.a)


@dataclass(frozen=True)
class Hypersurface:
    p: int
    e: int
    coeffs: tuple  # a_1 .. a_q

    @property
    def q(self):
        return self.p ** self.e

    @property
    def aq(self):
        return self.coeffs[-1]

    def coeff(self, i):
        return self.coeffs[i - 1]


@dataclass(frozen=True)
class MonomialState:
    field: object
    hyp: Hypersurface
    mono: MonomialData
    prec: int
    year: int = 0
    next_index: int = dfield(default=0)

    def __post_init__(self):
        top = max((d.index for d in self.mono.divisors), default=-1) + 1
        if self.next_index < top:
            object.__setattr__(self, "next_index", top)

    @property
    def p(self):
        return self.hyp.p

    @property
    def e(self):
        return self.hyp.e

    @property
    def q(self):
        return self.hyp.q

    @property
    def aq(self):
        return self.hyp.aq

    @property
    def divisors(self):
        return self.mono.divisors

    def with_coeffs(self, coeffs):
        return replace(self, hyp=replace(self.hyp, coeffs=tuple(coeffs)))

    def fingerprint(self):
        return (self.prec, self.mono,
                tuple(frozenset(c.terms.items()) for c in self.hyp.coeffs))


def make_state(field, e, coeffs, a, divisors, prec, year=0):
    """Convenience constructor; coeffs may be given as (i, j, c) lists per a_k."""
    q = field.p ** e
    cs = []
    for c in coeffs:
        cs.append(c if isinstance(c, BiSeries) else BiSeries.from_pairs(field, c, prec))
    if len(cs) < q:
        cs = [BiSeries.zero(field, prec) for _ in range(q - len(cs))] + cs
    divs = tuple(d if isinstance(d, DivisorInfo) else DivisorInfo(*d) for d in divisors)
    return MonomialState(field, Hypersurface(field.p, e, tuple(c.truncate(prec) for c in cs)),
                         MonomialData(a, divs), prec, year)


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    witness: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    @property
    def failures(self):
        return tuple(c for c in self.checks if not c.ok)

    def __iter__(self):
        return iter(self.checks)


def validate(state):
    s = state
    out = []

    def check(name, ok, witness=""):
        out.append(Check(name, bool(ok), "" if ok else witness))

    check("prime", s.field.p == s.p, f"field characteristic {s.field.p} vs p={s.p}")
    check("e-positive", s.e >= 1, f"e={s.e}")
    check("level-positive", s.mono.a >= 1, f"a={s.mono.a}")
    check("coefficient-count", len(s.hyp.coeffs) == s.q, f"{len(s.hyp.coeffs)} coefficients for q={s.q}")
    divs = s.mono.divisors
    check("divisor-count", len(divs) <= 2, f"{len(divs)} divisors")
    check("distinct-axes", len({d.axis for d in divs}) == len(divs) and all(d.axis in AXES for d in divs),
          str([d.axis for d in divs]))
    check("distinct-indices", len({d.index for d in divs}) == len(divs), str([d.index for d in divs]))
    check("exponents-nonnegative", all(d.m >= 0 for d in divs), str([d.m for d in divs]))
    check("monomial-exceeds-level", s.mono.total > s.mono.a,
          f"sum m_D = {s.mono.total} <= a = {s.mono.a}")
    check("precision", s.prec > s.q, f"prec {s.prec} <= q {s.q}")
    for i, c in enumerate(s.hyp.coeffs, start=1):
        o = c.order()
        ok = c.prec > i if is_above(o) else o > i
        check(f"weierstrass-a{i}", ok, f"ord(a_{i}) = {o}")
    a = s.mono.a
    for i, c in enumerate(s.hyp.coeffs[:-1], start=1):
        for d in divs:
            need = ceil(Fraction(d.m * i, a))
            bad = [k for k in c.terms if k[d.var] < need]
            check(f"control-a{i}-{d.axis}", not bad,
                  f"term x^{bad[0][0]} y^{bad[0][1]} of a_{i} below {d.axis}^{need}" if bad else "")
    return ValidationReport(tuple(out))


def require_valid(state):
    rep = validate(state)
    if not rep.ok:
        raise InvalidState(rep)
    return state

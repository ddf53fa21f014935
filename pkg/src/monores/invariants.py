"""Well-adapted coordinates and the invariants read off from them.

Everything here assumes a state that went through `clean`: the z-coordinate
is well adapted at the point and along every boundary divisor, and for a bad
divisor with x-order divisible by q the lowest term of its layer is not a
q-th power, so that residual order and plain order of the layer agree.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations

from .errors import CharacterizationMismatch, NoBoundary, PrecisionExhausted
from .series import BiSeries, is_above
from .field import lucas_binomial

_CLEAN_CAP = 400


# coordinate changes in z

def shift_z(state, phi):
    """Rewrite h in the coordinate z' with z = z' + phi."""
    F, q, p = state.field, state.q, state.p
    phi = phi.with_prec(state.prec)
    a = (None,) + state.hyp.coeffs
    powers = {1: phi}

    def pw(n):
        if n not in powers:
            powers[n] = (pw(n - 1) * phi).truncate(state.prec)
        return powers[n]

    new = []
    for j in range(1, q + 1):
        acc = a[j]
        if j == q:
            acc = acc + phi.frobenius(state.e)
        for k in range(1, j):
            if a[k].is_zero():
                continue
            b = lucas_binomial(q - k, j - k, p)
            if b:
                acc = acc + (a[k] * pw(j - k)).scale(F.from_int(b))
        new.append(acc.truncate(state.prec))
    return state.with_coeffs(new)


def _axis_monomial(F, var, r, series_other, prec):
    """var^r times a series living in the other variable."""
    if var == 0:
        return series_other.mul_monomial(r, 0).with_prec(prec)
    return series_other.mul_monomial(0, r).with_prec(prec)


def _point_fix(state):
    aq, q = state.aq, state.q
    o = aq.order()
    if is_above(o):
        if Fraction(aq.prec, q) < state.mono.mu_point:
            raise PrecisionExhausted("a_q vanishes below precision but the slope is undecided")
        return None
    if Fraction(o, q) >= state.mono.mu_point:
        return None
    init = aq.initial_form()
    if not init.is_pe_power(state.e):
        return None
    return -init.pe_root(state.e).to_series(state.prec)


def _divisor_fix(state, d):
    q = state.q
    r, g = state.aq.divisor_initial(d.var)
    if is_above(r) or Fraction(r, q) >= state.mono.mu(d) or r % q:
        return None
    if not g.is_pe_power(state.e):
        return None
    root = g.pe_root(state.e).with_prec(state.prec)
    return -_axis_monomial(state.field, d.var, r // q, root, state.prec)


def _normal_fix(state, d):
    q, F = state.q, state.field
    r = state.aq.var_order(d.var)
    if is_above(r) or Fraction(r, q) >= state.mono.mu(d) or r % q:
        return None
    layer = state.aq.layer(d.var, r)
    other = 1 - d.var
    low = min(layer.terms, key=lambda k: k[other])
    if low[other] % q:
        return None
    c = F.root(layer.terms[low], state.e)
    return BiSeries(F, {(low[0] // q, low[1] // q): F.neg(c)}, state.prec)


def clean(state):
    """Make z well adapted everywhere and normalize bad divisor layers."""
    for _ in range(_CLEAN_CAP):
        phi = _point_fix(state)
        if phi is None:
            for d in state.mono.divisors:
                phi = _divisor_fix(state, d)
                if phi is not None:
                    break
        if phi is None:
            for d in state.mono.divisors:
                phi = _normal_fix(state, d)
                if phi is not None:
                    break
        if phi is None:
            return state
        state = shift_z(state, phi)
    raise PrecisionExhausted("cleaning did not stabilize")


# invariants

class Config(Enum):
    ONE = "1"
    TWO = "2"
    THREE = "3"
    FOUR = "4"
    FIVE = "5"

    def __str__(self):
        return self.value


ZERO_WORD = ()


def word(letters):
    """Sorted word of positive letters; the zero word is the empty tuple."""
    letters = sorted(Fraction(x) for x in letters)
    if not letters or letters[0] == 0:
        return ZERO_WORD
    return tuple(letters)


@dataclass(frozen=True, order=False)
class Spade:
    """The pair lex{A, B}; A and B are words, zero pair when either is zero."""

    A: tuple
    B: Fraction

    @property
    def is_zero(self):
        return self.A == ZERO_WORD or self.B == 0

    @property
    def pair(self):
        if self.is_zero:
            return None
        b = (self.B,)
        return (self.A, b) if self.A <= b else (b, self.A)

    def key(self):
        pr = self.pair
        return (0,) if pr is None else (1, pr[0], pr[1])

    def __lt__(self, o):
        return self.key() < o.key()

    def __le__(self, o):
        return self.key() <= o.key()

    def __gt__(self, o):
        return self.key() > o.key()

    def __ge__(self, o):
        return self.key() >= o.key()

    def same(self, o):
        return self.key() == o.key()

    def compare_word(self, c):
        """-1, 0, 1 as the pair is smaller, equal or larger than the word c."""
        if self.is_zero:
            return 0 if c == ZERO_WORD else -1
        lo = self.pair[0]
        if lo > c or (lo == c and c != ZERO_WORD):
            return 1
        return -1

    def __str__(self):
        if self.is_zero:
            return "0"
        lo, hi = self.pair
        return f"lex{{{_wstr(lo)}, {_wstr(hi)}}}"


def _wstr(w):
    return "(" + ", ".join(str(x) for x in w) + ")" if w else "0"


def spade_of(A, B):
    return Spade(tuple(A), Fraction(B))


def heart_word(v):
    return ZERO_WORD if v == 0 else (Fraction(v),)


@dataclass(frozen=True)
class GammaTight:
    """max over subsets of the boundary with sum of H at least 1; None is minus infinity."""

    value: tuple = None  # (-n, total, indices)
    omega: tuple = ()

    @property
    def finite(self):
        return self.value is not None

    def key(self):
        return (0,) if self.value is None else (1,) + self.value

    def __lt__(self, o):
        return self.key() < o.key()

    def __gt__(self, o):
        return self.key() > o.key()

    def __str__(self):
        if self.value is None:
            return "-inf"
        n, tot, idx = self.value
        return f"({n}, {tot}, {idx})"


@dataclass(frozen=True)
class DivisorReport:
    axis: str
    index: int
    m: int
    mu: Fraction
    order: object  # ord of a_q along the divisor, None when a_q vanishes
    H: Fraction
    good: bool
    res_ord: object = None
    rho: object = None
    w_rho: object = None

    @property
    def w_mu(self):
        return self.mu - self.H


@dataclass(frozen=True)
class Report:
    p: int
    e: int
    a: int
    prec: int
    mu: Fraction
    ord_aq: object
    H: Fraction
    point_good: bool
    divisors: tuple
    ord_tight: Fraction
    heart: Fraction
    A: tuple
    B: Fraction
    spade: Spade
    config: Config
    old: tuple
    locus: str
    tight: object  # None, "I" or "II"
    gamma: GammaTight
    tight_kinds: frozenset = frozenset()

    @property
    def q(self):
        return self.p ** self.e

    def divisor(self, index):
        for d in self.divisors:
            if d.index == index:
                return d
        return None

    def on(self, axis):
        for d in self.divisors:
            if d.axis == axis:
                return d
        return None

    @property
    def bad(self):
        return tuple(d for d in self.divisors if not d.good)

    @property
    def monomial_phase(self):
        return not self.spade.is_zero


def divisor_report(state, d):
    q = state.q
    mu = state.mono.mu(d)
    r = state.aq.var_order(d.var)
    if is_above(r):
        return DivisorReport(d.axis, d.index, d.m, mu, None, mu, True)
    H = min(Fraction(r, q), mu)
    if H == mu:
        return DivisorReport(d.axis, d.index, d.m, mu, r, H, True)
    ro = state.aq.layer(d.var, r).res_ord(state.e)
    if is_above(ro):
        raise PrecisionExhausted("layer of a bad divisor is a q-th power below precision")
    return DivisorReport(d.axis, d.index, d.m, mu, r, H, False, ro, Fraction(ro - r, q))


def configuration(divs):
    if not divs:
        raise NoBoundary("no boundary divisor through the point")
    nbad = sum(not d.good for d in divs)
    if len(divs) == 1:
        return Config.THREE if nbad else Config.ONE
    return (Config.TWO, Config.FOUR, Config.FIVE)[nbad]


def old_invariant(config, divs):
    if config is Config.ONE:
        return (Fraction(0), Fraction(0), divs[0].mu)
    if config is Config.TWO:
        a, b = sorted(d.mu for d in divs)
        return (Fraction(0), Fraction(0), a, b)
    if config is Config.THREE:
        d = divs[0]
        return (d.rho, Fraction(0), d.mu)
    if config is Config.FOUR:
        d = next(d for d in divs if not d.good)
        return (min(d.rho, d.mu), max(d.rho, d.mu))
    a, b = sorted(d.rho for d in divs)
    return (a, b)


def singular_locus(divs):
    h = {d.axis: d.H for d in divs}
    cx, cy = h.get("x", 0) >= 1, h.get("y", 0) >= 1
    if cx and cy:
        return "both"
    if cx:
        return "curve-x"
    if cy:
        return "curve-y"
    return "point"


def gamma_tight(divs):
    best = None
    omega = ()
    for n in range(1, len(divs) + 1):
        for sub in combinations(divs, n):
            tot = sum(d.H for d in sub)
            if tot < 1:
                continue
            val = (-n, tot, tuple(sorted(d.index for d in sub)))
            if best is None or val > best:
                best, omega = val, tuple(sorted(sub, key=lambda d: d.index))
    return GammaTight(best, tuple(d.index for d in omega))


def tight_types(state, rep_divs, H_P, ord_tight):
    """Which of the two tight characterizations hold at a cleaned state."""
    kinds = set()
    if all(d.good for d in rep_divs):
        kinds.add("II")
    q = state.q
    aq = state.aq
    o = aq.order()
    if not is_above(o) and Fraction(o, q) == ord_tight and all(d.order is not None for d in rep_divs):
        exps = [0, 0]
        ok = True
        for d in rep_divs:
            if d.H * q != d.order:
                ok = False
            exps[0 if d.axis == "x" else 1] = d.order
        if ok:
            try:
                unit = aq.divide_monomial(*exps)
                ok = unit.coefficient(0, 0) != 0
            except ArithmeticError:
                ok = False
        if ok:
            kinds.add("I")
    return kinds


def report(state, cleaned=False):
    """Cleans (unless told it already is) and evaluates every invariant."""
    if not cleaned:
        state = clean(state)
    return _report(state), state


def _report(state):
    q = state.q
    divs = tuple(divisor_report(state, d) for d in state.mono.divisors)
    mu = state.mono.mu_point
    o = state.aq.order()
    H_P = mu if is_above(o) else min(Fraction(o, q), mu)
    ord_tight = sum((d.H for d in divs), Fraction(0))
    heart = H_P - ord_tight
    bad = [d for d in divs if not d.good]
    wr = {}
    for d in bad:
        wr[d.index] = Fraction(d.res_ord, q) - ord_tight
    divs = tuple(
        DivisorReport(d.axis, d.index, d.m, d.mu, d.order, d.H, d.good, d.res_ord, d.rho, wr.get(d.index))
        for d in divs)
    A = word(wr.values()) if bad else ZERO_WORD
    B = mu - ord_tight
    spade = Spade(A, B)
    config = configuration(divs)
    tight = None
    kinds = frozenset()
    if heart == 0:
        kinds = frozenset(tight_types(state, divs, H_P, ord_tight))
        if not kinds:
            raise CharacterizationMismatch("tight point matches neither characterization")
        tight = "II" if "II" in kinds else "I"
    if (heart == 0) != spade.is_zero:
        raise CharacterizationMismatch("heart and spade disagree on tightness")
    return Report(state.p, state.e, state.mono.a, state.prec, mu, None if is_above(o) else o, H_P,
                  H_P == mu, divs, ord_tight, heart, A, B, spade, config,
                  old_invariant(config, divs), singular_locus(divs), tight, gamma_tight(divs), kinds)

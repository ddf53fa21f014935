"""Initial forms that make the invariant jump, built and taken apart.

A jump at the point [1:1] needs the initial form of a_q to look like

    x^r y^s (y - x)^t psi(x, y),

where psi(1, 1 + t) is the degree-u truncation of
(1 + sum gamma_i t^(i q)) / (1 + t)^s.  `build_phi` assembles such a form,
`factor_phi` recovers the data from an arbitrary form, and `analyze`
predicts where the first non-q-th-power term lands after the blow-up.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb

from .blowup import FiberPoint, transform_point
from .errors import EmbeddingInvalid, SpecViolation
from .invariants import report
from .series import (BiSeries, HomogPoly, is_above, poly_divmod, poly_inverse_series, poly_mul,
                     poly_taylor_shift, poly_trim, root_multiplicity)
from .state import DivisorInfo, Hypersurface, MonomialData, MonomialState, validate


@dataclass(frozen=True)
class JumpSpec:
    field: object
    e: int
    r: int
    s: int
    t: int
    d: int
    gammas: tuple = ()

    @classmethod
    def make(cls, field, e, r, s, t, gammas=()):
        """Spec with d chosen as the least multiple of q leaving room for the gammas."""
        q = field.p ** e
        gammas = tuple(gammas)
        base = r + s + t + len(gammas) * q
        d = ceil(base / q) * q
        return cls(field, e, r, s, t, d, gammas)

    @property
    def p(self):
        return self.field.p

    @property
    def q(self):
        return self.field.p ** self.e

    @property
    def u(self):
        return self.d - (self.r + self.s + self.t)

    @property
    def alpha(self):
        return self.u // self.q

    @property
    def beta(self):
        return self.u % self.q

    @property
    def n(self):
        return self.d // self.q

    def violations(self):
        q = self.q
        bad = []
        if self.d % q or self.d // q <= 1:
            bad.append("(i) d = n q with n > 1")
        if not 0 < self.r < q:
            bad.append("(ii) 0 < r < q")
        if not 0 < self.s < q:
            bad.append("(iii) 0 < s < q")
        if self.t < 0 or self.t % q:
            bad.append("(iv) t = l q")
        if self.u < 0:
            bad.append("(v) u >= 0")
        elif self.alpha != len(self.gammas):
            bad.append("(v) number of gammas equals alpha")
        elif not self.beta < q - self.s:
            bad.append("(diamond) beta < q - s")
        return bad

    def check(self):
        bad = self.violations()
        if bad:
            raise SpecViolation(bad)
        return self


def _numerator(spec):
    """1 + sum gamma_i t^(i q) as a coefficient list."""
    F, q = spec.field, spec.q
    num = [0] * (spec.alpha * q + 1)
    num[0] = 1
    for i, g in enumerate(spec.gammas, start=1):
        num[i * q] = F.elem(g).value if not isinstance(g, int) else g % F.order
    return num


def _one_plus_t_pow(F, s):
    out = [1]
    for _ in range(s):
        out = poly_mul(F, out, [1, 1])
    return out


def taylor(spec, n):
    """First n coefficients of (1 + sum gamma_i t^(iq)) / (1 + t)^s."""
    F = spec.field
    inv = poly_inverse_series(F, _one_plus_t_pow(F, spec.s), n)
    num = _numerator(spec)
    return (poly_mul(F, num, inv, cap=n) + [0] * n)[:n]


def build_phi(spec):
    spec.check()
    F = spec.field
    c = taylor(spec, spec.u + 1)
    # psi(1, t) = sum c_k (t - 1)^k
    f = [0]
    for k, ck in enumerate(c):
        if ck:
            f = _padd(F, f, [F.mul(ck, v) for v in _pow_lin(F, k)])
    f = poly_mul(F, f, [0] * spec.s + [1])
    f = poly_mul(F, f, _pow_lin(F, spec.t))
    phi = _homog_from_t(F, f, spec.d)
    if phi.is_pe_power(spec.e):
        raise SpecViolation(["form is a q-th power (epsilon_alpha = 0)"])
    return phi


def _padd(F, a, b):
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return [F.add(x, y) for x, y in zip(a, b)]


def _pow_lin(F, t):
    """(t - 1)^t as a coefficient list."""
    out = [1]
    for _ in range(t):
        out = poly_mul(F, out, [F.neg(1), 1])
    return out


def _homog_from_t(F, f, d):
    """The degree-d form whose dehomogenization Phi(1, t) is f."""
    f = poly_trim(f)
    if len(f) > d + 1:
        raise ValueError("polynomial degree exceeds the form degree")
    coeffs = [0] * (d + 1)
    for k, v in enumerate(f):
        coeffs[d - k] = v  # t^k is y^k x^(d-k)
    return HomogPoly(F, d, coeffs)


@dataclass(frozen=True)
class JumpAnalysis:
    spec: JumpSpec
    c: tuple
    eps: tuple
    v0: int
    w0: int
    l0: int
    l1: int
    w0_brute: int
    v0_direct: int

    @property
    def bound(self):
        return self.v0 - self.spec.u

    @property
    def predicted_res_ord(self):
        """Residual order of Phi(1, 1 + t), i.e. the jump value times q."""
        return self.spec.t + self.v0


def digits(n, p, k):
    return [(n // p ** l) % p for l in range(k)]


def w0_digits(p, e, s, beta):
    q = p ** e
    a = digits(q - s, p, e)
    dl = digits(beta, p, e)
    lows = [l for l in range(e) if a[l] < dl[l]]
    l0 = max(lows) if lows else -1
    l1 = min(l for l in range(l0 + 1, e) if a[l] > dl[l])
    w0 = (dl[l1] + 1) * p ** l1 + sum(dl[l] * p ** l for l in range(l1 + 1, e))
    return w0, l0, l1


def w0_brute(p, e, s, beta):
    q = p ** e
    return min(w for w in range(beta + 1, q - s + 1) if comb(q - s, w) % p)


def analyze(spec):
    spec.check()
    F, q, p, e = spec.field, spec.q, spec.p, spec.e
    alpha = spec.alpha
    # epsilon: (1 + sum gamma_i Y^i) / (1 + Y), Y = t^q
    num = [0] * (alpha + 2)
    num[0] = 1
    for i, g in enumerate(spec.gammas, start=1):
        num[i] = g % F.order if isinstance(g, int) else F.elem(g).value
    eps = poly_mul(F, num, poly_inverse_series(F, [1, 1], alpha + 2), cap=alpha + 2)
    eps = (eps + [0] * (alpha + 2))[:alpha + 2]
    if alpha and not eps[alpha]:
        raise SpecViolation(["epsilon_alpha != 0"])
    w0, l0, l1 = w0_digits(p, e, spec.s, spec.beta)
    v0 = alpha * q + w0
    n = (alpha + 1) * q + 1
    c = taylor(spec, n)
    direct = next((v for v in range(spec.u + 1, n) if c[v]), None)
    return JumpAnalysis(spec, tuple(c[1:spec.u + 1]), tuple(eps[1:]), v0, w0, l0, l1,
                        w0_brute(p, e, spec.s, spec.beta), direct)


# reading a form back

@dataclass(frozen=True)
class Factorization:
    spec: object
    failed: tuple
    r: int
    s: int
    t: int
    d: int
    reproduces: bool = False

    @property
    def ok(self):
        return not self.failed


def factor_phi(phi, e, r, s, c=1, swap=False):
    """Split phi as x^r y^s (y - x)^t psi after moving the root [1:c] to [1:1].

    r and s come from the divisor data (the x-order of a_q and the ceiling
    of H along y times q); swap exchanges the roles of x and y first."""
    F = phi.field
    q = F.p ** e
    if swap:
        phi = phi.swap()
        c = F.inv(c)
    phi = phi.rescale_y(c)
    d = phi.degree
    failed = []
    if d % q or d // q <= 1:
        failed.append("(i) d = n q with n > 1")
    if not 0 < r < q:
        failed.append("(ii) 0 < r < q")
    if not 0 < s < q:
        failed.append("(iii) 0 < s < q")
    f = phi.dehomogenize_x()  # f[k] is the coefficient of y^k x^(d-k)
    if any(f[k] for k in range(min(s, len(f)))) or any(f[k] for k in range(max(d - r + 1, 0), d + 1)):
        failed.append("x^r y^s divides the form")
        return Factorization(None, tuple(failed), r, s, 0, d)
    g = poly_trim(f[s:d - r + 1])
    t = root_multiplicity(F, g, 1)
    if t % q:
        failed.append("(iv) t = l q")
    psi = g
    for _ in range(t):
        psi, _ = poly_divmod(F, psi, [F.neg(1), 1])
    u = d - r - s - t
    sh = poly_taylor_shift(F, psi + [0] * (u + 1 - len(psi)), 1)[:u + 1]
    if u < 0 or not sh or not sh[0]:
        failed.append("(v) psi vanishes at [1:1]")
        return Factorization(None, tuple(failed), r, s, t, d)
    inv0 = F.inv(sh[0])
    cs = [F.mul(v, inv0) for v in sh]
    prod = poly_mul(F, _one_plus_t_pow(F, s), cs, cap=u + 1)
    prod = (prod + [0] * (u + 1))[:u + 1]
    alpha = u // q
    if any(prod[k] for k in range(1, u + 1) if k % q):
        failed.append("(v) psi comes from 1 + sum gamma t^(iq)")
    gammas = tuple(prod[i * q] for i in range(1, alpha + 1))
    if not u % q < q - s:
        failed.append("(diamond) beta < q - s")
    spec = JumpSpec(F, e, r, s, t, d, gammas)
    rep = False
    if not failed:
        try:
            built = build_phi(spec)
            lead = next(i for i, v in enumerate(phi.coeffs) if v)
            k = F.mul(phi.coeffs[lead], F.inv(built.coeffs[lead])) if built.coeffs[lead] else None
            rep = k is not None and built.scale(k) == phi
        except SpecViolation as exc:
            failed.extend(exc.failed)
    return Factorization(spec, tuple(failed), r, s, t, d, rep)


# embedding into a state

def embed(spec, config="5", prec=64, tail=False, boost=0):
    """A valid state whose a_q has initial form build_phi(spec).

    Configuration 5: a = 1, m_x = 1, m_y = n.  Configuration 4: a = q,
    m_y = s (good, with equality), m_x = d - s + 1 (bad).  boost adds
    boost * a to every bad exponent; large exponents keep B high, so the
    esoteric step then raises inv-spade instead of only the word A."""
    phi = build_phi(spec)
    F, q, d = spec.field, spec.q, spec.d
    aq = phi.to_series(prec)
    extra = {}
    if phi.var_order(0) > spec.r:
        extra[(spec.r, d - spec.r + 1)] = 1
    if config == "5" and phi.var_order(1) > spec.s:
        extra[(d - spec.s + 1, spec.s)] = 1
    if tail:
        extra[(d + 1 - (d + 1) // 2, (d + 1) // 2)] = 1
    if extra:
        aq = aq + BiSeries(F, extra, prec)
    if config == "5":
        a, mx, my = 1, 1 + boost, spec.n + boost
    elif config == "4":
        a, mx, my = q, d - spec.s + 1 + boost * q, spec.s
    else:
        raise ValueError("configuration must be 4 or 5")
    zero = BiSeries.zero(F, prec)
    state = MonomialState(F, Hypersurface(F.p, spec.e, tuple([zero] * (q - 1) + [aq])),
                          MonomialData(a, (DivisorInfo("x", 0, mx), DivisorInfo("y", 1, my))), prec)
    rep = validate(state)
    if not rep.ok:
        raise EmbeddingInvalid(", ".join(c.name for c in rep.failures))
    return state


@dataclass
class JumpReport:
    spec: JumpSpec
    analysis: JumpAnalysis
    state: object
    pre: object
    post: object
    esoteric: bool
    excess: Fraction  # (w-rho after - heart before) * q
    measured: object
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def verify_jump(spec, config="5", prec=64, tail=False, boost=0):
    analysis = analyze(spec)
    state = embed(spec, config, prec, tail, boost)
    pre, state = report(state)
    out = transform_point(state, FiberPoint("x", 1))
    failures = []
    if not out.is_new:
        return JumpReport(spec, analysis, state, pre, None, False, None, None,
                          [f"JumpAbsent: X(1) gives {out.kind}"])
    post = out.report
    q = spec.q
    esoteric = pre.A < post.A and post.config.value == "3"
    if not esoteric:
        failures.append("JumpAbsent: step is standard")
    E = post.divisors[0]
    excess = (E.w_rho - pre.heart) * q if E.w_rho is not None else None
    measured = E.w_rho * q if E.w_rho is not None else None
    if excess is None or excess > spec.s:
        failures.append("club1")
    if excess is None or excess > spec.p ** (spec.e - 1):
        failures.append("club2")
    if measured != analysis.predicted_res_ord:
        failures.append(f"prediction: measured {measured}, predicted {analysis.predicted_res_ord}")
    if analysis.v0 != analysis.v0_direct:
        failures.append("v0 formula disagrees with the Taylor coefficients")
    if analysis.w0 != analysis.w0_brute:
        failures.append("w0 digit rule disagrees with brute force")
    return JumpReport(spec, analysis, state, pre, post, esoteric, excess, measured, failures)

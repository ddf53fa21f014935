"""Checks of the invariant's behavior along recorded traces.

Every check works from the reports stored in a trace (plus the initial form
kept on point steps), so a trace read back from disk can be audited without
replaying the run.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from .invariants import Config, heart_word, spade_of, word
from .forge import factor_phi

PAIRED = (Config.FOUR, Config.FIVE)
MONO = (Config.THREE, Config.FOUR, Config.FIVE)


@dataclass(frozen=True)
class Finding:
    prop: str
    year: int
    ok: bool
    detail: str = ""


def _f(out, prop, year, ok, detail=""):
    out.append(Finding(prop, year, bool(ok), "" if ok else detail))


def new_index(pre, post):
    old = {d.index for d in pre.divisors}
    fresh = [d for d in post.divisors if d.index not in old]
    return fresh[0] if fresh else None


def consistency(rep, year=-1):
    """Derived fields of a report agree with the raw ones."""
    out = []
    q = rep.q
    tight = sum((d.H for d in rep.divisors), Fraction(0))
    _f(out, "report.ord_tight", year, tight == rep.ord_tight, f"{rep.ord_tight} vs {tight}")
    _f(out, "report.heart", year, rep.heart == rep.H - rep.ord_tight, f"{rep.heart}")
    _f(out, "report.B", year, rep.B == rep.mu - rep.ord_tight, f"{rep.B}")
    for d in rep.divisors:
        _f(out, "report.mu", year, d.mu == Fraction(d.m, rep.a), f"divisor {d.index}")
        if not d.good:
            wr = Fraction(d.res_ord, q) - rep.ord_tight
            _f(out, "report.w_rho", year, d.w_rho == wr, f"divisor {d.index}: {d.w_rho} vs {wr}")
    bad = [d.w_rho for d in rep.divisors if not d.good]
    _f(out, "report.A", year, tuple(rep.A) == word(bad), f"{rep.A}")
    _f(out, "report.inv_spade", year, rep.spade.same(spade_of(rep.A, rep.B)), str(rep.spade))
    _f(out, "report.tightness", year, (rep.heart == 0) == rep.spade.is_zero, "heart vs spade")
    return out


def step_findings(step, q):
    """Local checks for one step of a trace."""
    out = []
    pre, post = step.pre, step.post
    y = step.year
    if post is not None:
        _f(out, "precision", y, post.prec == pre.prec - q, f"{pre.prec} -> {post.prec}")
        if step.fiber.chart != "curve":
            E = new_index(pre, post)
            _f(out, "remark4", y, E is not None and E.good == pre.point_good,
               f"E good={E.good if E else None}, P good={pre.point_good}")
    if step.phase == "tight":
        return out + tight_findings(step)
    if post is None:
        return out
    _f(out, "old-decrease", y, post.old < pre.old, f"{pre.old} -> {post.old}")
    if step.kind == "curve":
        _f(out, "curve-spade", y, post.spade.same(pre.spade), f"{pre.spade} -> {post.spade}")
        E = new_index(pre, post)
        old = pre.on(step.center.axis)
        _f(out, "curve-mu", y, E is not None and E.mu == old.mu - 1,
           f"mu {old.mu} -> {E.mu if E else None}")
        return out
    if step.kind == "standard":
        _f(out, "standard-decrease", y, post.spade < pre.spade, f"{pre.spade} -> {post.spade}")
    if post.spade > pre.spade:
        _f(out, "increase-is-esoteric", y,
           step.kind == "esoteric" and pre.config in PAIRED and not pre.point_good
           and post.config is Config.THREE,
           f"{pre.config}->{post.config} {pre.spade} -> {post.spade}")
    if step.kind == "esoteric":
        _f(out, "esoteric-shape", y,
           pre.config in PAIRED and not pre.point_good and post.config is Config.THREE,
           f"{pre.config} good={pre.point_good} -> {post.config}")
        out += prop6_findings(step, q)
    if pre.config in MONO:
        out += lemma1_findings(step)
    return out


def lemma1_findings(step):
    pre, post = step.pre, step.post
    y = step.year
    out = []
    E = new_index(pre, post)
    if E is None:
        return out
    on = {d.index for d in post.divisors}
    for D in pre.bad:
        O = next((d for d in pre.divisors if d.index != D.index), None)
        on_D = D.index in on
        on_O = O is not None and O.index in on
        if on_D:
            Dp = post.divisor(D.index)
            _f(out, "lemma1(1.1)", y, not Dp.good and D.w_rho > Dp.w_rho,
               f"w-rho {D.w_rho} -> {Dp.w_rho} (bad={not Dp.good})")
            if not pre.point_good:
                _f(out, "lemma1(2)", y, E.w_rho is not None and pre.B > E.w_rho,
                   f"B {pre.B} vs w-rho_E {E.w_rho}")
            continue
        if pre.point_good:
            continue
        if pre.config is Config.THREE or on_O:
            _f(out, "lemma1(1.2)", y, E.w_rho is not None and D.w_rho >= E.w_rho,
               f"w-rho_D {D.w_rho} vs w-rho_E {E.w_rho}")
        if pre.config is not Config.FIVE or not on_O:
            _f(out, "lemma1(1.3)", y, pre.B > post.B, f"B {pre.B} -> {post.B}")
    if pre.config is Config.FIVE and pre.point_good:
        dx, dy = pre.divisors
        _f(out, "lemma1(3)", y, dx.w_rho > dy.w_mu and dy.w_rho > dx.w_mu,
           f"w-rho ({dx.w_rho}, {dy.w_rho}) vs w-mu ({dx.w_mu}, {dy.w_mu})")
    return out


def prop6_findings(step, q):
    pre, post = step.pre, step.post
    y = step.year
    out = []
    phi = step.phi
    if pre.point_good or post.config is not Config.THREE or step.fiber.chart != "x" or step.fiber.c == 0:
        # a good configuration-5 point can lose its smaller letter at a point on a
        # strict transform; the word grows but there is no jump to factor
        _f(out, "prop6.situation", y, False,
           f"{pre.config} good={pre.point_good} -> {post.config} at {step.fiber}")
        return out
    if pre.config is Config.FOUR:
        X = next(d for d in pre.divisors if not d.good)
        Y = next(d for d in pre.divisors if d.good)
    else:
        X, Y = pre.on("x"), pre.on("y")
    r = X.H * q
    s = ceil(Y.H * q)
    fac = factor_phi(phi, pre.e, int(r) if r.denominator == 1 else -1, s, step.fiber.c, X.axis == "y")
    _f(out, "prop6.factor", y, fac.ok, ", ".join(fac.failed))
    _f(out, "prop6.reproduce", y, fac.reproduces, "build_phi does not give back the form")
    E = post.divisors[0]
    excess = (E.w_rho - pre.heart) * q
    _f(out, "prop6.club1", y, excess <= s < q, f"excess {excess}, s {s}")
    _f(out, "prop6.club2", y, excess <= pre.p ** (pre.e - 1), f"excess {excess}")
    return out


def tight_findings(step):
    pre, post = step.pre, step.post
    y = step.year
    out = []
    if post is None:
        return out
    _f(out, "tight-stays", y, post.heart == 0 and pre.tight in post.tight_kinds,
       f"type {pre.tight} -> {post.tight_kinds}, heart {post.heart}")
    _f(out, "gamma-decrease", y, post.gamma < pre.gamma, f"{pre.gamma} -> {post.gamma}")
    E = new_index(pre, post)
    omega = [pre.divisor(i) for i in step.center.omega]
    want = {}
    if E is not None:
        want[E.index] = sum((d.H for d in omega), Fraction(0)) - 1
    for d in post.divisors:
        if E is None or d.index != E.index:
            src = pre.divisor(d.index)
            want[d.index] = src.H if src else None
    ok = all(post.divisor(i).H == h for i, h in want.items())
    _f(out, "tight-monomial", y, ok, f"{[(d.index, d.H) for d in post.divisors]} vs {want}")
    return out


@dataclass
class Episode:
    start: int
    truncated: bool
    jump: bool = False
    note: str = ""
    flat: int = None
    sharp: int = None
    values: dict = field(default_factory=dict)
    findings: list = field(default_factory=list)

    @property
    def ok(self):
        return all(f.ok for f in self.findings)


def episodes(steps):
    out = []
    for i, st in enumerate(steps):
        if st.kind != "esoteric" or st.post is None:
            continue
        P, Pt = st.pre, st.post
        # an esoteric step need not raise inv-spade; the flag records whether it did
        ep = Episode(i, True, Pt.spade > P.spade)
        out.append(ep)
        if Pt.config is not Config.THREE:
            ep.note = f"the new point is in configuration {Pt.config}, so no run follows"
            continue
        j = i + 1
        while j < len(steps):
            sj = steps[j]
            post = sj.post
            if post is None or post.spade.is_zero or sj.phase != "monomial":
                break
            if post.config is Config.THREE:
                if sj.kind == "standard":
                    _f(ep.findings, "run-decrease", sj.year, post.spade < sj.pre.spade,
                       f"{sj.pre.spade} -> {post.spade}")
                j += 1
                continue
            if post.config in PAIRED:
                ep.truncated = False
                ep.flat, ep.sharp = j, j
                _close(ep, P, Pt, sj.pre, post, sj.year)
            break
    return out


def _close(ep, P, Pt, Pf, Ps, y):
    q = P.q
    xf = Pf.divisors[0]
    xs = Ps.divisor(xf.index)
    ys = next(d for d in Ps.divisors if d.index != xf.index)
    m_heart = P.heart
    m_tilde = Pt.divisors[0].w_rho
    m_flat = xf.w_rho
    wr_xs = xs.w_rho if xs is not None else None
    m_nat = Ps.B if Ps.config is Config.FOUR else ys.w_rho
    mu_nat = Pf.mu if Pf.point_good else Fraction(Pf.ord_aq, q)
    r_flat = Fraction(xf.order, q)
    ep.values = dict(m_heart=m_heart, m_tilde=m_tilde, m_flat=m_flat, w_rho_sharp=wr_xs,
                     m_nat=m_nat, mu_nat=mu_nat, r_flat=r_flat, flat_good=Pf.point_good,
                     sharp_config=str(Ps.config))
    F = ep.findings
    hw = heart_word(m_heart)
    _f(F, "prop7.spade-above-heart", y, P.spade.compare_word(hw) > 0, f"{P.spade} vs {m_heart}")
    _f(F, "prop7.heart-above-sharp", y, Ps.spade.compare_word(hw) < 0, f"{m_heart} vs {Ps.spade}")
    _f(F, "chain.1", y, 2 * m_heart > m_tilde, f"2*{m_heart} vs {m_tilde}")
    _f(F, "chain.2", y, m_tilde >= m_flat, f"{m_tilde} vs {m_flat}")
    ok3 = wr_xs is not None and m_nat is not None and m_flat > wr_xs + m_nat
    _f(F, "chain.3", y, ok3, f"{m_flat} vs {wr_xs} + {m_nat}")
    _f(F, "relation0", y, xs is not None and xs.H == r_flat and ys.H == mu_nat - 1
       and xs.mu == Pf.mu and ys.mu == Pf.mu - 1,
       f"H ({xs.H if xs else None}, {ys.H}) mu ({xs.mu if xs else None}, {ys.mu})")
    _f(F, "relation1", y, m_nat is not None and (m_nat == mu_nat - r_flat if Pf.point_good
                                                 else m_nat <= mu_nat - r_flat),
       f"{m_nat} vs {mu_nat - r_flat}")
    _f(F, "relation2", y, wr_xs is not None and wr_xs == m_flat - (mu_nat - r_flat),
       f"{wr_xs} vs {m_flat - (mu_nat - r_flat)}")


def audit(steps, q):
    """All findings for a path: local checks, report consistency and episodes."""
    out = []
    seen = set()
    for st in steps:
        for rep in (st.pre, st.post):
            if rep is not None and id(rep) not in seen:
                seen.add(id(rep))
                out += consistency(rep, st.year)
        out += step_findings(st, q)
    eps = episodes(steps)
    for ep in eps:
        out += ep.findings
    return out, eps

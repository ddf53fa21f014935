import itertools
from math import comb

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from monores.errors import EmbeddingInvalid, SpecViolation
from monores.field import GF
from monores.forge import (JumpSpec, analyze, build_phi, embed, factor_phi, taylor, verify_jump,
                           w0_brute, w0_digits)
from monores.state import validate
from monores.corpus import jump_specs

T = sympy.Symbol("t")
F2, F3 = GF(2, 1), GF(3, 1)


def specs(F, e, tmax=1, gmax=1):
    q = F.p ** e
    for r, s, t, n in itertools.product(range(1, q), range(1, q), range(0, tmax * q + 1, q), range(gmax + 1)):
        for gs in itertools.product(range(F.order), repeat=n):
            spec = JumpSpec.make(F, e, r, s, t, gs)
            if not spec.violations():
                yield spec


def oracle_phi(spec):
    """Phi(1, t) from binomials mod p: t^s (t-1)^t times the truncated series in (t - 1)."""
    p, q, s, u = spec.p, spec.q, spec.s, spec.u
    inv = [(-1) ** k * comb(s + k - 1, k) for k in range(u + 1)]  # (1 + t)^-s
    num = [0] * (u + 1)
    num[0] = 1
    for i, g in enumerate(spec.gammas, start=1):
        if i * q <= u:
            num[i * q] = g
    c = [sum(num[j] * inv[k - j] for j in range(k + 1)) % p for k in range(u + 1)]
    psi = sum((ck * (T - 1) ** k for k, ck in enumerate(c)), sympy.Integer(0))
    f = sympy.Poly(sympy.expand(T ** s * (T - 1) ** spec.t * psi), T, modulus=p)
    return {k[0]: int(v) % p for k, v in f.terms() if int(v) % p}


def phi_in_t(phi):
    d = phi.degree
    return {d - i: v for i, v in enumerate(phi.coeffs) if v}


@pytest.mark.parametrize("F,e", [(F2, 1), (F3, 1), (F2, 2)])
def test_build_phi_matches_binomial_oracle(F, e):
    n = 0
    for spec in specs(F, e):
        try:
            phi = build_phi(spec)
        except SpecViolation:
            continue
        assert phi.degree == spec.d
        assert phi_in_t(phi) == oracle_phi(spec)
        n += 1
    assert n >= 3


def test_taylor_coefficients():
    spec = JumpSpec.make(F3, 1, 1, 2, 0, (2,))
    inv = [(-1) ** k * comb(1 + k, k) for k in range(8)]
    want = [(inv[k] + (2 * inv[k - 3] if k >= 3 else 0)) % 3 for k in range(8)]
    assert taylor(spec, 8) == want


@given(st.sampled_from([(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)]), st.data())
@settings(max_examples=200, deadline=None)
def test_w0_digit_rule(pe, data):
    p, e = pe
    q = p ** e
    s = data.draw(st.integers(1, q - 1))
    beta = data.draw(st.integers(0, q - s - 1))
    assert w0_digits(p, e, s, beta)[0] == w0_brute(p, e, s, beta)


@pytest.mark.parametrize("F,e", [(F2, 1), (F3, 1), (F2, 2)])
def test_v0_formula_against_taylor(F, e):
    for spec in specs(F, e, gmax=2):
        try:
            an = analyze(spec)
        except SpecViolation:
            continue
        assert an.v0 == an.v0_direct
        assert an.bound == an.v0 - spec.u > 0


def test_the_two_small_witnesses():
    base = JumpSpec.make(F2, 1, 1, 1, 2)
    assert repr(build_phi(base)) == "HomogPoly(1*x^1*y^3 + 1*x^3*y^1)"
    wide = JumpSpec.make(F2, 1, 1, 1, 0, (0,))
    assert repr(build_phi(wide)) == "HomogPoly(1*x^1*y^3 + 1*x^2*y^2 + 1*x^3*y^1)"
    rep = verify_jump(wide)
    assert rep.ok and rep.esoteric and rep.measured == 3


def test_gamma_one_is_a_qth_power():
    # 1 + t^2 over (1 + t) is 1 + t in characteristic 2
    spec = JumpSpec.make(F2, 1, 1, 1, 0, (1,))
    assert not spec.violations()
    with pytest.raises(SpecViolation):
        build_phi(spec)
    with pytest.raises(SpecViolation):
        analyze(spec)


def test_violations_named():
    assert JumpSpec(F2, 1, 0, 1, 0, 2).violations()[0].startswith("(i)")
    assert "(ii) 0 < r < q" in JumpSpec(F3, 1, 0, 1, 0, 6).violations()
    assert "(iv) t = l q" in JumpSpec(F3, 1, 1, 1, 1, 6).violations()
    tight = JumpSpec(F2, 2, 2, 3, 0, 8)  # beta = 3, q - s = 1
    assert tight.violations() == ["(diamond) beta < q - s"]
    with pytest.raises(SpecViolation):
        tight.check()


@pytest.mark.parametrize("F,e", [(F2, 1), (F3, 1), (F2, 2)])
def test_factor_round_trip(F, e):
    for spec in specs(F, e):
        try:
            phi = build_phi(spec)
        except SpecViolation:
            continue
        fac = factor_phi(phi, e, spec.r, spec.s)
        assert fac.ok and fac.reproduces
        assert (fac.spec.r, fac.spec.s, fac.spec.t, fac.spec.d) == (spec.r, spec.s, spec.t, spec.d)
        assert tuple(fac.spec.gammas) == tuple(spec.gammas)


def test_factor_moves_the_root():
    phi = build_phi(JumpSpec.make(F3, 1, 1, 1, 0, (2,)))
    moved = phi.rescale_y(F3.inv(2))
    fac = factor_phi(moved, 1, 1, 1, c=2)
    assert fac.ok and fac.reproduces


def test_factor_rejects_a_plain_form():
    phi = build_phi(JumpSpec.make(F2, 1, 1, 1, 2))
    assert not factor_phi(phi, 1, 2, 1).ok


@pytest.mark.parametrize("config", ["4", "5"])
def test_embeddings_are_valid(config):
    for spec in jump_specs(8):
        try:
            st_ = embed(spec, config)
        except EmbeddingInvalid:
            continue
        assert validate(st_).ok


def test_forged_jumps_check_out():
    for spec in jump_specs(12):
        for boost in (0, 3):
            rep = verify_jump(spec, boost=boost)
            assert rep.ok, rep.failures
            assert rep.measured == rep.analysis.predicted_res_ord

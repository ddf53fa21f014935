"""Instance generators: random valid states, tight seeds and forged jumps.

All randomness goes through a seeded random.Random so a corpus is a pure
function of its seed.
"""

import itertools
import random
from fractions import Fraction
from math import ceil

from .errors import MonoresError
from .field import GF
from .forge import JumpSpec, embed, verify_jump
from .invariants import report
from .series import BiSeries
from .state import DivisorInfo, Hypersurface, MonomialData, MonomialState, validate

FIELDS = [(2, 1, 1), (2, 1, 2), (2, 2, 1), (3, 1, 1), (3, 1, 2), (3, 2, 1)]  # (p, e, m)
_GF = {}


def field_for(p, m):
    if (p, m) not in _GF:
        _GF[(p, m)] = GF(p, m)
    return _GF[(p, m)]


def _nonzero(rng, F):
    return rng.randrange(1, F.order)


def random_state(rng, p=None, e=None, m=None, prec=64, depth=3):
    """A random state satisfying the Weierstrass and control conditions.

    depth scales both the degrees of a_q and the divisor exponents."""
    if p is None:
        p, e, m = rng.choice(FIELDS)
    F = field_for(p, m)
    q = p ** e
    a = rng.randint(1, 3)
    axes = rng.choice([("x",), ("y",), ("x", "y"), ("x", "y")])
    while True:
        ms = [rng.randint(0, depth * a) for _ in axes]
        if sum(ms) > a:
            break
    divs = tuple(DivisorInfo(ax, k, mm) for k, (ax, mm) in enumerate(zip(axes, ms)))
    need = {d.axis: d for d in divs}

    def floor_exp(i, ax):
        d = need.get(ax)
        return ceil(Fraction(d.m * i, a)) if d else 0

    coeffs = []
    for i in range(1, q):
        terms = {}
        if rng.random() < 0.3:
            lx, ly = floor_exp(i, "x"), floor_exp(i, "y")
            for _ in range(rng.randint(1, 2)):
                ex = lx + rng.randint(0, 2)
                ey = ly + rng.randint(0, 2)
                if ex + ey <= i:
                    ey += i + 1 - ex - ey
                terms[(ex, ey)] = _nonzero(rng, F)
        coeffs.append(BiSeries(F, terms, prec))
    terms = {}
    for _ in range(rng.randint(1, 4)):
        deg = rng.randint(q + 1, depth * q + 1)
        ex = rng.randint(0, deg)
        terms[(ex, deg - ex)] = _nonzero(rng, F)
    coeffs.append(BiSeries(F, terms, prec))
    return MonomialState(F, Hypersurface(p, e, tuple(coeffs)), MonomialData(a, divs), prec)


def random_valid(rng, prec=64, tries=200, **kw):
    for _ in range(tries):
        st = random_state(rng, prec=prec, **kw)
        if validate(st).ok:
            try:
                rep, cleaned = report(st)
            except MonoresError:
                continue
            if validate(cleaned).ok:
                return st
    raise RuntimeError("no valid random state found")


def random_corpus(seed=0, count=200, prec=64, depth=5):
    rng = random.Random(seed)
    return [random_valid(rng, prec, depth=depth) for _ in range(count)]


def tight_seeds(seed=0, count=10, prec=64, tries=5000):
    """Random valid states that start tight, balanced between Types I and II."""
    rng = random.Random(seed)
    found = {"I": [], "II": []}
    for _ in range(tries):
        st = random_valid(rng, prec)
        rep, _ = report(st)
        if rep.tight and len(found[rep.tight]) < count // 2:
            found[rep.tight].append(st)
        if all(len(v) >= count // 2 for v in found.values()):
            break
    return found["I"] + found["II"]


def jump_specs(limit=20):
    """Small specs satisfying (i)-(v) and (diamond) whose forged jump checks out,
    spread evenly over the characteristics and exponents."""
    out = []
    for p, e in ((2, 1), (3, 1), (2, 2), (3, 2)):
        out += _jump_specs(p, e, limit // 4 + (len(out) < limit % 4))
    return out[:limit]


def _jump_specs(p, e, limit):
    out = []
    F = field_for(p, 1)
    q = p ** e
    for r, s, t, nalpha in itertools.product(range(1, q), range(1, q), (0, q), (0, 1)):
        for gs in itertools.product(range(F.order), repeat=nalpha):
            spec = JumpSpec.make(F, e, r, s, t, gs)
            if spec.violations():
                continue
            try:
                ok = verify_jump(spec).ok
            except MonoresError:
                continue
            if ok:
                out.append(spec)
            if len(out) >= limit:
                return out
    return out


def forged_corpus(limit=20, prec=64):
    """Embedded jump specs, alternating configurations; half get boosted exponents."""
    out = []
    specs = jump_specs(limit)
    for k, spec in enumerate(specs):
        config = "5" if k % 2 == 0 else "4"
        boost = 4 if k % 4 < 2 else 0
        try:
            out.append(embed(spec, config, prec, tail=k % 3 == 0, boost=boost))
        except MonoresError:
            out.append(embed(spec, "5", prec, boost=boost))
    return out

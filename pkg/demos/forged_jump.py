# Building an initial form that forces the word to grow, and watching it happen.

from monores.blowup import FiberPoint, transform_point
from monores.field import GF
from monores.forge import JumpSpec, analyze, build_phi, embed, factor_phi, verify_jump
from monores.invariants import report

F = GF(2, 1)

# %% x y^3 + x^2 y^2 + x^3 y: r = s = 1, no (y - x) factor, one gamma equal to 0
spec = JumpSpec.make(F, 1, 1, 1, 0, (0,))
phi = build_phi(spec)
print(phi)
an = analyze(spec)
print("v0", an.v0, "from the Taylor series", an.v0_direct, "w0", an.w0)

# %% the form taken apart again
fac = factor_phi(phi, 1, spec.r, spec.s)
print(fac.ok, fac.spec.gammas, fac.reproduces)

# %% put it in configuration 5 and blow up the point [1:1]
st = embed(spec, "5")
pre, st = report(st)
out = transform_point(st, FiberPoint("x", 1))
print(pre.config, pre.spade, "->", out.report.config, out.report.spade)
print("measured", out.report.divisors[0].w_rho * spec.q, "predicted", an.predicted_res_ord)

# %% with larger exponents the same step raises inv-spade
rep = verify_jump(spec, boost=4)
print(rep.ok, rep.pre.spade, "->", rep.post.spade)

# %% gamma = 1 would cancel: 1 + t^2 = (1 + t)^2 in characteristic 2
try:
    build_phi(JumpSpec.make(F, 1, 1, 1, 0, (1,)))
except Exception as exc:
    print(type(exc).__name__, exc)

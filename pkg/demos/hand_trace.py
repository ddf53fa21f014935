# A small game played by hand, then by the machine.
#
# z^2 + x^4 + x^3 y^2 over GF(2), with the monomial x^5 at level a = 2.
# Cleaning removes the square x^4, leaving a_2 = x^3 y^2.

from monores.cli import format_report
from monores.driver import Exhaustive, run
from monores.field import GF
from monores.invariants import report
from monores.state import make_state, validate

F = GF(2, 1)
st = make_state(F, 1, [[], [(4, 0, 1), (3, 2, 1)]], 2, [("x", 0, 5)], 64)
print(validate(st).ok)

# %% the invariants at the origin
rep, cleaned = report(st)
print(cleaned.hyp.coeffs[-1])
print(format_report(rep))

# %% the locus is the curve {z = x = 0}, so the first move is a curve blow-up
trace = run(st)
for s in trace.steps:
    print(s.year, s.kind, s.center, s.fiber, s.pre.spade, "->", s.post.spade if s.post else s.outcome)
print(trace.status)

# %% every choice of point, not just the worst one
tree = run(st, Exhaustive())
print(tree.nodes, sorted(map(str, tree.statuses())))

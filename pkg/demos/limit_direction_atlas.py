"""
Which directions can be limit directions?
=========================================

Fix the minimal points and the subgroup spanned by the loop vectors.  The
vectors that occur as a limit direction of some root sequence fall into
finitely many arithmetic families.  The script lists them, checks them
against a brute-force search, and draws the limit angles of a few sequences
as an SVG.
"""
import sys

from gbsiso.angles import cone_relation, enumerate_limit_directions, realizable_set_bruteforce
from gbsiso.config import Configuration
from gbsiso.exponents import ExpVector, format_monomial
from gbsiso.sequence import limit_directions, root_sequence
from gbsiso.svg import render


def v(a, b):
    return ExpVector({2: a, 3: b})


a1, a2 = v(0, 3), v(3, 0)
h1, h2 = v(3, 4), v(4, 3)

fams = enumerate_limit_directions(a1, a2, h1, h2)
for f in fams:
    print("family", f.base, "+ i *", f.step, "->", [format_monomial(x) for x in f.instantiate(40)])

got = {x for f in fams for x in f.instantiate(60)}
assert got == realizable_set_bruteforce(a1, a2, h1, h2, bound=60, box=70)
print(len(got), "directions up to exponent 60, all confirmed by brute force")

###############################################################################
# Neighbouring limit angles
# -------------------------
# Walking from one sequence to the next along a shared limit direction gives
# angles that touch along one boundary ray and are otherwise disjoint.

seeds = [((3, 4), (4, 3)), ((4, 3), (5, 2)), ((5, 2), (6, 1)), ((6, 1), (19, 2))]
angles = [limit_directions(root_sequence(Configuration(a1, a2, v(*x), v(*y)))) for x, y in seeds]
for s, t in zip(angles, angles[1:]):
    print(format_monomial(s.minus), format_monomial(s.plus), "|",
          format_monomial(t.minus), format_monomial(t.plus), "->", cone_relation(s, t))

svg = render((2, 3), sorted(got, key=lambda x: x.get(2) / (x.get(2) + x.get(3))), angles,
             highlight=angles[0], vectors=[h1, h2], title="limit angles")
out = sys.argv[1] if len(sys.argv) > 1 else "limit_angles.svg"
with open(out, "w") as fh:
    fh.write(svg)
print("wrote", out)

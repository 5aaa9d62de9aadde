"""
Rank one: counting classes by hand and by machine
=================================================

When both loop vectors are multiples of a single vector z, every root
sequence lives on one line and the sequences can be listed outright.  Each
class carries its own table of multiples of z.
"""
from gbsiso.angles import enumerate_rank1_classes, realizable_limit_direction, subgroup_class
from gbsiso.exponents import ExpVector

z = ExpVector({2: 2, 3: 1})
a1, a2 = ExpVector({3: 5}), ExpVector({2: 3})

h = subgroup_class(4 * z, 7 * z)
classes = enumerate_rank1_classes(a1, a2, h)
print(len(classes), "classes")

for c in classes:
    seq = c.sequence
    if seq is None:
        print("twin class", c.twins)
        continue
    row = []
    for i in range(seq.first_index, seq.first_index + 8):
        t = seq.term(i)
        row.append(t.get(2) // 2)
    print("multiples of z:", row)

###############################################################################
# Realizable limit directions
# ---------------------------
# A multiple m z is a right limit direction for some class exactly when a
# witness root exists.  The answer for m = 5 is negative.

for m in range(1, 6):
    r = realizable_limit_direction(a1, a2, h, m * z)
    print(m, r.kind, r.witness if r.witness is not None else "")

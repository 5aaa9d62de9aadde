"""
From a graph to its limit directions
====================================

A one-vertex graph with two loops is read from text, reduced to a root by
undoing slides, and the root is then extended in both directions into its
sequence of roots.  The two limit directions bound every root vector that
can still grow a full tree of sons.
"""
from pathlib import Path

from gbsiso.config import extract_configuration, find_root, tree_shape
from gbsiso.exponents import format_monomial
from gbsiso.graph import load
from gbsiso.sequence import limit_directions, root_sequence

DATA = Path(__file__).resolve().parent / "data"

g = load(str(DATA / "base.gbs"))
print(g)

# Read the two loops as a configuration: minimal points a1, a2 and loop vectors x1, x2.
c = extract_configuration(g).config
print("configuration", c)
print("shape", tree_shape(c))

# Climbing to the father until the two heads are incomparable gives the root.
# The path records which sons lead back down.
found = find_root(c)
print("root", found.root, "son path", found.path)

###############################################################################
# The root sequence
# -----------------
# Consecutive roots share a vector, and v[i-1] + v[i+1] = k[i] v[i].
# Far enough out the power k settles at 2 and the vectors form an
# arithmetic progression.

seq = root_sequence(found.root)
print(" i  vector         k")
for i in range(-3, 5):
    print(f"{i + 1:2d}  {format_monomial(seq.term(i)):12s}  {seq.power(i)}")

lim = limit_directions(seq)
print("l- =", format_monomial(lim.minus))
print("l+ =", format_monomial(lim.plus))

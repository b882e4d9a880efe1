"""
Three lines in the plane: the Deligne groupoid, its normal forms, and why
its vertex group is the pure braid group rather than the braid group.

    python3 demos/deligne_i2_3.py
"""

from ggk.exact import abelian_invariants
from ggk.fan import Arrangement, minimal_galleries
from ggk.groupoid import (arrangement_model, deligne_groupoid, dihedral_wall_types, normal_form,
                          orbit_quotient, reduce_to_braid, tietze_eliminate, vertex_group)

A = Arrangement(2, [(0, 1), (1, 0), (1, 1)])
M = arrangement_model(A)
P = deligne_groupoid(A, M)
Q = P.quiver
S = M.decomposition()

print("chambers:", ", ".join(Q.vertices))
start = Q.vertices[0]
far = next(c for c in Q.vertices if c == start.translate(str.maketrans("+-", "-+")))
for g in minimal_galleries(S, start, far):
    print("  minimal gallery:", " -> ".join(g))

print("\n%d relations, e.g." % len(P.relations))
for lhs, rhs in P.relations[:2]:
    print("  %s = %s" % (lhs.format(Q), rhs.format(Q)))

# a positive path that goes around the origin and a bit further
walk = [start]
for _ in range(8):
    nxt = [a for a in Q.out(walk[-1]) if a.target not in walk[-2:]]
    walk.append(sorted(nxt, key=lambda a: a.target)[0].target)
segs = normal_form(Q.path(walk), M)
print("\nnormal form of", " -> ".join(walk))
for s in segs:
    print("  [%s]" % " -> ".join(s.vertices(Q)))

G = vertex_group(P, start)
E = tietze_eliminate(G)
print("\nvertex group at %s after elimination: %s" % (start, E.to_text()))
print("abelianization rank:", abelian_invariants(E.relation_matrix(), len(E.generators))[0])
print("so this is the pure braid group on three strands, not <a, b | aba = bab>")

O = reduce_to_braid(orbit_quotient(P, dihedral_wall_types(M)))
print("\nidentifying arrows across walls of the same type:", O.to_text())

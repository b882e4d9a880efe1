"""
The cluster category of type A2, end to end: maximal rigid sets, the
g-vector fan, the green relations and the vertex group.

    python3 demos/a2_walkthrough.py
"""

from ggk import a2, generate
from ggk.fan import recognize_arrangement, verify_chamber_decomposition
from ggk.groupoid import green_presentation, vertex_group, tietze_eliminate


def show(word):
    return " ".join(g if e > 0 else g + "^-1" for g, e in word) or "1"


model = generate("a_n", n=2)
print("maximal rigid sets:", ", ".join(model.maximal_rigid))

idx = model.indices_wrt(model.reference)
print("\nindices wrt %s:" % model.reference)
for label, v in idx.items():
    print("  %-3s %s" % (label, v))
S = model.decomposition()
print("fan check:", verify_chamber_decomposition(S).status)
rec = recognize_arrangement(S)
print("hyperplane arrangement:", rec.is_arrangement, rec.witness)

P = green_presentation(model)
vertex, _ = a2.canonical_labels(model)
print("\nvertices:", ", ".join("%d=%s" % (i, vertex[i]) for i in sorted(vertex)))
print("green relations (traversal order):")
for lhs, rhs in P.relations:
    print("  %s = %s" % (show(a2.alphabeta_word(lhs, model)), show(a2.alphabeta_word(rhs, model))))

print("\nafter a_i = alpha_{i-1}^-1 beta_i, b_i = beta_{i+3}^-1 alpha_{i+2} alpha_{i+1}:")
for lhs, rhs in a2.relations_in_ab(P, model):
    print("  %s = %s" % (show(lhs), show(rhs)))

G = vertex_group(P, vertex[5])
print("\nvertex group at %s: %d generators, %d relators" % (vertex[5], len(G.generators), len(G.relators)))
print("  eliminated:", tietze_eliminate(G).to_text())
B = a2.reduce_vertex_group()
print("  braid form:", B.to_text())

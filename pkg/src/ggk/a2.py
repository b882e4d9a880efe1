"""
The worked A_2 example: canonical alpha/beta labels for the pentagon and
the scripted change of generators to a_i, b_i.

Vertices of the mutation quiver are numbered 1..5 with 5 the reference
and 1, 2, 3, 4 the following chambers counterclockwise.  alpha_i is the
arrow i-1 -> i and beta_i the arrow i -> i-1.  Words below are in
traversal order (first arrow first), as lists of ``(name, +-1)``.
"""

from .fan import angular_order
from .groupoid import (Arrow, GroupoidError, GroupPresentation, MutationQuiver, PathWord,
                       Presentation, braid_form, free_reduce, invert, tietze_eliminate,
                       vertex_group, _quiver)


def _m(i):
    return (i - 1) % 5 + 1


def canonical_labels(model):
    """
    Map vertex numbers 1..5 to maximal rigid labels, and arrow names
    ``alpha1..beta5`` to quiver arrows.
    """
    if model.dim != 2 or len(model.maximal_rigid) != 5:
        raise GroupoidError("the alpha/beta labelling is for the five-chamber fan of A2")
    idx = model.indices_wrt(model.reference)
    rays = angular_order([idx[s] for s in model.indecomposables])
    chambers = {frozenset(idx[s] for s in summands): label
                for label, summands in model.maximal_rigid.items()}
    ordered = [chambers[frozenset((rays[k], rays[(k + 1) % 5]))] for k in range(5)]
    start = ordered.index(model.reference)
    ordered = ordered[start:] + ordered[:start]
    vertex = {5: ordered[0]}
    for i in range(1, 5):
        vertex[i] = ordered[i]
    Q = _quiver(model)
    arrows = {}
    for i in range(1, 6):
        arrows["alpha%d" % i] = Q.between(vertex[_m(i - 1)], vertex[i])
        arrows["beta%d" % i] = Q.between(vertex[i], vertex[_m(i - 1)])
    return vertex, arrows


def alphabeta_word(w, model):
    """Rename a PathWord's letters to alpha/beta names."""
    _, arrows = canonical_labels(model)
    name = {a.id: n for n, a in arrows.items()}
    return tuple((name[abs(x)], 1 if x > 0 else -1) for x in w.letters)


def alphabeta_relation(i):
    """alpha_{i+3} alpha_{i+2} alpha_{i+1} = beta_{i-1} beta_i, in traversal order."""
    lhs = (("alpha%d" % _m(i + 1), 1), ("alpha%d" % _m(i + 2), 1), ("alpha%d" % _m(i + 3), 1))
    rhs = (("beta%d" % _m(i), 1), ("beta%d" % _m(i - 1), 1))
    return lhs, rhs


def match_alphabeta_relations(P, model):
    """
    Index i of the alpha/beta relation matching each relation of P, or None
    where there is no match.
    """
    out = []
    for lhs, rhs in P.relations:
        pair = {alphabeta_word(lhs, model), alphabeta_word(rhs, model)}
        out.append(next((i for i in range(1, 6) if set(alphabeta_relation(i)) == pair), None))
    return out


# a_i = alpha_{i-1}^-1 beta_i and b_i = beta_{i+3}^-1 alpha_{i+2} alpha_{i+1}, both i -> i-2
def a_in_alphabeta(i):
    return (("beta%d" % _m(i), 1), ("alpha%d" % _m(i - 1), -1))


def b_in_alphabeta(i):
    return (("alpha%d" % _m(i + 1), 1), ("alpha%d" % _m(i + 2), 1), ("beta%d" % _m(i + 3), -1))


# alpha_i = a_{i-3} b_{i-1} and beta_i = a_{i-4} b_{i-2} a_i
def alpha_in_ab(i):
    return (("b%d" % _m(i - 1), 1), ("a%d" % _m(i - 3), 1))


def beta_in_ab(i):
    return (("a%d" % _m(i), 1), ("b%d" % _m(i - 2), 1), ("a%d" % _m(i - 4), 1))


def substitute(word, table):
    out = []
    for g, e in word:
        out.extend(table[g] if e > 0 else invert(table[g]))
    return free_reduce(tuple(out))


def ab_table():
    t = {}
    for i in range(1, 6):
        t["alpha%d" % i] = alpha_in_ab(i)
        t["beta%d" % i] = beta_in_ab(i)
    return t


def alphabeta_table():
    t = {}
    for i in range(1, 6):
        t["a%d" % i] = a_in_alphabeta(i)
        t["b%d" % i] = b_in_alphabeta(i)
    return t


def substitutions_are_inverse():
    """Both composites of the two substitutions are the identity on generators."""
    ab, al = ab_table(), alphabeta_table()
    return (all(substitute(substitute(((g, 1),), al), ab) == ((g, 1),) for g in al)
            and all(substitute(substitute(((g, 1),), ab), al) == ((g, 1),) for g in ab))


def ab_relation(i):
    """a_{i-4} b_{i-2} a_i = b_{i-4} a_{i-2} b_i, in traversal order."""
    lhs = (("a%d" % _m(i), 1), ("b%d" % _m(i - 2), 1), ("a%d" % _m(i - 4), 1))
    rhs = (("b%d" % _m(i), 1), ("a%d" % _m(i - 2), 1), ("b%d" % _m(i - 4), 1))
    return lhs, rhs


def _strip_common(lhs, rhs):
    """Cancel a common prefix and suffix: p x s = p y s  iff  x = y."""
    lhs, rhs = list(lhs), list(rhs)
    while lhs and rhs and lhs[0] == rhs[0]:
        lhs.pop(0)
        rhs.pop(0)
    while lhs and rhs and lhs[-1] == rhs[-1]:
        lhs.pop()
        rhs.pop()
    return tuple(lhs), tuple(rhs)


def relations_in_ab(P, model):
    """Rewrite each relation of P in the a/b generators, cancelled to its core."""
    ab = ab_table()
    out = []
    for lhs, rhs in P.relations:
        out.append(_strip_common(substitute(alphabeta_word(lhs, model), ab),
                                 substitute(alphabeta_word(rhs, model), ab)))
    return out


def match_ab_relations(rels):
    out = []
    for lhs, rhs in rels:
        out.append(next((i for i in range(1, 6) if {lhs, rhs} == set(ab_relation(i))), None))
    return out


def ab_presentation():
    """The groupoid on vertices 1..5 with arrows a_i, b_i : i -> i-2 and the a/b relations."""
    vertices = tuple(str(i) for i in range(1, 6))
    arrows = []
    for i in range(1, 6):
        arrows.append(Arrow(len(arrows) + 1, str(i), str(_m(i - 2)), "a%d" % i))
        arrows.append(Arrow(len(arrows) + 1, str(i), str(_m(i - 2)), "b%d" % i))
    Q = MutationQuiver(vertices, tuple(arrows))
    ids = {a.name: a.id for a in arrows}
    rels = []
    for i in range(1, 6):
        lhs, rhs = ab_relation(i)
        rels.append((PathWord(str(i), tuple(ids[g] for g, _ in lhs)),
                     PathWord(str(i), tuple(ids[g] for g, _ in rhs))))
    for l, r in rels:
        if l.end(Q) != r.end(Q):
            raise GroupoidError("a/b relation with mismatched endpoints")
    return Presentation(Q, rels)


def reduce_vertex_group(at="5"):
    """
    Vertex group of the a/b groupoid, Tietze-reduced and brought to the
    braid relator; returns the final GroupPresentation (with its log).
    """
    G = vertex_group(ab_presentation(), at)
    B = braid_form(tietze_eliminate(G))
    if B is None:
        raise GroupoidError("no braid form found")
    return B


def scripted_reduction(model):
    """
    The full script on a green presentation of the A2 model.  Returns a dict
    with each stage so that tests and demos can inspect it.
    """
    from .groupoid import green_presentation
    P = green_presentation(model)
    vertex, arrows = canonical_labels(model)
    rels_ab = relations_in_ab(P, model)
    final = reduce_vertex_group()
    return {
        "vertices": vertex,
        "alphabeta_relations": match_alphabeta_relations(P, model),
        "substitutions_inverse": substitutions_are_inverse(),
        "ab_relations": match_ab_relations(rels_ab),
        "vertex_group": final,
    }

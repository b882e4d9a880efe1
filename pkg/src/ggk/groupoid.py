"""
Mutation quivers, green paths and the green groupoid.

Paths are stored in traversal order: ``PathWord("A", (3, -1))`` first
crosses arrow 3 out of ``A`` and then arrow 1 backwards.  (Written as a
composition, right to left, this is ``x1^-1 x3``.)
"""

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .fan import (Arrangement, ChamberDecomposition, FanError, chambers_of_arrangement,
                  minimal_galleries, recognize_arrangement, side_of, verify_chamber_decomposition,
                  wall_dichotomy)
from .exact import dot
from .model import model_from_decomposition


class GroupoidError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    id: int
    source: str
    target: str
    label: str = None

    @property
    def name(self):
        return self.label or "x%d" % self.id


@dataclass(eq=False)
class MutationQuiver:
    vertices: tuple
    arrows: tuple

    def __post_init__(self):
        self._by_id = {a.id: a for a in self.arrows}
        self._out = {v: [] for v in self.vertices}
        for a in self.arrows:
            self._out[a.source].append(a)
        self._between = {(a.source, a.target): a for a in self.arrows}
        self._by_name = {a.name: a for a in self.arrows}

    def arrow(self, i):
        return self._by_id[abs(i)]

    def out(self, v):
        return self._out[v]

    def between(self, s, t):
        try:
            return self._between[(s, t)]
        except KeyError:
            raise GroupoidError("no arrow %s -> %s" % (s, t)) from None

    def by_name(self, name):
        try:
            return self._by_name[name]
        except KeyError:
            raise GroupoidError("unknown arrow %r" % name) from None

    def path(self, vertices):
        """Positive PathWord through the given vertex sequence."""
        vertices = list(vertices)
        return PathWord(vertices[0], tuple(self.between(a, b).id for a, b in zip(vertices, vertices[1:])))

    def to_dict(self):
        return {"vertices": list(self.vertices),
                "arrows": [{"id": a.name, "from": a.source, "to": a.target} for a in self.arrows]}


@dataclass(frozen=True)
class PathWord:
    base: str
    letters: tuple = ()

    def __len__(self):
        return len(self.letters)

    @property
    def positive(self):
        return all(x > 0 for x in self.letters)

    def vertices(self, Q):
        out = [self.base]
        for x in self.letters:
            a = Q.arrow(x)
            here = a.source if x > 0 else a.target
            if here != out[-1]:
                raise GroupoidError("letter %s is not composable at %s" % (format_letter(x), out[-1]))
            out.append(a.target if x > 0 else a.source)
        return out

    def end(self, Q):
        return self.vertices(Q)[-1]

    def reduced(self):
        out = []
        for x in self.letters:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
        return PathWord(self.base, tuple(out))

    def inverse(self, Q):
        return PathWord(self.end(Q), tuple(-x for x in reversed(self.letters)))

    def then(self, other):
        return PathWord(self.base, self.letters + other.letters)

    def format(self, Q=None):
        return " ".join(format_letter(x, Q) for x in self.letters) or "1_%s" % self.base

    def to_list(self, Q=None):
        return [format_letter(x, Q) for x in self.letters]


def format_letter(x, Q=None):
    name = Q.arrow(x).name if Q is not None else "x%d" % abs(x)
    return name if x > 0 else name + "^-1"


def parse_word(text, base, Q):
    """Parse ``"x1 x3^-1 x2"`` (traversal order) into a PathWord."""
    letters = []
    for tok in text.replace(",", " ").split():
        inv = tok.endswith("^-1")
        a = Q.by_name(tok[:-3] if inv else tok)
        letters.append(-a.id if inv else a.id)
    w = PathWord(base, tuple(letters))
    w.vertices(Q)
    return w


@dataclass
class Presentation:
    quiver: MutationQuiver
    relations: list

    def to_dict(self):
        Q = self.quiver
        return {"generators": [{"id": a.name, "from": a.source, "to": a.target}
                               for a in self.quiver.arrows],
                "relations": [[lhs.to_list(Q), rhs.to_list(Q)] for lhs, rhs in self.relations]}

    def to_text(self):
        lines = ["%s: %s -> %s" % (a.name, a.source, a.target) for a in self.quiver.arrows]
        lines += ["%s = %s" % (l.format(self.quiver), r.format(self.quiver)) for l, r in self.relations]
        return "\n".join(lines)


# -- quiver -------------------------------------------------------------------

def build_quiver(model):
    sizes = {len(s) for s in model.maximal_rigid.values()}
    if len(sizes) != 1:
        raise GroupoidError("maximal rigid sets have different cardinalities %s" % sorted(sizes))
    arrows = []
    for a, b in model.mutation_pairs():
        arrows.append(Arrow(len(arrows) + 1, a, b))
        arrows.append(Arrow(len(arrows) + 1, b, a))
    return MutationQuiver(tuple(model.maximal_rigid), tuple(arrows))


def _quiver(model):
    if "quiver" not in model._cache:
        model._cache["quiver"] = build_quiver(model)
    return model._cache["quiver"]


# -- green paths ----------------------------------------------------------------

def green_steps(model, source):
    """
    Arrows m -> n that are green seen from ``source``: the chamber of m lies
    in the positive half space of the wall m|n, oriented so that the
    source's chamber is positive.
    """
    key = ("green", source)
    if key not in model._cache:
        S = model.decomposition(source)
        Q = _quiver(model)
        steps = {v: [] for v in Q.vertices}
        for a in Q.arrows:
            w = S.wall_between(a.source, a.target)
            if w is None:
                raise GroupoidError("%s and %s are not adjacent in the fan" % (a.source, a.target))
            normal, _, _ = wall_dichotomy(S, w, source)
            if side_of(normal, S.chamber(a.source)) == 1:
                steps[a.source].append(a)
        model._cache[key] = steps
    return model._cache[key]


def is_green(mu, model):
    if not mu.positive:
        raise GroupoidError("green paths are positive")
    Q = _quiver(model)
    steps = green_steps(model, mu.base)
    for v, x in zip(mu.vertices(Q), mu.letters):
        if Q.arrow(x) not in steps[v]:
            return False
    return True


def green_paths(source, target, model):
    """Every green path from ``source`` to ``target``, sorted by arrow ids."""
    Q = _quiver(model)
    for v in (source, target):
        if v not in Q._out:
            raise GroupoidError("unknown vertex %r" % v)
    steps = green_steps(model, source)
    bound = len(Q.vertices)
    out = []

    def extend(v, letters):
        if v == target:
            out.append(PathWord(source, tuple(letters)))
            return
        if len(letters) + 1 >= bound:
            return
        for a in steps[v]:
            extend(a.target, letters + [a.id])

    extend(source, [])
    return sorted(out, key=lambda w: w.letters)


def green_presentation(model):
    Q = _quiver(model)
    relations = []
    for s in Q.vertices:
        for t in Q.vertices:
            if s == t:
                continue
            for p, q in combinations(green_paths(s, t, model), 2):
                relations.append((p, q))
    return Presentation(Q, relations)


@dataclass(frozen=True)
class EnterExit:
    enter: frozenset
    exit: frozenset


def enter_exit(mu, model):
    if not is_green(mu, model):
        raise GroupoidError("enter/exit need a green path")
    Q = _quiver(model)
    paths = [p for p in green_paths(mu.base, mu.end(Q), model) if p.letters]
    return EnterExit(frozenset(Q.arrow(p.letters[0]).target for p in paths),
                     frozenset(Q.arrow(p.letters[-1]).source for p in paths))


# -- normal form -------------------------------------------------------------

def is_hyper(model):
    """[hyper]: the fan seen from every maximal rigid is a hyperplane arrangement."""
    if "hyper" not in model._cache:
        refs = list(model.maximal_rigid) if model.exchange is not None else [model.reference]
        model._cache["hyper"] = all(
            recognize_arrangement(model.decomposition(r)).is_arrangement for r in refs)
    return model._cache["hyper"]


def least_green_path(source, target, model):
    paths = green_paths(source, target, model)
    if not paths:
        raise GroupoidError("no green path %s -> %s" % (source, target))
    return paths[0]


def normal_form(mu, model):
    """
    Deligne normal form of a positive path: a list of green segments with
    enter(segment i+1) contained in exit(segment i).

    Starting from single arrows, an arrow is slid from the front of a
    segment to the end of its predecessor whenever it enters the segment
    without exiting the predecessor.  Each segment is then replaced by the
    least green path between its endpoints.
    """
    if not is_hyper(model):
        raise GroupoidError("normal form requires [hyper]")
    if not mu.positive:
        raise GroupoidError("normal form needs a positive path")
    Q = _quiver(model)
    verts = mu.vertices(Q)
    # segments as vertex lists
    segs = [[a, b] for a, b in zip(verts, verts[1:])]
    changed = True
    while changed:
        changed = False
        for i in range(len(segs) - 1):
            g1, g2 = segs[i], segs[i + 1]
            ex = enter_exit(Q.path(g1), model).exit
            en = enter_exit(Q.path(g2), model).enter
            extra = sorted(en - ex)
            if not extra:
                continue
            n = extra[0]
            rest = least_green_path(n, g2[-1], model).vertices(Q)
            segs[i] = g1 + [n]
            if len(rest) > 1:
                segs[i + 1] = rest
            else:
                del segs[i + 1]
            changed = True
            break
    return [least_green_path(s[0], s[-1], model) for s in segs]


def normal_form_ok(segments, model):
    """Check enter(next) <= exit(previous) for each consecutive pair."""
    for g1, g2 in zip(segments, segments[1:]):
        if not enter_exit(g2, model).enter <= enter_exit(g1, model).exit:
            return False
    return True


# -- vertex groups and Tietze moves --------------------------------------------

@dataclass
class GroupPresentation:
    """Generators are strings, relators cyclic words of ``(generator, +-1)`` letters."""

    generators: list
    relators: list
    log: list = field(default_factory=list)
    loops: dict = field(default_factory=dict, repr=False)

    def to_dict(self):
        return {"generators": list(self.generators),
                "relators": [format_group_word(r) for r in self.relators]}

    def to_text(self):
        return "< %s | %s >" % (", ".join(self.generators),
                                ", ".join(format_group_word(r) or "1" for r in self.relators))

    def relation_matrix(self):
        return [[sum(e for g, e in r if g == x) for x in self.generators] for r in self.relators]


def format_group_word(w):
    return " ".join(g if e > 0 else g + "^-1" for g, e in w)


def free_reduce(w):
    out = []
    for x in w:
        if out and out[-1][0] == x[0] and out[-1][1] == -x[1]:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(w):
    w = list(free_reduce(w))
    while len(w) > 1 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
        w = w[1:-1]
    return tuple(w)


def invert(w):
    return tuple((g, -e) for g, e in reversed(w))


def vertex_group(P, v):
    """
    Vertex group of a presented groupoid at ``v``: a BFS spanning tree is
    contracted and the non-tree arrows become generators.
    """
    Q = P.quiver
    if v not in Q._out:
        raise GroupoidError("unknown vertex %r" % v)
    adj = {u: [] for u in Q.vertices}
    for a in Q.arrows:
        adj[a.source].append((a.target, a.id))
        adj[a.target].append((a.source, -a.id))
    tree = {v: ()}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w, x in sorted(adj[u], key=lambda p: (str(p[0]), abs(p[1]), p[1] < 0)):
            if w not in tree:
                tree[w] = tree[u] + (x,)
                queue.append(w)
    if len(tree) != len(Q.vertices):
        comps, seen = [], set()
        for start in Q.vertices:
            if start in seen:
                continue
            comp, stack = [], [start]
            seen.add(start)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w, _ in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp))
        raise GroupoidError("quiver is disconnected; components %r" % comps)
    tree_ids = {abs(x) for path in tree.values() for x in path[-1:]}
    gens = [a for a in Q.arrows if a.id not in tree_ids]

    def loop(x):
        a = Q.arrow(x)
        return () if a.id in tree_ids else ((a.name, 1 if x > 0 else -1),)

    def rewrite(word):
        out = []
        for x in word.letters:
            out.extend(loop(x))
        return out

    relators = []
    for lhs, rhs in P.relations:
        r = cyclic_reduce(tuple(rewrite(lhs)) + invert(tuple(rewrite(rhs))))
        relators.append(r)
    loops = {}
    for a in gens:
        back = tuple(-x for x in reversed(tree[a.target]))
        loops[a.name] = PathWord(v, tree[a.source] + (a.id,) + back)
    return GroupPresentation([a.name for a in gens], relators,
                             ["spanning tree at %s: %s" % (v, ", ".join(
                                 sorted(Q.arrow(x).name for x in tree_ids)))], loops)


def _substitute(w, gen, replacement):
    out = []
    for g, e in w:
        if g == gen:
            out.extend(replacement if e > 0 else invert(replacement))
        else:
            out.append((g, e))
    return cyclic_reduce(tuple(out))


def _canonical_cyclic(w):
    """Least rotation of w or its inverse, so conjugate relators compare equal."""
    if not w:
        return w
    cands = []
    for u in (w, invert(w)):
        cands += [u[i:] + u[:i] for i in range(len(u))]
    return min(cands)


def tietze_eliminate(G):
    """
    Repeatedly drop trivial or duplicate relators and eliminate a generator
    that occurs exactly once in some relator.
    """
    gens = list(G.generators)
    rels = [cyclic_reduce(r) for r in G.relators]
    log = list(G.log)
    while True:
        seen, kept = set(), []
        for r in rels:
            c = _canonical_cyclic(r)
            if c and c not in seen:
                seen.add(c)
                kept.append(r)
        rels = kept
        best = None
        for k, r in enumerate(rels):
            for g in gens:
                occ = [i for i, (h, _) in enumerate(r) if h == g]
                if len(occ) == 1:
                    cand = (len(r), g, k, occ[0])
                    if best is None or cand < best:
                        best = cand
        if best is None:
            break
        _, g, k, i = best
        r = rels[k]
        rot = r[i:] + r[:i]
        # rot = g^e . rest  =>  g = rest^-1 (e = 1) or g = rest (e = -1)
        rest = rot[1:]
        value = invert(rest) if rot[0][1] > 0 else rest
        log.append("%s := %s" % (g, format_group_word(free_reduce(value)) or "1"))
        gens.remove(g)
        rels = [_substitute(s, g, value) for j, s in enumerate(rels) if j != k]
    return GroupPresentation(gens, rels, log, {g: w for g, w in G.loops.items() if g in gens})


def is_braid_relator(r, gens=None):
    """Is the cyclic word r of the form x y x y^-1 x^-1 y^-1 up to symmetry?"""
    r = cyclic_reduce(r)
    names = sorted({g for g, _ in r})
    if len(names) != 2 or len(r) != 6:
        return False
    x, y = names
    target = None
    for a, b in ((x, y), (y, x)):
        for ea in (1, -1):
            for eb in (1, -1):
                braid = ((a, ea), (b, eb), (a, ea), (b, -eb), (a, -ea), (b, -eb))
                if _canonical_cyclic(braid) == _canonical_cyclic(r):
                    target = True
    return bool(target)


def _nielsen_moves(gens):
    a, b = gens
    moves = []
    for g, h in ((a, b), (b, a)):
        for eh in (1, -1):
            moves.append(("%s -> %s %s" % (g, g, format_group_word(((h, eh),))), g, ((g, 1), (h, eh))))
            moves.append(("%s -> %s %s" % (g, format_group_word(((h, eh),)), g), g, ((h, eh), (g, 1))))
    return moves


def braid_form(G, max_length=10, max_states=200000):
    """
    Bring a two-generator one-relator presentation to the braid relator by
    a breadth-first search over Nielsen moves; returns the new presentation
    with the moves in its log, or None.
    """
    if len(G.generators) != 2 or len(G.relators) != 1:
        return None
    start = cyclic_reduce(G.relators[0])
    if is_braid_relator(start):
        return GroupPresentation(list(G.generators), [start], list(G.log), dict(G.loops))
    moves = _nielsen_moves(G.generators)
    cap = max(max_length, len(start))
    seen = {_canonical_cyclic(start)}
    queue = deque([(start, [])])
    while queue and len(seen) < max_states:
        r, path = queue.popleft()
        for text, g, value in moves:
            s = _substitute(r, g, value)
            if len(s) > cap:
                continue
            c = _canonical_cyclic(s)
            if c in seen:
                continue
            seen.add(c)
            if is_braid_relator(s):
                return GroupPresentation(list(G.generators), [s], list(G.log) + path + [text])
            queue.append((s, path + [text]))
    return None


def reduce_to_braid(G):
    """Tietze elimination followed by the Nielsen search; None if no braid form is found."""
    return braid_form(tietze_eliminate(G))


# -- bounded word problem -----------------------------------------------------

def _relator_loops(P):
    """Every relation as closed loops (lhs then rhs backwards), both orientations, all rotations."""
    Q = P.quiver
    loops = set()
    for lhs, rhs in P.relations:
        loop = lhs.then(rhs.inverse(Q)).reduced()
        for w in (loop, loop.inverse(Q)):
            verts = w.vertices(Q)
            for i in range(len(w)):
                loops.add(PathWord(verts[i], w.letters[i:] + w.letters[:i]))
    return sorted(loops, key=lambda w: (w.base, w.letters))


def words_equal_bounded(w1, w2, P, depth):
    """
    Semi-decide w1 = w2 in the presented groupoid by breadth-first rewriting:
    a subword u is replaced by v^-1 whenever u v is a rotated relator (u may
    be empty, which inserts a relator), followed by free reduction.  Words
    longer than ``depth`` are not explored.
    """
    Q = P.quiver
    if w1.base != w2.base or w1.end(Q) != w2.end(Q):
        raise GroupoidError("words have different endpoints")
    goal = w2.reduced().letters
    start = w1.reduced()
    if start.letters == goal:
        return "equal"
    loops = _relator_loops(P)
    seen = {start.letters}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            verts = w.vertices(Q)
            L = w.letters
            for pos in range(len(L) + 1):
                for loop in loops:
                    if loop.base != verts[pos]:
                        continue
                    R = loop.letters
                    for k in range(len(R) + 1):
                        u, v = R[:k], R[k:]
                        if L[pos:pos + k] != u:
                            continue
                        new = L[:pos] + tuple(-x for x in reversed(v)) + L[pos + k:]
                        cand = PathWord(w.base, new).reduced()
                        if len(cand) > depth or cand.letters in seen:
                            continue
                        if cand.letters == goal:
                            return "equal"
                        seen.add(cand.letters)
                        nxt.append(cand)
        frontier = nxt
    return "distinct-up-to-depth"


# -- arrangements ---------------------------------------------------------------

def _sign_label(A, C):
    inside = [sum(g[i] for g in C.generators) for i in range(A.dim)]
    return "".join("+" if dot(n, inside) > 0 else "-" for n in A.normals)


def arrangement_decomposition(A):
    cones = chambers_of_arrangement(A)
    labels = [_sign_label(A, C) for C in cones]
    order = sorted(range(len(cones)), key=lambda i: labels[i])
    return ChamberDecomposition(A.dim, tuple(cones[i] for i in order), tuple(labels[i] for i in order))


def arrangement_model(A):
    """FanModel of a simplicial arrangement; the all-plus chamber is the reference."""
    S = arrangement_decomposition(A)
    report = verify_chamber_decomposition(S)
    if not report.ok:
        raise FanError("arrangement chambers do not form a fan: %r" % report.witnesses[:3])
    return model_from_decomposition(S, S.labels[0], name="arrangement")


def deligne_groupoid(A, model=None):
    """Chambers with doubled arrows; relations equate minimal galleries with equal endpoints."""
    if model is None:
        model = arrangement_model(A)
    S = model.decomposition()
    Q = _quiver(model)
    relations = []
    for s in Q.vertices:
        for t in Q.vertices:
            if s == t:
                continue
            galleries = minimal_galleries(S, s, t, arrangement=A)
            for p, q in combinations([Q.path(g) for g in galleries], 2):
                relations.append((p, q))
    return Presentation(Q, relations)


def lines_arrangement(normals):
    return Arrangement(len(normals[0]), tuple(tuple(n) for n in normals))


def orbit_quotient(P, arrow_type):
    """
    Collapse a presented groupoid to a group by sending every arrow to its
    type, e.g. the reflection type of its wall; ``arrow_type`` maps arrow
    ids to generator names.
    """
    gens = sorted(set(arrow_type.values()))
    rels = []
    for lhs, rhs in P.relations:
        l = tuple((arrow_type[abs(x)], 1 if x > 0 else -1) for x in lhs.letters)
        r = tuple((arrow_type[abs(x)], 1 if x > 0 else -1) for x in rhs.letters)
        rels.append(cyclic_reduce(l + invert(r)))
    return GroupPresentation(gens, rels, ["quotient by arrow types"])


def dihedral_wall_types(model):
    """
    For a dihedral model with rays r0, r1, ... in angular order, the wall
    through r_j has type s for even j and t for odd j.
    """
    Q = _quiver(model)
    out = {}
    for a in Q.arrows:
        (ray,) = set(model.maximal_rigid[a.source]) & set(model.maximal_rigid[a.target])
        out[a.id] = "s" if int(ray[1:]) % 2 == 0 else "t"
    return out


def loop_word(G, word):
    """The loop in the groupoid represented by a word in the vertex-group generators."""
    letters = []
    base = None
    for g, e in word:
        w = G.loops[g]
        base = w.base
        letters.extend(w.letters if e > 0 else tuple(-x for x in reversed(w.letters)))
    return PathWord(base, tuple(letters)).reduced()

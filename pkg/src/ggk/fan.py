"""
Simplicial cones and chamber decompositions of R^d.

Cones are stored by primitive integer generators, so two cones are equal
exactly when their generator sets agree.  Every predicate is decided in
exact arithmetic.
"""

from collections import Counter, deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations

from .exact import (InconsistentSystem, LinearAlgebraError, UnderdeterminedSystem,
                    dot, nullspace, primitive, primitive_rational, rank, solve_linear,
                    transpose)
from .report import Report


class Membership(str, Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


class FanError(ValueError):
    pass


class StraddleError(FanError):
    """The reference chamber has generators strictly on both sides of a wall."""


def canonical_normal(v):
    """Primitive vector with its first nonzero entry positive."""
    v = primitive(v)
    first = next(x for x in v if x)
    return v if first > 0 else tuple(-x for x in v)


@dataclass(frozen=True)
class SimplicialCone:
    generators: tuple
    dim: int

    def __post_init__(self):
        gens = tuple(sorted({primitive(g) for g in self.generators}))
        if len(gens) != len(self.generators):
            raise FanError("repeated generator in %r" % (self.generators,))
        if any(len(g) != self.dim for g in gens):
            raise FanError("generator of wrong length for ambient dimension %d" % self.dim)
        if gens and rank(gens) != len(gens):
            raise FanError("generators are linearly dependent: %r" % (gens,))
        object.__setattr__(self, "generators", gens)

    @classmethod
    def of(cls, *rays):
        return cls(tuple(tuple(r) for r in rays), len(rays[0]))

    @property
    def rank(self):
        return len(self.generators)

    @property
    def is_full(self):
        return self.rank == self.dim

    def face(self, subset):
        return SimplicialCone(tuple(subset), self.dim)

    def facets(self):
        """Codimension-one faces, as ``(omitted generator, face)`` pairs."""
        return [(g, self.face([h for h in self.generators if h != g])) for g in self.generators]

    def inner_normals(self):
        """One normal per facet, oriented so that the cone is on the nonnegative side."""
        if not self.is_full:
            raise FanError("inner normals need a full-dimensional cone")
        out = []
        for g, F in self.facets():
            n = facet_normal(F)
            out.append(n if dot(n, g) > 0 else tuple(-x for x in n))
        return out

    def coefficients(self, x):
        M = transpose(self.generators)
        return solve_linear(M, x)

    def contains(self, x):
        return cone_contains(self, x)


def facet_normal(F):
    """Canonical primitive normal of the hyperplane spanned by a codimension-one cone."""
    if F.rank != F.dim - 1:
        raise FanError("not a codimension-one cone")
    if F.dim == 1:
        return (1,)
    (n,) = nullspace(F.generators, F.dim)
    return canonical_normal(n)


def cone_contains(C, x):
    if len(x) != C.dim:
        raise FanError("dimension mismatch: point has %d entries, cone lives in R^%d"
                       % (len(x), C.dim))
    if not C.generators:
        return Membership.BOUNDARY if not any(x) else Membership.OUTSIDE
    try:
        a = C.coefficients(x)
    except InconsistentSystem:
        return Membership.OUTSIDE
    if any(c < 0 for c in a):
        return Membership.OUTSIDE
    if C.is_full and all(c > 0 for c in a):
        return Membership.INTERIOR
    return Membership.BOUNDARY


def strictly_feasible(rows):
    """
    Decide whether some x satisfies ``r . x > 0`` for every row r.

    Fourier-Motzkin elimination on the homogeneous strict system; exact.
    """
    rows = {canonical_scale(r) for r in rows}
    if not rows:
        return True
    n = len(next(iter(rows)))
    for k in range(n):
        if any(not any(r) for r in rows):
            return False
        pos = [r for r in rows if r[k] > 0]
        neg = [r for r in rows if r[k] < 0]
        new = {r for r in rows if r[k] == 0}
        for p in pos:
            for q in neg:
                new.add(canonical_scale(tuple(-q[k] * a + p[k] * b for a, b in zip(p, q))))
        rows = new
    return not rows


def canonical_scale(r):
    """Positive rescaling of a row to a primitive integer vector (zero rows kept)."""
    if not any(r):
        return tuple(0 for _ in r)
    return primitive_rational(r)


def interiors_meet(C1, C2):
    return strictly_feasible(C1.inner_normals() + C2.inner_normals())


def meet_in_common_face(C1, C2):
    """
    Whether two simplicial cones intersect exactly in the cone on their
    shared generators: some linear form vanishes on the shared rays and is
    positive on the rest of C1, negative on the rest of C2.
    """
    common = sorted(set(C1.generators) & set(C2.generators))
    N = nullspace(common, C1.dim) if common else nullspace([], C1.dim)
    rows = [tuple(dot(b, g) for b in N) for g in C1.generators if g not in common]
    rows += [tuple(-dot(b, g) for b in N) for g in C2.generators if g not in common]
    if not rows:
        return True
    if not N:
        return False
    return strictly_feasible(rows)


@dataclass(frozen=True)
class Wall:
    normal: tuple
    face: SimplicialCone
    sides: tuple = (None, None)


def shared_facet(C1, C2, sides=(None, None)):
    """
    The wall between two neighbouring full-dimensional cones, or None.

    Neighbours share exactly d-1 generators and lie on opposite sides of
    the hyperplane those generators span.
    """
    if C1.dim != C2.dim:
        raise FanError("cones live in different ambient spaces")
    if not (C1.is_full and C2.is_full):
        raise FanError("shared_facet needs full-dimensional cones")
    common = set(C1.generators) & set(C2.generators)
    if len(common) != C1.dim - 1:
        return None
    F = C1.face(sorted(common))
    n = facet_normal(F)
    (g1,) = set(C1.generators) - common
    (g2,) = set(C2.generators) - common
    if dot(n, g1) * dot(n, g2) >= 0:
        return None
    return Wall(n, F, tuple(sides))


@dataclass(frozen=True)
class ChamberDecomposition:
    ambient_dim: int
    chambers: tuple
    labels: tuple

    def __post_init__(self):
        if len(self.chambers) != len(self.labels):
            raise FanError("one label per chamber required")
        if len(set(self.labels)) != len(self.labels):
            raise FanError("chamber labels must be distinct")

    @classmethod
    def from_rays(cls, labelled_rays, dim=None):
        items = list(labelled_rays.items()) if isinstance(labelled_rays, dict) else list(labelled_rays)
        if dim is None:
            dim = len(items[0][1][0])
        chambers = tuple(SimplicialCone(tuple(tuple(r) for r in rays), dim) for _, rays in items)
        return cls(dim, chambers, tuple(label for label, _ in items))

    def chamber(self, label):
        try:
            return self.chambers[self.labels.index(label)]
        except ValueError:
            raise KeyError(label) from None

    def rays(self):
        return sorted({g for C in self.chambers for g in C.generators})

    def facet_owners(self):
        owners = {}
        for label, C in zip(self.labels, self.chambers):
            for _, F in C.facets():
                owners.setdefault(F.generators, []).append(label)
        return owners

    def walls(self):
        out = []
        for gens, owners in sorted(self.facet_owners().items()):
            if len(owners) == 2:
                a, b = owners
                w = shared_facet(self.chamber(a), self.chamber(b), (a, b))
                if w is not None:
                    out.append(w)
        return out

    def wall_between(self, a, b):
        return shared_facet(self.chamber(a), self.chamber(b), (a, b))

    def neighbours(self):
        graph = {label: [] for label in self.labels}
        for w in self.walls():
            a, b = w.sides
            graph[a].append(b)
            graph[b].append(a)
        return {k: sorted(v, key=str) for k, v in graph.items()}

    def bouquet(self, eta):
        return [label for label, C in zip(self.labels, self.chambers) if tuple(eta) in C.generators]


def _angle_cmp(u, v):
    def half(w):
        return 0 if (w[1] > 0 or (w[1] == 0 and w[0] > 0)) else 1
    if half(u) != half(v):
        return half(u) - half(v)
    cross = u[0] * v[1] - u[1] * v[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def angular_order(rays):
    return sorted(rays, key=cmp_to_key(_angle_cmp))


def _components(graph):
    seen, comps = set(), []
    for start in graph:
        if start in seen:
            continue
        comp, queue = [], deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w in graph[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        comps.append(sorted(comp, key=str))
    return comps


def verify_chamber_decomposition(S, check_disjoint=True):
    """
    Check that S is a chamber decomposition of R^d; violations go in the report.

    Interiors are compared pairwise by Fourier-Motzkin.  Covering is
    checked by angular closure in dimension 2 and by facet matching plus
    connectivity of the dual graph otherwise.
    """
    d = S.ambient_dim
    bad = []
    for label, C in zip(S.labels, S.chambers):
        if not C.is_full:
            bad.append({"kind": "not full-dimensional", "chamber": label})
    if bad:
        return Report("chamber-decomposition", bad)

    if check_disjoint:
        for (a, C1), (b, C2) in combinations(zip(S.labels, S.chambers), 2):
            if interiors_meet(C1, C2):
                bad.append({"kind": "overlapping interiors", "chambers": [a, b]})

    for gens, owners in sorted(S.facet_owners().items()):
        if len(owners) == 1:
            bad.append({"kind": "unmatched facet", "chamber": owners[0], "facet": [list(g) for g in gens]})
        elif len(owners) > 2:
            bad.append({"kind": "facet shared by more than two chambers", "chambers": owners,
                        "facet": [list(g) for g in gens]})
        elif shared_facet(S.chamber(owners[0]), S.chamber(owners[1])) is None:
            bad.append({"kind": "chambers on the same side of a shared facet", "chambers": owners})

    if d == 1:
        if sorted(C.generators for C in S.chambers) != [((-1,),), ((1,),)]:
            bad.append({"kind": "uncovered", "detail": "R^1 needs exactly the two half-lines"})
    elif d == 2:
        rays = angular_order(S.rays())
        present = {C.generators for C in S.chambers}
        for i, r in enumerate(rays):
            s = rays[(i + 1) % len(rays)]
            cross = r[0] * s[1] - r[1] * s[0]
            if cross <= 0 or tuple(sorted((r, s))) not in present:
                bad.append({"kind": "uncovered", "sector": [list(r), list(s)]})
    else:
        comps = _components(S.neighbours())
        if len(comps) > 1:
            bad.append({"kind": "disconnected dual graph", "components": comps})
    return Report("chamber-decomposition", bad)


def wall_dichotomy(S, w, positive_ref):
    """
    Orient a wall so that the reference chamber lies in its positive half space.

    Returns ``(normal, positive_side, negative_side)`` where ``normal`` pairs
    nonnegatively with the reference chamber.
    """
    ref = S.chamber(positive_ref) if isinstance(positive_ref, str) else positive_ref
    signs = {(dot(w.normal, g) > 0) - (dot(w.normal, g) < 0) for g in ref.generators}
    if {1, -1} <= signs or signs <= {0}:
        raise StraddleError("reference straddles wall %r" % (w.normal,))
    normal = w.normal if 1 in signs else tuple(-x for x in w.normal)
    a, b = w.sides
    if a is None:
        return normal, None, None
    (g,) = set(S.chamber(a).generators) - set(w.face.generators)
    return (normal, a, b) if dot(normal, g) > 0 else (normal, b, a)


def side_of(normal, C):
    """+1 if C lies in {normal . x >= 0}, -1 if in {<= 0}, 0 if it straddles."""
    vals = [dot(normal, g) for g in C.generators]
    if all(v >= 0 for v in vals):
        return 1
    if all(v <= 0 for v in vals):
        return -1
    return 0


@dataclass(frozen=True)
class Arrangement:
    dim: int
    normals: tuple

    def __post_init__(self):
        object.__setattr__(self, "normals", tuple(sorted({canonical_normal(n) for n in self.normals})))

    def __len__(self):
        return len(self.normals)


@dataclass
class Recognition:
    is_arrangement: bool
    arrangement: Arrangement = None
    witness: dict = field(default_factory=dict)


def hyperplane_coordinates(normal):
    """An integer basis of the hyperplane ``normal . x = 0``."""
    return nullspace([normal], len(normal))


def project_to_hyperplane(basis, v):
    return primitive_rational(solve_linear(transpose(basis), v))


def _facets_by_hyperplane(S):
    out = {}
    for gens in S.facet_owners():
        F = SimplicialCone(gens, S.ambient_dim)
        out.setdefault(facet_normal(F), []).append(F)
    return out


def hyperplane_is_union_of_faces(S, normal, facets=None):
    """Global test: the facets of S lying in the hyperplane form a complete fan of it."""
    if facets is None:
        facets = _facets_by_hyperplane(S).get(canonical_normal(normal), [])
    basis = hyperplane_coordinates(normal)
    sub = ChamberDecomposition(
        S.ambient_dim - 1,
        tuple(SimplicialCone(tuple(project_to_hyperplane(basis, g) for g in F.generators),
                             S.ambient_dim - 1) for F in facets),
        tuple(range(len(facets))))
    return verify_chamber_decomposition(sub, check_disjoint=False)


def bouquet_violations(S):
    """
    Local test at every extremal ray eta and every facet F through eta:
    the facets of S in span(F) that contain eta must close up around eta.
    """
    by_normal = {}
    for gens in S.facet_owners():
        F = SimplicialCone(gens, S.ambient_dim)
        by_normal.setdefault(facet_normal(F), []).append(F)
    out = []
    for normal, facets in sorted(by_normal.items()):
        for eta in sorted({g for F in facets for g in F.generators}):
            around = [F for F in facets if eta in F.generators]
            ridges = Counter()
            for F in around:
                for g in F.generators:
                    if g != eta:
                        ridges[tuple(sorted(set(F.generators) - {g}))] += 1
            loose = sorted(r for r, c in ridges.items() if c != 2)
            if loose:
                out.append({"ray": list(eta), "hyperplane": list(normal),
                            "ridge": [list(g) for g in loose[0]]})
    return out


def recognize_arrangement(S):
    """
    Decide whether the chambers of S are exactly those of a central hyperplane
    arrangement; on failure the witness names the offending ray or hyperplane.
    """
    report = verify_chamber_decomposition(S)
    if not report.ok:
        raise FanError("verify first: %r" % report.witnesses[:3])
    d = S.ambient_dim
    by_normal = _facets_by_hyperplane(S)
    hyperplanes = Arrangement(d, tuple(by_normal))
    if d == 1:
        return Recognition(True, hyperplanes)
    if d == 2:
        rays = set(S.rays())
        for eta in sorted(rays):
            neg = tuple(-x for x in eta)
            if neg not in rays:
                return Recognition(False, None, {"ray": list(eta), "missing_opposite": list(neg)})
        return Recognition(True, hyperplanes)
    if d == 3:
        for normal, facets in sorted(by_normal.items()):
            sub = hyperplane_is_union_of_faces(S, normal, facets)
            if not sub.ok:
                return Recognition(False, None, {"hyperplane": list(normal),
                                                 "violation": sub.witnesses[0]})
        return Recognition(True, hyperplanes)
    bad = bouquet_violations(S)
    if bad:
        return Recognition(False, None, bad[0])
    return Recognition(True, hyperplanes)


def minimal_galleries(S, start, end, arrangement=None):
    """
    All shortest galleries from ``start`` to ``end``, in lexicographic order.

    If ``arrangement`` is given, each gallery is checked to cross pairwise
    distinct hyperplanes.
    """
    graph = S.neighbours()
    for label in (start, end):
        if label not in graph:
            raise KeyError(label)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in graph[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    if end not in dist:
        raise FanError("dual graph is disconnected: %r unreachable from %r" % (end, start))
    out = []

    def extend(path):
        v = path[-1]
        if v == end:
            out.append(tuple(path))
            return
        for w in graph[v]:
            if dist.get(w) == dist[v] + 1 and dist[w] <= dist[end]:
                extend(path + [w])

    extend([start])
    out.sort(key=lambda p: [str(x) for x in p])
    if arrangement is not None:
        for p in out:
            crossed = [S.wall_between(a, b).normal for a, b in zip(p, p[1:])]
            if len(set(crossed)) != len(crossed):
                raise FanError("minimal gallery %r recrosses a hyperplane" % (p,))
    return out


def ray_reduction(S, eta):
    """
    Project the bouquet of an extremal ray along the ray's line.

    The projection drops a coordinate where eta has entry +-1 when there is
    one, so a standard basis vector is simply deleted.
    """
    eta = primitive(eta)
    if eta not in S.rays():
        raise FanError("%r is not an extremal ray" % (eta,))
    k = next((i for i, x in enumerate(eta) if abs(x) == 1), None)
    if k is None:
        k = next(i for i, x in enumerate(eta) if x)

    def project(v):
        t = Fraction(v[k], eta[k])
        w = [Fraction(a) - t * b for a, b in zip(v, eta)]
        del w[k]
        return primitive_rational(w)

    labels = S.bouquet(eta)
    chambers = tuple(
        SimplicialCone(tuple(project(g) for g in S.chamber(label).generators if g != eta),
                       S.ambient_dim - 1)
        for label in labels)
    return ChamberDecomposition(S.ambient_dim - 1, chambers, tuple(labels))


def chambers_of_arrangement(A):
    """
    Enumerate the chambers of a central arrangement as simplicial cones.

    Raises FanError (with the offending region) if some chamber is not a
    simplicial cone.
    """
    d = A.dim
    regions = [()]
    for n in A.normals:
        nxt = []
        for signs in regions:
            for s in (1, -1):
                cand = signs + (s,)
                rows = [tuple(si * x for x in m) for si, m in zip(cand, A.normals)]
                if strictly_feasible(rows):
                    nxt.append(cand)
        regions = nxt
    cones = []
    for signs in regions:
        rows = [tuple(si * x for x in m) for si, m in zip(signs, A.normals)]
        rays = set()
        for sub in combinations(rows, d - 1):
            try:
                ker = nullspace(sub, d) if sub else [tuple(int(i == j) for j in range(d)) for i in range(d)]
            except LinearAlgebraError:
                continue
            if len(ker) != 1:
                continue
            for v in (ker[0], tuple(-x for x in ker[0])):
                if all(dot(r, v) >= 0 for r in rows):
                    rays.add(primitive(v))
        if len(rays) != d or rank(sorted(rays)) != d:
            raise FanError("arrangement is not simplicial: chamber with sign vector %r has rays %r"
                           % (signs, sorted(rays)))
        cones.append(SimplicialCone(tuple(sorted(rays)), d))
    return cones

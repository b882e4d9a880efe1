import pytest

from ggk.exact import dot
from ggk.fan import (Arrangement, ChamberDecomposition, FanError, Membership, SimplicialCone,
                     StraddleError, Wall, chambers_of_arrangement, cone_contains, interiors_meet,
                     minimal_galleries, ray_reduction, recognize_arrangement, shared_facet,
                     verify_chamber_decomposition, wall_dichotomy)

A2_RAYS = {"13+14": [(1, 0), (0, 1)], "14+24": [(0, 1), (-1, 1)], "24+25": [(-1, 1), (-1, 0)],
           "25+35": [(-1, 0), (0, -1)], "13+35": [(0, -1), (1, 0)]}


@pytest.fixture
def fig():
    return ChamberDecomposition.from_rays(A2_RAYS)


def test_cone_contains():
    C = SimplicialCone.of((1, 0), (0, 1))
    assert cone_contains(C, (1, 1)) == Membership.INTERIOR
    assert cone_contains(C, (1, 0)) == Membership.BOUNDARY
    assert cone_contains(SimplicialCone.of((-1, 1), (-1, 0)), (1, 0)) == Membership.OUTSIDE
    assert cone_contains(SimplicialCone(((1, 0, 0),), 3), (0, 1, 0)) == Membership.OUTSIDE
    with pytest.raises(FanError):
        cone_contains(C, (1, 0, 0))


def test_cone_rejects_dependent_generators():
    with pytest.raises(FanError):
        SimplicialCone.of((1, 0), (2, 0))
    with pytest.raises(FanError):
        SimplicialCone.of((1, 1, 0), (0, 1, 1), (1, 2, 1))


def test_shared_facet(fig):
    w = shared_facet(fig.chamber("13+14"), fig.chamber("14+24"))
    assert w.face.generators == ((0, 1),)
    assert w.normal == (1, 0)
    assert shared_facet(fig.chamber("13+14"), fig.chamber("24+25")) is None
    assert shared_facet(fig.chamber("13+14"), fig.chamber("13+14")) is None


def test_shared_facet_symmetric(fig):
    for a in fig.chambers:
        for b in fig.chambers:
            w1, w2 = shared_facet(a, b), shared_facet(b, a)
            assert (w1 is None) == (w2 is None)
            if w1:
                assert w1.face == w2.face and w1.normal == w2.normal


def test_verify_figure(fig):
    assert verify_chamber_decomposition(fig).ok


def test_verify_detects_missing_chamber():
    rays = dict(A2_RAYS)
    del rays["24+25"]
    report = verify_chamber_decomposition(ChamberDecomposition.from_rays(rays))
    kinds = {w["kind"] for w in report.witnesses}
    assert "unmatched facet" in kinds and "uncovered" in kinds


def test_verify_detects_overlap():
    S = ChamberDecomposition.from_rays({"a": [(1, 0), (0, 1)], "b": [(1, 1), (-1, 0)],
                                       "c": [(-1, 0), (0, -1)], "d": [(0, -1), (1, 0)]})
    assert "overlapping interiors" in {w["kind"] for w in verify_chamber_decomposition(S).witnesses}


def test_verify_detects_lower_dimensional_cone():
    S = ChamberDecomposition(2, (SimplicialCone(((1, 0),), 2),), ("a",))
    assert verify_chamber_decomposition(S).witnesses[0]["kind"] == "not full-dimensional"


def test_verify_three_dimensional_orthants():
    signs = [(a, b, c) for a in (1, -1) for b in (1, -1) for c in (1, -1)]
    S = ChamberDecomposition.from_rays(
        {str(s): [(s[0], 0, 0), (0, s[1], 0), (0, 0, s[2])] for s in signs})
    assert verify_chamber_decomposition(S).ok
    half = ChamberDecomposition(3, S.chambers[:4], S.labels[:4])
    assert not verify_chamber_decomposition(half).ok


def test_wall_dichotomy(fig):
    w = fig.wall_between("13+14", "14+24")
    normal, pos, neg = wall_dichotomy(fig, w, "13+14")
    assert normal == (1, 0) and pos == "13+14" and neg == "14+24"
    w = fig.wall_between("14+24", "24+25")
    normal, pos, neg = wall_dichotomy(fig, w, "13+14")
    assert normal == (1, 1) and pos == "14+24"


def test_wall_dichotomy_straddle():
    S = ChamberDecomposition.from_rays({"a": [(1, 0), (0, 1)], "b": [(0, 1), (-1, 0)]})
    w = Wall((1, -1), SimplicialCone(((1, 1),), 2), ("a", "b"))
    with pytest.raises(StraddleError):
        wall_dichotomy(S, w, "a")


def test_wall_dichotomy_never_straddles_on_polygon_fans(a2, a3):
    # every wall of the fan seen from l is sign-coherent on that fan's positive chamber
    for model in (a2, a3):
        for ref in model.maximal_rigid:
            S = model.decomposition(ref)
            assert S.chamber(ref).generators == tuple(sorted(
                tuple(int(i == j) for j in range(model.dim)) for i in range(model.dim)))
            for w in S.walls():
                wall_dichotomy(S, w, ref)


def test_wall_hyperplane_can_cut_other_chambers(fig):
    # the line x + y = 0 through index(24) cuts the chamber of 13+35
    w = fig.wall_between("14+24", "24+25")
    with pytest.raises(StraddleError):
        wall_dichotomy(fig, w, "13+35")


def test_recognize_a2(fig):
    rec = recognize_arrangement(fig)
    assert not rec.is_arrangement
    assert rec.witness == {"ray": [-1, 1], "missing_opposite": [1, -1]}


def test_recognize_square():
    S = ChamberDecomposition.from_rays({"a": [(1, 0), (0, 1)], "b": [(0, 1), (-1, 0)],
                                       "c": [(-1, 0), (0, -1)], "d": [(0, -1), (1, 0)]})
    rec = recognize_arrangement(S)
    assert rec.is_arrangement and len(rec.arrangement) == 2


def test_recognize_requires_verified():
    S = ChamberDecomposition.from_rays({"a": [(1, 0), (0, 1)]})
    with pytest.raises(FanError, match="verify first"):
        recognize_arrangement(S)


def test_recognize_three_dimensional(a3):
    assert not recognize_arrangement(a3.decomposition()).is_arrangement
    # the braid arrangement of type A3 restricted to x1+x2+x3+x4 = 0, in coordinates
    normals = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1)]
    A = Arrangement(3, normals)
    cones = chambers_of_arrangement(A)
    assert len(cones) == 24
    S = ChamberDecomposition(3, tuple(cones), tuple(range(24)))
    assert verify_chamber_decomposition(S).ok
    rec = recognize_arrangement(S)
    assert rec.is_arrangement and set(rec.arrangement.normals) == set(A.normals)


def test_recognize_implies_opposite_rays(dihedral3):
    S = dihedral3.decomposition()
    assert recognize_arrangement(S).is_arrangement
    rays = set(S.rays())
    assert all(tuple(-x for x in r) in rays for r in rays)


def test_non_simplicial_arrangement():
    # four planes through a common line in R^3: not essential, chambers are not simplicial
    A = Arrangement(3, [(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, -1, 0)])
    with pytest.raises(FanError, match="not simplicial"):
        chambers_of_arrangement(A)


def test_minimal_galleries(fig, dihedral3):
    assert minimal_galleries(fig, "13+14", "25+35") == [("13+14", "13+35", "25+35")]
    assert minimal_galleries(fig, "13+14", "13+14") == [("13+14",)]
    S = dihedral3.decomposition()
    rec = recognize_arrangement(S)
    g = minimal_galleries(S, "C0", "C3", rec.arrangement)
    assert len(g) == 2 and all(len(p) == 4 for p in g)


def test_minimal_gallery_lengths_equal_distance(a3):
    S = a3.decomposition()
    graph = S.neighbours()
    start = S.labels[0]
    dist = {start: 0}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for w in graph[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    nxt.append(w)
        frontier = nxt
    for end in S.labels:
        assert {len(p) - 1 for p in minimal_galleries(S, start, end)} == {dist[end]}


def test_ray_reduction_a2(fig):
    R = ray_reduction(fig, (0, 1))
    assert R.ambient_dim == 1 and len(R.chambers) == 2
    assert verify_chamber_decomposition(R).ok
    with pytest.raises(FanError):
        ray_reduction(fig, (1, 1))


def test_ray_reduction_all_rays_of_a3(a3):
    S = a3.decomposition()
    counts = {}
    for label, v in a3.indecomposables.items():
        R = ray_reduction(S, v)
        assert verify_chamber_decomposition(R).ok
        counts[label] = len(R.chambers)
    # diagonals cutting off a triangle leave a pentagon, the long ones two quadrilaterals
    for label, c in counts.items():
        i, j = int(label[0]), int(label[1])
        short = j - i in (2, 4)
        assert c == (5 if short else 4)


def test_interiors_meet():
    assert interiors_meet(SimplicialCone.of((1, 0), (0, 1)), SimplicialCone.of((1, 1), (0, 1)))
    assert not interiors_meet(SimplicialCone.of((1, 0), (0, 1)), SimplicialCone.of((0, 1), (-1, 0)))


def test_meet_in_common_face():
    from ggk.fan import meet_in_common_face
    q1 = SimplicialCone.of((1, 0), (0, 1))
    assert meet_in_common_face(q1, SimplicialCone.of((0, 1), (-1, 0)))
    assert meet_in_common_face(q1, SimplicialCone.of((-1, 0), (0, -1)))
    # only the origin in common, but they overlap
    assert not meet_in_common_face(q1, SimplicialCone.of((1, 1), (-1, 2)))
    # a shared ray is not the whole intersection
    assert not meet_in_common_face(q1, SimplicialCone.of((1, 0), (1, 1)))

from itertools import combinations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from _support import box_points, rand_unimodular, random_reflexive, seeded, vertex_polytope
from latpoly.linalg import dot, rank
from latpoly.polytope import (PolytopeError, complete_points, dual, hull_vertices,
                              incidence_structure, is_ip, is_reflexive, lattice_points,
                              unimodular_image, volume_barycenter)

point_sets = st.integers(2, 3).flatmap(
    lambda d: st.lists(st.tuples(*[st.integers(-3, 3)] * d), min_size=d + 1, max_size=9,
                       unique=True))


@settings(max_examples=120, deadline=None)
@given(point_sets)
def test_vertices_are_exactly_the_extreme_points(pts):
    hv = hull_vertices(pts)
    assume(hv.full_dimensional)
    verts = set(hv.vertices)
    fs = hv.facets()
    for a, c in fs:
        assert all(dot(a, p) + c >= 0 for p in pts)
        tight = [v for v in hv.vertices if dot(a, v) + c == 0]
        assert rank([[x - y for x, y in zip(v, tight[0])] for v in tight[1:]]) == hv.dim - 1
    for p in pts:
        # a point is a vertex iff dropping it shrinks the hull
        others = [q for q in pts if q != p]
        if len(others) > hv.dim:
            sub = hull_vertices(others)
            shrinks = not sub.full_dimensional or any(dot(a, p) + c < 0 for a, c in sub.facets())
        else:
            shrinks = True
        assert (p in verts) == shrinks


@settings(max_examples=100, deadline=None)
@given(point_sets)
def test_completion_matches_box_scan(pts):
    hv = hull_vertices(pts)
    assume(hv.full_dimensional)
    p = vertex_polytope(pts)
    assert sorted(lattice_points(p)) == box_points(p.vertices, p.facets())


@settings(max_examples=60, deadline=None)
@given(point_sets)
def test_standard_point_order(pts):
    assume(hull_vertices(pts).full_dimensional)
    p = complete_points(vertex_polytope(pts))
    fs = p.facets()
    nv = len(p.vertices)
    assert p.points[:nv] == p.vertices

    def rank_of(q):
        t = sum(1 for a, c in fs if dot(a, q) + c == 0)
        if not any(q):
            return 3
        return 0 if t >= 2 else 1 if t == 1 else 2
    ranks = [rank_of(q) for q in p.points[nv:]]
    assert ranks == sorted(ranks)


def test_lower_dimensional_hull():
    hv = hull_vertices([(0, 0, 0), (2, 2, 0), (1, 1, 0), (0, 2, 0)])
    assert hv.affine_dim == 2 and sorted(hv.vertices) == [(0, 0, 0), (0, 2, 0), (2, 2, 0)]
    assert len(lattice_points(hv)) == 6


def test_duplicate_points_rejected():
    with pytest.raises(PolytopeError):
        hull_vertices([(0, 0), (0, 0), (1, 0)])


def test_dual_involution_and_reflexivity():
    rng = seeded(11)
    for p in random_reflexive(rng, 3, 25):
        q = dual(p)
        assert is_reflexive(q)
        assert sorted(dual(q).vertices) == sorted(p.vertices)
        # every vertex of the dual is a facet normal at distance one
        for y in q.vertices:
            assert min(dot(v, y) for v in p.vertices) == -1


def test_dual_of_unimodular_image_is_contragredient():
    rng = seeded(5)
    p = random_reflexive(rng, 3, 1)[0]
    u = rand_unimodular(rng, 3)
    q = unimodular_image(p, u)
    dq = {tuple(y) for y in dual(q).vertices}
    # <u x, y> = <x, u^T y>
    for y in dq:
        uty = tuple(sum(u[i][j] * y[i] for i in range(3)) for j in range(3))
        assert uty in {tuple(v) for v in dual(p).vertices}


def test_ip_and_reflexive_flags():
    square2 = vertex_polytope([(2, 0), (0, 2), (-2, 0), (0, -2)])
    assert is_ip(square2) and not is_reflexive(square2)
    off = vertex_polytope([(1, 0), (0, 1), (1, 1)])
    assert not is_ip(off)
    with pytest.raises(PolytopeError):
        dual(square2)


def test_volume_and_barycenter_of_unit_cube():
    cube = vertex_polytope([(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)])
    vol, bc = volume_barycenter(cube)
    assert vol == 6
    assert [str(x) for x in bc.fractions()] == ["1/2", "1/2", "1/2"]


def test_face_lattice_of_cube():
    cube = vertex_polytope([(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)])
    assert incidence_structure(cube).f_vector()[:3] == [8, 12, 6]


def test_simplex_facets_pair_with_vertices():
    p = vertex_polytope([(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)])
    assert is_reflexive(p)
    assert len(complete_points(dual(p)).points) == 35
    for combo in combinations(p.vertices, 3):
        assert any(all(dot(a, v) + c == 0 for v in combo) for a, c in p.facets())

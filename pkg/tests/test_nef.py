from fractions import Fraction
from itertools import product

import pytest

from _support import vertex_polytope
from latpoly.cws import parse_cws, parse_gorenstein_weights, gorenstein_support_from_weights, polytope_from_cws
from latpoly.linalg import dot, solve
from latpoly.nef import (dual_gorenstein, enumerate_nef_partitions, gorenstein_lift,
                         gorenstein_mode, nef_cones, s_t_polynomials)
from latpoly.polytope import complete_points, dual

P3 = "4 1 1 1 1"
P2P2 = "3 1 1 1 0 0 0  3 0 0 0 1 1 1"
P2P1P2 = "3 1 1 1 0 0 0 0 0  2 0 0 0 1 1 0 0 0  3 0 0 0 0 0 1 1 1"


def pstar_of(text):
    return complete_points(dual(polytope_from_cws(parse_cws(text))))


def brute_nef(pstar, r):
    """Unordered vertex partitions admitting integral convex support functions."""
    verts = pstar.vertices
    facets = [[v for v in verts if dot(a, v) + c == 0] for a, c in pstar.facets()]
    found = set()
    for assign in product(range(r), repeat=len(verts)):
        if len(set(assign)) < r:
            continue
        ok = True
        for l in range(r):
            phi = {v: int(a == l) for v, a in zip(verts, assign)}
            for fv in facets:
                m = solve([list(v) for v in fv], [-phi[v] for v in fv])
                if m is None or any(Fraction(x).denominator != 1 for x in m):
                    ok = False
                    break
                if any(-dot(m, v) > phi[v] for v in verts):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.add(frozenset(frozenset(i for i, a in enumerate(assign) if a == l)
                                for l in range(r)))
    return found


@pytest.mark.parametrize("text, r, expected", [(P3, 2, 7), (P2P2, 2, 31), (P2P1P2, 2, None)])
def test_enumeration_matches_brute_force(text, r, expected):
    pstar = pstar_of(text)
    got = enumerate_nef_partitions(pstar, r, keep_symmetric=True)
    keys = {frozenset(frozenset(p) for p in part.parts) for part in got}
    assert len(keys) == len(got)
    assert keys == brute_nef(pstar, r)
    if expected is not None:
        assert len(got) == expected


def test_support_functions_add_up_on_the_boundary():
    pstar = pstar_of(P2P1P2)
    for part in enumerate_nef_partitions(pstar, 2):
        for l, vs in enumerate(part.parts):
            for i, v in enumerate(pstar.vertices):
                assert part.phi(l, v) == int(i in vs)
        for y in pstar.points:
            if any(y):
                vals = [part.phi(l, y) for l in range(part.r)]
                assert all(x >= 0 for x in vals) and sum(vals) == 1
        assert all(lab is not None for lab in part.point_parts)


def classify(parts):
    np_ = sum(1 for p in parts if not p.is_projection and not p.is_direct_product)
    d = sum(1 for p in parts if p.is_direct_product and not p.is_projection)
    pr = sum(1 for p in parts if p.is_projection)
    return len(parts), np_, d, pr


def test_reduced_counts():
    assert classify(enumerate_nef_partitions(pstar_of(P2P1P2), 2)) == (15, 11, 2, 2)
    assert classify(enumerate_nef_partitions(pstar_of(P3), 2)) == (2, 1, 0, 1)
    assert len(enumerate_nef_partitions(pstar_of(P2P2), 2)) == 5


def test_p3_gorenstein_levels_and_serre():
    pstar = pstar_of(P3)
    part = next(p for p in enumerate_nef_partitions(pstar, 2) if not p.is_projection)
    cn, cm = nef_cones(pstar, part)
    assert cn.level_counts(5) == [(6, 0), (21, 1), (56, 6), (125, 21), (246, 56)]
    assert cm.level_counts(5) == [(20, 0), (105, 1), (336, 20), (825, 105), (1716, 336)]
    st = s_t_polynomials(cn, check_serre=True)
    assert st.S == [1, 1, 1, 1] and st.T == [0, 0, 1, 1, 1, 1]
    # the half-count shortcut gives the same polynomials
    fast = s_t_polynomials(cn)
    assert (fast.S, fast.T) == (st.S, st.T)


# full counting up to the cone dimension is out of reach for larger cones
@pytest.mark.parametrize("text, r", [(P3, 2), (P2P2, 2), ("5 1 1 1 1 1", 1), ("3 1 1 1", 1)])
def test_serre_relation_on_all_cones(text, r):
    pstar = pstar_of(text)
    for part in enumerate_nef_partitions(pstar, r):
        for cone in nef_cones(pstar, part):
            s_t_polynomials(cone, check_serre=True)


def test_lift_and_dual_support_of_symmetric_partition():
    pstar = complete_points(vertex_polytope(
        [(1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (-1, -1, 0, 0, 0), (0, 0, 1, 0, 0),
         (0, 0, -1, 0, 0), (0, 0, 0, 1, 0), (0, 0, 0, 0, 1), (0, 0, 0, -1, -1)]))
    parts = enumerate_nef_partitions(pstar, 2)
    target = next(p for p in parts
                  if sorted(p.parts[0]) == [4, 5, 6, 7] or sorted(p.parts[1]) == [4, 5, 6, 7])
    pts, nv = gorenstein_lift(pstar, target, 2)
    assert len(pts) == 10 and nv == 8
    for q in pts:
        assert q[0] + q[1] == 1
    dpts, dnv = dual_gorenstein(pstar, target, 2)
    assert (len(dpts), dnv) == (40, 12)
    # dual pairing: <(phi, p), (e, m)> is nonnegative on the two supports
    for a in pts:
        for b in dpts:
            assert dot(a[:2], b[:2]) + dot(a[2:], b[2:]) >= 0


def test_gorenstein_mode_examples():
    square = complete_points(vertex_polytope([(0, 0), (0, 1), (1, 0), (1, 1)]))
    rep = gorenstein_mode(square, 2)
    assert rep.reflexive and rep.index == 2 and rep.m_counts == (4, 4) and rep.n_counts == (4, 4)
    c, r = parse_gorenstein_weights("3 1 1 1 1 1 1")
    rep = gorenstein_mode(gorenstein_support_from_weights(c), r)
    assert rep.m_counts == (56, 6) and rep.n_counts == (6, 6) and rep.index == 2
    tri = complete_points(vertex_polytope([(0, 0), (1, 0), (0, 1)]))
    assert gorenstein_mode(tri, 2).index == 3

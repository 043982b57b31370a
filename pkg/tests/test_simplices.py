from itertools import combinations

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from latpoly.cws import parse_cws, polytope_from_cws
from latpoly.linalg import kernel_basis, primitive
from latpoly.polytope import complete_points, dual
from latpoly.simplices import fibration_scan, ip_simplices, lattice_quotient, simplex_quotients


def brute_ip_simplices(points):
    out = set()
    for k in range(2, len(points) + 1):
        for sub in combinations(range(len(points)), k):
            ker = kernel_basis([points[i] for i in sub])
            if len(ker) != 1:
                continue
            w = primitive(ker[0])
            if all(x < 0 for x in w):
                w = [-x for x in w]
            if all(x > 0 for x in w):
                full = [0] * len(points)
                for i, x in zip(sub, w):
                    full[i] = x
                out.add(tuple(full))
    return out


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-1, 1)),
                min_size=2, max_size=7, unique=True))
def test_ip_simplices_match_subset_search(points):
    assume(all(any(p) for p in points))
    got = ip_simplices(points)
    assert {s.weights for s in got} == brute_ip_simplices(points)
    for s in got:
        assert s.degree == sum(s.weights)
        assert s.codim == 3 - (len(s.support) - 1)
    keys = [(s.degree, s.weights) for s in got]
    assert keys == sorted(keys, reverse=True)


def test_p123_dual_simplices():
    n = complete_points(dual(polytope_from_cws(parse_cws("6 1 2 3"))))
    pts = [p for p in n.points if any(p)]
    sims = ip_simplices(pts)
    assert sorted((s.degree, s.codim, tuple(sorted(x for x in s.weights if x)))
                  for s in sims) == [(2, 1, (1, 1)), (3, 0, (1, 1, 1)),
                                     (4, 0, (1, 1, 2)), (6, 0, (1, 2, 3))]


def test_codim_window():
    pts = [(1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1)]
    assert all(s.codim >= 1 for s in ip_simplices(pts, min_codim=1))
    assert all(s.codim == 0 for s in ip_simplices(pts, max_codim=0))


def test_lattice_quotient_index():
    assert lattice_quotient([(1, 0), (0, 1)])[0] == 1
    idx, gens = lattice_quotient([(-1, -1), (-1, 2), (2, -1)])
    assert idx == 3 and [r for r, _ in gens] == [3]
    idx, gens = lattice_quotient([(2, 0), (0, 2)])
    assert idx == 4 and sorted(r for r, _ in gens) == [2, 2]


def test_bipyramid_quotient_action():
    pts = [(-1, -1, 0), (-1, 2, 0), (2, -1, 0), (0, 0, 1), (0, 0, -1)]
    sims = ip_simplices(pts)
    tri = next(s for s in sims if s.degree == 3)
    idx, gens = simplex_quotients(tri, pts)
    assert idx == 3
    (r, phases), = gens
    assert r == 3 and phases[3:] == (0, 0)
    # the phases describe a lattice point: sum phases_i * v_i / 3 is integral
    for k in range(3):
        assert sum(phases[i] * pts[i][k] for i in range(5)) % 3 == 0
    seg = next(s for s in sims if s.degree == 2)
    assert simplex_quotients(seg, pts)[0] == 1


def test_fibration_records():
    p = complete_points(dual(polytope_from_cws(parse_cws("12 4 2 2 2 1 1 0  8 4 0 0 0 1 1 2"))))
    recs = fibration_scan(p, 3)
    got = sorted((r.codim, r.m_counts, r.n_counts) for r in recs)
    assert got == [(1, (117, 9), (8, 6)), (2, (35, 4), (7, 4)), (3, (9, 3), (5, 3))]

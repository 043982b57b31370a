from itertools import combinations

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from latpoly.cone import cone_facets, extreme_rays, positive_relations
from latpoly.linalg import kernel_basis, primitive, rank, transpose


def brute_rays(a):
    k = len(a[0])
    found = set()
    for sub in combinations(range(len(a)), k - 1):
        rows = [a[i] for i in sub]
        if rank(rows) != k - 1:
            continue
        ker = kernel_basis(transpose(rows))
        assert len(ker) == 1
        for sgn in (1, -1):
            r = [sgn * x for x in ker[0]]
            if all(sum(p * q for p, q in zip(row, r)) >= 0 for row in a):
                found.add(tuple(primitive(r)))
    return found


constraint_sets = st.integers(2, 4).flatmap(
    lambda k: st.lists(st.lists(st.integers(-3, 3), min_size=k, max_size=k),
                       min_size=k, max_size=k + 4))


@settings(max_examples=150, deadline=None)
@given(constraint_sets)
def test_extreme_rays_match_brute_force(a):
    k = len(a[0])
    assume(rank(a) == k)
    # pointed by full column rank; the cone may still be {0}
    got = extreme_rays(a)
    rays = {tuple(r) for r, _ in got}
    assert rays == brute_rays(a)
    for r, mask in got:
        assert mask == sum(1 << i for i, row in enumerate(a)
                           if sum(p * q for p, q in zip(row, r)) == 0)


def test_cube_cone_facets():
    gens = [[1, x, y] for x in (-1, 1) for y in (-1, 1)]
    fs = {tuple(f) for f in cone_facets(gens)}
    assert fs == {(1, 1, 0), (1, -1, 0), (1, 0, 1), (1, 0, -1)}


@settings(max_examples=80, deadline=None)
@given(st.lists(st.lists(st.integers(-2, 2), min_size=2, max_size=2), min_size=2, max_size=6))
def test_positive_relations_are_minimal(points):
    assume(all(any(p) for p in points))
    rels = positive_relations(points)
    for w in rels:
        assert all(x >= 0 for x in w) and any(w)
        assert all(sum(w[i] * points[i][j] for i in range(len(points))) == 0 for j in range(2))
        sup = {i for i, x in enumerate(w) if x}
        # a minimal relation has a one-dimensional kernel on its support
        assert len(kernel_basis([points[i] for i in sorted(sup)])) == 1
    supports = [frozenset(i for i, x in enumerate(w) if x) for w in rels]
    for s in supports:
        assert not any(t < s for t in supports)


def test_positive_relations_triangle():
    assert positive_relations([[1, 0], [0, 1], [-1, -1]]) == [[1, 1, 1]]

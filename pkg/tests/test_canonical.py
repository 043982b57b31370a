from itertools import permutations

from hypothesis import given, settings
from hypothesis import strategies as st

from _support import apply, rand_unimodular, random_reflexive, seeded, vertex_polytope
from latpoly.canonical import (affine_normal_form, automorphisms, normal_form,
                               symmetry_counts, vpm_canonical)
from latpoly.cws import parse_cws, polytope_from_cws
from latpoly.linalg import dot, transpose


def shuffled_image(rng, p, shift=None):
    u = rand_unimodular(rng, p.dim)
    vs = apply(u, p.vertices)
    if shift:
        vs = [tuple(a + b for a, b in zip(v, shift)) for v in vs]
    rng.shuffle(vs)
    return vertex_polytope(vs)


small = st.integers(2, 4).flatmap(
    lambda r: st.integers(2, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 2), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


@settings(max_examples=80, deadline=None)
@given(small)
def test_vpm_canonical_is_lexicographic_maximum(vpm):
    fm = transpose(vpm)
    best = max([fm[i][j] for i in rp for j in cp]
               for rp in permutations(range(len(fm)))
               for cp in permutations(range(len(fm[0]))))
    canon, orders, n = vpm_canonical(vpm)
    assert [x for row in canon for x in row] == best
    # every listed vertex order realizes the maximum under some facet order
    for order in orders:
        cols = [[row[j] for j in order] for row in fm]
        assert sorted(cols, reverse=True) == sorted(canon, reverse=True)
    assert n == len(orders)


def test_normal_form_invariance_3d():
    rng = seeded(21)
    for p in random_reflexive(rng, 3, 10):
        ref = normal_form(p).matrix
        for _ in range(15):
            assert normal_form(shuffled_image(rng, p)).matrix == ref


def test_normal_form_invariance_4d():
    rng = seeded(8)
    p = vertex_polytope(polytope_from_cws(parse_cws("6 1 1 1 1 2")).vertices)
    ref = normal_form(p).matrix
    for _ in range(10):
        assert normal_form(shuffled_image(rng, p)).matrix == ref


def test_normal_form_separates_non_isomorphic():
    a = vertex_polytope([(1, 0), (0, 1), (-1, -1)])
    b = vertex_polytope([(1, 0), (0, 1), (-1, 0), (0, -1)])
    c = vertex_polytope([(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1)])
    forms = {tuple(map(tuple, normal_form(x).matrix)) for x in (a, b, c)}
    assert len(forms) == 3


def test_affine_normal_form_translation_invariant():
    rng = seeded(2)
    p = vertex_polytope([(0, 0, 0), (2, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])
    ref = affine_normal_form(p)
    for _ in range(10):
        shift = [rng.randint(-5, 5) for _ in range(3)]
        assert affine_normal_form(shuffled_image(rng, p, shift)) == ref


def test_symmetries_and_automorphisms_of_cube():
    cube = vertex_polytope([(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)])
    assert symmetry_counts(cube) == (48, 48)
    verts = cube.vertices
    autos = automorphisms(cube)
    assert len(autos) == 48
    # each automorphism is linear: it preserves all pairings with facets
    for g in autos:
        for a, c in cube.facets():
            img = [verts[g[i]] for i in range(len(verts))]
            tight = {i for i, v in enumerate(verts) if dot(a, v) + c == 0}
            assert any({i for i, v in enumerate(img) if dot(b, v) + e == 0} == tight
                       for b, e in cube.facets())


def test_lattice_vs_combinatorial_symmetries():
    p = vertex_polytope([(1, 0), (0, 1), (-1, 0), (0, -1)])
    assert symmetry_counts(p) == (8, 8)
    # a lattice square of side two is still fully symmetric
    q = vertex_polytope([(2, 1), (0, 1), (-2, -1), (0, -1)])
    assert symmetry_counts(q) == (8, 8)
    # the quotient keeps the simplex combinatorics but breaks lattice symmetry
    z = polytope_from_cws(parse_cws("5 1 1 1 1 1 /Z5: 0 1 2 3 4"))
    assert symmetry_counts(vertex_polytope(z.vertices)) == (20, 120)

"""Shared helpers for the test suite."""

import contextlib
import io
import random
import sys
from itertools import product

from latpoly.cli.main import main
from latpoly.polytope import LatticePolytope, hull_vertices, is_reflexive

# acceptance results collected for the terminal summary
RESULTS = []


def report(n, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n:2d}: {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def run_cli(args, stdin=""):
    """Run `latpoly` in-process; returns (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    old = sys.stdin
    sys.stdin = io.StringIO(stdin)
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            rc = main(args)
    finally:
        sys.stdin = old
    return rc, out.getvalue(), err.getvalue()


def rand_unimodular(rng, d, steps=6):
    u = [[int(i == j) for j in range(d)] for i in range(d)]
    for _ in range(steps):
        i, j = rng.sample(range(d), 2)
        c = rng.randint(-2, 2)
        for k in range(d):
            u[i][k] += c * u[j][k]
    perm = list(range(d))
    rng.shuffle(perm)
    sg = [rng.choice((1, -1)) for _ in range(d)]
    return [[sg[i] * x for x in u[perm[i]]] for i in range(d)]


def apply(u, pts):
    return [tuple(sum(a * b for a, b in zip(row, p)) for row in u) for p in pts]


def vertex_polytope(pts):
    hv = hull_vertices(pts)
    return LatticePolytope(hv.vertices, [True] * len(hv.vertices), hv.affine_dim)


def random_reflexive(rng, d=3, count=1, box=1):
    """Reflexive polytopes with vertices drawn from the cube [-box, box]^d."""
    cube = [p for p in product(range(-box, box + 1), repeat=d) if any(p)]
    out = []
    while len(out) < count:
        pts = rng.sample(cube, rng.randint(d + 1, 3 * d + 3))
        hv = hull_vertices(pts)
        if not hv.full_dimensional:
            continue
        p = LatticePolytope(hv.vertices, [True] * len(hv.vertices), d)
        if is_reflexive(p):
            out.append(p)
    return out


def box_points(vertices, facets):
    """Lattice points of a polytope by scanning its bounding box."""
    d = len(vertices[0])
    lo = [min(v[k] for v in vertices) for k in range(d)]
    hi = [max(v[k] for v in vertices) for k in range(d)]
    return sorted(x for x in product(*[range(a, b + 1) for a, b in zip(lo, hi)])
                  if all(sum(p * q for p, q in zip(a, x)) + c >= 0 for a, c in facets))


def seeded(seed):
    return random.Random(seed)


def column_matches(n, pairs):
    """Column permutations sending every `ours` set onto the matching `theirs` set.

    ``pairs`` holds (ours, theirs) collections of equal-length strings or
    integer rows; a permutation p qualifies when, for every pair, the set
    {row[p[0]], ..., row[p[n-1]]} of ours equals the set of theirs.
    """
    from itertools import permutations
    out = []
    for p in permutations(range(n)):
        if all({tuple(r[i] for i in p) for r in ours} == {tuple(r) for r in theirs}
               for ours, theirs in pairs):
            out.append(p)
    return out


def check_sr(t):
    """Generators are exactly the minimal non-faces of the triangulation."""
    from itertools import combinations
    from latpoly.mori import sr_ideal
    faces = set()
    for s in t.simplices:
        for k in range(len(s) + 1):
            faces.update(frozenset(c) for c in combinations(sorted(s), k))
    gens = sr_ideal(t).generators
    for g in gens:
        assert g not in faces
        assert all(g - {v} in faces for v in g)
    if t.n > 12:
        return
    # every non-face contains a generator
    for k in range(1, t.n + 1):
        for c in combinations(t.relevant, k):
            c = frozenset(c)
            if c not in faces:
                assert any(g <= c for g in gens)


def check_mori(t):
    """Generators annihilate the points and the cone holds every wall relation."""
    from latpoly.cone import positive_relations
    from latpoly.mori import mori_generators, wall_relations
    mc = mori_generators(t)
    rel = t.relevant
    d = len(t.points[0])
    for g in mc.generators:
        assert all(sum(g[j] * t.points[rel[j]][k] for j in range(len(rel))) == 0
                   for k in range(d))
    for w in wall_relations(t):
        w = [w[i] for i in rel]
        # w lies in the cone iff gens and -w admit a relation using -w
        rels = positive_relations(mc.generators + [[-x for x in w]])
        assert any(r[-1] > 0 for r in rels)
    return mc

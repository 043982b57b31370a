"""IP simplices, their lattice quotients, and fibrations spanned by them."""

from .cone import positive_relations
from .linalg import coordinates, hnf, saturated_span, smith_normal_form
from .polytope import (LatticePolytope, complete_points, dual, hull_vertices,
                       is_reflexive)


class IPSimplex:
    """A minimal positive relation sum_i weights[i] * points[i] = 0."""

    def __init__(self, weights, ambient_dim):
        self.weights = tuple(weights)
        self.support = tuple(i for i, w in enumerate(weights) if w)
        self.degree = sum(weights)
        self.codim = ambient_dim - (len(self.support) - 1)

    def __repr__(self):
        return f"IPSimplex({list(self.weights)}, d={self.degree}, codim={self.codim})"


def ip_simplices(points, max_codim=None, min_codim=0):
    """All minimal positive relations among the given nonzero points.

    Sorted by descending degree, then descending weight vector.
    """
    pts = [list(p) for p in points]
    if not pts:
        return []
    d = len(pts[0])
    out = [IPSimplex(w, d) for w in positive_relations(pts)]
    out = [s for s in out if s.codim >= min_codim and (max_codim is None or s.codim <= max_codim)]
    out.sort(key=lambda s: (s.degree, s.weights), reverse=True)
    return out


def _normalize(phases, r, relations):
    best = (sum(1 for x in phases if x == 0), tuple(phases))
    for w in relations:
        for t in range(1, r):
            cand = tuple((a + t * b) % r for a, b in zip(phases, w))
            key = (sum(1 for x in cand if x == 0), cand)
            if key > best:
                best = key
    return best[1]


def lattice_quotient(points, relations=()):
    """Index of the lattice generated by the points in its saturation.

    Returns ``(index, [(order, phases)])``; each phase row gives a generator
    of the finite quotient as (phases / order) combination of the points.
    """
    pts = [list(p) for p in points]
    basis = saturated_span(pts)
    coords = [coordinates(basis, p) for p in pts]
    s, u, _ = smith_normal_form(coords)
    index = 1
    gens = []
    for i in range(min(len(s), len(basis))):
        r = s[i][i]
        if r == 0:
            continue
        index *= r
        if r > 1:
            gens.append((r, _normalize([x % r for x in u[i]], r, relations)))
    return index, gens


def simplex_quotients(simplex, points):
    """Index of the simplex vertex lattice in its saturation plus the quotient phases."""
    sup = simplex.support
    sub = [points[i] for i in sup]
    rel = [[simplex.weights[i] for i in sup]]
    index, gens = lattice_quotient(sub, rel)
    full = []
    for r, ph in gens:
        row = [0] * len(points)
        for i, x in zip(sup, ph):
            row[i] = x
        full.append((r, tuple(row)))
    return index, full


class FiberRecord:
    def __init__(self, marks, codim, m_counts, n_counts, basis):
        self.marks = marks
        self.codim = codim
        self.m_counts = m_counts
        self.n_counts = n_counts
        self.basis = basis

    def line(self):
        return ("".join(f"{m:>5}" for m in self.marks) + f"  cd={self.codim}"
                f"  m:{self.m_counts[0]:3d} {self.m_counts[1]:2d}"
                f" n:{self.n_counts[0]:2d} {self.n_counts[1]}")

    def __repr__(self):
        return f"FiberRecord({''.join(self.marks)}, cd={self.codim}, m={self.m_counts}, n={self.n_counts})"


def fibration_scan(pstar, max_codim, points=None):
    """Reflexive sections of P* by subspaces spanned by IP simplices.

    ``points`` fixes the nonzero points used for simplices and markings;
    by default all nonzero lattice points of P* in standard order.
    """
    if not pstar.complete:
        pstar = complete_points(pstar)
    d = pstar.dim
    origin = tuple([0] * d)
    pts = points if points is not None else [p for p in pstar.points if p != origin]
    allpts = [p for p in pstar.points if p != origin]
    seen = set()
    out = []
    for s in ip_simplices(pts, max_codim=max_codim, min_codim=1):
        basis = saturated_span([pts[i] for i in s.support])
        key = tuple(tuple(r) for r in hnf(basis))
        if key in seen:
            continue
        seen.add(key)
        inside = {}
        for p in allpts + [origin]:
            c = coordinates(basis, list(p))
            if c is not None:
                inside[p] = tuple(c)
        fib = hull_vertices(list(inside.values()))
        if fib.affine_dim != len(basis):
            continue
        fib = LatticePolytope(fib.vertices, [True] * len(fib.vertices), fib.affine_dim)
        if not is_reflexive(fib):
            continue
        fv = set(fib.vertices)
        marks = []
        for p in pts:
            if p not in inside:
                marks.append("_")
            elif inside[p] in fv:
                marks.append("v")
            else:
                marks.append("p")
        fdual = complete_points(dual(fib))
        out.append(FiberRecord(marks, d - len(basis),
                               (len(fdual.points), len(fdual.vertices)),
                               (len(inside), len(fib.vertices)), basis))
    return out

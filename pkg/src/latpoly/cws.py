"""Combined weight systems: parsing, the associated polytope, reconstruction."""

import re

from .cone import positive_relations
from .linalg import (hnf, independent_rows, inverse, kernel_basis, rank,
                     smith_normal_form, transpose, dot)
from .polytope import LatticePolytope, PolytopeError, complete_points, hull_vertices


class InputError(ValueError):
    pass


class CWS:
    """Weight systems ``[(degree, weights)]`` plus quotients ``[(order, phases)]``."""

    def __init__(self, systems, quotients=(), check=True):
        self.systems = [(int(d), tuple(int(x) for x in w)) for d, w in systems]
        self.quotients = [(int(r), tuple(int(x) % int(r) for x in l)) for r, l in quotients]
        n = len(self.systems[0][1]) if self.systems else 0
        if not self.systems:
            raise InputError("no weight system")
        for d, w in self.systems:
            if len(w) != n:
                raise InputError("weight systems of different lengths")
            if any(x < 0 for x in w) or d <= 0:
                raise InputError("degrees must be positive and weights nonnegative")
        for r, l in self.quotients:
            if r <= 1 or len(l) != n:
                raise InputError("malformed quotient")
        for j in range(n):
            if not any(w[j] for _, w in self.systems):
                raise InputError(f"weight column {j + 1} is zero in every system")
        if check:
            for d, w in self.systems:
                if sum(w) != d:
                    raise InputError(f"degree {d} differs from the weight sum {sum(w)}")

    @property
    def n(self):
        return len(self.systems[0][1])

    @property
    def weight_matrix(self):
        return [list(w) for _, w in self.systems]

    @property
    def degrees(self):
        return [d for d, _ in self.systems]

    def __str__(self):
        parts = []
        for d, w in self.systems:
            parts.append(" ".join(str(x) for x in (d,) + w))
        s = "  ".join(parts)
        for r, l in self.quotients:
            s += f" /Z{r}: " + " ".join(str(x) for x in l)
        return s

    def __eq__(self, other):
        return isinstance(other, CWS) and (self.systems, self.quotients) == (other.systems, other.quotients)

    def __repr__(self):
        return f"CWS({self})"


_QUOT = re.compile(r"/Z(\d+):")


def parse_cws(text, check=True):
    """Parse "d1 w11 w12 ... d2 w21 ... /Zr: l1 ... ln" into a CWS."""
    head, *quots = _QUOT.split(text)
    nums = [int(t) for t in head.split()]
    # quots alternates order, phases
    qparsed = []
    for i in range(0, len(quots), 2):
        r = int(quots[i])
        phases = []
        for tok in quots[i + 1].split():
            try:
                phases.append(int(tok))
            except ValueError:
                break
        qparsed.append((r, phases))
    return _split_systems(nums, qparsed, check)


def _split_systems(nums, quotients, check):
    if not nums:
        raise InputError("empty weight input")
    total = len(nums)
    sizes = [n for n in range(1, total) if total % (n + 1) == 0]
    if quotients:
        sizes = [n for n in sizes if n == len(quotients[0][1])]
    for n in sizes:
        blocks = [nums[i:i + n + 1] for i in range(0, total, n + 1)]
        if all(b[0] == sum(b[1:]) for b in blocks):
            return CWS([(b[0], b[1:]) for b in blocks], quotients, check=check)
    if len(sizes) == 1 and sizes[0] == total - 1:
        raise InputError(f"degree {nums[0]} differs from the weight sum {sum(nums[1:])}")
    raise InputError("cannot split the input into weight systems with matching degrees")


def parse_gorenstein_weights(text, r=None):
    """Weight input whose weight sums are a common multiple r of the degrees."""
    head, *quots = _QUOT.split(text)
    nums = [int(t) for t in head.split()]
    total = len(nums)
    for n in range(1, total):
        if total % (n + 1):
            continue
        blocks = [nums[i:i + n + 1] for i in range(0, total, n + 1)]
        ratios = set()
        ok = True
        for b in blocks:
            if b[0] <= 0 or sum(b[1:]) % b[0]:
                ok = False
                break
            ratios.add(sum(b[1:]) // b[0])
        if ok and len(ratios) == 1 and (r is None or ratios == {r}):
            return CWS([(b[0], b[1:]) for b in blocks], check=False), ratios.pop()
    raise InputError("weights do not sum to a common multiple of the degrees")


def _solutions(systems):
    # nonnegative integer Y with sum_j w_ij Y_j = d_i for every system
    n = len(systems[0][1])
    ws = [w for _, w in systems]
    budget = [d for d, _ in systems]
    # suffix flags: does some later column still touch system i
    later = [[any(w[jj] for jj in range(j, n)) for w in ws] for j in range(n + 1)]
    y = [0] * n
    out = []

    def rec(j):
        if j == n:
            if not any(budget):
                out.append(tuple(y))
            return
        for i in range(len(ws)):
            if budget[i] and not later[j][i]:
                return
        top = None
        for i, w in enumerate(ws):
            if w[j]:
                b = budget[i] // w[j]
                top = b if top is None or b < top else top
        for v in range(top + 1):
            y[j] = v
            for i, w in enumerate(ws):
                budget[i] -= v * w[j]
            rec(j + 1)
            for i, w in enumerate(ws):
                budget[i] += v * w[j]
        y[j] = 0

    rec(0)
    return out


def sublattice_basis(c, with_quotients=True):
    """Rows spanning {X : W X = 0} (intersected with the quotient congruences)."""
    w = c.weight_matrix
    ker = hnf(kernel_basis(transpose(w)))
    ker = [r for r in ker if any(r)]
    if not with_quotients or not c.quotients:
        return ker
    k = len(ker)
    s = len(c.quotients)
    rows = []
    for i in range(k):
        rows.append([dot(ker[i], l) for _, l in c.quotients])
    for q, (r, _) in enumerate(c.quotients):
        rows.append([r if t == q else 0 for t in range(s)])
    gens = [v[:k] for v in kernel_basis(rows)]
    sub = [r for r in hnf(gens) if any(r)]
    return [[sum(a[i] * ker[i][j] for i in range(k)) for j in range(c.n)] for a in sub]


class _Coordinatizer:
    # maps vectors of a sublattice of Z^n to coordinates in a basis
    def __init__(self, basis):
        self.basis = basis
        cols = independent_rows(transpose(basis))
        self.cols = cols
        self.inv = inverse([[b[j] for j in cols] for b in basis])

    def __call__(self, x):
        xs = [x[j] for j in self.cols]
        k = len(self.basis)
        m = [sum(xs[i] * self.inv[i][t] for i in range(k)) for t in range(k)]
        if any(v.denominator != 1 for v in m):
            raise PolytopeError("vector outside the sublattice")
        return tuple(int(v) for v in m)


def polytope_from_cws(c):
    """Polytope {X : W X = 0, X_j >= -1, quotient congruences} in sublattice coordinates.

    The result is completed (all lattice points, standard order) and carries
    an ``embedding`` attribute: row j gives X_j as a linear form in the
    coordinates, i.e. the image of the j-th coordinate functional in the
    dual lattice.
    """
    basis = sublattice_basis(c)
    k = len(basis)
    coord = _Coordinatizer(basis)
    pts = []
    for y in _solutions(c.systems):
        x = [v - 1 for v in y]
        if any(dot(l, x) % r for r, l in c.quotients):
            continue
        pts.append(coord(x))
    if not pts:
        raise PolytopeError("the weight system has no lattice points")
    hull = hull_vertices(pts)
    if hull.affine_dim != k:
        raise PolytopeError("polytope is not full-dimensional in the sublattice")
    p = complete_points(LatticePolytope(hull.vertices, [True] * len(hull.vertices), k))
    p.embedding = transpose(basis)
    p.cws = c
    return p


def gorenstein_support_from_weights(c):
    """Support polytope {Y >= 0 : W Y = d} in coordinates of its affine lattice."""
    sols = _solutions(c.systems)
    if not sols:
        raise PolytopeError("the weight system has no lattice points")
    basis = sublattice_basis(c, with_quotients=False)
    coord = _Coordinatizer(basis)
    y0 = sols[0]
    pts = [coord([a - b for a, b in zip(y, y0)]) for y in sols]
    hull = hull_vertices(pts)
    if hull.affine_dim != len(basis):
        raise PolytopeError("support polytope is not full-dimensional")
    return complete_points(LatticePolytope(hull.vertices, [True] * len(hull.vertices), len(basis)))


def span_check(c, p):
    """True if every hyperplane X_j = -1 cuts out a facet of p."""
    emb = p.embedding
    verts = p.vertices
    k = p.dim
    for row in emb:
        tight = [[1] + list(v) for v in verts if dot(row, v) == -1]
        if rank(tight) < k:
            return False
    return True


def _normalize_phases(l, r, weights):
    best = None
    for w in weights:
        for t in range(r):
            cand = tuple((a + t * b) % r for a, b in zip(l, w))
            key = (-sum(1 for x in cand if x == 0), [-x for x in cand])
            if best is None or key < best[0]:
                best = (key, cand)
    return best[1] if best else tuple(x % r for x in l)


def reconstruct_cws(p):
    """A CWS whose polytope is dual to the given polytope in N.

    Weight systems are IP-simplex relations among the vertices; quotients
    describe the index of the vertex-generated lattice in N.
    """
    verts = [list(v) for v in p.vertices]
    nv = len(verts)
    d = p.dim
    rels = positive_relations(verts)
    need = nv - d
    rels.sort(key=lambda w: (sorted(w), w))
    chosen = []
    for w in rels:
        if rank(chosen + [w]) > len(chosen):
            chosen.append(w)
        if len(chosen) == need:
            break
    if len(chosen) < need:
        raise PolytopeError("vertices do not support enough IP simplices for a CWS")
    covered = [any(w[j] for w in chosen) for j in range(nv)]
    if not all(covered):
        raise PolytopeError("IP simplices do not cover all vertices")
    s, u, _ = smith_normal_form(verts)
    quotients = []
    for i in range(min(nv, d)):
        r = s[i][i]
        if r > 1:
            phases = tuple(x % r for x in u[i])
            quotients.append((r, _normalize_phases(phases, r, chosen)))
    if any(s[i][i] == 0 for i in range(min(nv, d))):
        raise PolytopeError("vertices do not span the lattice")
    quotients.sort(key=lambda q: (q[0], [-x for x in q[1]]))
    systems = [(sum(w), w) for w in chosen]
    return CWS(systems, quotients)


def quotient_index(c):
    """Index of the quotient sublattice inside {X : W X = 0}."""
    from .linalg import det
    full = sublattice_basis(c, with_quotients=False)
    sub = sublattice_basis(c)
    coord = _Coordinatizer(full)
    return abs(det([list(coord(v)) for v in sub]))

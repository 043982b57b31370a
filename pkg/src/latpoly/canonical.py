"""Normal forms of lattice polytopes and their symmetry counts."""

from itertools import permutations, product

from .linalg import hnf, transpose
from .polytope import PolytopeError, pairing_matrix


class NormalFormResult:
    def __init__(self, matrix, perm, gl_count, vpm_count):
        self.matrix = matrix
        self.perm = perm
        self.gl_count = gl_count
        self.vpm_count = vpm_count

    @property
    def symmetry_counts(self):
        return self.gl_count, self.vpm_count

    def __repr__(self):
        return f"NormalFormResult({self.matrix}, perm={self.perm}, sym={self.symmetry_counts})"


def _maximize(rows_matrix):
    """Staged lexicographic maximization over row and column permutations.

    Returns the maximal matrix and all pairs (row order, column order)
    realizing it.
    """
    nrows = len(rows_matrix)
    ncols = len(rows_matrix[0]) if nrows else 0
    states = [((), (tuple(range(ncols)),))]
    result = []
    for _ in range(nrows):
        best = None
        nxt = []
        for chosen, blocks in states:
            used = set(chosen)
            for i in range(nrows):
                if i in used:
                    continue
                row = rows_matrix[i]
                key = []
                for b in blocks:
                    key.extend(sorted((row[c] for c in b), reverse=True))
                key = tuple(key)
                if best is None or key > best:
                    best = key
                    nxt = [(chosen, blocks, i)]
                elif key == best:
                    nxt.append((chosen, blocks, i))
        result.append(best)
        states = []
        for chosen, blocks, i in nxt:
            row = rows_matrix[i]
            newb = []
            for b in blocks:
                vals = sorted(set(row[c] for c in b), reverse=True)
                for v in vals:
                    newb.append(tuple(c for c in b if row[c] == v))
            states.append((chosen + (i,), tuple(newb)))
    # columns that coincide in every row stay interchangeable
    expanded = []
    for chosen, blocks in states:
        expanded.extend(_block_orders(chosen, blocks))
    return [list(r) for r in result], expanded


def _block_orders(chosen, blocks):
    choices = [list(permutations(b)) if len(b) > 1 else [b] for b in blocks]
    out = []
    for combo in product(*choices):
        order = []
        for b in combo:
            order.extend(b)
        out.append((chosen, tuple(order)))
    return out


def vpm_canonical(vpm):
    """Canonical form of a pairing matrix given with vertices as rows.

    The canonical matrix has facets as rows and vertices as columns and is
    the lexicographic maximum over all row and column permutations.  Returns
    the matrix, the admissible vertex orderings and their number.
    """
    fm = transpose(vpm) if vpm else []
    canon, pairs = _maximize(fm)
    orders = sorted(set(cols for _, cols in pairs))
    return canon, orders, len(orders)


def _hnf_key(verts, order):
    m = transpose([list(verts[i]) for i in order])
    h = [r for r in hnf(m) if any(r)]
    return tuple(tuple(r) for r in h)


def _analyze(p, translate=False):
    if not p.full_dimensional:
        raise PolytopeError("normal form requires a full-dimensional polytope")
    verts = p.vertices
    _, orders, nvpm = vpm_canonical(pairing_matrix(p))
    # vertices far from the facets go last, which makes the leading
    # columns of the Hermite form as simple as possible
    orders = [tuple(reversed(o)) for o in orders]
    keys = []
    for order in orders:
        if translate:
            v0 = verts[order[0]]
            vs = [tuple(a - b for a, b in zip(v, v0)) for v in verts]
        else:
            vs = verts
        keys.append((_hnf_key(vs, order), order))
    return keys, nvpm


def normal_form(p):
    """GL(d, Z) normal form of the vertex matrix (rows are coordinates)."""
    keys, nvpm = _analyze(p)
    best, perm = min(keys)
    ngl = sum(1 for k, _ in keys if k == best)
    return NormalFormResult([list(r) for r in best], perm, ngl, nvpm)


def affine_normal_form(p):
    """Normal form under affine lattice isomorphisms."""
    keys, _ = _analyze(p, translate=True)
    best, _ = min(keys)
    return [list(r) for r in best]


def symmetry_counts(p):
    r = normal_form(p)
    return r.gl_count, r.vpm_count


def automorphisms(p):
    """Vertex permutations induced by lattice automorphisms of p.

    Each permutation g is a tuple with vertex i mapped to g[i].
    """
    keys, _ = _analyze(p)
    best, ref = min(keys)
    out = set()
    for k, order in keys:
        if k == best:
            g = [0] * len(ref)
            for a, b in zip(ref, order):
                g[a] = b
            out.add(tuple(g))
    return sorted(out)

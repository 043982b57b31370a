"""Polyhedral cones by exact double description.

Everything reduces to one primitive: the extreme rays of a pointed cone
{z : A z >= 0}.  Facets of a cone given by generators, minimal positive
relations and Mori cones are all phrased through it.
"""

from .linalg import (clear_denominators, det, dot, independent_rows, kernel_basis,
                     primitive, rank, solve, transpose)


def _popcount(x):
    return bin(x).count("1")


def extreme_rays(a):
    """Primitive extreme rays of the pointed cone {z : a_i . z >= 0 for all rows}.

    ``a`` must have full column rank.  Rays are returned in a deterministic
    order together with the bitmask of rows tight at each ray.
    """
    a = [list(r) for r in a]
    if not a:
        raise ValueError("no constraints")
    k = len(a[0])
    basis = independent_rows(a)
    if len(basis) < k:
        raise ValueError("cone is not pointed")
    b = [a[i] for i in basis]
    sgn = 1 if det(b) > 0 else -1
    rays = []
    for j in range(k):
        # column j of the adjugate: orthogonal to every basis row but row j
        minor = b[:j] + b[j + 1:]
        r = primitive([sgn * (-1) ** (i + j) * det([row[:i] + row[i + 1:] for row in minor])
                       for i in range(k)])
        z = 0
        for jj, bi in enumerate(basis):
            if jj != j:
                z |= 1 << bi
        rays.append((r, z))
    done = set(basis)
    order = [i for i in range(len(a)) if i not in done]
    for i in order:
        row = a[i]
        pos, zero, neg = [], [], []
        vals = {}
        for idx, (r, z) in enumerate(rays):
            s = dot(row, r)
            vals[idx] = s
            if s > 0:
                pos.append(idx)
            elif s < 0:
                neg.append(idx)
            else:
                zero.append(idx)
        if not neg:
            rays = [(r, z | (1 << i)) if vals[n] == 0 else (r, z)
                    for n, (r, z) in enumerate(rays)]
            continue
        new = []
        if pos:
            masks = [z for _, z in rays]
            for p in pos:
                rp, zp = rays[p]
                for n in neg:
                    rn, zn = rays[n]
                    common = zp & zn
                    if _popcount(common) < k - 2:
                        continue
                    adjacent = True
                    for q, zq in enumerate(masks):
                        if q != p and q != n and (zq & common) == common:
                            adjacent = False
                            break
                    if not adjacent:
                        continue
                    sp, sn = vals[p], vals[n]
                    r = primitive([sp * x - sn * y for x, y in zip(rn, rp)])
                    new.append((r, common | (1 << i)))
        kept = [(r, z | (1 << i)) if vals[idx] == 0 else (r, z)
                for idx, (r, z) in enumerate(rays) if vals[idx] >= 0]
        rays = kept + new
        done.add(i)
    out = []
    for r, _ in rays:
        z = 0
        for i, row in enumerate(a):
            if dot(row, r) == 0:
                z |= 1 << i
        out.append((r, z))
    out.sort(key=lambda t: t[0], reverse=True)
    return out


def cone_facets(generators):
    """Inward primitive facet normals of the full-dimensional cone spanned by generators."""
    gens = [list(g) for g in generators]
    if rank(gens) < len(gens[0]):
        raise ValueError("cone is not full-dimensional")
    return [r for r, _ in extreme_rays(gens)]


def positive_relations(points):
    """Extreme rays of {x >= 0 : sum x_i points_i = 0}.

    These are exactly the inclusion-minimal positive linear relations among
    the points.  Returned as primitive nonnegative integer vectors.
    """
    pts = [list(p) for p in points]
    n = len(pts)
    if n == 0:
        return []
    ker = kernel_basis(pts)
    if not ker:
        return []
    # x = z . ker ; constraints x_i >= 0 become column i of ker
    cons = transpose(ker)
    if rank(cons) < len(ker):
        return []
    out = []
    for z, _ in extreme_rays(cons):
        x = [sum(z[j] * ker[j][i] for j in range(len(ker))) for i in range(n)]
        out.append(primitive(x))
    return out


def is_pointed_generated(vectors):
    """True if the cone generated by the vectors contains no line."""
    vecs = [list(v) for v in vectors if any(v)]
    if not vecs:
        return True
    # pointed iff no nonzero nonnegative combination vanishes
    return not positive_relations(vecs)


def generated_cone_rays(vectors):
    """Extreme rays and facet normals of the cone generated by the vectors.

    Works in coordinates of the real span, so the cone need not be
    full-dimensional in the ambient space, but it must be pointed.  Returns
    ``(rays, facets, basis)`` where facets are given in the span coordinates
    of ``basis`` (rows).
    """
    vecs = [list(v) for v in vectors if any(v)]
    basis = [vecs[i] for i in independent_rows(vecs)]
    coords = [solve(transpose(basis), v) for v in vecs]
    coords = [clear_denominators(c) if any(c) else c for c in coords]
    facets = [r for r, _ in extreme_rays(coords)]
    rays_c = [r for r, _ in extreme_rays(facets)]
    rays = []
    for c in rays_c:
        v = [sum(c[j] * basis[j][i] for j in range(len(basis))) for i in range(len(basis[0]))]
        rays.append(primitive(v))
    return rays, facets, basis

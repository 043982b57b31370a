"""Exact integer and rational linear algebra.

Matrices are lists of rows of Python ints; nothing here uses floating point.
"""

from fractions import Fraction
from math import gcd


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(col) for col in zip(*m)]


def mat_mul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(m, v):
    return [sum(x * y for x, y in zip(row, v)) for row in m]


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def vec_gcd(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v):
    """Divide an integer vector by the gcd of its entries."""
    g = vec_gcd(v)
    if g <= 1:
        return list(v)
    return [x // g for x in v]


def clear_denominators(v):
    """Smallest positive integer multiple of a rational vector, made primitive."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return primitive([int(Fraction(x) * den) for x in v])


def _xgcd(a, b):
    # returns (g, s, t) with s*a + t*b = g >= 0
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def hermite_normal_form(m):
    """Row-echelon Hermite form.

    Returns ``(h, u)`` with ``u`` unimodular and ``u * m == h``.  Pivots are
    positive and every entry above a pivot lies in ``[0, pivot)``; zero rows
    are collected at the bottom.
    """
    h = [list(r) for r in m]
    nrows = len(h)
    ncols = len(h[0]) if nrows else 0
    u = identity(nrows)
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        for i in range(row + 1, nrows):
            if h[i][col] == 0:
                continue
            a, b = h[row][col], h[i][col]
            g, s, t = _xgcd(a, b)
            x, y = a // g, b // g
            # [[s, t], [-y, x]] has determinant 1
            for mat in (h, u):
                ri, rj = mat[row], mat[i]
                mat[row] = [s * p + t * q for p, q in zip(ri, rj)]
                mat[i] = [-y * p + x * q for p, q in zip(ri, rj)]
        piv = h[row][col]
        if piv == 0:
            continue
        if piv < 0:
            h[row] = [-x for x in h[row]]
            u[row] = [-x for x in u[row]]
            piv = -piv
        for i in range(row):
            q = h[i][col] // piv
            if q:
                h[i] = [p - q * r for p, r in zip(h[i], h[row])]
                u[i] = [p - q * r for p, r in zip(u[i], u[row])]
        row += 1
    return h, u


def hnf(m):
    """Just the Hermite form of ``m``."""
    return hermite_normal_form(m)[0]


def smith_normal_form(m):
    """Return ``(s, u, v)`` with ``u * m * v == s`` diagonal and d1 | d2 | ...."""
    s = [list(r) for r in m]
    nr = len(s)
    nc = len(s[0]) if nr else 0
    u = identity(nr)
    v = identity(nc)

    def row_op(i, j, a, b, c, d):
        # rows (i, j) <- (a*ri + b*rj, c*ri + d*rj)
        for mat in (s, u):
            ri, rj = mat[i], mat[j]
            mat[i] = [a * x + b * y for x, y in zip(ri, rj)]
            mat[j] = [c * x + d * y for x, y in zip(ri, rj)]

    def col_op(i, j, a, b, c, d):
        for mat in (s, v):
            for r in mat:
                x, y = r[i], r[j]
                r[i] = a * x + b * y
                r[j] = c * x + d * y

    t = 0
    while t < min(nr, nc):
        # choose a pivot of smallest absolute value in the remaining block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if s[i][j] and (best is None or abs(s[i][j]) < abs(s[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        if i != t:
            s[t], s[i] = s[i], s[t]
            u[t], u[i] = u[i], u[t]
        if j != t:
            col_op(t, j, 0, 1, 1, 0)
        done = False
        while not done:
            done = True
            for i in range(t + 1, nr):
                if s[i][t]:
                    if s[i][t] % s[t][t] == 0:
                        # plain elimination keeps row t intact
                        row_op(t, i, 1, 0, -(s[i][t] // s[t][t]), 1)
                        continue
                    g, a, b = _xgcd(s[t][t], s[i][t])
                    x, y = s[t][t] // g, s[i][t] // g
                    row_op(t, i, a, b, -y, x)
            for j in range(t + 1, nc):
                if s[t][j]:
                    if s[t][j] % s[t][t] == 0:
                        col_op(t, j, 1, 0, -(s[t][j] // s[t][t]), 1)
                        continue
                    g, a, b = _xgcd(s[t][t], s[t][j])
                    x, y = s[t][t] // g, s[t][j] // g
                    col_op(t, j, a, b, -y, x)
                    done = False
            if any(s[i][t] for i in range(t + 1, nr)):
                done = False
            if done:
                # enforce divisibility of the remaining block
                piv = s[t][t]
                for i in range(t + 1, nr):
                    if any(x % piv for x in s[i][t + 1:]):
                        row_op(t, i, 1, 1, 0, 1)
                        done = False
                        break
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return s, u, v


def invariant_factors(m):
    s = smith_normal_form(m)[0]
    return [s[i][i] for i in range(min(len(s), len(s[0]) if s else 0)) if s[i][i]]


def kernel_basis(m):
    """Saturated basis (rows) of the integer left kernel {x : x * m = 0}."""
    if not m:
        return []
    h, u = hermite_normal_form(m)
    return [urow for urow, hrow in zip(u, h) if not any(hrow)]


def rank(m):
    return len(row_echelon(m))


def row_echelon(m):
    """Nonzero rows of a fraction-free echelon form."""
    rows = [list(r) for r in m if any(r)]
    out = []
    col = 0
    ncols = len(m[0]) if m else 0
    while rows and col < ncols:
        piv = next((r for r in rows if r[col]), None)
        if piv is None:
            col += 1
            continue
        rows.remove(piv)
        new = []
        for r in rows:
            if r[col]:
                r = [piv[col] * x - r[col] * y for x, y in zip(r, piv)]
                r = primitive(r)
            if any(r):
                new.append(r)
        rows = new
        out.append(piv)
        col += 1
    return out


def det(m):
    """Determinant by fraction-free Bareiss elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve(a, b):
    """Some rational solution x of a * x = b, or None if inconsistent."""
    n = len(a[0]) if a else 0
    rows = [[Fraction(x) for x in r] + [Fraction(y)] for r, y in zip(a, b)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] != 0 for row in rows[r:]):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][-1]
    return x


def inverse(m):
    n = len(m)
    cols = [solve(m, [int(i == j) for i in range(n)]) for j in range(n)]
    return transpose(cols)


def independent_rows(m):
    """Indices of a maximal linearly independent subset of rows, greedy in order."""
    chosen = []
    basis = []
    for i, r in enumerate(m):
        if rank(basis + [r]) > len(basis):
            basis.append(list(r))
            chosen.append(i)
    return chosen


def saturated_span(vectors):
    """Basis of the lattice Z^d intersected with the real span of the vectors."""
    vectors = [list(v) for v in vectors if any(v)]
    if not vectors:
        return []
    d = len(vectors[0])
    ann = kernel_basis(transpose(vectors))
    if not ann:
        return identity(d)
    return kernel_basis(transpose(ann))


def coordinates(basis, v):
    """Integer coordinates of v in a lattice basis (rows), or None."""
    x = solve(transpose(basis), v)
    if x is None or any(c.denominator != 1 for c in x):
        return None
    return [int(c) for c in x]


class RatVector:
    """Rational vector stored as integer numerators over a common denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = [-x for x in num]
            den = -den
        g = gcd(vec_gcd(num), den)
        if g > 1:
            num = [x // g for x in num]
            den //= g
        self.num = tuple(num)
        self.den = den

    @classmethod
    def from_fractions(cls, fracs):
        den = 1
        for f in fracs:
            f = Fraction(f)
            den = den * f.denominator // gcd(den, f.denominator)
        return cls([int(Fraction(f) * den) for f in fracs], den)

    def fractions(self):
        return [Fraction(x, self.den) for x in self.num]

    def __eq__(self, other):
        return isinstance(other, RatVector) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatVector({list(self.num)}, {self.den})"

    def __str__(self):
        body = "(" + ",".join(str(x) for x in self.num) + ")"
        return body if self.den == 1 else f"{body}/{self.den}"

"""`latpoly poly`: analysis of a single lattice polytope."""

from ..canonical import affine_normal_form, normal_form, vpm_canonical
from ..cone import cone_facets
from ..cws import polytope_from_cws, span_check
from ..hodge import hodge_numbers
from ..linalg import dot, hermite_normal_form, rank, solve, transpose
from ..nef import _hyperplane_points
from ..polytope import (LatticePolytope, PolytopeError, complete_points,
                        divisibility, dual, facet_coordinates, hull_vertices,
                        incidence_structure, is_ip, is_reflexive,
                        pairing_matrix, unimodular_image, volume_barycenter)
from ..simplices import fibration_scan, ip_simplices, lattice_quotient, simplex_quotients
from .io import PROMPT_BOTH, CapabilityError, ParseError, matrix_lines, write_matrix
from .main import run_records

HELP = """latpoly poly [-<Option-string>] [in-file [out-file]]
Options (concatenate any number of them into <Option-string>):
h  print this information
f  use as filter
g  general output: numbers of (dual) points/vertices and Hodge data
   (reflexive) or numbers of points, vertices, equations
p  points of P
v  vertices of P
e  equations of P / vertices of P-dual
m  pairing matrix between vertices and equations
d  points of P-dual (only if P reflexive)
a  all of the above except h, f  (= gpvemd)
r  ignore non-reflexive input
D  dual polytope as input (reflexive only)
n  do not complete polytope or calculate Hodge numbers
i  incidence information
s  check for span property (only if P from CWS)
I  check for IP property
S  number of symmetries
T  upper triangular form (needs an output option)
N  normal form
t  traced normal form computation
V  IP simplices among vertices of P*
P  IP simplices among points of P* (with 1<=codim<=# when # is set)
Z  lattice quotients for IP simplices
#  #=1,2,3  fibers spanned by IP simplices with codim<=#
A  affine normal form
B  barycenter and lattice volume [B#: cone points up to level #]
F  print all facets
G  Gorenstein: divisible by I>1
Not available: l, L (Landau-Ginzburg data), U, U1, U5 (Fano facet tests),
C1, C2 (conifold searches), E (Einstein-Kaehler symmetries),
## (nested fibration searches)."""

OUTPUT = set("gpvemdisISNtVPABFG#")
OUT_OF_SCOPE = {
    "l": "Landau-Ginzburg Hodge data",
    "L": "Landau-Ginzburg Hodge data",
    "U": "Fano facet tests",
    "C": "conifold searches",
    "E": "Einstein-Kaehler symmetry tests",
}
KNOWN = set("hfgpvemdarDniIsSTNtVPZABFG")


def prompt(opts):
    return PROMPT_BOTH


def parse_flags(opts, args):
    for a in args:
        if not a.startswith("-") or a == "-":
            if a == "-":
                opts.filter = True
            else:
                opts.files.append(a)
            continue
        s = a[1:]
        i = 0
        while i < len(s):
            c = s[i]
            i += 1
            j = i
            while j < len(s) and s[j].isdigit():
                j += 1
            digits = s[i:j]
            if c.isdigit():
                num = c + digits
                i = j
                if len(num) > 1:
                    raise CapabilityError(f"option -{num}: nested fibration searches are out of scope")
                if num not in "123":
                    raise ParseError(f"option -{num}: fibration codimension must be 1, 2 or 3")
                opts.flags["#"] = int(num)
            elif c in OUT_OF_SCOPE:
                raise CapabilityError(f"option -{c}{digits}: {OUT_OF_SCOPE[c]} are out of scope")
            elif c == "B":
                i = j
                opts.flags["B"] = int(digits) if digits else 0
            elif c in KNOWN:
                opts.flags[c] = True
            else:
                raise ParseError(f"unknown option -{c}")
    if "f" in opts.flags:
        opts.filter = True
    if "a" in opts.flags:
        for c in "gpvemd":
            opts.flags[c] = True
    if not OUTPUT & set(opts.flags):
        if "T" in opts.flags:
            raise ParseError("-T only makes sense together with an output option such as -v")
        opts.flags["g"] = True


def _full(points):
    hv = hull_vertices(points)
    if not hv.full_dimensional:
        raise PolytopeError(f"input spans only a {hv.affine_dim}-dimensional affine subspace")
    return LatticePolytope(hv.vertices, [True] * len(hv.vertices), hv.dim)


def _triangular(p, cols):
    _, u = hermite_normal_form(transpose([list(c) for c in cols]))
    return unimodular_image(p, u)


def _canonical_basis(p):
    nf = normal_form(p)
    verts = p.vertices
    _, u = hermite_normal_form(transpose([list(verts[i]) for i in nf.perm]))
    return unimodular_image(p, u)


def load(opts, rec):
    """Return (P, P* or None, echo text, input point count)."""
    echo = None
    if rec.is_cws:
        c = rec.cws()
        p = polytope_from_cws(c)
        echo = str(c)
        given = p
        npts_in = len(p.points)
    else:
        given = _full(rec.points)
        npts_in = len(rec.points)
    if "T" in opts:
        cols = rec.points if not rec.is_cws else given.vertices
        given = _triangular(given, cols)
    if "D" in opts:
        if not is_reflexive(given):
            raise PolytopeError("dual input requires a reflexive polytope")
        pstar = given
        p = LatticePolytope([a for a, _ in given.facets()], [True] * len(given.facets()), given.dim)
        p._facets = [(tuple(v), 1) for v in given.vertices]
    else:
        p = given
        pstar = None
    if opts.normal_form:
        p = _canonical_basis(p)
        pstar = None
    if not is_reflexive(p):
        pstar = None
    elif pstar is None:
        pstar = dual(p)
    if "n" not in opts:
        p = p if p.complete else complete_points(p)
    return p, pstar, echo, npts_in


def _hodge_text(p):
    d = p.dim
    if d < 3:
        return ""
    h = hodge_numbers(p)
    if d == 3:
        return f" Pic:{h.h11} Cor:{h.correction}"
    if d == 4:
        return f" H:{h.h11},{h.h1_dm2} [{h.euler}]"
    return f" H:{h.h11},{h.h1_dm2} (h11,h1{d - 2})"


def general_line(opts, p, pstar, echo, npts_in):
    pre = echo + " " if echo else ""
    nv = len(p.vertices)
    if "n" in opts:
        return f"{pre}M:{npts_in} {nv} F:{len(p.facets())}"
    if pstar is None:
        return f"{pre}M:{len(p.points)} {nv} F:{len(p.facets())}"
    q = complete_points(pstar)
    return f"{pre}M:{len(p.points)} {nv} N:{len(q.points)} {len(q.vertices)}" + _hodge_text(p)


def _equations(out, p, reflexive):
    fs = p.facets()
    d = p.dim
    if reflexive:
        out.append(f"{len(fs)} {d}  Vertices of P-dual <-> Equations of P")
        for a, _ in fs:
            out.append("".join(f"{x:4d}" for x in a))
    else:
        out.append(f"{len(fs)} {d}  Equations of P")
        for a, c in fs:
            out.append("".join(f"{x:4d}" for x in a) + f"{c:6d}")


def _incidences(out, p):
    inc = incidence_structure(p)
    nv, nf = len(p.vertices), len(p.facets())
    out.append(f"Incidences as binary numbers [F-vector=({' '.join(map(str, inc.f_vector()))})]:")
    out.append("v[d][i]: sum_j Incidence(i'th dim-d-face, j-th vertex) x 2^j")
    for k, lst in enumerate(inc.faces):
        out.append(f"v[{k}]: " + " ".join(format(vb, f"0{nv}b") for vb, _ in lst))
    out.append("f[d][i]: sum_j Incidence(i'th dim-d-face, j-th facet) x 2^j")
    for k, lst in enumerate(inc.faces):
        out.append(f"f[{k}]: " + " ".join(format(fb, f"0{nf}b") for _, fb in lst))


def _perm_text(perm):
    if all(i < 10 for i in perm):
        return "".join(str(i) for i in perm)
    return " ".join(str(i) for i in perm)


def ip_simplex_block(out, points, title, sep, max_codim=None, quotients=False, min_codim=0):
    """Points (origin included when given) followed by IP simplices among the nonzero ones."""
    d = len(points[0])
    nz = [q for q in points if any(q)]
    sims = ip_simplices(nz, max_codim=max_codim, min_codim=min_codim)
    out.append(f"{d} {len(points)}  {title}")
    out.extend(matrix_lines(points, 5))
    tail = f"{sep}#IP-simp={len(sims)}"
    if quotients:
        index, gens = lattice_quotient(nz, [s.weights for s in sims])
        if index > 1:
            tail += f" I={index}" + "".join(
                f" /Z{r}: " + " ".join(map(str, ph)) for r, ph in gens)
    out.append("-" * (5 * len(nz)) + tail)
    for s in sims:
        line = "".join(f"{w:5d}" for w in s.weights) + f"{s.degree:4d}=d  codim={s.codim}"
        if quotients:
            index, gens = simplex_quotients(s, nz)
            if index > 1:
                line += "".join(f" /Z{r}: " + " ".join(map(str, ph)) for r, ph in gens)
        out.append(line)
    return sims


def fibration_block(out, pstar, max_codim):
    q = complete_points(pstar)
    nz = [x for x in q.points if any(x)]
    recs = fibration_scan(q, max_codim)
    out.append("-" * (5 * len(nz)) + f" #fibrations={len(recs)}")
    out.extend(r.line() for r in recs)


def cone_levels(out, p, kmax):
    """Points of the cone over the nonzero vertices up to level kmax with face codimensions."""
    verts = [v for v in p.vertices if any(v)]
    deg = solve([list(v) for v in verts], [1] * len(verts))
    if deg is None or any(x.denominator != 1 for x in deg) or rank(verts) != p.dim:
        raise PolytopeError("-B# needs the nonzero vertices on a lattice hyperplane at height 1")
    deg = [int(x) for x in deg]
    n = p.dim
    normals = cone_facets(verts)
    out.append("IPs:")
    for k in range(kmax, -1, -1):
        pts = _hyperplane_points(verts, deg, k) if k else [tuple([0] * n)]
        for x in sorted(pts, reverse=True):
            tight = [a for a in normals if dot(a, x) == 0]
            on = [v for v in verts if all(dot(a, v) == 0 for a in tight)]
            cd = n - (rank(on) if on else 0)
            out.append(" " + " ".join(str(c) for c in x) + f"  cd={cd}")


def render(opts, rec):
    p, pstar, echo, npts_in = load(opts, rec)
    reflexive = pstar is not None
    if "r" in opts and not reflexive:
        return "", None
    out = []
    d = p.dim
    if "g" in opts:
        out.append(general_line(opts, p, pstar, echo, npts_in))
    if "p" in opts:
        pts = p.points if "n" not in opts or rec.is_cws else list(rec.points)
        write_lines(out, pts, "Points of P")
    if "v" in opts:
        write_lines(out, p.vertices, "Vertices of P")
    if "e" in opts:
        _equations(out, p, reflexive)
    if "m" in opts:
        pm = pairing_matrix(p)
        out.append(f"{len(pm)} {len(pm[0])}  Pairing matrix of vertices and equations of P")
        out.extend("".join(f"{x:4d}" for x in row) for row in pm)
    if "d" in opts and reflexive:
        write_lines(out, complete_points(pstar).points, "Points of P-dual")
    if "i" in opts:
        _incidences(out, p)
    if "s" in opts and rec.is_cws:
        base = polytope_from_cws(rec.cws())
        if not span_check(base.cws, base):
            out.append("No span property: some X_i = -1 does not cut out a facet")
    if "I" in opts and not is_ip(p):
        out.append("P does not have the IP property")
    if "S" in opts or "N" in opts or "t" in opts:
        nf = normal_form(p)
    if "t" in opts:
        canon, _, nvpm = vpm_canonical(pairing_matrix(p))
        out.append(f"{len(canon)} {len(canon[0])}  normal form of the pairing matrix (facets x vertices)")
        out.extend("".join(f"{x:4d}" for x in row) for row in canon)
        out.append(f"#VPM-symmetries={nvpm}  #GL(Z,{d})-symmetries={nf.gl_count}"
                   f"  vertex order={_perm_text(nf.perm)}")
    if "S" in opts:
        out.append(f"#GL(Z,{d})-Symmetries={nf.gl_count}, #VPM-Symmetries={nf.vpm_count}")
    if "N" in opts or "t" in opts:
        out.append(f"{d} {len(p.vertices)}  Normal form of vertices of P    perm={_perm_text(nf.perm)}")
        out.extend("".join(f"{x:4d}" for x in row) for row in nf.matrix)
    fib = opts.get("#")
    if "V" in opts or "P" in opts or fib:
        if not reflexive:
            raise PolytopeError("IP simplices and fibrations of P-dual need a reflexive P")
        if "V" in opts:
            ip_simplex_block(out, pstar.vertices, "vertices of P-dual and IP-simplices", "   ",
                             quotients="Z" in opts)
        if "P" in opts:
            q = complete_points(pstar)
            ip_simplex_block(out, q.points, "points of P-dual and IP-simplices", "    ",
                             max_codim=fib, min_codim=1 if fib else 0, quotients="Z" in opts)
        if fib:
            fibration_block(out, pstar, fib)
    if "A" in opts:
        anf = affine_normal_form(p)
        out.append(f"{d} {len(p.vertices)}  Affine normal form of vertices of P")
        out.extend("".join(f"{x:4d}" for x in row) for row in anf)
    if "B" in opts:
        vol, bary = volume_barycenter(p)
        out.append(f"vol={vol}, baricent=(" + ",".join(map(str, bary.num)) + f")/{bary.den}")
        if opts.get("B"):
            cone_levels(out, p, opts.get("B"))
    if "F" in opts:
        for j in range(len(p.facets())):
            coords = facet_coordinates(p, j)
            write_lines(out, coords, f"Vertices of facet {j}")
    if "G" in opts:
        g = divisibility(p)
        if g > 1:
            write_lines(out, p.vertices, f"Vertices of P = {g} * Q")
    return "".join(line + "\n" for line in out), None


def write_lines(out, cols, title):
    d = len(cols[0]) if cols else 0
    out.append(f"{d} {len(cols)}  {title}")
    out.extend(matrix_lines(cols, 4))


def run(opts, reader, out):
    return run_records(render, opts, reader, out)


__all__ = ["render", "run", "parse_flags", "HELP", "write_matrix"]

"""`latpoly mori`: star triangulations, Stanley-Reisner ideals and Mori cones."""

import sys

from ..cws import polytope_from_cws
from ..hodge import hodge_numbers
from ..mori import (TriangulationError, auto_star_triangulations, bits, kreuzer_polynomial,
                    mori_generators, relevant_points, sr_ideal, validate_triangulation)
from ..polytope import (LatticePolytope, PolytopeError, complete_points, dual,
                        hull_vertices, is_reflexive)
from ..simplices import ip_simplices
from .io import PROMPT_CWS, PROMPT_MATRIX, CapabilityError, ParseError, matrix_lines
from .main import run_records
from .nef import _input_order_polytope

HELP = """latpoly mori [-<Option-string>] [in-file [out-file]]
                 star triangulations of a polytope P* in N
                 Mori cone of the corresponding toric ambient spaces
Options (concatenate any number of them into <Option-string>):
 -h    print this information
 -f    use as filter
 -g    general output: triangulation and Stanley-Reisner ideal
 -I    incidence information of the facets (ignoring IPs of facets)
 -m    Mori generators of the ambient space
 -P    IP-simplices among points of P* (ignoring IPs of facets)
 -K    points of P* in Kreuzer polynomial form
 -D    lattice polytope points of P* as input (default CWS)
 -M    Stanley-Reisner ideal and Mori generators with an
       arbitrary triangulation as input; must be combined with -D
Input: 1) standard: degrees and weights
          `d1 w11 w12 ... d2 w21 w22 ...'
       2) alternative (use -D): `d np' or `np d'
          (d=Dimension, np=#[points]) and (after newline) np*d
          coordinates
Facets with more than --max-facet-points relevant points are not
triangulated automatically; use -M for those.
Not available: -b, -i, -c, -t, -d, -a, -H (intersection rings, Chern
classes, arithmetic genera, del Pezzo data)."""

OUT_OF_SCOPE = set("bictdaH")
KNOWN = set("hfgImPKDM")


def prompt(opts):
    return PROMPT_MATRIX if "D" in opts else PROMPT_CWS


def parse_flags(opts, args):
    for a in args:
        if a == "-":
            opts.filter = True
            continue
        if not a.startswith("-"):
            opts.files.append(a)
            continue
        for c in a[1:]:
            if c in OUT_OF_SCOPE:
                raise CapabilityError(
                    f"option -{c}: intersection rings, Chern classes and related"
                    " topological data are out of scope")
            if c not in KNOWN:
                raise ParseError(f"unknown option -{c}")
            opts.flags[c] = True
    if "f" in opts.flags:
        opts.filter = True
    if "M" in opts.flags and "K" in opts.flags:
        raise ParseError("the combination -MK is not allowed")
    if "M" in opts.flags and "D" not in opts.flags:
        raise ParseError("-M must be combined with -D")
    if not set("gImPK") & set(opts.flags):
        opts.flags["g"] = True


def load(opts, rec):
    """Return (P* completed, M polytope)."""
    if rec.is_cws:
        m = polytope_from_cws(rec.cws())
        if not is_reflexive(m):
            raise PolytopeError("the weight system does not define a reflexive polytope")
        return complete_points(dual(m)), m
    p = _input_order_polytope(rec.points)
    if not is_reflexive(p):
        raise PolytopeError("P* must be reflexive")
    return complete_points(p), complete_points(dual(p))


def simplex_block(out, points, nrel, title=True):
    d = len(points[0])
    rel = points[:nrel]
    sims = ip_simplices(rel)
    if title:
        out.append(f"{d} {len(points)}  points of P* and IP-simplices")
        out.extend(matrix_lines(points, 5))
    out.append("-" * (5 * nrel) + f"   #IP-simp={len(sims)}")
    for s in sims:
        out.append("".join(f"{w:5d}" for w in s.weights) + f"{s.degree:4d}=d  codim={s.codim}")


def triangulation_lines(out, t, show_simplices=True):
    if show_simplices:
        out.append(f"{len(t.simplices)} Triangulation")
        out.append(" ".join(t.bitsets()))
    sr = sr_ideal(t).bitsets()
    out.append(f"{len(sr)} SR-ideal")
    for i in range(0, len(sr), 8):
        out.append(" ".join(sr[i:i + 8]))


def mori_lines(out, t):
    mc = mori_generators(t)
    out.append(f"{len(mc.generators)} MORI GENERATORS / dim(cone)={mc.dim} ")
    for g, inc in zip(mc.generators, mc.incidence):
        out.append("".join(f"{x:3d}" for x in g) + f"   I:{inc}")


def render(opts, rec):
    pstar, m = load(opts, rec)
    pts, rel = relevant_points(pstar)
    out = []
    if "P" in opts:
        simplex_block(out, pstar.points, len(rel))
    if "I" in opts:
        n = len(rel)
        rows = []
        for a, c in pstar.facets():
            rows.append(bits([i for i in rel if sum(x * y for x, y in zip(a, pts[i])) + c == 0], n))
        out.append("Incidence: " + " ".join(rows))
    if "K" in opts:
        kp = kreuzer_polynomial([pts[i] for i in rel], [pstar.vertex_flags[i] for i in rel])
        intpts = len(pts) - len(rel)
        out.append(f"KreuzerPoly={kp}; ")
        out.append(f"intpts={intpts};  Pic={hodge_numbers(m).h11}")
    if "g" in opts or "m" in opts:
        for t in auto_star_triangulations(pstar):
            if "g" in opts:
                triangulation_lines(out, t)
            if "m" in opts:
                mori_lines(out, t)
    return "".join(s + "\n" for s in out), None


def _points_with_origin(points):
    d = len(points[0])
    origin = tuple([0] * d)
    pts = list(points)
    if origin in pts:
        i = pts.index(origin)
        pts[i], pts[-1] = pts[-1], pts[i]
    else:
        pts.append(origin)
    return pts


def _read_tokens(reader, count, what):
    toks = []
    while len(toks) < count:
        line = reader.readline()
        if line is None:
            raise ParseError(f"end of input while reading {what}", reader.lineno)
        toks.extend((t, reader.lineno) for t in line.split())
    return toks


def read_triangulations(reader, nz):
    reader.say("`#triangulations': ")
    toks = _read_tokens(reader, 1, "the number of triangulations")
    try:
        k = int(toks[0][0])
    except ValueError:
        raise ParseError(f"expected the number of triangulations, got {toks[0][0]!r}",
                         toks[0][1]) from None
    out = []
    for _ in range(k):
        head = _read_tokens(reader, 1, "a triangulation")
        try:
            ns = int(head[0][0])
        except ValueError:
            raise ParseError(f"expected the number of simplices, got {head[0][0]!r}",
                             head[0][1]) from None
        toks = head[1:]
        if len(toks) < ns:
            toks += _read_tokens(reader, ns - len(toks), "simplex bit strings")
        sims = []
        for t, line in toks[:ns]:
            if len(t) != nz or set(t) - {"0", "1"}:
                raise ParseError(f"simplex {t!r} is not a bit string of length {nz}", line)
            sims.append(t)
        out.append(sims)
    return k, out


def run_manual(opts, reader, out):
    """-M: triangulations are read from the input after each polytope."""
    rc = 0
    for rec in reader.records(allow_cws=False):
        pts = _points_with_origin(rec.points)
        nz = pts[:-1]
        d = len(pts[0])
        lines = []
        if "P" in opts:
            simplex_block(lines, pts, len(nz))
        else:
            lines.append(f"{d} {len(pts)}  ")
            lines.extend(matrix_lines(pts, 5))
        if "I" in opts:
            lines.append(incidence_line(nz))
        out.write("".join(s + "\n" for s in lines))
        out.flush()
        k, tris = read_triangulations(reader, len(nz))
        out.write(f"{k} triangulations:\n")
        for sims in tris:
            lines = []
            try:
                t = validate_triangulation(nz, sims)
                if "g" in opts:
                    triangulation_lines(lines, t, show_simplices=False)
                if "m" in opts:
                    mori_lines(lines, t)
            except (TriangulationError, PolytopeError) as e:
                sys.stderr.write(f"latpoly mori: line {reader.lineno}: {e}\n")
                rc = 2
            out.write("".join(s + "\n" for s in lines))
            out.flush()
    return rc


def incidence_line(nz):
    hv = hull_vertices(nz)
    p = LatticePolytope(hv.vertices, [True] * len(hv.vertices), hv.dim)
    rows = []
    for a, c in p.facets():
        rows.append(bits([i for i, q in enumerate(nz)
                          if sum(x * y for x, y in zip(a, q)) + c == 0], len(nz)))
    return "Incidence: " + " ".join(rows)


def run(opts, reader, out):
    if "M" in opts:
        return run_manual(opts, reader, out)
    kw = {"allow_matrix": "D" in opts, "allow_cws": "D" not in opts}
    return run_records(render, opts, reader, out, read_kw=kw)

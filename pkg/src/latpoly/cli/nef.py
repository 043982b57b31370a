"""`latpoly nef`: nef partitions, their Gorenstein cones and fibrations."""

import sys
import time

from ..cone import positive_relations
from ..cws import gorenstein_support_from_weights, parse_gorenstein_weights, polytope_from_cws
from ..hodge import hodge_numbers
from ..linalg import rank
from ..nef import (_delta_parts, dual_gorenstein, enumerate_nef_partitions,
                   gorenstein_lift, gorenstein_mode, nef_cones, partition_degrees,
                   s_t_polynomials)
from ..polytope import (LatticePolytope, PolytopeError, complete_points, dual,
                        hull_vertices, is_reflexive)
from ..simplices import fibration_scan
from .io import PROMPT_BOTH, CapabilityError, ParseError, matrix_lines
from .main import run_records

HELP = """latpoly nef <Options> [in-file [out-file]]
Options (each as a separate argument):
-h        prints this information
-f or -   use as filter; otherwise parameters denote I/O files
-N        input is in N-lattice (default is M)
-Lv       prints L vector of Vertices (in N-lattice)
-Lp       prints L vector of Points (in N-lattice)
-p        prints only partitions, no Hodge numbers
-D        calculates also direct products
-P        calculates also projections
-cCODIM   codimension (default = 2)
-Fcodim   fibrations up to codim (default = 2)
-y        prints poly/CWS in M lattice if it has nef-partitions
-S        information about #points calculated in S-Poly
-T        checks Serre-duality
-s        don't remove symmetric nef-partitions
-n        prints polytope only if it has nef-partitions
-v        prints vertices and #points of input polytope in one
          line; with -u, -l the output is limited by #points:
    -uPOINTS  ... upper limit of #points (default = no limit)
    -lPOINTS  ... lower limit of #points (default = 0)
-R        prints vertices of input if not reflexive
-V        prints vertices of N-lattice polytope
-Q        only direct products (up to lattice Quotient)
-gNUMBER  prints points of Gorenstein polytope in N-lattice
-dNUMBER  prints points of Gorenstein polytope in M-lattice
      if NUMBER = 0 ... no            0/1 info
      if NUMBER = 1 ... no redundant  0/1 info (=default)
      if NUMBER = 2 ... full          0/1 info
-G        Gorenstein cone: input <-> support polytope
Hodge numbers are printed for hypersurfaces (-c1) and for complete
intersections of dimension 1 and 2 only.
Not available: -H (Hodge diamond), -t (timing breakdown), -m (Minkowski
sum degree splits)."""

OUT_OF_SCOPE = {
    "H": "the full Hodge diamond needs stringy E-polynomials, which are out of scope",
    "t": "the timing breakdown of E-polynomial computations is out of scope",
    "m": "Minkowski-sum degree splits are out of scope",
}
PLAIN = set("fNpDPySTsnvRVQGh")
NUMERIC = {"c": None, "F": 2, "u": None, "l": None, "g": 1, "d": 1}


def prompt(opts):
    return PROMPT_BOTH


def parse_flags(opts, args):
    for a in args:
        if a == "-":
            opts.filter = True
            continue
        if not a.startswith("-"):
            opts.files.append(a)
            continue
        s = a[1:]
        c, tail = s[:1], s[1:]
        if c in OUT_OF_SCOPE:
            raise CapabilityError(f"option {a}: {OUT_OF_SCOPE[c]}")
        if c == "L" and tail in ("v", "p"):
            opts.flags["L" + tail] = True
        elif c in NUMERIC:
            if tail and not tail.isdigit():
                raise ParseError(f"option {a} needs a non-negative integer")
            if not tail and NUMERIC[c] is None:
                raise ParseError(f"option {a} needs a number")
            opts.flags[c] = int(tail) if tail else NUMERIC[c]
        elif c in PLAIN and not tail:
            opts.flags[c] = True
        else:
            raise ParseError(f"unknown option {a}")
    if "f" in opts.flags:
        opts.filter = True
    if opts.flags.get("c", 2) < 1:
        raise ParseError("the codimension -c must be positive")
    for k in ("g", "d"):
        if opts.flags.get(k, 1) > 2:
            raise ParseError(f"option -{k} takes 0, 1 or 2")
    opts.flags.setdefault("c", 2)
    if opts.flags.get("d") == 2:
        opts.flags["p"] = True


def _notice(opts, msg):
    if not getattr(opts, "_noticed", False):
        sys.stderr.write(f"latpoly nef: {msg}\n")
        opts._noticed = True


def _input_order_polytope(points):
    hv = hull_vertices(points)
    if not hv.full_dimensional:
        raise PolytopeError(f"input spans only a {hv.affine_dim}-dimensional affine subspace")
    vs = set(hv.vertices)
    seen, verts = set(), []
    for p in points:
        if p in vs and p not in seen:
            seen.add(p)
            verts.append(p)
    return LatticePolytope(verts, [True] * len(verts), hv.dim)


class Input:
    """The input polytope and, when reflexive, the pair (M side, N side)."""

    def __init__(self, opts, rec):
        self.cws = None
        self.echo = ""
        if rec.is_cws:
            self.cws = rec.cws()
            given = polytope_from_cws(self.cws)
            self.echo = f"{self.cws} "
            self.n_side = False
        else:
            given = _input_order_polytope(rec.points)
            self.n_side = "N" in opts
        self.given = given
        self.reflexive = is_reflexive(given)
        self.m = self.pstar = None
        if self.reflexive:
            if self.n_side:
                self.pstar = complete_points(given)
                self.m = complete_points(dual(given))
            else:
                self.m = given if given.complete else complete_points(given)
                self.pstar = complete_points(dual(given))

    def header(self, r, count):
        m, n = self.m, self.pstar
        return (f"{self.echo}M:{len(m.points)} {len(m.vertices)} N:{len(n.points)} "
                f"{len(n.vertices)}  codim={r} #part={count}")


def _codim(w, d):
    return d - (sum(1 for x in w if x) - 1)


def vertex_relations(inp):
    """Positive relations among the N vertices (the CWS weights when given)."""
    pstar = inp.pstar
    verts = pstar.vertices
    if inp.cws is not None:
        rows = [tuple(r) for r in inp.given.embedding]
        index = {v: i for i, v in enumerate(verts)}
        if all(r in index for r in rows):
            out = []
            for _, w in inp.cws.systems:
                rel = [0] * len(verts)
                for j, x in enumerate(w):
                    rel[index[rows[j]]] += x
                out.append(rel)
            return out
    return _greedy_relations([], verts, len(verts) - pstar.dim)


def _greedy_relations(start, points, need):
    chosen = [list(w) for w in start]
    if len(chosen) >= need:
        return chosen
    rels = positive_relations([list(p) for p in points])
    rels.sort(key=lambda w: (sorted(w), w))
    for w in rels:
        if rank(chosen + [list(w)]) > len(chosen):
            chosen.append(list(w))
            if len(chosen) == need:
                break
    return chosen


def point_relations(inp, vrels):
    nz = [p for p in inp.pstar.points if any(p)]
    nv = len(inp.pstar.vertices)
    start = [list(w) + [0] * (len(nz) - nv) for w in vrels]
    return _greedy_relations(start, nz, len(nz) - inp.pstar.dim)


def relation_block(out, columns, title, rels, d, ncols):
    out.append(f"{d} {len(columns)} {title}")
    out.extend(matrix_lines(columns, 5))
    out.append("-" * (5 * ncols))
    for w in rels:
        out.append("".join(f"{x:5d}" for x in w) + f"  d={sum(w)}  codim={_codim(w, d)}")


def _hodge_text(opts, inp, part):
    d, r = inp.pstar.dim, part.r
    n = d - r
    if n == 1:
        return "H:[0] "
    if n == 2:
        if part.is_direct_product:
            return "H:4 [0] h1=2 "
        if not part.is_quotient_product:
            return "H:20 [24] "
    elif r == 1 and n == 3:
        h = hodge_numbers(inp.m)
        return f"H:{h.h11} {h.h1_dm2} [{h.euler}] "
    _notice(opts, "Hodge numbers of complete intersections of dimension >= 3 in "
                  "codimension >= 2 (and of hypersurfaces of dimension >= 4) are not computed")
    return " "


def _dual_has_single_vertex(pstar, part):
    parts = _delta_parts(pstar, part)
    union = sorted(set(q for ps in parts for q in ps))
    verts = set(hull_vertices(union).vertices)
    return any(sum(1 for q in ps if q in verts) == 1 for ps in parts)


def partition_line(opts, inp, i, part, rels, over_points, sec, cpu):
    nz = part.points
    nv = len(inp.pstar.vertices)

    def vtext(l):
        s = " ".join(map(str, sorted(part.parts[l])))
        if over_points:
            extra = [j for j in range(nv, len(nz)) if part.point_parts[j] == l]
            if extra:
                s += "  " + " ".join(map(str, extra))
        return s

    if part.r == 1:
        vs = ""
    elif part.r == 2:
        vs = " V:" + vtext(0)
    else:
        vs = " " + "  ".join(f"V{l}:{vtext(l)}" for l in range(part.r - 1))
    head = " " if "p" in opts else _hodge_text(opts, inp, part)
    line = f"{head}P:{i}{vs}"
    if rels:
        line += "   " + " ".join("(" + " ".join(map(str, t)) + ")"
                                 for t in partition_degrees(part, rels, over_points))
    if "D" in opts and part.is_direct_product:
        line += "   D"
    if part.r > 1 and _dual_has_single_vertex(inp.pstar, part):
        line += "   DP"
    width = 7 if part.r == 1 else 6 if line[-1] in ")DP" else 8
    return line + f"{sec:{width}d}sec{cpu:3d}cpu"


def _layers(out, cone, kmax):
    out.append("")
    out.append("")
    out.append("#points in largest cone:")
    for k, (p, ip) in enumerate(cone.level_counts(kmax), start=1):
        out.append(f"layer: {k:2d} #p: {p:8d} #ip: {ip:8d}")


def _kind(opts, part):
    if "Q" in opts:
        return "d" if part.is_quotient_product else "np"
    if part.is_projection:
        return "p"
    if part.is_direct_product:
        return "d"
    return "np"


def _shown(opts, kind):
    if "Q" in opts:
        return kind == "d"
    return kind == "np" or (kind == "d" and "D" in opts) or (kind == "p" and "P" in opts)


def render_gorenstein(opts, rec):
    r = opts.get("c")
    if rec.is_cws:
        try:
            c, index = parse_gorenstein_weights(rec.text)
        except Exception as e:
            raise ParseError(str(e), rec.line) from None
        support = gorenstein_support_from_weights(c)
        echo = f"{c} "
    else:
        support = complete_points(_input_order_polytope(rec.points))
        echo = ""
    rep = gorenstein_mode(support, r)
    m = f"M:{rep.m_counts[0]} {rep.m_counts[1]}"
    if rep.reflexive and rep.index == r:
        return f"{echo}{m} N:{rep.n_counts[0]} {rep.n_counts[1]}\n", None
    warn = ""
    if rep.reflexive:
        warn = f"Warning: Input has index {rep.index}, should be {r}!   "
    return f"{warn}{echo}{m} F:{rep.facets}\n", None


def render_v(opts, rec):
    p = polytope_from_cws(rec.cws()) if rec.is_cws else _input_order_polytope(rec.points)
    q = p if p.complete else complete_points(p)
    npts = len(q.points)
    if npts > opts.get("u", npts) or npts < opts.get("l", 0):
        return "", (npts, False)
    rows = matrix_lines(q.vertices, 5)
    return f"{q.dim} {len(q.vertices)} P:{npts} E" + "E".join(rows) + "\n", (npts, True)


def render(opts, rec):
    if "G" in opts:
        return render_gorenstein(opts, rec)
    if "v" in opts:
        return render_v(opts, rec)
    start, cstart = time.perf_counter(), time.process_time()
    inp = Input(opts, rec)
    out = []
    if not inp.reflexive:
        if "R" in opts or "V" in opts:
            out.append(f"{inp.given.dim} {len(inp.given.vertices)}  Vertices of input polytope:")
            out.extend(matrix_lines(inp.given.vertices, 5))
        return "".join(s + "\n" for s in out), None
    r = opts.get("c")
    parts = enumerate_nef_partitions(inp.pstar, r, keep_symmetric="s" in opts)
    kinds = [_kind(opts, p) for p in parts]
    header = inp.header(r, len(parts))
    pstar = inp.pstar
    d = pstar.dim
    if "y" in opts:
        if parts:
            if inp.cws is not None:
                out.append(header)
            else:
                mv = inp.m.vertices
                out.append(f"{d} {len(mv)} Vertices of Poly in M-lattice:  "
                           + header[len(inp.echo):])
                out.extend(matrix_lines(mv, 5))
        elif inp.cws is not None:
            out.append(str(inp.cws))
        return "".join(s + "\n" for s in out), None
    if "n" in opts:
        if any(k == "np" for k in kinds):
            out.append(header)
            out.append(f"{d} {len(pstar.points)}  Points of Poly in N-Lattice:")
            out.extend(matrix_lines(pstar.points, 5))
        return "".join(s + "\n" for s in out), None
    out.append(header)
    if "V" in opts:
        out.append(f"{d} {len(pstar.vertices)}  Vertices of P:")
        out.extend(matrix_lines(pstar.vertices, 5))
    rels, over_points = None, False
    if "Lv" in opts or "Lp" in opts:
        rels = vertex_relations(inp)
        if "Lp" in opts:
            over_points = True
            rels = point_relations(inp, rels)
            relation_block(out, pstar.points, " Points of Poly in N-Lattice:", rels, d,
                           len(pstar.points))
        else:
            relation_block(out, pstar.vertices, "Vertices in N-lattice:", rels, d,
                           len(pstar.vertices))
    if "F" in opts:
        nz = [q for q in pstar.points if any(q)]
        marks = nz if over_points or "Lv" not in opts else pstar.vertices
        recs = fibration_scan(pstar, opts.get("F"), points=marks)
        out.append("-" * (5 * len(marks)) + f" #fibrations={len(recs)}")
        out.extend(x.line() for x in recs)
    gmode, dmode = opts.get("g"), opts.get("d")
    for i, (part, kind) in enumerate(zip(parts, kinds)):
        if not _shown(opts, kind):
            continue
        t0, c0 = time.perf_counter(), time.process_time()
        if ("S" in opts or "T" in opts) and kind == "np":
            cone_n, cone_m = nef_cones(pstar, part)
            kmax = cone_n.dim if "T" in opts else (cone_n.dim + 1) // 2
            _layers(out, cone_n, kmax)
            _layers(out, cone_m, kmax)
            if "T" in opts:
                s_t_polynomials(cone_n, check_serre=True)
                s_t_polynomials(cone_m, check_serre=True)
        if gmode is not None or dmode is not None:
            if gmode is not None:
                pts, nv = gorenstein_lift(pstar, part, gmode)
                out.append(f"{len(pts[0])} {len(pts)} Points of PG: (nv={nv})")
                out.extend(matrix_lines(pts, 5))
            if dmode is not None:
                pts, nv = dual_gorenstein(pstar, part, dmode)
                out.append(f"{len(pts[0])} {len(pts)} Points of dual PG: (nv={nv})")
                out.extend(matrix_lines(pts, 4))
            continue
        sec = int(time.perf_counter() - t0)
        cpu = int(time.process_time() - c0)
        out.append(partition_line(opts, inp, i, part, rels, over_points, sec, cpu))
    counts = {k: kinds.count(k) for k in ("np", "d", "p")}
    sec = int(time.perf_counter() - start)
    cpu = int(time.process_time() - cstart)
    out.append(f"np={counts['np']} d:{counts['d']} p:{counts['p']}{sec:5d}sec{cpu:6d}cpu")
    return "".join(s + "\n" for s in out), None


def run(opts, reader, out):
    stats = []
    rc = run_records(render, opts, reader, out, collect=stats.append)
    if "v" in opts and "G" not in opts:
        shown = [n for n, ok in (s for s in stats if s) if ok]
        out.write(f"\n{len(shown)}  of  {len([s for s in stats if s])}\n\n")
        for n in sorted(set(shown)):
            out.write(f"{n:4d}#{shown.count(n):5d}\n")
    return rc

"""`latpoly cws`: CWS reconstruction (-N) and IP data of weight systems (-i)."""

from fractions import Fraction
from math import ceil, floor

from ..cws import polytope_from_cws, reconstruct_cws
from ..polytope import (LatticePolytope, PolytopeError, _interval_bounds, complete_points,
                        dual, hull_vertices, is_ip, is_reflexive)
from .io import PROMPT_BOTH, CapabilityError, ParseError
from .main import run_records

HELP = """latpoly cws -<options> [in-file [out-file]]
The first option must be `i', `N' or `h'.
Options:
-h        print this information
-f        use as filter; otherwise parameters denote I/O files
-i        compute the polytope data M:p v [F:f] N:p [v] for all IP
          CWS, where p and v denote the numbers of lattice points
          and vertices of a dual pair of IP polytopes; an entry
          F:f and no v for N indicates a non-reflexive `dual pair'.
-N        make CWS for PPL in N lattice.
Not available: -w, -c, -d, -2 (weight system classification), -r, -t, -n
(their sub-options), -x (undocumented extensions)."""

OUT_OF_SCOPE = {
    "w": "weight system classification",
    "c": "combined weight system classification",
    "d": "Gorenstein weight system classification",
    "2": "weight system classification",
    "x": "undocumented extensions",
    "r": "weight system classification",
    "t": "weight system classification",
    "n": "combined weight system classification",
}


def prompt(opts):
    return PROMPT_BOTH


def parse_flags(opts, args):
    for a in args:
        if a == "-":
            opts.filter = True
        elif not a.startswith("-"):
            opts.files.append(a)
        else:
            c = a[1:2]
            if c in OUT_OF_SCOPE:
                raise CapabilityError(f"option {a}: {OUT_OF_SCOPE[c]} is out of scope")
            if c not in "hfiN" or len(a) != 2:
                raise ParseError(f"unknown option {a}")
            opts.flags[c] = True
    if "f" in opts.flags:
        opts.filter = True
    if "h" not in opts.flags and not ("i" in opts.flags or "N" in opts.flags):
        raise ParseError("one of -N, -i or -h is required")


def dual_point_count(p):
    """Lattice points of {y : <v, y> >= -1 for all vertices v} for an IP polytope."""
    d = p.dim
    # rational vertices of the dual are a/c over the facets (a, c) of p
    rv = [[Fraction(x, c) for x in a] for a, c in p.facets()]
    ineqs = [(tuple(v), 1) for v in p.vertices]
    lo = [ceil(min(v[k] for v in rv)) for k in range(d)]
    hi = [floor(max(v[k] for v in rv)) for k in range(d)]
    prefix = [0] * d
    count = 0

    def rec(k):
        nonlocal count
        if k == d - 1:
            a, b = _interval_bounds(ineqs, prefix, k)
            a = lo[k] if a is None else max(a, lo[k])
            b = hi[k] if b is None else min(b, hi[k])
            count += max(0, b - a + 1)
            return
        for x in range(lo[k], hi[k] + 1):
            prefix[k] = x
            rec(k + 1)

    rec(0)
    return count


def render(opts, rec):
    if "N" in opts:
        if rec.is_cws:
            return "Only PPL-input in Npoly2cws!\n", None
        hv = hull_vertices(rec.points)
        if not hv.full_dimensional:
            raise PolytopeError("input is not full dimensional")
        p = LatticePolytope(hv.vertices, [True] * len(hv.vertices), hv.dim)
        if not is_ip(p):
            raise PolytopeError("the origin is not an interior point of the input")
        return f"{reconstruct_cws(p)}\n", None
    if not rec.is_cws:
        raise ParseError("-i expects weight system input", rec.line)
    c = rec.cws()
    p = polytope_from_cws(c)
    if not is_ip(p):
        return "", None
    q = complete_points(p)
    line = f"{c} M:{len(q.points)} {len(q.vertices)}"
    if is_reflexive(q):
        ds = complete_points(dual(q))
        line += f" N:{len(ds.points)} {len(ds.vertices)}"
    else:
        line += f" F:{len(q.facets())} N:{dual_point_count(q)}"
    return line + "\n", None


def run(opts, reader, out):
    return run_records(render, opts, reader, out)

"""Entry point: `latpoly poly|cws|nef|mori [flags] [in-file [out-file]]`."""

import sys
from functools import partial
from multiprocessing import Pool

from .. import mori as _mori
from .. import nef as _nef
from .. import polytope as _polytope
from ..cws import InputError
from ..polytope import PolytopeError
from .io import CapabilityError, ParseError, Reader, open_io

USAGE = """usage: latpoly poly|cws|nef|mori [flags] [in-file [out-file]]

Subcommands:
  poly   reflexivity, duality, normal forms, IP simplices, fibrations
  cws    CWS reconstruction from N-lattice vertices (-N) and IP filtering (-i)
  nef    nef partitions and reflexive Gorenstein cones
  mori   star triangulations, Stanley-Reisner ideals, Mori cones

Use `latpoly <subcommand> -h` for the flags of a subcommand.
Common long options:
  --max-dim N          dimension cap (default 8)
  --max-points N       cap on the number of lattice points of one polytope
  --max-facet-points N mori: largest facet triangulated automatically
  --jobs N             process independent input records in N processes
  --normal-form        poly: render coordinates in the GL(n,Z) normal form basis
Exit codes: 0 success, 1 parse error, 2 capability error."""


class Options:
    """Parsed flags of one subcommand plus the shared long options."""

    def __init__(self):
        self.flags = {}
        self.files = []
        self.jobs = 1
        self.normal_form = False
        self.filter = False

    def __contains__(self, key):
        return key in self.flags

    def get(self, key, default=None):
        return self.flags.get(key, default)


LONG_INT = {"--max-dim", "--max-points", "--max-facet-points", "--jobs"}


def split_long(args):
    """Separate long options from the subcommand's own flags and files."""
    opts = Options()
    rest = []
    i = 0
    while i < len(args):
        a = args[i]
        if a.startswith("--"):
            name, _, val = a.partition("=")
            if name in LONG_INT:
                if not val:
                    i += 1
                    if i >= len(args):
                        raise ParseError(f"option {name} needs a value")
                    val = args[i]
                try:
                    n = int(val)
                except ValueError:
                    raise ParseError(f"option {name} needs an integer, got {val!r}") from None
                if n < 1:
                    raise ParseError(f"option {name} must be positive")
                opts.flags[name] = n
            elif name == "--normal-form":
                opts.normal_form = True
            elif name == "--help":
                opts.flags["h"] = True
            else:
                raise ParseError(f"unknown option {a}")
        else:
            rest.append(a)
        i += 1
    opts.jobs = opts.flags.get("--jobs", 1)
    return opts, rest


def apply_caps(opts):
    if "--max-dim" in opts.flags:
        _polytope.MAX_DIM = opts.flags["--max-dim"]
        _nef.MAX_WORK_DIM = opts.flags["--max-dim"]
    if "--max-points" in opts.flags:
        _polytope.MAX_POINTS = opts.flags["--max-points"]
    if "--max-facet-points" in opts.flags:
        _mori.MAX_FACET_POINTS = opts.flags["--max-facet-points"]


def _guarded(render, opts, rec):
    try:
        return render(opts, rec), None, 0
    except ParseError as e:
        return None, str(e), 1
    except (PolytopeError, CapabilityError, ArithmeticError) as e:
        return None, f"line {rec.line}: {e}", 2
    except InputError as e:
        return None, f"line {rec.line}: {e}", 1


def run_records(render, opts, reader, out, read_kw=None, collect=None):
    """Render every input record; returns the exit code.

    ``render(opts, record)`` returns ``(text, stat)``.  Parse errors stop
    the run; capability errors are reported and the run continues.
    """
    read_kw = read_kw or {}
    rc = 0
    pending = None
    if opts.jobs > 1 and not reader.interactive:
        recs = []
        try:
            for r in reader.records(**read_kw):
                recs.append(r)
        except ParseError as e:
            pending = e
        with Pool(opts.jobs, initializer=apply_caps, initargs=(opts,)) as pool:
            results = pool.map(partial(_guarded, render, opts), recs, chunksize=1)
    else:
        def lazy():
            nonlocal pending
            try:
                for r in reader.records(**read_kw):
                    yield _guarded(render, opts, r)
            except ParseError as e:
                pending = e
        results = lazy()
    for res, msg, code in results:
        if code == 1:
            sys.stderr.write(f"latpoly: {msg}\n")
            return 1
        if code:
            sys.stderr.write(f"latpoly: {msg}\n")
            rc = 2
            continue
        text, stat = res
        if text:
            out.write(text)
            out.flush()
        if collect is not None:
            collect(stat)
    if pending is not None:
        sys.stderr.write(f"latpoly: {pending}\n")
        return 1
    return rc


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv or argv[0] in ("-h", "--help", "help"):
        print(USAGE)
        return 0 if argv else 1
    sub, args = argv[0], argv[1:]
    from . import cws as c_cws, mori as c_mori, nef as c_nef, poly as c_poly
    modules = {"poly": c_poly, "cws": c_cws, "nef": c_nef, "mori": c_mori}
    if sub not in modules:
        sys.stderr.write(f"latpoly: unknown subcommand {sub!r}\n{USAGE}\n")
        return 1
    mod = modules[sub]
    try:
        opts, rest = split_long(args)
        mod.parse_flags(opts, rest)
    except ParseError as e:
        sys.stderr.write(f"latpoly {sub}: {e}\n")
        return 1
    except CapabilityError as e:
        sys.stderr.write(f"latpoly {sub}: {e}\n")
        return 2
    if "h" in opts:
        print(mod.HELP)
        return 0
    apply_caps(opts)
    try:
        inp, out, interactive = open_io(opts.files, opts.filter)
    except OSError as e:
        sys.stderr.write(f"latpoly {sub}: {e}\n")
        return 1
    except ParseError as e:
        sys.stderr.write(f"latpoly {sub}: {e}\n")
        return 1
    try:
        reader = Reader(inp, out, interactive, mod.prompt(opts))
        return mod.run(opts, reader, out)
    except ParseError as e:
        sys.stderr.write(f"latpoly {sub}: {e}\n")
        return 1
    except CapabilityError as e:
        sys.stderr.write(f"latpoly {sub}: {e}\n")
        return 2
    finally:
        if out is not sys.stdout:
            out.close()
        if inp is not sys.stdin:
            inp.close()


if __name__ == "__main__":
    sys.exit(main())

"""Input records, prompts and matrix rendering shared by the subcommands."""

import sys

from ..cws import InputError, parse_cws

PROMPT_BOTH = ("Degrees and weights  `d1 w11 w12 ... d2 w21 w22 ...'\n"
               "  or `#lines #columns' (= `PolyDim #Points' or `#Points PolyDim'):")
PROMPT_CWS = "Degrees and weights  `d1 w11 w12 ... d2 w21 w22 ...':"
PROMPT_MATRIX = "`#lines #columns' (= `PolyDim #Points' or `#Points PolyDim'):"


class ParseError(InputError):
    def __init__(self, msg, line=None, col=None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {col}" if col is not None else "") + ": "
        super().__init__(where + msg)
        self.line = line
        self.col = col


class CapabilityError(Exception):
    """Input is well formed but asks for something this build cannot do."""


class Record:
    """One polytope input: a CWS line or a coordinate matrix."""

    def __init__(self, kind, text, line, points=None):
        self.kind = kind
        self.text = text
        self.line = line
        self.points = points

    @property
    def is_cws(self):
        return self.kind == "cws"

    def cws(self):
        try:
            return parse_cws(self.text)
        except InputError as e:
            raise ParseError(str(e), self.line) from None


def _int_or_none(tok):
    try:
        return int(tok)
    except ValueError:
        return None


def _columns(line):
    # 1-based start column of every whitespace-separated token
    out = []
    i = 0
    for tok in line.split():
        i = line.index(tok, i)
        out.append((tok, i + 1))
        i += len(tok)
    return out


def cws_text(line):
    """The numeric part of a weight line; trailing annotations are dropped."""
    keep = []
    for tok in line.split():
        if not tok.startswith("/Z") and _int_or_none(tok) is None:
            break
        keep.append(tok)
    return " ".join(keep)


class Reader:
    """Reads records from a text stream, prompting when interactive."""

    def __init__(self, stream, out, interactive, prompt=PROMPT_BOTH):
        self.stream = stream
        self.out = out
        self.interactive = interactive
        self.prompt = prompt
        self.lineno = 0

    def say(self, text):
        if self.interactive:
            self.out.write(text + "\n")
            self.out.flush()

    def readline(self):
        line = self.stream.readline()
        if not line:
            return None
        self.lineno += 1
        return line.rstrip("\n")

    def read_record(self, allow_matrix=True, allow_cws=True):
        self.say(self.prompt)
        line = self.readline()
        if line is None or not line.strip():
            return None
        toks = _columns(line)
        lead = []
        for tok, col in toks:
            v = _int_or_none(tok)
            if v is None:
                break
            lead.append((v, col))
        if not lead:
            tok, col = toks[0]
            raise ParseError(f"expected an integer, got {tok!r}", self.lineno, col)
        is_matrix = len(lead) == 2 and "/Z" not in line
        if is_matrix:
            if not allow_matrix:
                raise ParseError("matrix input is allowed only with -D", self.lineno)
            return self._read_matrix(lead[0][0], lead[1][0], line)
        if not allow_cws:
            raise ParseError("expected `#lines #columns' matrix input", self.lineno)
        return Record("cws", cws_text(line), self.lineno)

    def _read_matrix(self, n1, n2, header):
        if n1 <= 0 or n2 <= 0:
            raise ParseError("matrix dimensions must be positive", self.lineno)
        total = n1 * n2
        if n1 > n2:
            rows_are_points, npts, dim = True, n1, n2
            self.say(f"Type the {total} coordinates as #pts={n1} lines with dim={n2} columns:")
        elif n1 < n2:
            rows_are_points, npts, dim = False, n2, n1
            self.say(f"Type the {total} coordinates as dim={n1} lines with #pts={n2} columns:")
        else:
            rows_are_points, npts, dim = True, n1, n2
            self.say(f"Type the {total} coordinates as #pts={n1} lines with dim={n2} columns:")
        nums = []
        start = self.lineno
        while len(nums) < total:
            line = self.readline()
            if line is None:
                raise ParseError(f"end of input after {len(nums)} of {total} coordinates",
                                 self.lineno)
            for tok, col in _columns(line):
                v = _int_or_none(tok)
                if v is None:
                    raise ParseError(f"expected an integer coordinate, got {tok!r}",
                                     self.lineno, col)
                nums.append(v)
        if len(nums) != total:
            raise ParseError(f"expected {total} coordinates, got {len(nums)}", self.lineno)
        if rows_are_points:
            pts = [tuple(nums[i * dim:(i + 1) * dim]) for i in range(npts)]
        else:
            pts = [tuple(nums[j * npts + i] for j in range(dim)) for i in range(npts)]
        return Record("matrix", header, start, pts)

    def records(self, **kw):
        while True:
            r = self.read_record(**kw)
            if r is None:
                return
            yield r


def matrix_lines(columns, width=4):
    """Rows of a matrix whose columns are the given points."""
    if not columns:
        return []
    d = len(columns[0])
    return ["".join(f"{c[i]:{width}d}" for c in columns) for i in range(d)]


def write_matrix(out, columns, title, width=4, sep="  "):
    d = len(columns[0]) if columns else 0
    out.write(f"{d} {len(columns)}{sep}{title}\n")
    for row in matrix_lines(columns, width):
        out.write(row + "\n")


def write_rows(out, rows, title, width=4):
    ncol = len(rows[0]) if rows else 0
    out.write(f"{len(rows)} {ncol}  {title}\n")
    for r in rows:
        out.write("".join(f"{x:{width}d}" for x in r) + "\n")


def open_io(files, filter_mode):
    """Resolve `[in-file [out-file]]` into streams and the prompt setting."""
    if len(files) > 2:
        raise ParseError("at most an input and an output file may be given")
    inp = open(files[0]) if files else sys.stdin
    out = open(files[1], "w") if len(files) > 1 else sys.stdout
    interactive = not files and not filter_mode
    return inp, out, interactive

"""Plain-text file formats: facet lists, certificates, shellings, census
index, rational coordinates and OFF.

All formats are ASCII with LF line endings.  Lines starting with ``#`` are
comments except where a header line is part of the format (certificates and
shelling files carry ``# key value`` headers that the parsers read back).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .complex import MAX_VERTICES, SimplicialComplex


class ParseError(ValueError):
    def __init__(self, line: int, col: int, msg: str):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


def _parse_vertex_list(text: str, lineno: int, col0: int = 1) -> tuple[int, ...]:
    if text != text.strip() or "  " in text:
        raise ParseError(lineno, col0, "vertex ids must be separated by single spaces")
    out: list[int] = []
    col = col0
    for tok in text.split(" "):
        if not tok.isdigit():
            raise ParseError(lineno, col, f"not a vertex id: {tok!r}")
        v = int(tok)
        if v >= MAX_VERTICES:
            raise ParseError(lineno, col, f"vertex {v} out of range")
        if v in out:
            raise ParseError(lineno, col, f"duplicate vertex {v}")
        out.append(v)
        col += len(tok) + 1
    return tuple(out)


def _content_lines(text: str):
    if not text.strip():
        raise ParseError(1, 1, "empty file")
    for lineno, line in enumerate(text.split("\n"), start=1):
        if line.endswith("\r"):
            raise ParseError(lineno, len(line), "CR line ending")
        yield lineno, line


# -- facet lists -----------------------------------------------------------

def parse_facets(text: str) -> list[tuple[int, ...]]:
    facets = []
    for lineno, line in _content_lines(text):
        if not line or line.startswith("#"):
            continue
        facets.append(_parse_vertex_list(line, lineno))
    if not facets:
        raise ParseError(1, 1, "no facets")
    return facets


def serialize_facets(facets: Iterable[Sequence[int]], comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines += [" ".join(map(str, f)) for f in sorted(tuple(sorted(f)) for f in facets)]
    return "\n".join(lines) + "\n"


def read_complex(path) -> SimplicialComplex:
    return SimplicialComplex.from_facets(parse_facets(Path(path).read_text(encoding="ascii")))


def write_complex(path, K: SimplicialComplex, comments: Sequence[str] = ()) -> None:
    Path(path).write_text(serialize_facets(K.facets, comments), encoding="ascii")


# -- headers ---------------------------------------------------------------

def _split_headers(text: str, kind: str):
    headers: dict[str, str] = {}
    body: list[tuple[int, str]] = []
    lines = list(_content_lines(text))
    if not lines or lines[0][1] != f"# {kind}":
        raise ParseError(1, 1, f"expected header line '# {kind}'")
    for lineno, line in lines[1:]:
        if not line:
            continue
        if line.startswith("# "):
            key, _, value = line[2:].partition(" ")
            headers[key] = value
        elif line.startswith("#"):
            continue
        else:
            body.append((lineno, line))
    return headers, body


# -- collapse certificates -------------------------------------------------

@dataclass(frozen=True)
class CertificateFile:
    start_hash: str
    steps: list  # list[tuple[tuple[int, ...], tuple[int, ...]]]
    end_hash: str | None = None


def serialize_certificate(steps, start_hash: str, end_hash: str | None = None) -> str:
    lines = ["# collapse-certificate", f"# start {start_hash}"]
    if end_hash is not None:
        lines.append(f"# end {end_hash}")
    for f, F in steps:
        lines.append(" ".join(map(str, f)) + " | " + " ".join(map(str, F)))
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> CertificateFile:
    headers, body = _split_headers(text, "collapse-certificate")
    if "start" not in headers:
        raise ParseError(2, 1, "missing '# start <hash>' header")
    steps = []
    for lineno, line in body:
        left, sep, right = line.partition(" | ")
        if not sep:
            raise ParseError(lineno, 1, "expected 'free-face | coface'")
        f = _parse_vertex_list(left, lineno)
        F = _parse_vertex_list(right, lineno, len(left) + 4)
        steps.append((f, F))
    return CertificateFile(headers["start"], steps, headers.get("end"))


# -- shelling orders -------------------------------------------------------

def serialize_shelling(order: Sequence[Sequence[int]], complex_hash: str) -> str:
    lines = ["# shelling-order", f"# complex {complex_hash}"]
    lines += [" ".join(map(str, f)) for f in order]
    return "\n".join(lines) + "\n"


def parse_shelling(text: str) -> tuple[str, list[tuple[int, ...]]]:
    headers, body = _split_headers(text, "shelling-order")
    return headers.get("complex", ""), [_parse_vertex_list(l, n) for n, l in body]


# -- spanning trees --------------------------------------------------------

def serialize_tree(ridges: Iterable[Sequence[int]]) -> str:
    return serialize_facets(ridges, ["dual-spanning-tree"])


def parse_tree(text: str) -> list[tuple[int, ...]]:
    return parse_facets(text)


# -- census index ----------------------------------------------------------

def serialize_census_index(rows: Iterable[tuple[str, Sequence[int], Sequence[str]]]) -> str:
    lines = ["# census-index: hash f-vector flags"]
    for h, fv, flags in sorted(rows, key=lambda r: (tuple(r[1]), r[0])):
        lines.append(f"{h} {','.join(map(str, fv))} {','.join(flags) or '-'}")
    return "\n".join(lines) + "\n"


def parse_census_index(text: str):
    rows = []
    for lineno, line in _content_lines(text):
        if not line or line.startswith("#"):
            continue
        parts = line.split(" ")
        if len(parts) != 3:
            raise ParseError(lineno, 1, "expected 'hash f-vector flags'")
        h, fv, flags = parts
        try:
            fvec = tuple(int(x) for x in fv.split(","))
        except ValueError:
            raise ParseError(lineno, len(h) + 2, "bad f-vector") from None
        rows.append((h, fvec, tuple() if flags == "-" else tuple(flags.split(","))))
    return rows


# -- coordinates -----------------------------------------------------------

def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def serialize_coordinates(points: Sequence[Sequence[Fraction]]) -> str:
    lines = [f"# coordinates n={len(points)} dim={len(points[0]) if points else 0}"]
    lines += [" ".join(_frac_str(Fraction(c)) for c in p) for p in points]
    return "\n".join(lines) + "\n"


def parse_coordinates(text: str) -> list[tuple[Fraction, ...]]:
    pts = []
    width = None
    for lineno, line in _content_lines(text):
        if not line or line.startswith("#"):
            continue
        row = []
        col = 1
        for tok in line.split(" "):
            num, sep, den = tok.partition("/")
            try:
                if not sep:
                    raise ValueError
                row.append(Fraction(int(num), int(den)))
            except (ValueError, ZeroDivisionError):
                raise ParseError(lineno, col, f"not a fraction 'p/q': {tok!r}") from None
            col += len(tok) + 1
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(lineno, 1, f"expected {width} coordinates, got {len(row)}")
        pts.append(tuple(row))
    return pts


# -- OFF -------------------------------------------------------------------

def _decimal(x: Fraction, digits: int) -> str:
    q = round(x * 10**digits)
    sign = "-" if q < 0 else ""
    q = abs(q)
    whole, frac = divmod(q, 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def serialize_off(points: Sequence[Sequence[Fraction]], triangles: Sequence[Sequence[int]],
                  decimal_digits: int = 6) -> str:
    edges = set()
    for t in triangles:
        a, b, c = sorted(t)
        edges |= {(a, b), (a, c), (b, c)}
    lines = ["OFF", f"{len(points)} {len(triangles)} {len(edges)}"]
    lines += [" ".join(_decimal(Fraction(c), decimal_digits) for c in p) for p in points]
    lines += ["3 " + " ".join(map(str, t)) for t in triangles]
    return "\n".join(lines) + "\n"


def parse_off(text: str):
    lines = [l for l in text.split("\n") if l and not l.startswith("#")]
    if not lines or lines[0] != "OFF":
        raise ParseError(1, 1, "missing OFF header")
    nv, nf, _ = (int(x) for x in lines[1].split())
    pts = [tuple(float(x) for x in l.split()) for l in lines[2 : 2 + nv]]
    faces = []
    for l in lines[2 + nv : 2 + nv + nf]:
        parts = [int(x) for x in l.split()]
        faces.append(tuple(parts[1 : 1 + parts[0]]))
    return pts, faces

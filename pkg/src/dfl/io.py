"""Plain-text file formats.

Sites: one point per line, whitespace-separated decimal coordinates.
Triangulation: one simplex per line, d+1 zero-based site indices.
Heights: one value per line, in site order.
In all three, blank lines and lines starting with '#' are ignored.
"""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from dfl.errors import DimensionMismatch, HeightFieldMismatch, ParseError
from dfl.geometry import SiteSet, exact_decimal
from dfl.triangulation import Triangulation


def _rows(text: str, path=None):
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = []
        col = 0
        for tok in line.split():
            col = line.index(tok, col) + 1
            tokens.append((tok, col))
            col += len(tok) - 1
        yield lineno, tokens


def _number(tok, path, lineno, col) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a decimal number: {tok!r}", path, lineno, col) from None


def _index(tok, path, lineno, col) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"not a site index: {tok!r}", path, lineno, col) from None


def _read(path) -> tuple[str, str]:
    p = Path(path)
    return p.read_text(), str(p)


def parse_sites(text: str, path=None) -> SiteSet:
    points = []
    dim = None
    for lineno, tokens in _rows(text, path):
        if dim is None:
            dim = len(tokens)
        elif len(tokens) != dim:
            raise DimensionMismatch(f"{path or '<sites>'}:{lineno}: expected {dim} "
                                    f"coordinates, got {len(tokens)}")
        points.append(tuple(_number(t, path, lineno, c) for t, c in tokens))
    if not points:
        raise ParseError("no sites found", path)
    return SiteSet(points)


def read_sites(path) -> SiteSet:
    return parse_sites(*_read(path))


def parse_triangulation(text: str, sites: SiteSet, path=None) -> Triangulation:
    simplices = []
    for lineno, tokens in _rows(text, path):
        if len(tokens) != sites.dim + 1:
            raise DimensionMismatch(f"{path or '<triangulation>'}:{lineno}: expected "
                                    f"{sites.dim + 1} indices, got {len(tokens)}")
        idx = tuple(_index(t, path, lineno, c) for t, c in tokens)
        for (t, c), i in zip(tokens, idx):
            if not 0 <= i < len(sites):
                raise ParseError(f"site index {i} out of range", path, lineno, c)
        simplices.append(idx)
    return Triangulation(sites, simplices)


def read_triangulation(path, sites: SiteSet) -> Triangulation:
    text, p = _read(path)
    return parse_triangulation(text, sites, p)


def format_triangulation(t: Triangulation) -> str:
    return "".join(" ".join(map(str, s)) + "\n" for s in sorted(t.simplices))


def write_triangulation(t: Triangulation, path) -> None:
    Path(path).write_text(format_triangulation(t))


def format_sites(sites: SiteSet) -> str:
    return "".join(" ".join(exact_decimal(c) for c in p) + "\n" for p in sites.points)


def parse_heights(text: str, n: int | None = None, path=None) -> list[Fraction]:
    values = []
    for lineno, tokens in _rows(text, path):
        if len(tokens) != 1:
            raise ParseError("expected one value per line", path, lineno, tokens[1][1])
        values.append(_number(tokens[0][0], path, lineno, tokens[0][1]))
    if n is not None and len(values) != n:
        raise HeightFieldMismatch(f"{path or '<heights>'}: {len(values)} values for {n} sites")
    return values


def read_heights(path, n: int | None = None) -> list[Fraction]:
    text, p = _read(path)
    return parse_heights(text, n, p)

"""Core representation of latin hypercubes.

An n-dimensional latin hypercube of order q is an array over the symbols
0..q-1 in which every axis-parallel line contains q distinct symbols.  It is
the Cayley table of an n-ary quasigroup f, and the graph cell
(x0, x1, ..., xn) records x0 = f(x1, ..., xn).

Cells are indexed big-endian in x1: the table cell (x1, ..., xn) lives at
flat index sum(x_i * q**(n-i)), so x1 selects the outermost layer.  Symbols
are always the integers 0..q-1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Iterator

Cell = tuple[int, ...]

# Desk-scale bounds for the representation itself (searches are bounded
# separately by the engine's envelope).
MAX_ORDER = 8
MAX_CELLS = 1 << 24


class LhcError(Exception):
    """Base class for errors raised by this package."""


class StructuralError(LhcError):
    """The payload is not a hypercube at all: wrong size or symbol range."""


class UnsupportedOrderError(LhcError):
    """Operation is defined only for order 4."""


class EnvelopeError(LhcError):
    """Requested computation exceeds the supported search envelope."""


class ParseError(LhcError):
    """Text input is malformed; carries a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


# ---------------------------------------------------------------------------
# Indexing
# ---------------------------------------------------------------------------

def index_of(coords: Cell, n: int, q: int) -> int:
    """Flat index of the table cell (x1..xn), x1 most significant."""
    if len(coords) != n:
        raise ValueError(f"expected {n} coordinates, got {len(coords)}")
    idx = 0
    for x in coords:
        if not 0 <= x < q:
            raise ValueError(f"coordinate {x} out of range for order {q}")
        idx = idx * q + x
    return idx


def coords_of(index: int, n: int, q: int) -> Cell:
    """Inverse of index_of."""
    if not 0 <= index < q**n:
        raise ValueError(f"index {index} out of range for q**n = {q**n}")
    out = [0] * n
    for i in range(n - 1, -1, -1):
        index, out[i] = divmod(index, q)
    return tuple(out)


# ---------------------------------------------------------------------------
# The hypercube value type
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatinHypercube:
    """Immutable n-dimensional table of order q.

    Construction checks structure only (size and symbol range); latin-ness
    is a separate question answered by validate_latin.
    """

    n: int
    q: int
    values: bytes

    def __post_init__(self):
        if self.n < 1:
            raise StructuralError(f"arity must be >= 1, got {self.n}")
        if not 1 <= self.q <= MAX_ORDER:
            raise StructuralError(f"order must be in 1..{MAX_ORDER}, got {self.q}")
        size = self.q**self.n
        if size > MAX_CELLS:
            raise StructuralError(f"q**n = {size} exceeds the supported scale {MAX_CELLS}")
        if len(self.values) != size:
            raise StructuralError(f"expected {size} symbols, got {len(self.values)}")
        if size and max(self.values) >= self.q:
            raise StructuralError(f"symbol {max(self.values)} out of range for order {self.q}")

    @classmethod
    def from_values(cls, n: int, q: int, values) -> "LatinHypercube":
        return cls(n, q, bytes(values))

    @property
    def size(self) -> int:
        return self.q**self.n

    def __getitem__(self, coords: Cell) -> int:
        return self.values[index_of(coords, self.n, self.q)]


@dataclass(frozen=True)
class LineRef:
    """One axis-parallel line: the varying axis (1-based) plus the fixed values."""

    axis: int
    fixed: tuple[int, ...]


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[LineRef, ...]


def validate_latin(cube: LatinHypercube) -> ValidationReport:
    """Check that every line of every axis carries q distinct symbols.

    Returns a report listing each violating line; structural problems are
    impossible here because LatinHypercube construction already rejects them.
    """
    n, q, values = cube.n, cube.q, cube.values
    violations = []
    for axis in range(1, n + 1):
        stride = q ** (n - axis)
        block = stride * q
        for outer in range(q ** (axis - 1)):
            base_outer = outer * block
            for inner in range(stride):
                start = base_outer + inner
                seen = 0
                for v in range(q):
                    seen |= 1 << values[start + v * stride]
                if seen != (1 << q) - 1:
                    coords = coords_of(start, n, q)
                    fixed = coords[: axis - 1] + coords[axis:]
                    violations.append(LineRef(axis, fixed))
    return ValidationReport(not violations, tuple(violations))


def graph_cells(cube: LatinHypercube) -> Iterator[Cell]:
    """Yield the q**n graph cells (x0, x1..xn) in table-index order."""
    values = cube.values
    for idx, inputs in enumerate(product(range(cube.q), repeat=cube.n)):
        yield (values[idx],) + inputs


# ---------------------------------------------------------------------------
# Order-4 helper functions
# ---------------------------------------------------------------------------

def l_of(s: int) -> int:
    """Pair indicator on {0,1,2,3}: 0 for the pair {0,1}, 1 for {2,3}."""
    if not 0 <= s < 4:
        raise UnsupportedOrderError(f"l is defined on symbols 0..3, got {s}")
    return s >> 1


def nu_of(s: int) -> int:
    """Swap within a pair: 0<->1, 2<->3.  An involution with l(nu(s)) = l(s)."""
    if not 0 <= s < 4:
        raise UnsupportedOrderError(f"nu is defined on symbols 0..3, got {s}")
    return s ^ 1


def l_cell(cell: Cell) -> tuple[int, ...]:
    return tuple(l_of(x) for x in cell)


def nu_cell(cell: Cell) -> tuple[int, ...]:
    return tuple(nu_of(x) for x in cell)


# ---------------------------------------------------------------------------
# Text format
#
# Header "LHC <n> <q>", then q**n whitespace-separated symbols in index
# order.  Lines starting with '#' are comments.  LF and CRLF both accepted.
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\S+")


def parse_lhc(text: str) -> LatinHypercube:
    """Parse the .lhc text format; raises ParseError with line/column."""
    lines = text.splitlines()
    header = None
    header_line = 0
    body_tokens: list[tuple[str, int, int]] = []
    for ln, raw in enumerate(lines, start=1):
        if raw.lstrip().startswith("#"):
            continue
        toks = [(m.group(), ln, m.start() + 1) for m in _TOKEN.finditer(raw)]
        if not toks:
            continue
        if header is None:
            header = toks
            header_line = ln
        else:
            body_tokens.extend(toks)

    if header is None:
        raise ParseError("empty input, expected 'LHC <n> <q>' header", 1, 1)
    if header[0][0] != "LHC":
        raise ParseError(f"expected 'LHC' header, got {header[0][0]!r}", header_line, header[0][2])
    if len(header) != 3:
        raise ParseError("header must be exactly 'LHC <n> <q>'", header_line, header[0][2])
    try:
        n = int(header[1][0])
        q = int(header[2][0])
    except ValueError:
        raise ParseError("header arity/order must be integers", header_line, header[1][2]) from None
    if n < 1 or not 1 <= q <= MAX_ORDER:
        raise ParseError(f"unsupported arity/order n={n} q={q}", header_line, header[1][2])
    expected = q**n
    if expected > MAX_CELLS:
        raise ParseError(f"q**n = {expected} exceeds the supported scale", header_line, header[1][2])

    if len(body_tokens) > expected:
        tok, ln, col = body_tokens[expected]
        raise ParseError(f"expected {expected} symbols, found extra token {tok!r}", ln, col)
    if len(body_tokens) < expected:
        raise ParseError(f"expected {expected} symbols, got {len(body_tokens)}", len(lines), 1)

    out = bytearray(expected)
    for i, (tok, ln, col) in enumerate(body_tokens):
        try:
            v = int(tok)
        except ValueError:
            raise ParseError(f"not an integer: {tok!r}", ln, col) from None
        if not 0 <= v < q:
            raise ParseError(f"symbol {v} out of range for order {q}", ln, col)
        out[i] = v
    return LatinHypercube(n, q, bytes(out))


def serialize_lhc(cube: LatinHypercube) -> str:
    """Canonical rendering: header, then rows of q symbols, layers separated
    by blank lines for n >= 3 (x1 selects the layer)."""
    n, q, values = cube.n, cube.q, cube.values
    out = [f"LHC {n} {q}"]
    if n == 1:
        out.append(" ".join(str(v) for v in values))
    else:
        n_rows = q ** (n - 1)
        layer_rows = q ** (n - 2)
        for r in range(n_rows):
            if n >= 3 and r and r % layer_rows == 0:
                out.append("")
            row = values[r * q : (r + 1) * q]
            out.append(" ".join(str(v) for v in row))
    return "\n".join(out) + "\n"

"""Exact transversal search over latin hypercubes.

Counting and enumeration run the same depth-first search: one graph cell is
chosen per output symbol a = 0..q-1 in increasing order, among the q^(n-1)
cells with x0 = a.  A cell's input tuple is packed into an integer with one
one-hot q-bit field per coordinate, so two cells collide in some coordinate
exactly when their packed masks intersect.  For each ordered pair of symbol
classes a per-cell bitset row is precomputed ("which later-class cells stay
legal after choosing this one"); the search intersects those rows while
descending and, when only counting, adds the popcount of the final surviving
bitset instead of expanding the last level.

Candidate lists are built in table-index order, which makes the enumeration
stream lexicographic in the flattened, x0-sorted cell list and bitwise
reproducible between runs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import islice, product
from typing import Iterator

from .core import Cell, EnvelopeError, LatinHypercube, UnsupportedOrderError, l_cell
from .semilinear import Quadruple, detect_semilinear

ENVELOPE_MAX_ORDER = 6
ENVELOPE_MAX_CELLS = 1 << 20


@dataclass(frozen=True)
class Transversal:
    """q graph cells, sorted by x0, pairwise distinct in every coordinate."""

    cells: tuple[Cell, ...]

    @classmethod
    def of(cls, cells) -> "Transversal":
        return cls(tuple(sorted(tuple(c) for c in cells)))


@dataclass
class SearchStats:
    nodes_visited: int = 0
    transversals_found: int = 0
    elapsed: float = 0.0


def verify_transversal(cube: LatinHypercube, t: Transversal) -> bool:
    """True iff every cell lies in the cube's graph and every coordinate
    column is a permutation of 0..q-1."""
    n, q = cube.n, cube.q
    if len(t.cells) != q:
        raise ValueError(f"expected {q} cells, got {len(t.cells)}")
    for cell in t.cells:
        if len(cell) != n + 1:
            raise ValueError(f"expected cells of length {n + 1}, got {len(cell)}")
        if any(not 0 <= x < q for x in cell):
            raise ValueError(f"cell {cell} has symbols out of range for order {q}")
    for cell in t.cells:
        if cube[cell[1:]] != cell[0]:
            return False
    for k in range(n + 1):
        if len({cell[k] for cell in t.cells}) != q:
            return False
    return True


# ---------------------------------------------------------------------------
# Search preparation
# ---------------------------------------------------------------------------


def _check_envelope(cube: LatinHypercube) -> None:
    if cube.q > ENVELOPE_MAX_ORDER:
        raise EnvelopeError(f"search supports order <= {ENVELOPE_MAX_ORDER}, got q={cube.q}")
    if cube.size > ENVELOPE_MAX_CELLS:
        raise EnvelopeError(
            f"search supports q**n <= {ENVELOPE_MAX_CELLS}, got {cube.size}"
        )


def _prepare(cube: LatinHypercube):
    """Candidate input tuples per output symbol, packed masks, and pairwise
    compatibility bitset rows."""
    _check_envelope(cube)
    n, q = cube.n, cube.q
    inputs_by_symbol: list[list[Cell]] = [[] for _ in range(q)]
    masks: list[list[int]] = [[] for _ in range(q)]
    values = cube.values
    for idx, inputs in enumerate(product(range(q), repeat=n)):
        a = values[idx]
        m = 0
        for i, x in enumerate(inputs):
            m |= 1 << (q * i + x)
        inputs_by_symbol[a].append(inputs)
        masks[a].append(m)
    compat: dict[tuple[int, int], list[int]] = {}
    for j in range(q):
        for k in range(j + 1, q):
            mk = masks[k]
            rows = []
            for mj in masks[j]:
                bits = 0
                for i, m2 in enumerate(mk):
                    if not mj & m2:
                        bits |= 1 << i
                rows.append(bits)
            compat[(j, k)] = rows
    return inputs_by_symbol, masks, compat


# ---------------------------------------------------------------------------
# Counting
# ---------------------------------------------------------------------------


def count_transversals_stats(cube: LatinHypercube) -> tuple[int, SearchStats]:
    """Exact transversal count with search statistics."""
    start = time.perf_counter()
    _, masks, compat = _prepare(cube)
    q = cube.q
    nodes = 0

    def rec(level: int, pend: tuple[int, ...]) -> int:
        nonlocal nodes
        if level == q - 1:
            c = pend[0].bit_count()
            nodes += c
            return c
        rows = [compat[(level, k)] for k in range(level + 1, q)]
        total = 0
        r = pend[0]
        while r:
            lsb = r & -r
            r ^= lsb
            i = lsb.bit_length() - 1
            nodes += 1
            nxt = []
            for off, rowtab in enumerate(rows):
                v = pend[off + 1] & rowtab[i]
                if not v:
                    break
                nxt.append(v)
            else:
                total += rec(level + 1, tuple(nxt))
        return total

    fulls = tuple((1 << len(ms)) - 1 for ms in masks)
    found = rec(0, fulls)
    stats = SearchStats(nodes, found, time.perf_counter() - start)
    return found, stats


def count_transversals(cube: LatinHypercube) -> int:
    return count_transversals_stats(cube)[0]


def partition_counts(cube: LatinHypercube) -> list[int]:
    """Per-first-cell subtotals; their sum equals count_transversals.

    This is the fan-out unit for parallel counting: each first-level
    candidate can be processed independently and the subtotals summed in
    candidate order.
    """
    _, masks, compat = _prepare(cube)
    q = cube.q
    if q == 1:
        return [1] * len(masks[0])

    def rec(level: int, pend: tuple[int, ...]) -> int:
        if level == q - 1:
            return pend[0].bit_count()
        rows = [compat[(level, k)] for k in range(level + 1, q)]
        total = 0
        r = pend[0]
        while r:
            lsb = r & -r
            r ^= lsb
            i = lsb.bit_length() - 1
            nxt = []
            for off, rowtab in enumerate(rows):
                v = pend[off + 1] & rowtab[i]
                if not v:
                    break
                nxt.append(v)
            else:
                total += rec(level + 1, tuple(nxt))
        return total

    fulls = [(1 << len(ms)) - 1 for ms in masks]
    out = []
    for i in range(len(masks[0])):
        pend = tuple(fulls[k] & compat[(0, k)][i] for k in range(1, q))
        if all(pend):
            out.append(rec(1, pend) if q > 1 else 1)
        else:
            out.append(0)
    return out


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def enumerate_transversals(cube: LatinHypercube, limit: int | None = None) -> Iterator[Transversal]:
    """Yield transversals in lexicographic order of the flattened, x0-sorted
    cell list; with a limit, a prefix of the unlimited stream."""
    if limit is not None and limit < 0:
        raise ValueError(f"limit must be >= 0, got {limit}")
    gen = _enumerate(cube)
    return gen if limit is None else islice(gen, limit)


def _enumerate(cube: LatinHypercube) -> Iterator[Transversal]:
    inputs_by_symbol, masks, compat = _prepare(cube)
    q = cube.q

    def rec(level: int, pend: tuple[int, ...], chosen: list[Cell]):
        r = pend[0]
        if level == q - 1:
            while r:
                lsb = r & -r
                r ^= lsb
                i = lsb.bit_length() - 1
                yield Transversal(tuple(chosen) + ((level,) + inputs_by_symbol[level][i],))
            return
        rows = [compat[(level, k)] for k in range(level + 1, q)]
        while r:
            lsb = r & -r
            r ^= lsb
            i = lsb.bit_length() - 1
            nxt = []
            for off, rowtab in enumerate(rows):
                v = pend[off + 1] & rowtab[i]
                if not v:
                    break
                nxt.append(v)
            else:
                chosen.append((level,) + inputs_by_symbol[level][i])
                yield from rec(level + 1, tuple(nxt), chosen)
                chosen.pop()

    fulls = tuple((1 << len(ms)) - 1 for ms in masks)
    yield from rec(0, fulls, [])


# ---------------------------------------------------------------------------
# Bucketing by block quadruple
# ---------------------------------------------------------------------------


def transversals_by_quadruple(cube: LatinHypercube) -> dict[Quadruple, int]:
    """Bucket every transversal of a standardly semilinear cube by the
    quadruple of pair-indicator images of its four cells."""
    if cube.q != 4:
        raise UnsupportedOrderError(f"quadruple bucketing needs order 4, got q={cube.q}")
    if detect_semilinear(cube) is None:
        raise ValueError("cube is not standardly semilinear")
    buckets: dict[Quadruple, int] = {}
    for t in enumerate_transversals(cube):
        key = Quadruple.of(tuple(l_cell(c) for c in t.cells))
        buckets[key] = buckets.get(key, 0) + 1
    return buckets

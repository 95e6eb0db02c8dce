"""Order-4 quasigroups driven by a Boolean orientation function.

A standardly semilinear quasigroup of order 4 is determined by a Boolean
function lam on the n-dimensional Boolean hypercube: its graph consists of
the cells (x0..xn) whose pair indicators l(x_i) have even parity and whose
bitwise XOR equals lam evaluated at the input pair-indicators.  Such a cube
splits into 2^n order-2 blocks, and every transversal selects its cells from
a block quadruple that is either "twin" (two complementary blocks used
twice, odd arity only) or "brindled" (four distinct blocks).  Counting
transversals therefore reduces to combinatorics over these quadruples,
which this module implements alongside an independent census recurrence.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import product

from .core import LatinHypercube, ParseError, UnsupportedOrderError

# ---------------------------------------------------------------------------
# Boolean orientation functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BooleanFn:
    """A function {0,1}^n -> {0,1}; bit i is the value at the point whose
    coordinates spell i in binary, z1 most significant."""

    n: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"arity must be >= 1, got {self.n}")
        if len(self.bits) != 1 << self.n:
            raise ValueError(f"expected {1 << self.n} bits, got {len(self.bits)}")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0 or 1")

    @classmethod
    def from_string(cls, s: str) -> "BooleanFn":
        m = len(s)
        n = m.bit_length() - 1
        if m < 2 or (1 << n) != m:
            raise ValueError(f"bit string length {m} is not a power of two >= 2")
        if set(s) - {"0", "1"}:
            raise ValueError("bit string may contain only 0 and 1")
        return cls(n, tuple(int(c) for c in s))

    def to_string(self) -> str:
        return "".join(str(b) for b in self.bits)

    def at(self, index: int) -> int:
        return self.bits[index]

    def __call__(self, z: tuple[int, ...]) -> int:
        idx = 0
        for b in z:
            idx = (idx << 1) | b
        return self.bits[idx]


def parse_lambda(text: str) -> BooleanFn:
    """Accept a bare bit string or the file form 'LAMBDA <n>' + bits."""
    tokens = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        if raw.lstrip().startswith("#"):
            continue
        tokens.extend((t, ln) for t in raw.split())
    if not tokens:
        raise ParseError("empty orientation function", 1, 1)
    if tokens[0][0] == "LAMBDA":
        if len(tokens) != 3:
            raise ParseError("expected 'LAMBDA <n>' then one bit string", tokens[0][1], 1)
        try:
            n = int(tokens[1][0])
        except ValueError:
            raise ParseError("arity must be an integer", tokens[1][1], 1) from None
        bits, ln = tokens[2]
        fn = _checked_lambda(bits, ln)
        if fn.n != n:
            raise ParseError(f"bit string length {len(bits)} does not match arity {n}", ln, 1)
        return fn
    if len(tokens) != 1:
        raise ParseError("expected a single bit string", tokens[1][1], 1)
    return _checked_lambda(tokens[0][0], tokens[0][1])


def _checked_lambda(bits, ln):
    try:
        return BooleanFn.from_string(bits)
    except ValueError as e:
        raise ParseError(str(e), ln, 1) from None


def lambda_z4(n: int) -> BooleanFn:
    """Orientation of the cyclic-group cube: 1 exactly at weights 1, 2 mod 4."""
    return BooleanFn(n, tuple(1 if z.bit_count() % 4 in (1, 2) else 0 for z in range(1 << n)))


def lambda_z22(n: int) -> BooleanFn:
    """Identically zero orientation (the XOR-group cube)."""
    return BooleanFn(n, (0,) * (1 << n))


# ---------------------------------------------------------------------------
# Building and recognizing standardly semilinear cubes
# ---------------------------------------------------------------------------

def gen_semilinear(lam: BooleanFn) -> LatinHypercube:
    """Order-4 cube with f(x) = x1 ^ ... ^ xn ^ lam(l(x1)..l(xn))."""
    n = lam.n
    bits = lam.bits
    out = bytearray(4**n)
    for idx, x in enumerate(product(range(4), repeat=n)):
        acc = 0
        block = 0
        for v in x:
            acc ^= v
            block = (block << 1) | (v >> 1)
        out[idx] = acc ^ bits[block]
    return LatinHypercube(n, 4, bytes(out))


def detect_semilinear(cube: LatinHypercube) -> BooleanFn | None:
    """Recover the orientation function, or None if the cube is not exactly
    of the gen_semilinear form.

    Checks that every graph cell has even pair-indicator parity and that the
    full-cell XOR is constant within each input block.
    """
    if cube.q != 4:
        raise UnsupportedOrderError(f"semilinearity is an order-4 notion, got q={cube.q}")
    n = cube.n
    values = cube.values
    bits: list[int | None] = [None] * (1 << n)
    for idx, x in enumerate(product(range(4), repeat=n)):
        x0 = values[idx]
        acc = x0
        par = x0 >> 1
        block = 0
        for v in x:
            acc ^= v
            par ^= v >> 1
            block = (block << 1) | (v >> 1)
        if par:
            return None
        # par == 0 forces acc into {0, 1}
        prev = bits[block]
        if prev is None:
            bits[block] = acc
        elif prev != acc:
            return None
    return BooleanFn(n, tuple(bits))  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# Quadruples of Boolean vectors
#
# Vectors are (n+1)-tuples of bits, position 0 first (the output role).
# Internally they are packed into ints with position 0 as the top bit, so
# integer order coincides with lexicographic tuple order.
# ---------------------------------------------------------------------------


class QuadrupleClass(Enum):
    NOT_PROPER = "not-proper"
    PROPER_NOT_WORTHWHILE = "proper-not-worthwhile"
    TWIN = "twin"
    BRINDLED = "brindled"


@dataclass(frozen=True)
class Quadruple:
    """A multiset of four equal-length Boolean vectors, stored sorted."""

    vectors: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, vectors) -> "Quadruple":
        vecs = tuple(sorted(tuple(v) for v in vectors))
        if len(vecs) != 4:
            raise ValueError(f"a quadruple has 4 vectors, got {len(vecs)}")
        return cls(vecs)

    @property
    def length(self) -> int:
        return len(self.vectors[0])


def classify_quadruple(qd: Quadruple) -> QuadrupleClass:
    """Proper: every position covers {0,0,1,1}.  Worthwhile: all weights
    even; then twin when two distinct vectors, brindled when four."""
    vecs = qd.vectors
    m = len(vecs[0])
    if any(len(v) != m for v in vecs):
        raise ValueError("quadruple vectors differ in length")
    for i in range(m):
        if vecs[0][i] + vecs[1][i] + vecs[2][i] + vecs[3][i] != 2:
            return QuadrupleClass.NOT_PROPER
    if any(sum(v) % 2 for v in vecs):
        return QuadrupleClass.PROPER_NOT_WORTHWHILE
    # A proper quadruple has either two distinct vectors (each twice,
    # complementary) or four distinct ones.
    return QuadrupleClass.TWIN if len(set(vecs)) == 2 else QuadrupleClass.BRINDLED


def _int_to_vec(v: int, m: int) -> tuple[int, ...]:
    return tuple((v >> (m - 1 - i)) & 1 for i in range(m))


@lru_cache(maxsize=None)
def _even_vectors(m: int) -> tuple[int, ...]:
    return tuple(v for v in range(1 << m) if v.bit_count() % 2 == 0)


@lru_cache(maxsize=None)
def _brindled_ints(n: int) -> tuple[tuple[int, int, int, int], ...]:
    """All brindled quadruples of (n+1)-bit vectors as sorted int 4-tuples,
    in lexicographic order.

    For even-weight z1 < z2 < z3 the fourth vector is forced to
    z4 = z1^z2^z3; the quadruple is proper exactly when no position is
    constant across the four, i.e. OR is all ones and AND is zero.
    """
    m = n + 1
    full = (1 << m) - 1
    ev = _even_vectors(m)
    out = []
    for i, z1 in enumerate(ev):
        for j in range(i + 1, len(ev)):
            z2 = ev[j]
            for k in range(j + 1, len(ev)):
                z3 = ev[k]
                z4 = z1 ^ z2 ^ z3
                if z4 <= z3:
                    continue
                if (z1 | z2 | z3 | z4) != full or (z1 & z2 & z3 & z4):
                    continue
                out.append((z1, z2, z3, z4))
    return tuple(out)


def enumerate_brindled(n: int):
    """Yield each unordered brindled quadruple of (n+1)-vectors once,
    vectors sorted, quadruples in lexicographic order."""
    m = n + 1
    for quad in _brindled_ints(n):
        yield Quadruple(tuple(_int_to_vec(v, m) for v in quad))


def enumerate_twin(n: int):
    """Yield the twin quadruples {z, z, ~z, ~z}; none exist for even n."""
    m = n + 1
    if m % 2:
        return
    full = (1 << m) - 1
    for z in _even_vectors(m):
        zc = z ^ full
        if z < zc:
            v, vc = _int_to_vec(z, m), _int_to_vec(zc, m)
            yield Quadruple((v, v, vc, vc))


def count_twin(n: int) -> int:
    """2^(n-1) for odd n, zero otherwise."""
    if n < 1:
        raise ValueError(f"arity must be >= 1, got {n}")
    return 1 << (n - 1) if n % 2 else 0


def brindled_count_closed(n: int) -> int:
    """Closed form for the number of brindled quadruples of (n+1)-vectors."""
    if n < 1:
        raise ValueError(f"arity must be >= 1, got {n}")
    if n % 2 == 0:
        return (6**n - 2**n) // 32
    return (6**n - 3 * 2**n) // 32


# ---------------------------------------------------------------------------
# Census by recurrence
#
# Count 4 x (n+1) Boolean matrices whose every column holds two zeros and
# two ones, bucketed by row-sum parities (a00: all even, a01: two even two
# odd, a11: all odd) and, in the b-family, restricted to matrices made of
# two pairs of identical rows.  Brindled quadruples are the all-even
# matrices without repeated rows, divided by the 4! row orders.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadrupleCensus:
    n: int
    a00: int
    a01: int
    a11: int
    b00: int
    b01: int
    b11: int
    brindled: int


def census_recurrence(n: int) -> QuadrupleCensus:
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    # a01 extends by one column: 4 ways keep the even/odd split, and a
    # mixed split arises from all-even or all-odd matrices in 6 ways each.
    a01 = [6, 24]
    for k in range(2, n + 1):
        a01.append(4 * a01[k - 1] + 12 * a01[k - 2])
    a00 = a01[n - 1] if n >= 1 else 0
    a11 = a00
    b00 = 3 * 2**n if n % 2 else 0
    b11 = b00
    b01 = 6 * 2**n if n % 2 == 0 else 0
    diff = a00 - b00
    if diff % 24:
        raise AssertionError(f"census inconsistency at n={n}: {a00} - {b00} not divisible by 24")
    return QuadrupleCensus(n, a00, a01[n], a11, b00, b01, b11, diff // 24)


# ---------------------------------------------------------------------------
# Transversal counting through quadruples
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _brindled_bar_indices(n: int) -> tuple[tuple[int, int, int, int], ...]:
    """For every brindled quadruple, the four lam-domain indices obtained by
    dropping position 0 of each vector."""
    mask = (1 << n) - 1
    return tuple(
        (z1 & mask, z2 & mask, z3 & mask, z4 & mask) for z1, z2, z3, z4 in _brindled_ints(n)
    )


def count_transversals_formula(lam: BooleanFn) -> int:
    """Exact transversal count of gen_semilinear(lam).

    Twin quadruples contribute 8^(n-1) in total (odd n only).  A brindled
    quadruple contributes 2*4^(n-1) when its four lam values XOR to zero,
    and nothing otherwise.
    """
    n = lam.n
    if n < 2:
        raise ValueError(f"formula counting needs arity >= 2, got {n}")
    bits = lam.bits
    zero_sum = 0
    for i1, i2, i3, i4 in _brindled_bar_indices(n):
        if bits[i1] ^ bits[i2] ^ bits[i3] ^ bits[i4] == 0:
            zero_sum += 1
    twin = 8 ** (n - 1) if n % 2 else 0
    return twin + 2 * 4 ** (n - 1) * zero_sum


def zero_transversal_criterion(lam: BooleanFn) -> bool:
    """Even arity only: true iff every brindled quadruple has lam-sum 1,
    which is exactly when gen_semilinear(lam) has no transversals.

    Odd arity is rejected: twin quadruples alone already force 8^(n-1)
    transversals there.
    """
    if lam.n % 2:
        raise ValueError("criterion applies to even arity only")
    bits = lam.bits
    return all(
        bits[i1] ^ bits[i2] ^ bits[i3] ^ bits[i4] == 1
        for i1, i2, i3, i4 in _brindled_bar_indices(lam.n)
    )


# ---------------------------------------------------------------------------
# Structure diagnostics for orientation functions
# ---------------------------------------------------------------------------


class DeltaClass(Enum):
    CONSTANT0 = "constant-0"
    CONSTANT1 = "constant-1"
    NOT_CONSTANT = "not-constant"


class PlaneParity(Enum):
    ALL_EVEN = "all-even"
    ALL_ODD = "all-odd"
    MIXED = "mixed"


@dataclass(frozen=True)
class DeltaReport:
    delta_class: DeltaClass
    zero_sum_brindled_count: int
    plane_parity: PlaneParity


@lru_cache(maxsize=None)
def _two_planes(n: int) -> tuple[tuple[int, int, int, int], ...]:
    """Index quadruples of all C(n,2)*2^(n-2) two-dimensional planes."""
    planes = []
    positions = range(n)
    for p1 in positions:
        for p2 in range(p1 + 1, n):
            b1 = 1 << (n - 1 - p1)
            b2 = 1 << (n - 1 - p2)
            for base in range(1 << n):
                if base & (b1 | b2):
                    continue
                planes.append((base, base | b1, base | b2, base | b1 | b2))
    return tuple(planes)


def delta_report(lam: BooleanFn) -> DeltaReport:
    """Classify lam by its behaviour on brindled quadruples and on
    2-dimensional planes of its domain.

    Both views are computed directly; for even arity they are linked
    (constant sum 1 on quadruples matches all-odd planes, constant 0
    matches all-even), which the test suite checks from both sides.
    """
    n = lam.n
    bits = lam.bits
    zero_sum = 0
    total = 0
    for i1, i2, i3, i4 in _brindled_bar_indices(n):
        total += 1
        if bits[i1] ^ bits[i2] ^ bits[i3] ^ bits[i4] == 0:
            zero_sum += 1
    if zero_sum == total:
        delta = DeltaClass.CONSTANT0
    elif zero_sum == 0 and total > 0:
        delta = DeltaClass.CONSTANT1
    else:
        delta = DeltaClass.NOT_CONSTANT

    odd = even = 0
    for i1, i2, i3, i4 in _two_planes(n):
        if (bits[i1] + bits[i2] + bits[i3] + bits[i4]) % 2:
            odd += 1
        else:
            even += 1
    if odd and even:
        parity = PlaneParity.MIXED
    elif odd:
        parity = PlaneParity.ALL_ODD
    else:
        parity = PlaneParity.ALL_EVEN
    return DeltaReport(delta, zero_sum, parity)

"""Shared builders for the test suite."""

from __future__ import annotations

from lhc import BinaryOp, BooleanFn, GroupKind, gen_iterated_group

# The two binary order-4 squares behind the layered example cubes: L0 has no
# transversals, Z4ADD is plain cyclic addition.
L0 = BinaryOp(4, ((0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 1, 0), (3, 2, 0, 1)))
Z4ADD = BinaryOp(4, tuple(tuple((i + j) % 4 for j in range(4)) for i in range(4)))


def addition_square(q: int) -> BinaryOp:
    return BinaryOp(q, tuple(tuple((i + j) % q for j in range(q)) for i in range(q)))


def xor_cube(n: int):
    return gen_iterated_group(GroupKind.Z2X2, n, 4)


def cyclic_cube(n: int, q: int = 4):
    kind = GroupKind.Z4 if q == 4 else GroupKind.CYCLIC
    return gen_iterated_group(kind, n, q)


def all_lambdas(n: int):
    """Every orientation function of arity n, in bit-string order."""
    width = 1 << n
    for code in range(1 << width):
        yield BooleanFn(n, tuple((code >> (width - 1 - i)) & 1 for i in range(width)))


def lambda_from_string(s: str) -> BooleanFn:
    return BooleanFn.from_string(s)

"""Composition-spec text format."""

from __future__ import annotations

import random

import pytest

from helpers import L0, Z4ADD
from lhc import CompositionSpec, Leaf, Node, ParseError, TransformSpec, compose
from lhc.compspec import format_composition_spec, parse_composition_spec
from lhc.fixtures import EXAMPLE_CUBE_2, load_fixture
from lhc.randgen import random_parastrophe, random_permutation, random_tree

XOR_TABLE = "0 1 2 3 1 0 3 2 2 3 0 1 3 2 1 0"


def test_parse_minimal_tree():
    spec = parse_composition_spec(f'(op "{XOR_TABLE}" (var 1) (var 2))')
    assert spec.n == 2
    assert isinstance(spec.root, Node)
    assert spec.root.left == Leaf(1)
    cube = compose(spec)
    assert cube[(1, 2)] == 3


def test_parse_example_cube_two():
    l0 = " ".join(str(v) for row in L0.table for v in row)
    z4 = " ".join(str(v) for row in Z4ADD.table for v in row)
    text = f'(op "{l0}" (op "{z4}" (var 1) (var 2)) (var 3))'
    assert compose(parse_composition_spec(text)) == load_fixture(EXAMPLE_CUBE_2)


def test_parse_transform_clauses():
    text = (
        f'(op "{XOR_TABLE}" (var 1) (var 2))\n'
        "(parastrophe 1 0 2)\n"
        '(isotopy "0,1,2,3" "0,2,1,3" "1,0,3,2")\n'
    )
    spec = parse_composition_spec(text)
    assert spec.post_transform == TransformSpec(
        ((0, 1, 2, 3), (0, 2, 1, 3), (1, 0, 3, 2)), (1, 0, 2)
    )


def test_round_trip_random_specs():
    rng = random.Random(99)
    for _ in range(10):
        n = rng.choice([2, 3, 4])
        spec = random_tree(n, 4, rng)
        if rng.random() < 0.5:
            iso = tuple(random_permutation(4, rng) for _ in range(n + 1))
            spec = CompositionSpec(n, spec.root, TransformSpec(iso, random_parastrophe(n, rng)))
        reparsed = parse_composition_spec(format_composition_spec(spec))
        assert reparsed == spec
        assert compose(reparsed) == compose(spec)


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_composition_spec("(var 1)")  # no operation node
    with pytest.raises(ParseError):
        parse_composition_spec(f'(op "{XOR_TABLE}" (var 1) (var 3))')  # labels not 1..n
    with pytest.raises(ParseError):
        parse_composition_spec('(op "0 1 1 0 1" (var 1) (var 2))')  # not q*q entries
    with pytest.raises(ParseError):
        parse_composition_spec('(op "0 1 1 1" (var 1) (var 2))')  # not latin
    with pytest.raises(ParseError):
        parse_composition_spec(f'(op "{XOR_TABLE}" (var 1) (var 2)) (parastrophe 0 1)')
    with pytest.raises(ParseError):
        parse_composition_spec(f'(op "{XOR_TABLE}" (var 1) (var 2)) (isotopy "0,1,2,3")')
    with pytest.raises(ParseError):
        parse_composition_spec(f'(op "{XOR_TABLE}" (var 1) (var 2)')  # unbalanced
    with pytest.raises(ParseError):
        parse_composition_spec("")

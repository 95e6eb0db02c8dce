"""Shipped cube fixtures."""

from __future__ import annotations

from importlib import resources

from .core import LatinHypercube, parse_lhc

EXAMPLE_CUBE_1 = "example_cube_1.lhc"
EXAMPLE_CUBE_2 = "example_cube_2.lhc"


def load_fixture(name: str) -> LatinHypercube:
    text = resources.files("lhc").joinpath("fixtures", name).read_text(encoding="utf-8")
    return parse_lhc(text)

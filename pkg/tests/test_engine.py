"""Exact search: verification, counting, enumeration, bucketing."""

from __future__ import annotations

import random

import pytest

from helpers import addition_square, all_lambdas, cyclic_cube, xor_cube
from lhc import (
    EnvelopeError,
    LatinHypercube,
    QuadrupleClass,
    Transversal,
    UnsupportedOrderError,
    classify_quadruple,
    count_transversals,
    count_transversals_stats,
    count_twin,
    enumerate_transversals,
    gen_semilinear,
    lambda_z4,
    lambda_z22,
    partition_counts,
    transversals_by_quadruple,
    verify_transversal,
)
from lhc.fixtures import EXAMPLE_CUBE_2, load_fixture
from lhc.randgen import random_lambda


def test_verify_single_cell_order_one():
    cube = LatinHypercube(2, 1, bytes([0]))
    assert verify_transversal(cube, Transversal.of([(0, 0, 0)]))


def test_verify_diagonal_of_cyclic_square():
    sq = addition_square(3).as_cube()
    diag = Transversal.of([((2 * i) % 3, i, i) for i in range(3)])
    assert verify_transversal(sq, diag)


def test_verify_rejects_shared_coordinate():
    cube = xor_cube(2)
    cells = [(0, 0, 0), (3, 1, 2), (1, 2, 3), (1, 3, 2)]  # x2 repeats 2
    assert all(cube[c[1:]] == c[0] for c in cells)
    assert not verify_transversal(cube, Transversal.of(cells))


def test_verify_rejects_non_graph_cell():
    cube = xor_cube(2)
    cells = [(1, 0, 0), (0, 1, 1), (2, 2, 3), (3, 3, 2)]
    assert not verify_transversal(cube, Transversal.of(cells))


def test_verify_shape_errors():
    cube = xor_cube(2)
    with pytest.raises(ValueError):
        verify_transversal(cube, Transversal.of([(0, 0, 0)]))
    with pytest.raises(ValueError):
        verify_transversal(cube, Transversal.of([(0, 0), (1, 1), (2, 2), (3, 3)]))
    with pytest.raises(ValueError):
        verify_transversal(cube, Transversal.of([(0, 0, 4), (1, 1, 0), (2, 2, 1), (3, 3, 2)]))


def test_count_binary_baselines():
    assert count_transversals(cyclic_cube(2)) == 0
    assert count_transversals(xor_cube(2)) == 8
    assert count_transversals(xor_cube(3)) == 256


def test_enumerate_identity_permutation():
    cube = LatinHypercube(1, 4, bytes([0, 1, 2, 3]))
    ts = list(enumerate_transversals(cube))
    assert len(ts) == 1
    assert verify_transversal(cube, ts[0])


def test_enumerate_limit_is_prefix():
    cube = xor_cube(3)
    first5 = list(enumerate_transversals(cube, limit=5))
    full = list(enumerate_transversals(cube))
    assert len(first5) == 5
    assert full[:5] == first5
    assert len(full) == 256


def test_enumerate_full_xor_square():
    cube = xor_cube(2)
    ts = list(enumerate_transversals(cube))
    assert len(ts) == 8
    assert len({t.cells for t in ts}) == 8
    for t in ts:
        assert verify_transversal(cube, t)
    flattened = [sum(t.cells, ()) for t in ts]
    assert flattened == sorted(flattened)
    for t in ts:
        assert [c[0] for c in t.cells] == [0, 1, 2, 3]


def test_determinism():
    cube = load_fixture(EXAMPLE_CUBE_2)
    c1, s1 = count_transversals_stats(cube)
    c2, s2 = count_transversals_stats(cube)
    assert (c1, s1.nodes_visited, s1.transversals_found) == (c2, s2.nodes_visited, s2.transversals_found)
    assert list(enumerate_transversals(cube)) == list(enumerate_transversals(cube))
    assert s1.transversals_found <= s1.nodes_visited


def test_partition_counts_sum():
    for cube in (xor_cube(3), cyclic_cube(3), load_fixture(EXAMPLE_CUBE_2), cyclic_cube(2, 5)):
        parts = partition_counts(cube)
        assert len(parts) == cube.q ** (cube.n - 1)
        assert sum(parts) == count_transversals(cube)


def test_envelope_order_limit():
    cube = LatinHypercube(1, 7, bytes(range(7)))
    with pytest.raises(EnvelopeError):
        count_transversals(cube)


def test_envelope_size_limit():
    # structurally fine, too many cells for the search (never silently truncated)
    cube = LatinHypercube(21, 2, bytes(2**21))
    with pytest.raises(EnvelopeError):
        count_transversals(cube)


def test_buckets_on_odd_xor_cube():
    buckets = transversals_by_quadruple(gen_semilinear(lambda_z22(3)))
    twin = {k: v for k, v in buckets.items() if classify_quadruple(k) is QuadrupleClass.TWIN}
    brindled = {k: v for k, v in buckets.items() if classify_quadruple(k) is QuadrupleClass.BRINDLED}
    assert len(twin) == count_twin(3) == 4
    assert sum(twin.values()) == 64
    assert set(twin.values()) == {16}
    assert sorted(brindled.values()) == [32] * 6
    assert len(buckets) == len(twin) + len(brindled)


def test_buckets_empty_for_even_cyclic_orientation():
    assert transversals_by_quadruple(gen_semilinear(lambda_z4(4))) == {}


def test_buckets_require_standard_semilinearity():
    with pytest.raises(ValueError):
        transversals_by_quadruple(load_fixture(EXAMPLE_CUBE_2))
    with pytest.raises(UnsupportedOrderError):
        transversals_by_quadruple(cyclic_cube(2, 3))


def test_every_bucket_is_twin_or_brindled():
    rng = random.Random(42)
    lams = list(all_lambdas(2)) + [random_lambda(3, rng) for _ in range(6)] + [random_lambda(4, rng)]
    for lam in lams:
        for key in transversals_by_quadruple(gen_semilinear(lam)):
            assert classify_quadruple(key) in (QuadrupleClass.TWIN, QuadrupleClass.BRINDLED)


def test_brindled_bucket_sizes_are_all_or_nothing():
    rng = random.Random(9)
    for lam in [random_lambda(3, rng) for _ in range(4)]:
        buckets = transversals_by_quadruple(gen_semilinear(lam))
        for key, v in buckets.items():
            if classify_quadruple(key) is QuadrupleClass.BRINDLED:
                assert v == 2 * 4**2

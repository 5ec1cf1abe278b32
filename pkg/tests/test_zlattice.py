import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kofbg.errors import ValidationError
from kofbg.zlattice import (
    IntLattice,
    cokernel_invariants,
    direct_sum_lattice,
    full_lattice,
    hnf,
    image_lattice,
    kernel_lattice,
    lattice_contains,
    lattice_contains_lattice,
    lattice_index,
    lattice_intersection,
    lattice_scale,
    lattice_sum,
    mat,
    mat_identity,
    mat_mul,
    preimage_lattice,
    product_lattice,
    snf,
    zero_lattice,
)


def test_hnf_hand_example():
    # {(2,0),(0,2),(1,1)} spans the index-2 sublattice {(x,y): x+y even};
    # hand row-reduction gives {(1,1),(0,2)}.
    lat = hnf([(2, 0), (0, 2), (1, 1)])
    assert lat.basis == ((1, 1), (0, 2))


def test_hnf_trivial_cases():
    assert hnf([], ambient=2).basis == ()
    assert hnf([(1, 0), (0, 1)]).basis == ((1, 0), (0, 1))
    assert hnf([(0, 0)], ambient=2).rank == 0


def test_hnf_idempotent():
    lat = hnf([(4, 6, 2), (2, 0, 8), (6, 6, 10)])
    again = hnf(lat.basis, lat.ambient)
    assert again == lat


def _random_unimodular(rng, n):
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(4 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = rng.randint(-3, 3)
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    return m


@given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=2, max_value=5))
@settings(max_examples=60, deadline=None)
def test_hnf_canonical_under_unimodular_representation(seed, n):
    rng = random.Random(seed)
    rows = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(rng.randint(1, n + 1))]
    lat = hnf(rows, n)
    u = _random_unimodular(rng, len(rows))
    mixed = mat_mul(mat(u), mat(rows))
    assert hnf(mixed, n) == lat


def test_snf_hand_examples():
    res = snf(mat([(2, 0), (0, 3)]))
    assert res.invariants == (1, 6)
    res = snf(mat([(0, 0), (0, 0)]))
    assert res.invariants == ()
    # sigma - 1 for the order-3 lattice action: determinant 3, entry gcd 1.
    res = snf(mat([(-1, -1), (1, -2)]))
    assert res.invariants == (1, 3)


@given(st.integers(min_value=0, max_value=10_000))
@settings(max_examples=80, deadline=None)
def test_snf_witnesses_reconstruct(seed):
    rng = random.Random(seed)
    rows, cols = rng.randint(1, 4), rng.randint(1, 4)
    m = mat([[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)])
    res = snf(m)
    assert mat_mul(mat_mul(res.row_ops, m), res.col_ops) == res.diagonal_matrix()
    for a, b in zip(res.invariants, res.invariants[1:]):
        assert b % a == 0
    assert all(d > 0 for d in res.invariants)


def test_snf_invariant_product_is_minor_gcd():
    m = mat([(2, 4), (6, 8)])
    res = snf(m)
    det = abs(2 * 8 - 4 * 6)
    prod = 1
    for d in res.invariants:
        prod *= d
    assert prod == det
    assert res.invariants[0] == gcd(2, gcd(4, gcd(6, 8)))


def test_lattice_sum_intersection_index():
    z2 = full_lattice(2)
    two_z2 = hnf([(2, 0), (0, 2)])
    assert lattice_index(z2, two_z2) == 4
    assert lattice_intersection(hnf([(1, 0)], 2), hnf([(0, 1)], 2)).rank == 0
    s = lattice_sum(two_z2, hnf([(1, 1)], 2))
    assert s.basis == ((1, 1), (0, 2))
    assert lattice_index(z2, s) == 2


def test_lattice_index_errors_and_infinite_marker():
    z2 = full_lattice(2)
    line = hnf([(1, 0)], 2)
    assert lattice_index(z2, line) is None  # rank drop -> infinite marker
    with pytest.raises(ValidationError):
        lattice_index(hnf([(2, 0), (0, 2)]), hnf([(1, 1)], 2))


def test_index_multiplicativity():
    l1 = full_lattice(2)
    l2 = hnf([(1, 1), (0, 2)])
    l3 = hnf([(2, 2), (0, 4)])
    assert lattice_contains_lattice(l2, l3)
    assert lattice_index(l1, l3) == lattice_index(l1, l2) * lattice_index(l2, l3)


def test_product_lattice_rz2():
    # R(Z/2) in basis (1, sigma): sigma^2 = 1.
    mult = [
        [(1, 0), (0, 1)],
        [(0, 1), (1, 0)],
    ]
    aug = hnf([(-1, 1)], 2)  # span(sigma - 1)
    sq = product_lattice(aug, aug, mult)
    # (sigma-1)^2 = 2 - 2 sigma = -2(sigma-1)
    assert sq == lattice_scale(aug, 2)
    zero_mult = [[(0, 0), (0, 0)], [(0, 0), (0, 0)]]
    assert product_lattice(aug, aug, zero_mult).rank == 0


def test_product_lattice_associative_spot():
    mult = [
        [(1, 0), (0, 1)],
        [(0, 1), (1, 0)],
    ]
    a = hnf([(1, 2)], 2)
    b = hnf([(3, -1)], 2)
    c = hnf([(-2, 5)], 2)
    left = product_lattice(product_lattice(a, b, mult), c, mult)
    right = product_lattice(a, product_lattice(b, c, mult), mult)
    assert left == right


def test_kernel_and_cokernel():
    assert kernel_lattice(mat([(2,)])).rank == 0
    assert cokernel_invariants(mat([(2,)])) == (0, (2,))
    res = cokernel_invariants(mat([(-1, -1), (1, -2)]))
    assert res == (0, (3,))
    assert kernel_lattice(mat([(-1, -1), (1, -2)])).rank == 0
    assert kernel_lattice(mat([(0,)])).basis == ((1,),)
    assert cokernel_invariants(mat([(0,)])) == (1, ())


def test_kernel_is_saturated_and_exact():
    m = mat([(2, 4, 6)])
    ker = kernel_lattice(m)
    assert ker.rank == 2
    for row in ker.basis:
        assert sum(a * b for a, b in zip(m[0], row)) == 0
    # saturation: (1,-2,1)/1 in kernel, and no proper divisor issues
    assert lattice_contains(ker, (1, 1, -1))


def test_image_and_preimage():
    m = mat([(2, 0), (0, 3)])
    img = image_lattice(m)
    assert img.basis == ((2, 0), (0, 3))
    pre = preimage_lattice(m, hnf([(4, 0), (0, 3)]))
    assert pre.basis == ((2, 0), (0, 1))


def test_direct_sum_lattice():
    a = hnf([(2,)], 1)
    b = hnf([(1, 1)], 2)
    s = direct_sum_lattice([a, b])
    assert s.ambient == 3
    assert s.basis == ((2, 0, 0), (0, 1, 1))
    assert direct_sum_lattice([zero_lattice(2), a]).basis == ((0, 0, 2),)


def test_ideal_power_chain_decreases():
    # R(Z/3) basis (1, rho, rho^2)
    mult = [
        [(1, 0, 0), (0, 1, 0), (0, 0, 1)],
        [(0, 1, 0), (0, 0, 1), (1, 0, 0)],
        [(0, 0, 1), (1, 0, 0), (0, 1, 0)],
    ]
    aug = hnf([(-1, 1, 0), (-1, 0, 1)], 3)  # I = ker(dimension)
    power = aug
    for _ in range(4):
        nxt = product_lattice(power, aug, mult)
        assert lattice_contains_lattice(power, nxt)
        power = nxt


def test_i_squared_index_in_rz3():
    mult = [
        [(1, 0, 0), (0, 1, 0), (0, 0, 1)],
        [(0, 1, 0), (0, 0, 1), (1, 0, 0)],
        [(0, 0, 1), (1, 0, 0), (0, 1, 0)],
    ]
    aug = hnf([(-1, 1, 0), (-1, 0, 1)], 3)
    sq = product_lattice(aug, aug, mult)
    assert lattice_index(aug, sq) == 3


def test_contains_and_coordinates():
    lat = hnf([(1, 1), (0, 2)])
    assert lattice_contains(lat, (3, 5))
    assert not lattice_contains(lat, (1, 0))
    assert not lattice_contains(zero_lattice(2), (1, 0))
    assert lattice_contains(zero_lattice(2), (0, 0))

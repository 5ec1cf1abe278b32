from fractions import Fraction

import pytest

from kofbg.catalog import (
    alternating_group,
    cyclic_group,
    dihedral_group,
    direct_product,
    quaternion_group,
    symmetric_group,
)
from kofbg.chartab import character_table
from kofbg.errors import ConsistencyError, ValidationError
from kofbg.permgroup import (
    Perm,
    group_from_generators,
    primes_dividing,
    subgroups_up_to_conjugacy,
    trivial_group,
)
from kofbg.repring import (
    CyclicData,
    augmentation_ideal,
    cyclic_data,
    ideal_power,
    prime_power_rank,
    rep_ring,
    rep_ring_of,
    restriction_image,
    ring_structure_I_p,
    primitive_rank,
    generator_idempotent,
    verify_double_coset,
    verify_sylow_image_agreement,
    verify_cross_prime_induction,
    verify_augmentation_localization,
    verify_idempotent_module_regular,
)
from kofbg.zlattice import lattice_contains_lattice, kernel_lattice
from kofbg.chartab import restriction_matrix
from kofbg.permgroup import class_fusion


def test_rep_ring_s3_structure_constants():
    ring = rep_ring_of(symmetric_group(3))
    # rows: trivial, sign, standard; std * std = 1 + sgn + std
    assert ring.constants[2][2] == (1, 1, 1)
    assert ring.constants[1][1] == (1, 0, 0)
    assert ring.constants[1][2] == (0, 0, 1)


def test_rep_ring_z2_z3():
    ring2 = rep_ring_of(cyclic_group(2))
    assert ring2.constants[1][1] == (1, 0)
    ring3 = rep_ring_of(cyclic_group(3))
    # the two nontrivial characters multiply to each other / to trivial
    assert ring3.constants[1][1] == (0, 0, 1)
    assert ring3.constants[1][2] == (1, 0, 0)


def test_augmentation_ideal_ranks():
    assert augmentation_ideal(rep_ring_of(cyclic_group(2))).basis == ((1, -1),)
    s3 = augmentation_ideal(rep_ring_of(symmetric_group(3)))
    assert s3.rank == 2
    for row in s3.basis:
        assert row[0] * 1 + row[1] * 1 + row[2] * 2 == 0
    assert augmentation_ideal(rep_ring_of(trivial_group(1))).rank == 0


def test_ideal_powers_descend():
    ring = rep_ring_of(cyclic_group(4))
    prev = ideal_power(ring, 1)
    for n in range(2, 6):
        cur = ideal_power(ring, n)
        assert lattice_contains_lattice(prev, cur)
        prev = cur


def test_restriction_image_examples():
    s3 = symmetric_group(3)
    syl3 = group_from_generators(3, [Perm((1, 2, 0))])
    img = restriction_image(s3, syl3)
    assert img.basis == ((2, -1, -1),)
    syl2 = group_from_generators(3, [Perm((1, 0, 2))])
    img2 = restriction_image(s3, syl2)
    assert img2.basis == ((1, -1),)
    assert restriction_image(s3, s3) == augmentation_ideal(rep_ring_of(s3))


def test_r_p_two_route():
    s3 = symmetric_group(3)
    assert prime_power_rank(s3, 2) == 1
    assert prime_power_rank(s3, 3) == 1
    assert prime_power_rank(cyclic_group(4), 2) == 3
    for p, n in ((2, 2), (3, 3), (5, 5)):
        assert prime_power_rank(cyclic_group(n), p) == p - 1
    assert prime_power_rank(quaternion_group(), 2) == 4


def test_r_p_full_corpus():
    for g in (
        cyclic_group(2),
        cyclic_group(3),
        cyclic_group(4),
        cyclic_group(5),
        cyclic_group(6),
        symmetric_group(3),
        dihedral_group(4),
        quaternion_group(),
        alternating_group(4),
        symmetric_group(4),
        direct_product(cyclic_group(2), cyclic_group(4)),
    ):
        for p in primes_dividing(g.order):
            prime_power_rank(g, p)  # raises ConsistencyError when the two routes disagree


def test_generator_idempotent_values():
    z2 = cyclic_data(cyclic_group(2))
    th2 = generator_idempotent(z2)
    assert th2 == (Fraction(1, 2), Fraction(-1, 2))
    z3 = cyclic_data(cyclic_group(3))
    th3 = generator_idempotent(z3)
    assert th3[0] == Fraction(2, 3)
    assert sorted(th3[1:]) == [Fraction(-1, 3), Fraction(-1, 3)]
    for n in (2, 3, 4, 5):
        data = cyclic_data(cyclic_group(n))
        coords = generator_idempotent(data)
        ring = rep_ring_of(data.group)
        assert ring.multiply(coords, coords) == coords  # generator_idempotent * generator_idempotent = generator_idempotent


def test_generator_idempotent_vanishes_below_and_galois_fixed():
    from kofbg.repring import galois_row_permutation
    from math import gcd

    for n in (2, 3, 4, 5, 8, 9):
        data = cyclic_data(cyclic_group(n))
        coords = generator_idempotent(data)
        table = character_table(data.group)
        values = table.values_of(coords)
        if data.index_p_subgroup is not None:
            sub = data.index_p_subgroup
            fusion = class_fusion(sub, data.group)
            sub_table = character_table(sub)
            res_values = tuple(values[fusion[c]] for c in range(sub_table.size))
            assert all(v.is_zero() for v in res_values)
        for k in range(1, n + 1):
            if gcd(k, n) != 1:
                continue
            perm = galois_row_permutation(table, k)
            twisted = tuple(coords[perm.index(i)] for i in range(table.size))
            assert twisted == coords


def test_cyclic_data_validation():
    with pytest.raises(ValidationError):
        cyclic_data(symmetric_group(3))
    data = cyclic_data(cyclic_group(4))
    assert data.order == 4
    assert len(data.generators) == 2
    assert data.index_p_subgroup.order == 2


def test_t_rank_values():
    assert primitive_rank(trivial_group(1)).rank == 1
    assert primitive_rank(symmetric_group(3)).rank == 0
    assert primitive_rank(cyclic_group(4)).rank == 2
    assert primitive_rank(cyclic_group(6)).rank == 0
    assert primitive_rank(cyclic_group(8)).rank == 4
    assert primitive_rank(cyclic_group(9)).rank == 6
    assert primitive_rank(dihedral_group(4)).rank == 0
    assert primitive_rank(quaternion_group()).rank == 0
    assert primitive_rank(alternating_group(4)).rank == 0
    assert primitive_rank(cyclic_group(2)).rank == 1
    assert primitive_rank(cyclic_group(3)).rank == 2


def test_t_rank_witness_is_kernel_of_index_p_restriction():
    for n in (4, 8, 9):
        g = cyclic_group(n)
        data = cyclic_data(g)
        result = primitive_rank(g)
        p = primes_dividing(n)[0]
        sub = data.index_p_subgroup
        ker = kernel_lattice(
            restriction_matrix(character_table(g), character_table(sub), class_fusion(sub, g)),
            character_table(g).size,
        )
        assert result.witness[p] == ker


def test_double_coset_s3():
    s3 = symmetric_group(3)
    z2 = group_from_generators(3, [Perm((1, 0, 2))])
    rep = verify_double_coset(s3, z2, z2)
    assert rep.ok and rep.double_cosets == 2
    rep = verify_double_coset(s3, s3, z2)
    assert rep.ok
    rep = verify_double_coset(s3, z2, s3)
    assert rep.ok


def test_double_coset_a4():
    a4 = alternating_group(4)
    v4 = group_from_generators(4, [Perm((1, 0, 3, 2)), Perm((2, 3, 0, 1))])
    z3 = group_from_generators(4, [Perm((1, 2, 0, 3))])
    rep = verify_double_coset(a4, v4, z3)
    assert rep.ok


def test_double_coset_all_pairs_s3_d4():
    for g in (symmetric_group(3), dihedral_group(4)):
        subs = subgroups_up_to_conjugacy(g, proper=False)
        for h in subs:
            for k in subs:
                assert verify_double_coset(g, h, k).ok, (g, h.order, k.order)


def test_sylow_image_agreement():
    s3 = symmetric_group(3)
    assert verify_sylow_image_agreement(s3, 2).ok
    assert verify_sylow_image_agreement(s3, 3).ok
    q8 = quaternion_group()
    rep = verify_sylow_image_agreement(q8, 2)
    assert rep.ok and rep.index == 1  # G = G_p: res is onto its own image
    assert verify_sylow_image_agreement(symmetric_group(4), 3).ok
    with pytest.raises(ValidationError):
        verify_sylow_image_agreement(s3, 5)


def test_cross_prime_induction():
    s3 = symmetric_group(3)
    rep = verify_cross_prime_induction(s3, 2, 3)
    assert rep.ok and rep.double_cosets == 1
    assert verify_cross_prime_induction(symmetric_group(4), 2, 3).ok
    assert verify_cross_prime_induction(symmetric_group(4), 3, 2).ok
    # q not dividing |G|: Sylow_q is trivial, identity holds vacuously
    assert verify_cross_prime_induction(s3, 2, 5).ok
    with pytest.raises(ValidationError):
        verify_cross_prime_induction(s3, 3, 3)


def test_augmentation_localization():
    rep = verify_augmentation_localization(cyclic_group(2), depth=4)
    assert rep.ok and rep.kernel_rank == 0
    rep = verify_augmentation_localization(symmetric_group(3), depth=4)
    assert rep.ok and rep.kernel_rank == 0
    # Z/6: the two classes of order-6 elements are invisible to both Sylow
    # subgroups, so the kernel has rank 2 and sits inside every ideal power.
    rep = verify_augmentation_localization(cyclic_group(6), depth=4)
    assert rep.ok and rep.kernel_rank == 2
    rep = verify_augmentation_localization(trivial_group(1), depth=3)
    assert rep.ok


def test_idempotent_module_regular():
    rep = verify_idempotent_module_regular(cyclic_data(cyclic_group(3)))
    assert rep.ok and rep.basis_rank == 2
    assert dict(rep.traces)[1] == 2 and dict(rep.traces)[2] == 0
    rep = verify_idempotent_module_regular(cyclic_data(cyclic_group(2)))
    assert rep.ok and rep.basis_rank == 1
    rep = verify_idempotent_module_regular(cyclic_data(cyclic_group(8)))
    assert rep.ok and rep.basis_rank == 4
    traces = dict(rep.traces)
    assert traces[1] == 4 and traces[3] == 0 and traces[5] == 0 and traces[7] == 0


def test_ring_structure_examples():
    rs = ring_structure_I_p(cyclic_group(2), 2)
    assert rs.basis == ((1, -1),)
    assert rs.constants[0][0] == (2,)
    rs = ring_structure_I_p(symmetric_group(3), 3)
    assert rs.basis == ((2, -1, -1),)
    assert rs.constants[0][0] == (3,)
    rs = ring_structure_I_p(symmetric_group(3), 2)
    assert rs.basis == ((1, -1),)
    assert rs.constants[0][0] == (2,)


def test_sylow_image_agreement_all_corpus():
    for g in (symmetric_group(3), dihedral_group(4), alternating_group(4), cyclic_group(6)):
        for p in primes_dividing(g.order):
            assert verify_sylow_image_agreement(g, p).ok, (g, p)

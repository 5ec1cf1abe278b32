"""The representation ring R(G) as an explicit based ring.

Coordinates are always integer (or rational) vectors over the deterministic
irreducible basis of the character table.  The augmentation ideal, Sylow
restriction images, ideal powers and the generator idempotents of cyclic
groups
all become lattice computations, which makes every "these images agree"
statement an exact matrix identity.

The verify_* functions are extensional checkers for the restriction/
induction identities this package relies on; each returns a small report
object with an `ok` flag instead of raising, so a self-check run can
collect every failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence, Union

from .chartab import (
    CharacterTable,
    character_table,
    decompose_values,
    induce_character,
    induction_matrix,
    restrict_character,
    restriction_matrix,
)
from .cyclotomic import Cyc, euler_phi
from .errors import ConsistencyError, ValidationError
from .permgroup import (
    PermGroup,
    Perm,
    class_fusion,
    class_index_of,
    prime_power_classes,
    conjugacy_classes,
    double_coset_representatives,
    group_from_generators,
    primes_dividing,
    subgroups_up_to_conjugacy,
    sylow,
)
from .zlattice import (
    IntLattice,
    Matrix,
    hnf,
    image_lattice,
    kernel_lattice,
    lattice_contains,
    lattice_contains_lattice,
    lattice_coordinates,
    lattice_index,
    lattice_scale,
    direct_sum_lattice,
    mat,
    mat_mul,
    mat_stack,
    mat_vec,
    product_lattice,
    zero_lattice,
)

RationalCoords = tuple[Fraction, ...]


@dataclass(frozen=True)
class RepRing:
    """R(G) with multiplication structure constants over Irr(G)."""

    table: CharacterTable
    constants: tuple[tuple[tuple[int, ...], ...], ...]  # constants[i][j] = chi_i * chi_j

    @property
    def size(self) -> int:
        return self.table.size

    @property
    def degrees(self) -> tuple[int, ...]:
        return self.table.degrees

    def multiply(self, x: Sequence, y: Sequence) -> tuple:
        """Bilinear product of coordinate vectors (int or Fraction entries)."""
        out = [0] * self.size
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                f = xi * yj
                for k, c in enumerate(self.constants[i][j]):
                    if c:
                        out[k] += f * c
        return tuple(out)

    def augmentation(self, x: Sequence) -> Union[int, Fraction]:
        return sum(d * xi for d, xi in zip(self.degrees, x))


_RING_CACHE: dict[tuple, RepRing] = {}


@dataclass(frozen=True)
class VirtualChar:
    ring: RepRing
    coords: tuple[int, ...]

    def values(self) -> tuple[Cyc, ...]:
        return self.ring.table.values_of(self.coords)


def rep_ring(table: CharacterTable) -> RepRing:
    key = table.group.element_key()
    cached = _RING_CACHE.get(key)
    if cached is not None:
        return cached
    s = table.size
    constants = []
    for i in range(s):
        row = []
        for j in range(s):
            if j < i:
                row.append(constants[j][i])
                continue
            values = tuple(a * b for a, b in zip(table.rows[i], table.rows[j]))
            coords = decompose_values(table, values)
            if any(c < 0 for c in coords):
                raise ConsistencyError(f"negative structure constant for chi_{i} * chi_{j}")
            row.append(coords)
        constants.append(row)
    ring = RepRing(table, tuple(tuple(r) for r in constants))
    # the unit is the trivial character and augmentation is multiplicative
    for i in range(s):
        unit = [0] * s
        unit[i] = 1
        if ring.constants[0][i] != tuple(unit):
            raise ConsistencyError("trivial character is not the unit")
        for j in range(s):
            if ring.augmentation(ring.constants[i][j]) != table.degrees[i] * table.degrees[j]:
                raise ConsistencyError("augmentation fails to be a ring homomorphism")
    _RING_CACHE[key] = ring
    return ring


def rep_ring_of(group: PermGroup) -> RepRing:
    return rep_ring(character_table(group))


def augmentation_ideal(ring: RepRing) -> IntLattice:
    """Kernel of the dimension functional, as a saturated lattice."""
    return kernel_lattice((ring.degrees,), ring.size)


def ideal_power(ring: RepRing, n: int) -> IntLattice:
    """(I_G)^n, computed by iterated exact lattice products."""
    if n < 1:
        raise ValidationError("ideal powers start at n = 1")
    cache = _ring_power_cache.setdefault(ring.table.group.element_key(), {})
    if n in cache:
        return cache[n]
    aug = cache.get(1)
    if aug is None:
        aug = augmentation_ideal(ring)
        cache[1] = aug
    power = cache[max(k for k in cache if k <= n)]
    base = max(k for k in cache if k <= n)
    for m in range(base + 1, n + 1):
        power = product_lattice(power, aug, ring.constants)
        cache[m] = power
    return cache[n]


_ring_power_cache: dict[tuple, dict[int, IntLattice]] = {}


def _res_data(group: PermGroup, sub: PermGroup):
    tg = character_table(group)
    th = character_table(sub)
    fusion = class_fusion(sub, group)
    return tg, th, fusion, restriction_matrix(tg, th, fusion)


def restriction_image(group: PermGroup, sub: PermGroup) -> IntLattice:
    """Image of I_G under restriction, as a lattice over Irr(sub)."""
    tg, th, fusion, resmat = _res_data(group, sub)
    ig = augmentation_ideal(rep_ring(tg))
    image = hnf([mat_vec(resmat, b) for b in ig.basis], th.size) if ig.rank else zero_lattice(th.size)
    ih = augmentation_ideal(rep_ring(th))
    if not lattice_contains_lattice(ih, image):
        raise ConsistencyError("restriction image escapes the augmentation ideal")
    return image


def prime_power_rank(group: PermGroup, p: int) -> int:
    """r(p) by both routes: Sylow-image lattice rank and p-power class count."""
    lattice_rank = restriction_image(group, sylow(group, p)).rank
    class_count = len(prime_power_classes(group, p))
    if lattice_rank != class_count:
        raise ConsistencyError(
            f"rank of the Sylow restriction image ({lattice_rank}) disagrees "
            f"with the p-power class count ({class_count}) at p = {p}"
        )
    return lattice_rank


# ---------------------------------------------------------------------------
# cyclic groups: the generator idempotent and the primitive part


@dataclass(frozen=True)
class CyclicData:
    group: PermGroup
    order: int
    generator: Perm
    generators: tuple[Perm, ...]
    index_p_subgroup: Optional[PermGroup]


def cyclic_data(group: PermGroup) -> CyclicData:
    n = group.order
    generator = next((x for x in group.sorted_elements() if x.order() == n), None)
    if generator is None:
        raise ValidationError("group is not cyclic")
    gens = tuple(generator**k for k in range(1, n + 1) if gcd(k, n) == 1)
    primes = primes_dividing(n)
    sub = None
    if len(primes) == 1 and n > 1:
        p = primes[0]
        sub = group_from_generators(group.degree, [generator**p])
    return CyclicData(group, n, generator, gens, sub)


def generator_idempotent(data: CyclicData) -> RationalCoords:
    """The rational idempotent supported on the generators of a cyclic group."""
    if data.order == 1:
        raise ValidationError("the generator idempotent needs a nontrivial cyclic group")
    table = character_table(data.group)
    gen_classes = sorted({class_index_of(data.group, t) for t in data.generators})
    coords = []
    for i in range(table.size):
        acc = Cyc.zero(table.exponent)
        for c in gen_classes:
            acc = acc + table.rows[i][c].conjugate()
        a = acc * Fraction(1, data.order)
        if not a.is_rational():
            raise ConsistencyError("idempotent coefficient is not rational")
        coords.append(a.as_fraction())
    # value check: 1 on generators, 0 elsewhere
    values = table.values_of(tuple(coords))
    for c in range(table.size):
        want = 1 if c in gen_classes else 0
        if not (values[c] - want).is_zero():
            raise ConsistencyError("idempotent values are not the generator indicator")
    return tuple(coords)


def galois_row_permutation(table: CharacterTable, k: int) -> tuple[int, ...]:
    """Permutation pi with chi_i composed with (t -> t^k) equal to chi_pi(i)."""
    perm = []
    for i in range(table.size):
        twisted = []
        for cls in table.classes:
            kk = k % cls.element_order
            cls_idx = cls.power_map[kk] if kk else 0
            twisted.append(table.rows[i][cls_idx])
        twisted = tuple(twisted)
        match = next((j for j in range(table.size) if table.rows[j] == twisted), None)
        if match is None:
            raise ConsistencyError("Galois twist does not permute the irreducibles")
        perm.append(match)
    return tuple(perm)


@dataclass(frozen=True)
class PrimitiveRankResult:
    rank: int
    per_prime: dict[int, int]
    witness: dict[int, IntLattice]


def primitive_rank(group: PermGroup) -> PrimitiveRankResult:
    """Rank of the kernel of all proper-subgroup restrictions, per prime part.

    The kernel is taken inside the per-prime Sylow-image quotients, so it
    vanishes unless the group is a nontrivial cyclic p-group (where it has
    rank phi(|group|)) or trivial (rank 1 from the constant part).
    """
    if group.order == 1:
        return PrimitiveRankResult(1, {}, {})
    th = character_table(group)
    subs = subgroups_up_to_conjugacy(group, proper=True)
    total = 0
    per_prime: dict[int, int] = {}
    witness: dict[int, IntLattice] = {}
    for p in primes_dividing(group.order):
        seen: dict[tuple, PermGroup] = {}
        for k_sub in subs:
            p_sub = sylow(k_sub, p)
            seen.setdefault(p_sub.element_key(), p_sub)
        blocks = [
            restriction_matrix(th, character_table(p_sub), class_fusion(p_sub, group))
            for _, p_sub in sorted(seen.items())
        ]
        ker = kernel_lattice(mat_stack(*blocks), th.size)
        own_sylow = sylow(group, p)
        base = kernel_lattice(
            restriction_matrix(th, character_table(own_sylow), class_fusion(own_sylow, group)),
            th.size,
        )
        rank_p = ker.rank - base.rank
        per_prime[p] = rank_p
        witness[p] = ker
        total += rank_p
    return PrimitiveRankResult(total, per_prime, witness)


# ---------------------------------------------------------------------------
# identity verifiers


@dataclass(frozen=True)
class DoubleCosetReport:
    group_order: int
    left_order: int
    right_order: int
    double_cosets: int
    failures: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_double_coset(group: PermGroup, sub_h: PermGroup, sub_k: PermGroup) -> DoubleCosetReport:
    """res^G_K(ind_H^G chi) against the double coset expansion, exactly."""
    tg = character_table(group)
    th = character_table(sub_h)
    tk = character_table(sub_k)
    fus_h = class_fusion(sub_h, group)
    fus_k = class_fusion(sub_k, group)
    reps = double_coset_representatives(group, sub_k, sub_h)

    k_elems = sub_k.sorted_elements()
    failures = []
    for i in range(th.size):
        lhs = restrict_character(tg, tk, fus_k, induce_character(th, tg, fus_h, i))
        rhs = [0] * tk.size
        for g in reps:
            ginv = g.inverse()
            conj_k = {(ginv * x * g).images for x in k_elems}
            inter_elems = [x for x in sub_h.sorted_elements() if x.images in conj_k]
            inter = group_from_generators(group.degree, inter_elems)
            t_int = character_table(inter)
            res_coords = restrict_character(th, t_int, class_fusion(inter, sub_h), i)
            res_values = t_int.values_of(res_coords)
            # transport along conjugation into g S g^-1 <= K
            conj = group_from_generators(group.degree, [g * x * ginv for x in inter.generators])
            t_conj = character_table(conj)
            moved = tuple(
                res_values[class_index_of(inter, ginv * cls.representative * g)]
                for cls in t_conj.classes
            )
            coords_conj = decompose_values(t_conj, moved)
            ind = induce_character(t_conj, tk, class_fusion(conj, sub_k), coords_conj)
            rhs = [a + b for a, b in zip(rhs, ind)]
        if tuple(rhs) != lhs:
            failures.append(i)
    return DoubleCosetReport(group.order, sub_h.order, sub_k.order, len(reps), tuple(failures))


@dataclass(frozen=True)
class SylowImageReport:
    prime: int
    contained: bool
    rank_res: int
    rank_res_ind: int
    index: Optional[int]

    @property
    def ok(self) -> bool:
        return (
            self.contained
            and self.rank_res == self.rank_res_ind
            and self.index is not None
            and self.index % self.prime != 0
        )


def verify_sylow_image_agreement(group: PermGroup, p: int) -> SylowImageReport:
    """im(res after ind) = im(res) after localizing at p, as lattice data."""
    if group.order % p:
        raise ValidationError(f"{p} does not divide the group order {group.order}")
    syl = sylow(group, p)
    tg, tp, fusion, resmat = _res_data(group, syl)
    indmat = induction_matrix(tp, tg, fusion)
    l_res = image_lattice(resmat)
    l_res_ind = image_lattice(mat_mul(resmat, indmat))
    contained = lattice_contains_lattice(l_res, l_res_ind)
    index = None
    if contained and l_res.rank == l_res_ind.rank:
        index = lattice_index(l_res, l_res_ind)
    return SylowImageReport(p, contained, l_res.rank, l_res_ind.rank, index)


@dataclass(frozen=True)
class CrossPrimeReport:
    p: int
    q: int
    double_cosets: int
    matrix_equal: bool

    @property
    def ok(self) -> bool:
        return self.matrix_equal


def verify_cross_prime_induction(group: PermGroup, p: int, q: int) -> CrossPrimeReport:
    """res to G_q after ind from G_p is |G_q\\G/G_p| times the rank-one map."""
    if p == q:
        raise ValidationError("the two primes must differ")
    syl_p = sylow(group, p)
    syl_q = sylow(group, q)
    tg = character_table(group)
    tp = character_table(syl_p)
    tq = character_table(syl_q)
    indmat = induction_matrix(tp, tg, class_fusion(syl_p, group))
    resmat = restriction_matrix(tg, tq, class_fusion(syl_q, group))
    lhs = mat_mul(resmat, indmat)
    dc = len(double_coset_representatives(group, syl_q, syl_p))
    rhs = tuple(
        tuple(dc * tq.degrees[i] * tp.degrees[j] for j in range(tp.size))
        for i in range(tq.size)
    )
    return CrossPrimeReport(p, q, dc, lhs == rhs)


@dataclass(frozen=True)
class AugmentationSequenceReport:
    surjective: bool
    kernel_rank: int
    kernel_inside_powers_up_to: int
    depth: int

    @property
    def ok(self) -> bool:
        return self.surjective and self.kernel_inside_powers_up_to >= self.depth


def verify_augmentation_localization(group: PermGroup, depth: int = 8) -> AugmentationSequenceReport:
    """I_G surjects onto the product of Sylow restriction images; the kernel
    lies in every ideal power up to the requested depth."""
    if depth < 1:
        raise ValidationError("depth must be at least 1")
    ring = rep_ring_of(group)
    aug = augmentation_ideal(ring)
    primes = primes_dividing(group.order)
    if not primes:
        return AugmentationSequenceReport(True, 0, depth, depth)
    resmats = []
    images = []
    for p in primes:
        syl = sylow(group, p)
        _, tp, _, resmat = _res_data(group, syl)
        resmats.append(resmat)
        img = hnf([mat_vec(resmat, b) for b in aug.basis], tp.size) if aug.rank else zero_lattice(tp.size)
        images.append(img)
    stacked = mat_stack(*resmats)
    total_dim = sum(len(m) for m in resmats)
    mapped = (
        hnf([mat_vec(stacked, b) for b in aug.basis], total_dim)
        if aug.rank
        else zero_lattice(total_dim)
    )
    target = direct_sum_lattice(images)
    surjective = mapped == target
    kernel = kernel_lattice(stacked, ring.size)
    good_up_to = 0
    for m in range(1, depth + 1):
        power = ideal_power(ring, m)
        if all(lattice_contains(power, b) for b in kernel.basis):
            good_up_to = m
        else:
            break
    return AugmentationSequenceReport(surjective, kernel.rank, good_up_to, depth)


@dataclass(frozen=True)
class IdempotentModuleReport:
    order: int
    basis_rank: int
    expected_rank: int
    evaluation_nonsingular: bool
    traces_ok: bool
    traces: tuple[tuple[int, Fraction], ...]

    @property
    def ok(self) -> bool:
        return (
            self.basis_rank == self.expected_rank
            and self.evaluation_nonsingular
            and self.traces_ok
        )


def _cyc_matrix_nonsingular(rows: list[list[Cyc]]) -> bool:
    """Gaussian elimination over the cyclotomic field."""
    n = len(rows)
    work = [row[:] for row in rows]
    for col in range(n):
        piv = next((i for i in range(col, n) if not work[i][col].is_zero()), None)
        if piv is None:
            return False
        work[col], work[piv] = work[piv], work[col]
        inv = work[col][col].inverse()
        work[col] = [x * inv for x in work[col]]
        for i in range(col + 1, n):
            if not work[i][col].is_zero():
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[col])]
    return True


def verify_idempotent_module_regular(data: CyclicData) -> IdempotentModuleReport:
    """generator_idempotent * R(C) tensor Q is the regular module of aut(C), checked by the
    generator evaluation matrix and by traces."""
    group = data.group
    n = data.order
    table = character_table(group)
    ring = rep_ring(table)
    th = generator_idempotent(data)
    phi = euler_phi(n)

    scaled = []
    for i in range(table.size):
        e_i = [0] * table.size
        e_i[i] = 1
        prod = ring.multiply(th, e_i)
        vec = []
        for x in prod:
            y = x * n
            if isinstance(y, Fraction):
                if y.denominator != 1:
                    raise ConsistencyError("generator_idempotent module basis is not |C|-integral")
                y = y.numerator
            vec.append(int(y))
        scaled.append(tuple(vec))
    module = hnf(scaled, table.size)

    gen_classes = [class_index_of(group, t) for t in sorted(data.generators, key=lambda p: p.images)]
    eval_rows = []
    for b in module.basis:
        row = []
        for c in gen_classes:
            acc = Cyc.zero(table.exponent)
            for i, x in enumerate(b):
                if x:
                    acc = acc + table.rows[i][c] * x
            row.append(acc)
        eval_rows.append(row)
    nonsingular = module.rank == phi and _cyc_matrix_nonsingular(eval_rows)

    traces = []
    traces_ok = True
    for k in range(1, n + 1):
        if gcd(k, n) != 1:
            continue
        perm = galois_row_permutation(table, k)
        coord_rows = []
        for b in module.basis:
            image = [0] * table.size
            for i, x in enumerate(b):
                image[perm[i]] += x
            coords = lattice_coordinates(module, tuple(image))
            if coords is None:
                raise ConsistencyError("Galois action leaves the generator_idempotent module")
            coord_rows.append(coords)
        trace = Fraction(sum(coord_rows[r][r] for r in range(module.rank)))
        traces.append((k, trace))
        want = Fraction(phi) if k % n == 1 % n else Fraction(0)
        if trace != want:
            traces_ok = False
    return IdempotentModuleReport(n, module.rank, phi, nonsingular, traces_ok, tuple(traces))


# ---------------------------------------------------------------------------
# multiplicative structure of the Sylow image


@dataclass(frozen=True)
class RingStructure:
    prime: int
    irreducibles: int
    basis: Matrix
    constants: tuple[tuple[tuple[int, ...], ...], ...]  # coords over basis


def ring_structure_I_p(group: PermGroup, p: int) -> RingStructure:
    """Z-basis and exact multiplication constants for im(res: I_G -> I_{G_p})."""
    if group.order % p:
        raise ValidationError(f"{p} does not divide the group order {group.order}")
    syl = sylow(group, p)
    ring_p = rep_ring_of(syl)
    image = restriction_image(group, syl)
    constants = []
    for bi in image.basis:
        row = []
        for bj in image.basis:
            prod = ring_p.multiply(bi, bj)
            coords = lattice_coordinates(image, prod)
            if coords is None:
                raise ConsistencyError("product escapes the Sylow image lattice")
            row.append(coords)
        constants.append(tuple(row))
    return RingStructure(p, ring_p.size, image.basis, tuple(constants))

"""The named self-verification corpus.

Runs every verifier in the package over the standard small-group corpus and
returns one named outcome per check.  Outcomes are three-valued: pass, fail
or inconclusive-at-depth; the CLI maps them to exit statuses.  All checks
are independent, exact and deterministic (the seed only feeds the one
genuinely randomized check, HNF canonicity under re-presentation).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd

from .assemble import padic_root_check
from .catalog import (
    alternating_group,
    cyclic_group,
    dihedral_group,
    direct_product,
    quaternion_group,
    symmetric_group,
)
from .chartab import character_table, verify_orthogonality
from .cyclotomic import euler_phi
from .errors import KofbgError
from .permgroup import PermGroup, primes_dividing, subgroups_up_to_conjugacy, trivial_group
from .promod import (
    INCONCLUSIVE,
    PASS,
    StrictMap,
    augmentation_sequence_strict_maps,
    constant_tower,
    find_ideal_power_exponents,
    finite_abelian,
    pro_exact_check,
    six_term_check,
    verify_completion_chain,
)
from .repring import (
    cyclic_data,
    prime_power_rank,
    rep_ring_of,
    primitive_rank,
    generator_idempotent,
    verify_double_coset,
    verify_sylow_image_agreement,
    verify_cross_prime_induction,
    verify_augmentation_localization,
    verify_idempotent_module_regular,
)
from .zlattice import full_lattice, hnf, mat, mat_mul, zero_lattice

FAIL = "fail"


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    status: str
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status == PASS


def corpus_groups(max_order: int = 24) -> list[tuple[str, PermGroup]]:
    """The default verification corpus, bounded by order."""
    named: list[tuple[str, PermGroup]] = [("trivial", trivial_group(1))]
    for n in (2, 3, 4, 5, 6, 8, 9, 12):
        named.append((f"Z{n}", cyclic_group(n)))
    named.append(("S3", symmetric_group(3)))
    for n in (4, 5, 6):
        named.append((f"D{n}", dihedral_group(n)))
    named.append(("Q8", quaternion_group()))
    named.append(("A4", alternating_group(4)))
    named.append(("S4", symmetric_group(4)))
    named.append(("Z2xZ4", direct_product(cyclic_group(2), cyclic_group(4))))
    return [(name, g) for name, g in named if g.order <= max_order]


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def run_selfcheck(
    max_order: int = 24,
    depth: int = 8,
    seed: int = 0,
    inject_fault: bool = False,
) -> list[CheckOutcome]:
    outcomes: list[CheckOutcome] = []
    groups = corpus_groups(max_order)

    def guard(name: str, fn):
        try:
            outcomes.append(fn())
        except KofbgError as exc:
            outcomes.append(CheckOutcome(name, FAIL, f"{type(exc).__name__}: {exc}"))

    # character-table orthogonality, exact, rows and columns
    for name, group in groups:
        def check(name=name, group=group):
            rep = verify_orthogonality(character_table(group))
            return CheckOutcome(f"orthogonality:{name}", _status(rep.ok),
                                "" if rep.ok else f"{len(rep.row_failures)} row / {len(rep.column_failures)} column failures")
        guard(f"orthogonality:{name}", check)

    # two-route r(p)
    for name, group in groups:
        for p in primes_dividing(group.order):
            def check(name=name, group=group, p=p):
                value = prime_power_rank(group, p)
                return CheckOutcome(f"prime-power-rank:{name}:p={p}", PASS, f"r({p}) = {value}")
            guard(f"prime-power-rank:{name}:p={p}", check)

    # double coset formula over all subgroup pairs of S3, D4, A4
    for name, group in [("S3", symmetric_group(3)), ("D4", dihedral_group(4)), ("A4", alternating_group(4))]:
        if group.order > max_order:
            continue
        def check(name=name, group=group):
            subs = subgroups_up_to_conjugacy(group, proper=False)
            bad = []
            for h in subs:
                for k in subs:
                    rep = verify_double_coset(group, h, k)
                    if not rep.ok:
                        bad.append((h.order, k.order))
            return CheckOutcome(
                f"double-coset:{name}", _status(not bad),
                f"{len(subs) * len(subs)} pairs" if not bad else f"failing pairs {bad}",
            )
        guard(f"double-coset:{name}", check)

    # Sylow-image identities
    for name, group in groups:
        for p in primes_dividing(group.order):
            def check(name=name, group=group, p=p):
                rep = verify_sylow_image_agreement(group, p)
                detail = f"index {rep.index}" if rep.ok else f"contained={rep.contained} ranks=({rep.rank_res},{rep.rank_res_ind}) index={rep.index}"
                return CheckOutcome(f"sylow-image-agreement:{name}:p={p}", _status(rep.ok), detail)
            guard(f"sylow-image-agreement:{name}:p={p}", check)
        primes = primes_dividing(group.order)
        for p in primes:
            for q in primes:
                if p == q:
                    continue
                def check(name=name, group=group, p=p, q=q):
                    rep = verify_cross_prime_induction(group, p, q)
                    return CheckOutcome(f"cross-prime-induction:{name}:p={p},q={q}", _status(rep.ok),
                                        f"{rep.double_cosets} double cosets")
                guard(f"cross-prime-induction:{name}:p={p},q={q}", check)

    for name, group in groups:
        def check(name=name, group=group):
            rep = verify_augmentation_localization(group, depth=depth)
            detail = f"kernel rank {rep.kernel_rank}, inside I^m for m <= {rep.kernel_inside_powers_up_to}"
            return CheckOutcome(f"augmentation-localization:{name}", _status(rep.ok), detail)
        guard(f"augmentation-localization:{name}", check)

    # generator idempotents and the primitive part
    for n in (2, 3, 4, 5, 8, 9):
        if n > max_order:
            continue
        def check(n=n):
            data = cyclic_data(cyclic_group(n))
            coords = generator_idempotent(data)
            ring = rep_ring_of(data.group)
            ok = ring.multiply(coords, coords) == coords
            from .repring import galois_row_permutation

            table = character_table(data.group)
            for k in range(1, n + 1):
                if gcd(k, n) != 1:
                    continue
                perm = galois_row_permutation(table, k)
                twisted = tuple(coords[perm.index(i)] for i in range(table.size))
                ok = ok and twisted == coords
            return CheckOutcome(f"generator-idempotent:Z{n}", _status(ok))
        guard(f"generator-idempotent:Z{n}", check)

    for n in (2, 3, 4, 5, 8, 9):
        if n > max_order:
            continue
        def check(n=n):
            rep = verify_idempotent_module_regular(cyclic_data(cyclic_group(n)))
            return CheckOutcome(f"idempotent-module:Z{n}", _status(rep.ok),
                                f"rank {rep.basis_rank} = phi({n})")
        guard(f"idempotent-module:Z{n}", check)

    for name, group in groups:
        def check(name=name, group=group):
            result = primitive_rank(group)
            if group.order == 1:
                want = 1
            else:
                primes = primes_dividing(group.order)
                is_cyclic_p = len(primes) == 1 and any(
                    x.order() == group.order for x in group.sorted_elements()
                )
                want = euler_phi(group.order) if is_cyclic_p else 0
            ok = result.rank == want
            return CheckOutcome(f"primitive-rank:{name}", _status(ok), f"rank {result.rank}, expected {want}")
        guard(f"primitive-rank:{name}", check)

    # tower suite
    for n, p in ((2, 2), (3, 3), (4, 2), (5, 5), (7, 7), (8, 2), (9, 3), (11, 11), (13, 13), (16, 2)):
        if n > max_order:
            continue
        def check(n=n, p=p):
            w = find_ideal_power_exponents(cyclic_group(n), p, bound=max(12, n))
            return CheckOutcome(
                f"ideal-power-exponents:Z{n}", _status(w.ok),
                f"a={w.a} b={w.b} c={w.c}",
            )
        guard(f"ideal-power-exponents:Z{n}", check)

    for name, group in [("Z2", cyclic_group(2)), ("Z3", cyclic_group(3)), ("Z4", cyclic_group(4)), ("S3", symmetric_group(3))]:
        if group.order > max_order:
            continue
        def check(name=name, group=group):
            rep = verify_completion_chain(group, depth=max(depth, 2))
            certified = min((s.certified_up_to for s in rep.stage_reports), default=0)
            return CheckOutcome(f"completion-chain:{name}", rep.status,
                                f"stages certified up to level {certified}")
        guard(f"completion-chain:{name}", check)

    guard("six-term:finite-example", _six_term_finite_example)
    guard("six-term:pro-trivial-kernel", _six_term_pro_trivial_kernel)
    guard("six-term:constant-free", _six_term_constant_free)

    for name, group in [("Z2", cyclic_group(2)), ("Z6", cyclic_group(6)), ("S3", symmetric_group(3))]:
        if group.order > max_order:
            continue
        def check(name=name, group=group):
            f, g = augmentation_sequence_strict_maps(rep_ring_of(group), max(depth, 2))
            rep = pro_exact_check(f, g)
            return CheckOutcome(f"augmentation-tower-pro-exact:{name}", rep.status)
        guard(f"augmentation-tower-pro-exact:{name}", check)

    def padic_battery():
        cases = [(3, 3, 2, False), (1, 5, 1, True), (4, 5, 2, True), (2, 3, 2, True), (5, 7, 2, False), (6, 7, 2, True), (4, 2, 3, False)]
        bad = [c for *c, want in [(l, p, prec, want) for l, p, prec, want in cases]
               if padic_root_check(*c) != want]
        return CheckOutcome("padic-roots", _status(not bad), "" if not bad else f"failing cases {bad}")
    guard("padic-roots", padic_battery)

    def hnf_canonicity():
        rng = random.Random(seed)
        trials = 25
        for _ in range(trials):
            n = rng.randint(2, 5)
            rows = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(rng.randint(1, n + 1))]
            lat = hnf(rows, n)
            u = [[1 if i == j else 0 for j in range(len(rows))] for i in range(len(rows))]
            for _ in range(4 * len(rows)):
                i, j = rng.randrange(len(rows)), rng.randrange(len(rows))
                if i != j:
                    c = rng.randint(-3, 3)
                    u[i] = [a + c * b for a, b in zip(u[i], u[j])]
            mixed = mat_mul(mat(u), mat(rows))
            if hnf(mixed, n) != lat:
                return CheckOutcome("hnf-canonicity", FAIL, "re-presentation changed the HNF")
        return CheckOutcome("hnf-canonicity", PASS, f"{trials} seeded trials")
    guard("hnf-canonicity", hnf_canonicity)

    if inject_fault:
        guard("injected-fault:orthogonality", _injected_fault_check)

    return outcomes


def _six_term_finite_example() -> CheckOutcome:
    depth = 4
    a = constant_tower(finite_abelian([2]), depth)
    b = constant_tower(finite_abelian([4]), depth)
    c = constant_tower(finite_abelian([2]), depth)
    f = StrictMap(a, b, tuple([mat([(2,)])] * (depth + 1)))
    g = StrictMap(b, c, tuple([mat([(1,)])] * (depth + 1)))
    rep = six_term_check(f, g)
    ok = rep.ok and rep.lim_orders == (2, 4, 2)
    return CheckOutcome("six-term:finite-example", _status(ok), f"lim orders {rep.lim_orders}")


def _six_term_pro_trivial_kernel() -> CheckOutcome:
    depth = 4
    zero = mat([(0,)])
    a = constant_tower(finite_abelian([2]), depth, map_matrix=zero)
    b = constant_tower(finite_abelian([2]), depth, map_matrix=zero)
    c = constant_tower(finite_abelian([1]), depth)
    f = StrictMap(a, b, tuple([mat([(1,)])] * (depth + 1)))
    g = StrictMap(b, c, tuple([mat([(1,)])] * (depth + 1)))
    rep = six_term_check(f, g)
    ok = rep.ok and rep.lim_orders == (1, 1, 1)
    return CheckOutcome("six-term:pro-trivial-kernel", _status(ok), f"lim orders {rep.lim_orders}")


def _six_term_constant_free() -> CheckOutcome:
    from .promod import QuotientPresentation

    depth = 4
    z = QuotientPresentation(1, full_lattice(1), zero_lattice(1))
    a = constant_tower(z, depth)
    b = constant_tower(z, depth)
    c = constant_tower(finite_abelian([1]), depth)
    f = StrictMap(a, b, tuple([mat([(1,)])] * (depth + 1)))
    g = StrictMap(b, c, tuple([mat([(1,)])] * (depth + 1)))
    rep = six_term_check(f, g)
    # lim A = lim B = Z (infinite, reported as None), lim C = 0
    ok = rep.ok and rep.lim_orders == (None, None, 1)
    return CheckOutcome("six-term:constant-free", _status(ok), f"lim orders {rep.lim_orders}")


def _injected_fault_check() -> CheckOutcome:
    """Negative control: corrupt one table value; verification must fail."""
    table = character_table(symmetric_group(3))
    rows = [list(row) for row in table.rows]
    rows[2][1] = rows[2][1] + 1
    corrupted = type(table)(
        group=table.group,
        classes=table.classes,
        exponent=table.exponent,
        rows=tuple(tuple(r) for r in rows),
        degrees=table.degrees,
        dixon_prime=table.dixon_prime,
        dixon_root=table.dixon_root,
    )
    rep = verify_orthogonality(corrupted)
    if rep.ok:
        return CheckOutcome("injected-fault:orthogonality", FAIL,
                            "corruption was NOT detected (verifier is broken)")
    return CheckOutcome("injected-fault:orthogonality", FAIL,
                        f"injected corruption detected as intended: {len(rep.row_failures)} row failures")


def summarize(outcomes: list[CheckOutcome]) -> dict[str, int]:
    counts = {PASS: 0, FAIL: 0, INCONCLUSIVE: 0}
    for outcome in outcomes:
        counts[outcome.status] = counts.get(outcome.status, 0) + 1
    return counts


def exit_status(outcomes: list[CheckOutcome]) -> int:
    """0 all pass, 2 any failure, 3 inconclusive-at-depth only."""
    statuses = {o.status for o in outcomes}
    if FAIL in statuses:
        return 2
    if INCONCLUSIVE in statuses:
        return 3
    return 0

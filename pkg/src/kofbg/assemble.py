"""Assemble the rationalized K-theory of BG from per-family inputs.

The result is presented per parity: K^n depends only on n mod 2, with an
explicit finite list of even/odd Betti numbers for the rational part and a
per-prime rank for each p-adic part.  Ring structure is attached when the
hypotheses that make a rational description valid are certified, and is
otherwise reported absent together with the failed hypothesis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .cohom import (
    CrystalSpec,
    DirectDataSpec,
    FuchsianSpec,
    OneRelatorSpec,
    betti_crystallographic,
    betti_fuchsian,
    con_count_crystallographic,
    exterior_betti,
    h1_and_fixed,
    one_relator_analyze,
)
from .errors import ValidationError
from .permgroup import PermGroup
from .promod import completed_k0
from .repring import RingStructure


@dataclass(frozen=True)
class FinitePerm:
    group: PermGroup


@dataclass(frozen=True)
class Crystallographic:
    spec: CrystalSpec


@dataclass(frozen=True)
class Fuchsian:
    spec: FuchsianSpec


@dataclass(frozen=True)
class OneRelator:
    spec: OneRelatorSpec


@dataclass(frozen=True)
class Direct:
    spec: DirectDataSpec


GroupSpec = Union[FinitePerm, Crystallographic, Fuchsian, OneRelator, Direct]


@dataclass(frozen=True)
class Note:
    code: str
    message: str
    data: dict = field(default_factory=dict)


@dataclass(frozen=True)
class KPart:
    rational_rank: int
    betti: tuple[int, ...]
    p_adic: dict[int, int]


@dataclass(frozen=True)
class RingAvailability:
    available: bool
    kind: Optional[str] = None
    reason: Optional[str] = None
    law: Optional[str] = None
    p_adic_ranks: dict[int, int] = field(default_factory=dict)
    sylow_constants: dict[int, RingStructure] = field(default_factory=dict)


@dataclass(frozen=True)
class KRationalResult:
    k0: KPart
    k1: KPart
    ring: RingAvailability
    notes: tuple[Note, ...] = ()

    def component(self, n: int) -> KPart:
        """K^n depends only on the parity of n."""
        return self.k0 if n % 2 == 0 else self.k1


FINITE_LAW = "(m, u*a) . (n, v*b) = (mn, m*(v*b) + n*(u*a) + (uv)*(ab))"
RATIONAL_LAW = "(a, u) . (b, v) = (a cup b, a0*v + b0*u + u*v)"


def _split_parity(betti: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    even = tuple(b for k, b in enumerate(betti) if k % 2 == 0)
    odd = tuple(b for k, b in enumerate(betti) if k % 2 == 1)
    return even, odd


def _part(betti: Sequence[int], p_adic: dict[int, int]) -> KPart:
    clean = {p: r for p, r in sorted(p_adic.items()) if r}
    return KPart(sum(betti), tuple(betti), clean)


def k_rational(spec: GroupSpec) -> KRationalResult:
    """Evaluate the rationalized K-theory of BG for a supported family."""
    if isinstance(spec, FinitePerm):
        descriptor = completed_k0(spec.group)
        k0 = _part((1,), dict(descriptor.p_adic_ranks))
        k1 = _part((), {})
        ring = RingAvailability(
            available=True,
            kind="sylow_image_constants",
            law=FINITE_LAW,
            p_adic_ranks=dict(descriptor.p_adic_ranks),
            sylow_constants=dict(descriptor.ring),
        )
        return KRationalResult(k0, k1, ring)

    if isinstance(spec, Crystallographic):
        return _crystallographic_result(spec.spec)

    if isinstance(spec, Fuchsian):
        data = betti_fuchsian(spec.spec)
        even, odd = _split_parity(data.betti)
        k0 = _part(even, dict(data.prime_counts))
        k1 = _part(odd, {})
        return KRationalResult(k0, k1, _fuchsian_ring(spec.spec, data.prime_counts))

    if isinstance(spec, OneRelator):
        data = one_relator_analyze(spec.spec)
        even, odd = _split_parity(data.betti)
        k0 = _part(even, dict(data.prime_counts))
        k1 = _part(odd, {})
        ring = RingAvailability(
            available=False,
            reason="the Weyl group of the torsion subgroup is not certified to be its full automorphism group",
        )
        return KRationalResult(k0, k1, ring)

    if isinstance(spec, Direct):
        return _direct_result(spec.spec)

    raise ValidationError(f"unsupported group specification {type(spec).__name__}")


def _crystallographic_result(spec: CrystalSpec) -> KRationalResult:
    betti = betti_crystallographic(spec)
    h1, fixed_rank = h1_and_fixed(spec)
    copies = con_count_crystallographic(spec)
    even, odd = _split_parity(betti)
    cent_even, cent_odd = _split_parity(exterior_betti(fixed_rank))
    k0 = _part(even, {spec.p: copies * sum(cent_even)})
    k1 = _part(odd, {spec.p: copies * sum(cent_odd)})

    notes = []
    if fixed_rank == 0 and h1 == spec.p:
        notes.append(
            Note(
                code="rational-part-convention",
                message=(
                    "Rational Betti numbers come from exact invariant exterior-power "
                    "averaging and give rank "
                    f"{sum(even) + sum(odd)}; the classical worked example with these "
                    "invariants is usually displayed with a single rational factor. "
                    "The difference is flagged here rather than silently resolved."
                ),
                data={"betti": list(betti), "h1_order": h1, "fixed_rank": fixed_rank},
            )
        )

    if fixed_rank == 0 and spec.p == 2:
        ring = RingAvailability(
            available=True,
            kind="rational_idempotent",
            law=RATIONAL_LAW,
            p_adic_ranks=dict(k0.p_adic),
        )
    else:
        reasons = []
        if fixed_rank != 0:
            reasons.append("centralizers of torsion elements have nontrivial rational cohomology")
        if spec.p != 2:
            reasons.append("the Weyl group of a torsion subgroup is trivial but its automorphism group is not")
        ring = RingAvailability(available=False, reason="; ".join(reasons))
    return KRationalResult(k0, k1, ring, tuple(notes))


def _fuchsian_ring(spec: FuchsianSpec, counts: dict[int, int]) -> RingAvailability:
    if all(m == 2 for m in spec.periods):
        return RingAvailability(
            available=True,
            kind="rational_idempotent",
            law=RATIONAL_LAW,
            p_adic_ranks=dict(counts),
        )
    return RingAvailability(
        available=False,
        reason="periods above 2 give torsion subgroups whose full automorphism group is not realized by the Weyl group",
    )


def _direct_result(spec: DirectDataSpec) -> KRationalResult:
    even, odd = _split_parity(spec.betti)
    p_adic_even: dict[int, int] = {}
    p_adic_odd: dict[int, int] = {}
    for p, records in sorted(spec.centralizers.items()):
        e_total = 0
        o_total = 0
        for record in records:
            ce, co = _split_parity(record.betti)
            e_total += sum(ce)
            o_total += sum(co)
        p_adic_even[p] = e_total
        p_adic_odd[p] = o_total
    k0 = _part(even, p_adic_even)
    k1 = _part(odd, p_adic_odd)
    if spec.trivial_centralizer_cohomology and spec.full_weyl_groups:
        ring = RingAvailability(
            available=True,
            kind="rational_idempotent",
            law=RATIONAL_LAW,
            p_adic_ranks=dict(k0.p_adic),
        )
    else:
        missing = []
        if not spec.trivial_centralizer_cohomology:
            missing.append("trivial_centralizer_cohomology")
        if not spec.full_weyl_groups:
            missing.append("full_weyl_groups")
        ring = RingAvailability(
            available=False,
            reason=f"uncertified hypotheses: {', '.join(missing)}",
        )
    return KRationalResult(k0, k1, ring)


def ring_structure(spec: GroupSpec) -> RingAvailability:
    return k_rational(spec).ring


def torsion_criterion(result: KRationalResult) -> bool:
    """True exactly when some p-adic rank is nonzero."""
    return bool(result.k0.p_adic) or bool(result.k1.p_adic)


# ---------------------------------------------------------------------------
# p-adic roots of unity


def padic_root_check(l: int, p: int, precision: int = 3) -> bool:
    """Does Z_p contain a primitive l-th root of unity?

    Exhaustive scan of the l-th cyclotomic polynomial modulo p^precision,
    accepting only roots that are simple modulo p (Hensel liftable).  A
    root in Z_p always reduces to such a residue, so a negative scan is a
    sound 'no'.
    """
    from .cyclotomic import cyclotomic_polynomial
    from math import gcd

    if l < 1:
        raise ValidationError("the root order must be at least 1")
    if not (p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))):
        raise ValidationError(f"{p} is not prime")
    if precision < 1:
        raise ValidationError("precision must be at least 1")
    if l == 1:
        return True
    modulus = p**precision
    if modulus > 10**7:
        raise ValidationError("precision too large for exhaustive residue search")
    poly = cyclotomic_polynomial(l)
    deriv = tuple(k * c for k, c in enumerate(poly))[1:]
    found = False
    for x in range(modulus):
        value = 0
        for c in reversed(poly):
            value = (value * x + c) % modulus
        if value:
            continue
        dvalue = 0
        for c in reversed(deriv):
            dvalue = (dvalue * x + c) % p
        if dvalue % p:
            found = True
            break
    if gcd(l, p) == 1:
        # Teichmueller cross-check: the answer must be l | p - 1
        if found != ((p - 1) % l == 0):
            raise ValidationError(
                f"p-adic root scan disagrees with the Teichmueller criterion for l={l}, p={p}"
            )
    return found

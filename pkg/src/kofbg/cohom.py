"""Rational cohomology inputs for the supported group families.

Four input shapes produce the Betti data the final assembly consumes:

* crystallographic Z^n x| Z/p with an explicit integer action matrix,
* Fuchsian signatures (genus; periods),
* finitely generated one-relator presentations,
* direct data (Betti numbers supplied from the literature, with provenance).

Everything is exact: exterior-power traces come from integer characteristic
polynomials, group cohomology of the Z/p-action from integer kernels and
cokernels, and the one-relator chain complex from exponent sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import ConsistencyError, ValidationError
from .zlattice import (
    Matrix,
    cokernel_invariants,
    image_lattice,
    kernel_lattice,
    lattice_coordinates,
    mat,
    mat_identity,
    mat_mul,
)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def prime_factor_multiplicity(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# ---------------------------------------------------------------------------
# crystallographic groups Z^n x| Z/p


@dataclass(frozen=True)
class CrystalSpec:
    """Split extension data: a prime p and an integer matrix of order p."""

    p: int
    sigma: Matrix

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValidationError(f"{self.p} is not prime")
        n = len(self.sigma)
        for row in self.sigma:
            if len(row) != n:
                raise ValidationError("the action matrix must be square")
        if n:
            power = mat_identity(n)
            ident = mat_identity(n)
            for _ in range(self.p):
                power = mat_mul(power, self.sigma)
            if power != ident:
                raise ValidationError("the action matrix does not have order dividing p")
            if self.sigma == ident:
                raise ValidationError("the action matrix must have order exactly p")

    @property
    def rank(self) -> int:
        return len(self.sigma)


def exterior_traces(m: Matrix) -> tuple[int, ...]:
    """trace of the k-th exterior power of an integer matrix, k = 0..n.

    These are the elementary symmetric functions of the eigenvalues,
    recovered from the power sums tr(m^k) by Newton's identities in exact
    rational arithmetic; no eigenvalue is ever extracted.
    """
    n = len(m)
    if n == 0:
        return (1,)
    power_sums = [Fraction(0)]  # p_0 unused
    power = m
    for _ in range(n):
        power_sums.append(Fraction(sum(power[i][i] for i in range(n))))
        power = mat_mul(power, m)
    elementary = [Fraction(1)]
    for k in range(1, n + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * elementary[k - i] * power_sums[i]
        elementary.append(acc / k)
    out = []
    for c in elementary:
        if c.denominator != 1:
            raise ConsistencyError("non-integral exterior trace of an integer matrix")
        out.append(c.numerator)
    return tuple(out)


def betti_crystallographic(spec: CrystalSpec) -> tuple[int, ...]:
    """b_k = dim (Lambda^k of the dual)^(Z/p), by exact character averaging."""
    n = spec.rank
    power = mat_identity(n)
    sums = [0] * (n + 1)
    for _ in range(spec.p):
        for k, t in enumerate(exterior_traces(power)):
            sums[k] += t
        power = mat_mul(power, spec.sigma)
    betti = []
    for k, s in enumerate(sums):
        if s % spec.p:
            raise ConsistencyError(f"averaged exterior trace not divisible by p in degree {k}")
        b = s // spec.p
        if b < 0:
            raise ConsistencyError(f"negative invariant dimension in degree {k}")
        betti.append(b)
    return tuple(betti)


def h1_and_fixed(spec: CrystalSpec) -> tuple[int, int]:
    """(order of H^1(Z/p; A), rank of the fixed sublattice A^(Z/p)).

    H^1 = ker(N)/im(sigma - 1) for the norm N = 1 + sigma + ... + sigma^(p-1).
    """
    n = spec.rank
    if n == 0:
        return 1, 0
    norm = [[0] * n for _ in range(n)]
    power = mat_identity(n)
    for _ in range(spec.p):
        for i in range(n):
            for j in range(n):
                norm[i][j] += power[i][j]
        power = mat_mul(power, spec.sigma)
    norm = mat(norm)
    sigma_minus_1 = mat(
        [[spec.sigma[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
    )
    ker_norm = kernel_lattice(norm, n)
    fixed_rank = kernel_lattice(sigma_minus_1, n).rank
    if ker_norm.rank == 0:
        return 1, fixed_rank

    # H^1 as ker(N)/im(sigma-1): express image generators in the kernel basis
    image = image_lattice(sigma_minus_1)
    coord_rows = []
    for row in image.basis:
        coords = lattice_coordinates(ker_norm, row)
        if coords is None:
            raise ConsistencyError("im(sigma - 1) is not inside ker(norm)")
        coord_rows.append(coords)
    if not coord_rows:
        raise ConsistencyError("H^1 of the action is infinite")
    free_rank, torsion = cokernel_invariants(tuple(zip(*coord_rows)), rows=ker_norm.rank)
    if free_rank:
        raise ConsistencyError("H^1 of the action is infinite")
    order = 1
    for d in torsion:
        order *= d
    if not _is_p_power(order, spec.p):
        raise ConsistencyError(f"H^1 order {order} is not a power of {spec.p}")
    return order, fixed_rank


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def con_count_crystallographic(spec: CrystalSpec) -> int:
    """|prime_power_classes| = (p - 1) * |H^1(Z/p; A)| for the split non-torsionfree case."""
    h1, _ = h1_and_fixed(spec)
    return (spec.p - 1) * h1


def exterior_betti(d: int) -> tuple[int, ...]:
    """Betti numbers of the d-torus classifying space: binomial(d, k)."""
    if d < 0:
        raise ValidationError("rank must be nonnegative")
    return tuple(comb(d, k) for k in range(d + 1))


# ---------------------------------------------------------------------------
# Fuchsian signatures


@dataclass(frozen=True)
class FuchsianSpec:
    genus: int
    periods: tuple[int, ...]

    def __post_init__(self):
        if self.genus < 0:
            raise ValidationError("genus must be nonnegative")
        for m in self.periods:
            if m < 2:
                raise ValidationError(f"period {m} must be at least 2")
        measure = Fraction(2 * self.genus - 2) + sum(
            1 - Fraction(1, m) for m in self.periods
        )
        if measure <= 0:
            raise ValidationError(
                f"signature (g={self.genus}; {list(self.periods)}) is not hyperbolic"
            )


@dataclass(frozen=True)
class FuchsianData:
    betti: tuple[int, int, int]
    prime_counts: dict[int, int]


def betti_fuchsian(spec: FuchsianSpec) -> FuchsianData:
    """Betti (1, 2g, 1) of the closed orientable quotient surface, plus the
    per-prime count of nontrivial p-power conjugacy classes in the periods."""
    counts: dict[int, int] = {}
    for m in spec.periods:
        for p in _prime_divisors(m):
            counts[p] = counts.get(p, 0) + p ** prime_factor_multiplicity(m, p) - 1
    return FuchsianData((1, 2 * spec.genus, 1), dict(sorted(counts.items())))


def _prime_divisors(n: int) -> tuple[int, ...]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return tuple(out)


# ---------------------------------------------------------------------------
# one-relator groups


@dataclass(frozen=True)
class OneRelatorSpec:
    generators: tuple[str, ...]
    relator: str

    def __post_init__(self):
        if not self.generators:
            raise ValidationError("a one-relator presentation needs at least one generator")
        if len(set(self.generators)) != len(self.generators):
            raise ValidationError("generator names must be distinct")
        if not self.relator.strip():
            raise ValidationError("the relator must be nonempty")


Letter = tuple[int, int]  # (generator index, +1 or -1)


def _parse_word(spec: OneRelatorSpec) -> list[Letter]:
    index = {name: i for i, name in enumerate(spec.generators)}
    letters: list[Letter] = []
    for token in spec.relator.split():
        name, _, exp_text = token.partition("^")
        if name not in index:
            raise ValidationError(f"unknown generator {name!r} in the relator")
        exp = 1
        if exp_text:
            try:
                exp = int(exp_text)
            except ValueError:
                raise ValidationError(f"bad exponent in token {token!r}") from None
        if exp == 0:
            continue
        sign = 1 if exp > 0 else -1
        letters.extend([(index[name], sign)] * abs(exp))
    return letters


def _free_reduce(word: list[Letter]) -> list[Letter]:
    out: list[Letter] = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return out


def _cyclically_reduce(word: list[Letter]) -> list[Letter]:
    word = _free_reduce(word)
    while len(word) >= 2 and word[0][0] == word[-1][0] and word[0][1] == -word[-1][1]:
        word = _free_reduce(word[1:-1])
    return word


def _extract_root(word: list[Letter]) -> tuple[list[Letter], int]:
    """Maximal root s and multiplicity m with word = s^m."""
    length = len(word)
    for d in range(1, length + 1):
        if length % d:
            continue
        if all(word[i] == word[i % d] for i in range(length)):
            return word[:d], length // d


@dataclass(frozen=True)
class OneRelatorData:
    root: str
    multiplicity: int
    betti: tuple[int, int, int]
    prime_counts: dict[int, int]
    exponent_sums: tuple[int, ...]


def one_relator_analyze(spec: OneRelatorSpec) -> OneRelatorData:
    """Cyclic reduction, root extraction and the quotient-complex Betti data.

    The classifying complex for proper actions has one 0-cell, one 1-cell
    per generator and one 2-cell whose boundary is the exponent-sum vector
    of the relator; torsion is carried by the cyclic group of order m.
    """
    word = _cyclically_reduce(_parse_word(spec))
    if not word:
        raise ValidationError("the relator freely reduces to the empty word")
    root, mult = _extract_root(word)
    # sanity: the root of the root is the root itself
    again, again_mult = _extract_root(root)
    if again_mult != 1 or again != root:
        raise ConsistencyError("root extraction did not return a primitive word")

    k = len(spec.generators)
    sums = [0] * k
    for idx, sign in word:
        sums[idx] += sign
    d2_rank = 1 if any(sums) else 0
    betti = (1, k - d2_rank, 1 - d2_rank)

    counts: dict[int, int] = {}
    if mult >= 2:
        for p in _prime_divisors(mult):
            counts[p] = p ** prime_factor_multiplicity(mult, p) - 1

    root_text = " ".join(
        spec.generators[idx] if sign == 1 else f"{spec.generators[idx]}^-1"
        for idx, sign in root
    )
    return OneRelatorData(root_text, mult, betti, dict(sorted(counts.items())), tuple(sums))


# ---------------------------------------------------------------------------
# direct data


@dataclass(frozen=True)
class CentralizerRecord:
    """Betti numbers over the p-adic rationals of one centralizer's classifying space."""

    betti: tuple[int, ...]

    def __post_init__(self):
        for b in self.betti:
            if b < 0:
                raise ValidationError("Betti numbers must be nonnegative")


@dataclass(frozen=True)
class DirectDataSpec:
    betti: tuple[int, ...]
    centralizers: dict[int, tuple[CentralizerRecord, ...]]
    notes: str
    trivial_centralizer_cohomology: bool = False
    full_weyl_groups: bool = False

    def __post_init__(self):
        if not self.notes.strip():
            raise ValidationError("direct data requires a provenance note")
        for b in self.betti:
            if b < 0:
                raise ValidationError("Betti numbers must be nonnegative")
        for p in self.centralizers:
            if not _is_prime(p):
                raise ValidationError(f"{p} is not prime")

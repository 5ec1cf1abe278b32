"""Finite permutation groups with a deterministic stabilizer chain.

Groups act on {0, ..., degree-1}.  The chain is built by a deterministic
Schreier-Sims (smallest moved point as base, orbits expanded breadth first
in sorted order), so the order, the element stream and everything derived
from them are reproducible bit for bit.

Conjugacy machinery is brute force by design: classes are orbits of the
conjugation action generated by the group generators, computed over the
full element list.  That keeps this module usable as an independent oracle
for the character-theoretic layers above it.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import reduce
from math import lcm
from typing import Iterable, Iterator, Optional, Sequence

from .errors import ConsistencyError, MembershipError, ResourceError, ValidationError

DEFAULT_ELEMENT_CAP = 2**20
_CAP_ENV = "KOFBG_MAX_GROUP_ORDER"


def element_cap() -> int:
    raw = os.environ.get(_CAP_ENV)
    if raw is None:
        return DEFAULT_ELEMENT_CAP
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"{_CAP_ENV} must be an integer, got {raw!r}")


@dataclass(frozen=True)
class Perm:
    """A permutation of {0..degree-1} given by its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        seen = [False] * n
        for x in self.images:
            if not isinstance(x, int) or not 0 <= x < n or seen[x]:
                raise ValidationError(f"not a permutation of degree {n}: {self.images}")
            seen[x] = True

    @staticmethod
    def identity(degree: int) -> "Perm":
        return Perm(tuple(range(degree)))

    @staticmethod
    def from_cycles(degree: int, cycles: Sequence[Sequence[int]]) -> "Perm":
        images = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:]):
                images[a] = b
            if cyc:
                images[cyc[-1]] = cyc[0]
        return Perm(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Perm") -> "Perm":
        # (p * q)(x) = p(q(x))
        return Perm(tuple(self.images[x] for x in other.images))

    def inverse(self) -> "Perm":
        out = [0] * len(self.images)
        for i, x in enumerate(self.images):
            out[x] = i
        return Perm(tuple(out))

    def __pow__(self, n: int) -> "Perm":
        if n < 0:
            return self.inverse() ** (-n)
        result = Perm.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def order(self) -> int:
        return reduce(lcm, self.cycle_lengths(), 1)

    def cycle_lengths(self) -> list[int]:
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            n = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = self.images[j]
                n += 1
            out.append(n)
        return out

    def __str__(self) -> str:
        seen = [False] * self.degree
        parts = []
        for i in range(self.degree):
            if seen[i] or self.images[i] == i:
                seen[i] = True
                continue
            cyc = [i]
            j = self.images[i]
            seen[i] = True
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            parts.append("(" + " ".join(map(str, cyc)) + ")")
        return "".join(parts) or "()"


class _Level:
    """One level of the stabilizer chain."""

    __slots__ = ("degree", "point", "gens", "orbit", "stab")

    def __init__(self, degree: int):
        self.degree = degree
        self.point: Optional[int] = None
        self.gens: list[Perm] = []
        self.orbit: dict[int, Perm] = {}
        self.stab: Optional[_Level] = None

    def order(self) -> int:
        if self.point is None:
            return 1
        return len(self.orbit) * self.stab.order()

    def sift(self, p: Perm) -> Perm:
        if self.point is None or p.is_identity():
            return p
        target = p(self.point)
        if target not in self.orbit:
            return p
        return self.stab.sift(self.orbit[target].inverse() * p)

    def _rebuild_orbit(self):
        ident = Perm.identity(self.degree)
        orbit = {self.point: ident}
        frontier = [self.point]
        while frontier:
            new = []
            for t in sorted(frontier):
                u = orbit[t]
                for g in self.gens:
                    t2 = g(t)
                    if t2 not in orbit:
                        orbit[t2] = g * u
                        new.append(t2)
            frontier = new
        self.orbit = orbit

    def add_generator(self, g: Perm):
        residue = self.sift(g)
        if residue.is_identity():
            return
        if self.point is None:
            self.point = next(i for i, x in enumerate(residue.images) if x != i)
            self.stab = _Level(self.degree)
        self.gens.append(residue)
        self._rebuild_orbit()
        # close under Schreier generators (deterministic order)
        for t in sorted(self.orbit):
            u_t = self.orbit[t]
            for s in self.gens:
                schreier = self.orbit[s(t)].inverse() * (s * u_t)
                self.stab.add_generator(schreier)

    def elements(self) -> Iterator[Perm]:
        if self.point is None:
            yield Perm.identity(self.degree)
            return
        for t in sorted(self.orbit):
            u = self.orbit[t]
            for h in self.stab.elements():
                yield u * h

    def fundamental_orbit_lengths(self) -> list[int]:
        if self.point is None:
            return []
        return [len(self.orbit)] + self.stab.fundamental_orbit_lengths()


@dataclass(frozen=True)
class ClassData:
    """A conjugacy class: minimal representative plus numeric invariants."""

    representative: Perm
    size: int
    element_order: int
    centralizer_order: int
    power_map: dict[int, int] = field(compare=False)


class PermGroup:
    """Immutable permutation group with cached stabilizer chain."""

    def __init__(self, degree: int, generators: Sequence[Perm], _chain: Optional[_Level] = None):
        self.degree = degree
        self.generators = tuple(generators)
        if _chain is None:
            _chain = _Level(degree)
            for g in self.generators:
                _chain.add_generator(g)
        self._chain = _chain
        self.order = _chain.order()
        self._cache: dict = {}

    def __contains__(self, p: Perm) -> bool:
        if not isinstance(p, Perm) or p.degree != self.degree:
            return False
        return self._chain.sift(p).is_identity()

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.order == other.order
            and all(g in other for g in self.generators)
        )

    def __hash__(self):
        return hash((self.degree, self.order))

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order})"

    def elements(self) -> Iterator[Perm]:
        cap = element_cap()
        if self.order > cap:
            raise ResourceError(
                f"group of order {self.order} exceeds the enumeration cap {cap}",
                size=self.order,
                cap=cap,
            )
        return self._chain.elements()

    def sorted_elements(self) -> tuple[Perm, ...]:
        if "sorted_elements" not in self._cache:
            self._cache["sorted_elements"] = tuple(sorted(self.elements(), key=lambda p: p.images))
        return self._cache["sorted_elements"]

    def element_key(self) -> tuple:
        """Canonical identity of the subgroup (degree plus element set)."""
        return (self.degree, tuple(p.images for p in self.sorted_elements()))

    def exponent(self) -> int:
        return reduce(lcm, (c.element_order for c in conjugacy_classes(self)), 1)

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1 :])


def group_from_generators(degree: int, gens: Iterable[Perm]) -> PermGroup:
    """Build a group, validating every generator."""
    if degree < 1:
        raise ValidationError(f"degree must be >= 1, got {degree}")
    checked = []
    for idx, g in enumerate(gens):
        if not isinstance(g, Perm):
            try:
                g = Perm(tuple(g))
            except (TypeError, ValidationError) as exc:
                raise ValidationError(f"generator {idx} is invalid: {exc}") from None
        if g.degree != degree:
            raise ValidationError(f"generator {idx} has degree {g.degree}, expected {degree}")
        checked.append(g)
    return PermGroup(degree, checked)


def trivial_group(degree: int = 1) -> PermGroup:
    return group_from_generators(degree, [])


def elements(group: PermGroup) -> Iterator[Perm]:
    return group.elements()


# ---------------------------------------------------------------------------
# conjugacy structure


class _ClassStructure:
    __slots__ = ("classes", "class_elements", "index_of")

    def __init__(self, classes, class_elements, index_of):
        self.classes = classes
        self.class_elements = class_elements
        self.index_of = index_of


def _class_structure(group: PermGroup) -> _ClassStructure:
    if "class_structure" in group._cache:
        return group._cache["class_structure"]
    elems = group.sorted_elements()
    gens = group.generators
    raw: list[list[Perm]] = []
    assigned: dict[tuple, int] = {}
    for x in elems:
        if x.images in assigned:
            continue
        orbit = {x.images: x}
        frontier = [x]
        while frontier:
            new = []
            for y in frontier:
                for g in gens:
                    z = g * y * g.inverse()
                    if z.images not in orbit:
                        orbit[z.images] = z
                        new.append(z)
            frontier = new
        idx = len(raw)
        members = sorted(orbit.values(), key=lambda p: p.images)
        raw.append(members)
        for m in members:
            assigned[m.images] = idx

    def class_key(members):
        rep = members[0]
        return (rep.order(), len(members), rep.images)

    order_index = sorted(range(len(raw)), key=lambda i: class_key(raw[i]))
    class_elements = [raw[i] for i in order_index]
    index_of = {}
    for new_idx, members in enumerate(class_elements):
        for m in members:
            index_of[m.images] = new_idx

    classes = []
    for new_idx, members in enumerate(class_elements):
        rep = members[0]
        size = len(members)
        if group.order % size:
            raise ValidationError("class size does not divide the group order")
        ord_ = rep.order()
        power_map = {}
        for k in range(1, ord_ + 1):
            power_map[k] = index_of[(rep**k).images]
        classes.append(
            ClassData(
                representative=rep,
                size=size,
                element_order=ord_,
                centralizer_order=group.order // size,
                power_map=power_map,
            )
        )
    structure = _ClassStructure(tuple(classes), tuple(tuple(m) for m in class_elements), index_of)
    group._cache["class_structure"] = structure
    return structure


def conjugacy_classes(group: PermGroup) -> tuple[ClassData, ...]:
    """Classes sorted by (element order, size, minimal representative)."""
    return _class_structure(group).classes


def class_elements(group: PermGroup) -> tuple[tuple[Perm, ...], ...]:
    return _class_structure(group).class_elements


def class_index_of(group: PermGroup, p: Perm) -> int:
    try:
        return _class_structure(group).index_of[p.images]
    except KeyError:
        raise MembershipError(f"{p} is not an element of {group}") from None


def class_of_power(cls: ClassData, identity_index: int, exponent: int) -> int:
    """Class index of representative**exponent for any integer exponent."""
    k = exponent % cls.element_order
    if k == 0:
        return identity_index
    return cls.power_map[k]


def _check_prime(p: int):
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValidationError(f"{p} is not prime")


def prime_power_classes(group: PermGroup, p: int) -> tuple[int, ...]:
    """Indices of classes whose element order is p^d with d >= 1."""
    _check_prime(p)
    out = []
    for idx, cls in enumerate(conjugacy_classes(group)):
        n = cls.element_order
        if n == 1:
            continue
        while n % p == 0:
            n //= p
        if n == 1:
            out.append(idx)
    return tuple(out)


# ---------------------------------------------------------------------------
# subgroups


def _subgroup_from_elements(group: PermGroup, members: Iterable[Perm]) -> PermGroup:
    return group_from_generators(group.degree, sorted(members, key=lambda p: p.images))


def centralizer(group: PermGroup, g: Perm) -> PermGroup:
    if g not in group:
        raise MembershipError(f"{g} is not an element of {group}")
    members = [h for h in group.sorted_elements() if h * g == g * h]
    return _subgroup_from_elements(group, members)


def normalizer_of_cyclic(group: PermGroup, g: Perm) -> PermGroup:
    """N_G(<g>), computed by brute force."""
    if g not in group:
        raise MembershipError(f"{g} is not an element of {group}")
    cyc = {(g**k).images for k in range(g.order())}
    members = [h for h in group.sorted_elements() if (h * g * h.inverse()).images in cyc]
    return _subgroup_from_elements(group, members)


def normalizer_of_subgroup(group: PermGroup, sub: PermGroup) -> PermGroup:
    sub_elems = {p.images for p in sub.sorted_elements()}
    members = [
        h
        for h in group.sorted_elements()
        if all((h * s * h.inverse()).images in sub_elems for s in sub.generators)
    ]
    return _subgroup_from_elements(group, members)


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        out *= p
        n //= p
    return out


def sylow(group: PermGroup, p: int) -> PermGroup:
    """A p-Sylow subgroup, grown deterministically inside normalizers."""
    _check_prime(p)
    target = _p_part(group.order, p)
    current = trivial_group(group.degree)
    while current.order < target:
        n_group = normalizer_of_subgroup(group, current)
        current_elems = {q.images for q in current.sorted_elements()}
        grown = None
        for x in n_group.sorted_elements():
            ordx = x.order()
            y = x ** (ordx // _p_part(ordx, p))
            if not y.is_identity() and y.images not in current_elems:
                grown = y
                break
        if grown is None:
            # Sylow theory guarantees a p-element outside any non-Sylow
            # p-subgroup inside its normalizer; reaching this means a bug.
            raise ConsistencyError(f"no p-element found to grow a Sylow {p}-subgroup")
        current = group_from_generators(group.degree, list(current.generators) + [grown])
        if current.order != _p_part(current.order, p):
            raise ConsistencyError("Sylow growth produced a non-p-subgroup")
    return current


def class_fusion(sub: PermGroup, group: PermGroup) -> tuple[int, ...]:
    """Map from class indices of `sub` to class indices of `group`."""
    for g in sub.generators:
        if g not in group:
            raise MembershipError(f"generator {g} of the subgroup lies outside the group")
    return tuple(class_index_of(group, cls.representative) for cls in conjugacy_classes(sub))


def all_subgroups(group: PermGroup) -> tuple[PermGroup, ...]:
    """Every subgroup, by closing cyclic subgroups under added generators.

    Exhaustive (not limited to 2-generated subgroups): the frontier keeps
    absorbing one more cyclic generator until nothing new appears.
    """
    if "all_subgroups" in group._cache:
        return group._cache["all_subgroups"]
    elems = group.sorted_elements()
    seen: dict[tuple, PermGroup] = {}
    triv = trivial_group(group.degree)
    seen[triv.element_key()] = triv
    frontier = [triv]
    while frontier:
        new: list[PermGroup] = []
        for sub in frontier:
            if sub.order == group.order:
                continue
            sub_imgs = {p.images for p in sub.sorted_elements()}
            for x in elems:
                if x.images in sub_imgs:
                    continue
                cand = group_from_generators(group.degree, list(sub.generators) + [x])
                key = cand.element_key()
                if key not in seen:
                    seen[key] = cand
                    new.append(cand)
        frontier = new
    out = tuple(sorted(seen.values(), key=lambda s: (s.order, s.element_key())))
    group._cache["all_subgroups"] = out
    return out


def subgroups_up_to_conjugacy(group: PermGroup, proper: bool = True) -> tuple[PermGroup, ...]:
    """Conjugacy-class representatives of (proper) subgroups."""
    subs = all_subgroups(group)
    by_key = {s.element_key(): s for s in subs}
    seen: set[tuple] = set()
    reps = []
    for sub in subs:
        key = sub.element_key()
        if key in seen:
            continue
        if proper and sub.order == group.order:
            continue
        reps.append(sub)
        for h in group.sorted_elements():
            conj = frozenset((h * s * h.inverse()).images for s in sub.sorted_elements())
            ck = (group.degree, tuple(sorted(conj)))
            if ck in by_key:
                seen.add(ck)
    return tuple(reps)


def double_coset_representatives(group: PermGroup, left: PermGroup, right: PermGroup) -> tuple[Perm, ...]:
    """Representatives of left\\group/right, in sorted element order."""
    left_elems = left.sorted_elements()
    right_elems = right.sorted_elements()
    marked: set[tuple] = set()
    reps = []
    for g in group.sorted_elements():
        if g.images in marked:
            continue
        reps.append(g)
        for a in left_elems:
            ag = a * g
            for b in right_elems:
                marked.add((ag * b).images)
    return tuple(reps)


def primes_dividing(n: int) -> tuple[int, ...]:
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

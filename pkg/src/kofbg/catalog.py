"""Constructors for the standard small groups used by tests and self-checks."""

from __future__ import annotations

from .permgroup import Perm, PermGroup, group_from_generators


def cyclic_group(n: int) -> PermGroup:
    if n == 1:
        return group_from_generators(1, [])
    return group_from_generators(n, [Perm(tuple((i + 1) % n for i in range(n)))])


def symmetric_group(n: int) -> PermGroup:
    if n <= 1:
        return group_from_generators(max(n, 1), [])
    transposition = Perm.from_cycles(n, [(0, 1)])
    cycle = Perm(tuple((i + 1) % n for i in range(n)))
    return group_from_generators(n, [transposition, cycle])

def alternating_group(n: int) -> PermGroup:
    if n <= 2:
        return group_from_generators(max(n, 1), [])
    gens = [Perm.from_cycles(n, [(0, 1, i)]) for i in range(2, n)]
    return group_from_generators(n, gens)


def dihedral_group(n: int) -> PermGroup:
    """Dihedral group of order 2n acting on the n-gon."""
    if n < 3:
        raise ValueError("dihedral_group needs n >= 3")
    rot = Perm(tuple((i + 1) % n for i in range(n)))
    refl = Perm(tuple((-i) % n for i in range(n)))
    return group_from_generators(n, [rot, refl])


def quaternion_group() -> PermGroup:
    """Q8 in its degree-8 regular representation.

    Elements ordered 1, -1, i, -i, j, -j, k, -k; generators act by left
    multiplication.
    """
    order = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    index = {s: t for t, s in enumerate(order)}

    def q_mul(a: str, b: str) -> str:
        sign = 1
        if a.startswith("-"):
            sign, a = -sign, a[1:]
        if b.startswith("-"):
            sign, b = -sign, b[1:]
        table = {
            ("1", "1"): "1", ("1", "i"): "i", ("1", "j"): "j", ("1", "k"): "k",
            ("i", "1"): "i", ("j", "1"): "j", ("k", "1"): "k",
            ("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
            ("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
            ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j",
        }
        prod = table[(a, b)]
        if prod.startswith("-"):
            sign, prod = -sign, prod[1:]
        return prod if sign == 1 else "-" + prod

    def left_mult(a: str) -> Perm:
        return Perm(tuple(index[q_mul(a, s)] for s in order))

    return group_from_generators(8, [left_mult("i"), left_mult("j")])


def direct_product(a: PermGroup, b: PermGroup) -> PermGroup:
    degree = a.degree + b.degree
    gens = []
    for g in a.generators:
        gens.append(Perm(g.images + tuple(a.degree + i for i in range(b.degree))))
    for g in b.generators:
        gens.append(Perm(tuple(range(a.degree)) + tuple(a.degree + x for x in g.images)))
    return group_from_generators(degree, gens)

"""Exact complex character tables of finite permutation groups.

The table is computed by the classical Dixon method: build the class
algebra structure constants by exact counting, split the simultaneous
eigenvectors of the class matrices over a prime field GF(q) with
q = 1 (mod exponent) and q > 2*sqrt(|G|), then lift eigenvalues to the
cyclotomic ring Z[zeta_e] with the discrete Fourier formula.  The lifted
table is exact; the modular table is kept around so tests can confirm the
lift reduces back to it.

Rows are deterministic: the trivial character first, the remaining rows
sorted by (degree, lexicographic value order).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import isqrt, lcm
from typing import Sequence, Union

from .cyclotomic import Cyc
from .errors import ConsistencyError, ValidationError
from .permgroup import (
    ClassData,
    PermGroup,
    class_elements,
    class_index_of,
    conjugacy_classes,
)

Coords = tuple[int, ...]


@dataclass(frozen=True)
class CharacterTable:
    group: PermGroup
    classes: tuple[ClassData, ...]
    exponent: int
    rows: tuple[tuple[Cyc, ...], ...]
    degrees: tuple[int, ...]
    dixon_prime: int
    dixon_root: int  # image of zeta_e in GF(dixon_prime)

    @property
    def size(self) -> int:
        return len(self.classes)

    def value(self, row: int, cls: int) -> Cyc:
        return self.rows[row][cls]

    def values_of(self, coords: Sequence[Union[int, Fraction]]) -> tuple[Cyc, ...]:
        """Class-function values of a (virtual) character given in Irr coordinates."""
        if len(coords) != self.size:
            raise ValidationError(f"expected {self.size} coordinates, got {len(coords)}")
        out = []
        for c in range(self.size):
            acc = Cyc.zero(self.exponent)
            for i, x in enumerate(coords):
                if x:
                    acc = acc + self.rows[i][c] * x
            out.append(acc)
        return tuple(out)


_TABLE_CACHE: dict[tuple, CharacterTable] = {}


# ---------------------------------------------------------------------------
# GF(q) helpers


def _inv_mod(a: int, q: int) -> int:
    return pow(a % q, q - 2, q)


def _nullspace_mod(m: list[list[int]], q: int) -> list[list[int]]:
    """Canonical basis of the kernel of an n x n matrix over GF(q)."""
    n = len(m)
    a = [row[:] for row in m]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, n) if a[i][col] % q), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = _inv_mod(a[r][col], q)
        a[r] = [(x * inv) % q for x in a[r]]
        for i in range(n):
            if i != r and a[i][col] % q:
                f = a[i][col] % q
                a[i] = [(x - f * y) % q for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * n
        vec[fc] = 1
        for prow, pcol in enumerate(pivots):
            vec[pcol] = (-a[prow][fc]) % q
        basis.append(vec)
    return basis


def _solve_in_span(basis_cols: list[tuple[int, ...]], targets: list[tuple[int, ...]], q: int) -> list[list[int]]:
    """Coordinates of each target in the span of basis_cols over GF(q).

    Returns a matrix A (len(basis) x len(targets)) with B @ A = T.
    """
    d = len(basis_cols)
    s = len(basis_cols[0])
    width = d + len(targets)
    aug = [[basis_cols[j][i] % q for j in range(d)] + [t[i] % q for t in targets] for i in range(s)]
    pivots: list[int] = []
    r = 0
    for col in range(d):
        piv = next((i for i in range(r, s) if aug[i][col]), None)
        if piv is None:
            raise ConsistencyError("dependent basis in eigenspace computation")
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = _inv_mod(aug[r][col], q)
        aug[r] = [(x * inv) % q for x in aug[r]]
        for i in range(s):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [(x - f * y) % q for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    for i in range(r, s):
        if any(aug[i][d:width]):
            raise ConsistencyError("class matrix does not preserve the subspace")
    return [[aug[prow][d + t] for t in range(len(targets))] for prow in range(d)]


# ---------------------------------------------------------------------------
# Dixon's algorithm


def _least_dixon_prime(exponent: int, order: int) -> int:
    """Least prime q = 1 (mod exponent) with q > 2*sqrt(order)."""
    k = 1
    while True:
        q = exponent * k + 1
        k += 1
        if q * q <= 4 * order or q < 2:
            continue
        if all(q % d for d in range(2, isqrt(q) + 1)):
            return q


def _primitive_root_of_unity(e: int, q: int) -> int:
    """Smallest g^((q-1)/e) for g the least primitive root mod q."""
    if e == 1:
        return 1
    for g in range(2, q):
        seen = set()
        x = 1
        ok = True
        for _ in range(q - 1):
            x = x * g % q
            if x in seen:
                ok = False
                break
            seen.add(x)
        if ok:
            return pow(g, (q - 1) // e, q)
    raise ConsistencyError(f"no primitive root mod {q}")


def _class_matrices(group: PermGroup, classes, members) -> list[list[list[int]]]:
    """Structure-constant matrices M_i with (M_i)[j][k] = a_{ijk}."""
    s = len(classes)
    index_of = {}
    for idx, elems in enumerate(members):
        for m in elems:
            index_of[m.images] = idx
    mats = []
    for i in range(s):
        mi = [[0] * s for _ in range(s)]
        for k in range(s):
            zk = classes[k].representative
            for x in members[i]:
                j = index_of[(x.inverse() * zk).images]
                mi[j][k] += 1
        mats.append(mi)
    return mats


def _split_eigenvectors(mats, q: int, s: int) -> list[tuple[int, ...]]:
    """Common eigenvectors of all class matrices over GF(q), deterministically."""
    spaces: list[list[tuple[int, ...]]] = [
        [tuple(1 if i == j else 0 for i in range(s)) for j in range(s)]
    ]
    for mi in mats[1:]:
        if all(len(sp) == 1 for sp in spaces):
            break
        next_spaces = []
        for sp in spaces:
            if len(sp) == 1:
                next_spaces.append(sp)
                continue
            images = [tuple(sum(mi[r][t] * v[t] for t in range(s)) % q for r in range(s)) for v in sp]
            action = _solve_in_span(sp, images, q)  # d x d
            d = len(sp)
            consumed = 0
            for lam in range(q):
                shifted = [[(action[i][j] - (lam if i == j else 0)) % q for j in range(d)] for i in range(d)]
                null = _nullspace_mod(shifted, q)
                if not null:
                    continue
                vectors = [
                    tuple(sum(coords[t] * sp[t][r] for t in range(d)) % q for r in range(s))
                    for coords in null
                ]
                next_spaces.append(vectors)
                consumed += len(vectors)
                if consumed == d:
                    break
            if consumed != d:
                raise ConsistencyError("eigenspace split lost dimensions")
        spaces = next_spaces
    if not all(len(sp) == 1 for sp in spaces):
        raise ConsistencyError("class matrices failed to separate the characters")
    return [sp[0] for sp in spaces]


def character_table(group: PermGroup) -> CharacterTable:
    """The exact character table, cached per group element set."""
    key = group.element_key()
    cached = _TABLE_CACHE.get(key)
    if cached is not None:
        return cached

    classes = conjugacy_classes(group)
    members = class_elements(group)
    s = len(classes)
    order = group.order
    exponent = reduce(lcm, (c.element_order for c in classes), 1)
    q = _least_dixon_prime(exponent, order)
    z = _primitive_root_of_unity(exponent, q)

    if s == 1:
        table = CharacterTable(group, classes, 1, ((Cyc.one(1),),), (1,), q, z)
        _TABLE_CACHE[key] = table
        return table

    mats = _class_matrices(group, classes, members)
    eigenvectors = _split_eigenvectors(mats, q, s)

    inv_class = [classes[k].power_map.get(classes[k].element_order - 1, 0) if classes[k].element_order > 1 else k for k in range(s)]
    rows = []
    degrees = []
    for w in eigenvectors:
        if w[0] % q == 0:
            raise ConsistencyError("eigenvector vanishes on the identity class")
        norm = _inv_mod(w[0], q)
        omega = [x * norm % q for x in w]
        t_sum = 0
        for k in range(s):
            t_sum = (t_sum + omega[k] * omega[inv_class[k]] * _inv_mod(classes[k].size, q)) % q
        d_sq = order * _inv_mod(t_sum, q) % q
        degree = next((d for d in range(1, isqrt(order) + 1) if d * d % q == d_sq), None)
        if degree is None:
            raise ConsistencyError("no integer degree matches the modular data")
        chi_q = [degree * omega[k] * _inv_mod(classes[k].size, q) % q for k in range(s)]

        # lift chi(g_k) = sum_j m_j zeta^j with the GF(q) Fourier formula
        inv_e = _inv_mod(exponent, q)
        z_inv = _inv_mod(z, q)
        values = []
        for k in range(s):
            ordk = classes[k].element_order
            m = []
            for j in range(exponent):
                acc = 0
                for l in range(exponent):
                    lk = l % ordk
                    cls_l = classes[k].power_map[lk] if lk else 0
                    acc = (acc + chi_q[cls_l] * pow(z_inv, (j * l) % exponent, q)) % q
                m_j = acc * inv_e % q
                if m_j > degree:
                    raise ConsistencyError("character multiplicity exceeds the degree")
                m.append(m_j)
            values.append(Cyc.make(exponent, m))
        if not (values[0].is_integer() and values[0].as_int() == degree):
            raise ConsistencyError("lifted identity value disagrees with the degree")
        # the lift must reduce back to the modular eigenvector row
        for k in range(s):
            acc = 0
            for j, coeff in enumerate(values[k].coeffs):
                acc = (acc + coeff.numerator * pow(z, j, q)) % q
            if acc != chi_q[k]:
                raise ConsistencyError("cyclotomic lift does not reduce to the modular table")
        rows.append(tuple(values))
        degrees.append(degree)

    if sum(d * d for d in degrees) != order:
        raise ConsistencyError("degrees do not satisfy sum of squares = |G|")

    one = Cyc.one(exponent)
    trivial_at = next(
        (i for i, row in enumerate(rows) if all(v == one for v in row)),
        None,
    )
    if trivial_at is None:
        raise ConsistencyError("no trivial character found")
    order_key = sorted(
        (i for i in range(s) if i != trivial_at),
        key=lambda i: (degrees[i], tuple(v.sort_key() for v in rows[i])),
    )
    final = [trivial_at] + order_key
    table = CharacterTable(
        group=group,
        classes=classes,
        exponent=exponent,
        rows=tuple(rows[i] for i in final),
        degrees=tuple(degrees[i] for i in final),
        dixon_prime=q,
        dixon_root=z,
    )
    _TABLE_CACHE[key] = table
    return table


# ---------------------------------------------------------------------------
# pairings, restriction, induction


def inner_product(table: CharacterTable, f: Sequence[Cyc], h: Sequence[Cyc]) -> Cyc:
    """(1/|G|) * sum over classes of size * f * conj(h)."""
    if len(f) != table.size or len(h) != table.size:
        raise ValidationError("class function length does not match the table")
    acc = Cyc.zero(table.exponent)
    for cls, fv, hv in zip(table.classes, f, h):
        term = fv * hv.conjugate()
        acc = acc + term * cls.size
    return acc * Fraction(1, table.group.order)


def decompose_values(table: CharacterTable, values: Sequence[Cyc]) -> Coords:
    """Integer coordinates over Irr of a virtual character given by values."""
    coords = []
    for i in range(table.size):
        a = inner_product(table, tuple(values), table.rows[i])
        if not a.is_rational() or a.as_fraction().denominator != 1:
            raise ConsistencyError(f"non-integral multiplicity {a} in a character decomposition")
        coords.append(a.as_fraction().numerator)
    check = table.values_of(coords)
    for got, want in zip(check, values):
        if not (got - want).is_zero():
            raise ConsistencyError("character values are not spanned by the irreducibles")
    return tuple(coords)


def restrict_character(
    table_g: CharacterTable,
    table_h: CharacterTable,
    fusion: Sequence[int],
    chi: Union[int, Sequence[int]],
) -> Coords:
    """res^G_H of a row index or coordinate vector, as Irr(H) coordinates."""
    coords = _as_coords(table_g, chi)
    values_g = table_g.values_of(coords)
    values_h = tuple(values_g[fusion[c]] for c in range(table_h.size))
    return decompose_values(table_h, values_h)


def induce_character(
    table_h: CharacterTable,
    table_g: CharacterTable,
    fusion: Sequence[int],
    chi: Union[int, Sequence[int]],
) -> Coords:
    """Frobenius induction ind_H^G, computed classwise."""
    coords = _as_coords(table_h, chi)
    values_h = table_h.values_of(coords)
    values_g = []
    for k in range(table_g.size):
        acc = Cyc.zero(table_h.exponent)
        for c in range(table_h.size):
            if fusion[c] == k:
                acc = acc + values_h[c] * Fraction(1, table_h.classes[c].centralizer_order)
        value = acc * table_g.classes[k].centralizer_order
        if any(x.denominator != 1 for x in value.coeffs):
            raise ConsistencyError(f"induced character value {value} is not an algebraic integer")
        values_g.append(value)
    return decompose_values(table_g, values_g)


def _as_coords(table: CharacterTable, chi: Union[int, Sequence[int]]) -> Coords:
    if isinstance(chi, int):
        coords = [0] * table.size
        coords[chi] = 1
        return tuple(coords)
    if len(chi) != table.size:
        raise ValidationError("coordinate vector length does not match the table")
    return tuple(chi)


def restriction_matrix(table_g: CharacterTable, table_h: CharacterTable, fusion: Sequence[int]):
    """Integer matrix of res: column i = coordinates of res(chi_i) over Irr(H)."""
    cols = [restrict_character(table_g, table_h, fusion, i) for i in range(table_g.size)]
    return tuple(tuple(cols[i][j] for i in range(table_g.size)) for j in range(table_h.size))


def induction_matrix(table_h: CharacterTable, table_g: CharacterTable, fusion: Sequence[int]):
    """Integer matrix of ind: column j = coordinates of ind(chi_j) over Irr(G)."""
    cols = [induce_character(table_h, table_g, fusion, j) for j in range(table_h.size)]
    return tuple(tuple(cols[j][i] for j in range(table_h.size)) for i in range(table_g.size))


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class OrthogonalityReport:
    row_failures: tuple[tuple[int, int], ...]
    column_failures: tuple[tuple[int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.row_failures and not self.column_failures


def verify_orthogonality(table: CharacterTable) -> OrthogonalityReport:
    """Exact first and second orthogonality relations."""
    rows = []
    for i in range(table.size):
        for j in range(i, table.size):
            got = inner_product(table, table.rows[i], table.rows[j])
            want = Cyc.from_rational(table.exponent, 1 if i == j else 0)
            if not (got - want).is_zero():
                rows.append((i, j))
    cols = []
    for c in range(table.size):
        for cp in range(c, table.size):
            acc = Cyc.zero(table.exponent)
            for i in range(table.size):
                acc = acc + table.rows[i][c] * table.rows[i][cp].conjugate()
            want = table.classes[c].centralizer_order if c == cp else 0
            if not (acc - want).is_zero():
                cols.append((c, cp))
    return OrthogonalityReport(tuple(rows), tuple(cols))


def table_mod_q(table: CharacterTable) -> list[list[int]]:
    """Reduce the lifted table back to GF(q) via zeta |-> dixon_root."""
    q = table.dixon_prime
    z = table.dixon_root
    out = []
    for row in table.rows:
        mod_row = []
        for v in row:
            acc = 0
            for k, c in enumerate(v.coeffs):
                if c.denominator != 1:
                    raise ConsistencyError("character value is not an algebraic integer")
                acc = (acc + c.numerator * pow(z, k, q)) % q
            mod_row.append(acc)
        out.append(mod_row)
    return out

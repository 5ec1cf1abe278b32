"""Exact integer linear algebra: Hermite/Smith normal forms and lattices.

A *lattice* here is a finitely generated subgroup of Z^k.  We store every
lattice as its canonical row Hermite normal form, so two lattices are equal
exactly when their basis matrices are equal; every downstream "these two
images coincide" check reduces to a literal comparison.

Matrices are tuples of tuples of Python ints (arbitrary precision).  Maps
Z^c -> Z^r use the column-vector convention: a matrix with r rows and c
columns sends x to M @ x.  Lattice *elements* are row vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import ValidationError

Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]


# ---------------------------------------------------------------------------
# matrix helpers


def mat(rows: Iterable[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def mat_identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_zero(rows: int, cols: int) -> Matrix:
    return tuple((0,) * cols for _ in range(rows))


def mat_transpose(m: Matrix) -> Matrix:
    if not m:
        return ()
    return tuple(zip(*m))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise ValidationError(f"matrix shapes {len(a)}x{len(a[0])} and {len(b)}x{len(b[0])} do not compose")
    bt = mat_transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(m: Matrix, v: Sequence[int]) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def mat_stack(*blocks: Matrix) -> Matrix:
    """Vertical concatenation of matrices with equal column count."""
    rows: list[Vector] = []
    for b in blocks:
        rows.extend(b)
    return tuple(rows)


def mat_block_diag(blocks: Sequence[Matrix], shapes: Sequence[tuple[int, int]]) -> Matrix:
    """Block-diagonal matrix; `shapes` gives (rows, cols) of each block.

    Shapes are passed explicitly so that 0-row or 0-column blocks keep
    their place.
    """
    total_r = sum(r for r, _ in shapes)
    total_c = sum(c for _, c in shapes)
    out = [[0] * total_c for _ in range(total_r)]
    r0 = c0 = 0
    for block, (r, c) in zip(blocks, shapes):
        for i, row in enumerate(block):
            for j, x in enumerate(row):
                out[r0 + i][c0 + j] = x
        r0 += r
        c0 += c
    return mat(out)


def mat_scale(m: Matrix, n: int) -> Matrix:
    return tuple(tuple(n * x for x in row) for row in m)


# ---------------------------------------------------------------------------
# Hermite normal form and lattices


def _hnf_rows(rows: Iterable[Sequence[int]], ambient: int) -> Matrix:
    """Canonical row HNF: positive pivots, entries above a pivot in [0, pivot)."""
    work = [list(r) for r in rows if any(r)]
    for r in work:
        if len(r) != ambient:
            raise ValidationError(f"row of length {len(r)} in ambient Z^{ambient}")
    t = 0
    for col in range(ambient):
        live = [i for i in range(t, len(work)) if work[i][col]]
        if not live:
            continue
        # Euclidean elimination: keep subtracting the smallest entry.
        while len(live) > 1:
            live.sort(key=lambda i: (abs(work[i][col]), i))
            base = work[live[0]]
            for i in live[1:]:
                q = work[i][col] // base[col]
                work[i] = [a - q * b for a, b in zip(work[i], base)]
            live = [i for i in live if work[i][col]]
        i0 = live[0]
        work[t], work[i0] = work[i0], work[t]
        if work[t][col] < 0:
            work[t] = [-a for a in work[t]]
        p = work[t][col]
        for i in range(t):
            q = work[i][col] // p
            if q:
                work[i] = [a - q * b for a, b in zip(work[i], work[t])]
        t += 1
    return mat(work[:t])


@dataclass(frozen=True)
class IntLattice:
    """Finitely generated subgroup of Z^ambient, basis in row HNF."""

    ambient: int
    basis: Matrix

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __contains__(self, v: Sequence[int]) -> bool:
        return lattice_contains(self, v)


def hnf(rows: Iterable[Sequence[int]], ambient: Optional[int] = None) -> IntLattice:
    """Lattice spanned by `rows`; span-equal inputs yield identical output."""
    rows = [tuple(r) for r in rows]
    if ambient is None:
        if not rows:
            raise ValidationError("ambient rank required for an empty generating set")
        ambient = len(rows[0])
    return IntLattice(ambient, _hnf_rows(rows, ambient))


def zero_lattice(ambient: int) -> IntLattice:
    return IntLattice(ambient, ())


def full_lattice(ambient: int) -> IntLattice:
    return IntLattice(ambient, mat_identity(ambient))


def lattice_contains(lat: IntLattice, v: Sequence[int]) -> bool:
    return lattice_coordinates(lat, v) is not None


def lattice_coordinates(lat: IntLattice, v: Sequence[int]) -> Optional[Vector]:
    """Integer coordinates of v in lat's basis, or None if v is outside."""
    if len(v) != lat.ambient:
        raise ValidationError(f"vector of length {len(v)} in ambient Z^{lat.ambient}")
    rem = list(v)
    coords = []
    for row in lat.basis:
        j = next(k for k, x in enumerate(row) if x)
        q, r = divmod(rem[j], row[j])
        if r:
            return None
        coords.append(q)
        rem = [a - q * b for a, b in zip(rem, row)]
    if any(rem):
        return None
    return tuple(coords)


def lattice_contains_lattice(big: IntLattice, small: IntLattice) -> bool:
    return all(lattice_contains(big, row) for row in small.basis)


def lattice_sum(a: IntLattice, b: IntLattice) -> IntLattice:
    if a.ambient != b.ambient:
        raise ValidationError("lattice sum needs equal ambient rank")
    return hnf(a.basis + b.basis, a.ambient)


def lattice_intersection(a: IntLattice, b: IntLattice) -> IntLattice:
    if a.ambient != b.ambient:
        raise ValidationError("lattice intersection needs equal ambient rank")
    if a.rank == 0 or b.rank == 0:
        return zero_lattice(a.ambient)
    # x in both lattices <=> x = alpha A = beta B; kernel of (alpha, beta) |-> alpha A - beta B.
    cols = []
    for row in a.basis:
        cols.append(row)
    for row in b.basis:
        cols.append(tuple(-x for x in row))
    m = mat_transpose(mat(cols))  # ambient x (ra + rb)
    ker = kernel_lattice(m)
    vectors = []
    for kv in ker.basis:
        alpha = kv[: a.rank]
        vectors.append(tuple(sum(c * row[j] for c, row in zip(alpha, a.basis)) for j in range(a.ambient)))
    return hnf(vectors, a.ambient)


def lattice_scale(lat: IntLattice, n: int) -> IntLattice:
    if n == 0:
        return zero_lattice(lat.ambient)
    return hnf(mat_scale(lat.basis, n), lat.ambient)


def lattice_index(big: IntLattice, small: IntLattice) -> Optional[int]:
    """Index [big : small]; None is the infinite-index marker.

    Raises ValidationError if small is not contained in big.  A rank drop
    is reported as None rather than an error because callers ask the
    compound question "same rank and finite index".
    """
    if big.ambient != small.ambient:
        raise ValidationError("lattice index needs equal ambient rank")
    coord_rows = []
    for row in small.basis:
        c = lattice_coordinates(big, row)
        if c is None:
            raise ValidationError("index of a non-contained lattice")
        coord_rows.append(c)
    if small.rank != big.rank:
        return None
    if big.rank == 0:
        return 1
    res = snf(mat(coord_rows))
    if len(res.invariants) != big.rank:
        return None
    idx = 1
    for d in res.invariants:
        idx *= d
    return idx


def product_lattice(a: IntLattice, b: IntLattice, mult: Sequence[Sequence[Sequence[int]]]) -> IntLattice:
    """Span of all pairwise products of basis vectors under a bilinear map.

    `mult[i][j]` is the vector e_i * e_j in Z^ambient.
    """
    if a.ambient != b.ambient:
        raise ValidationError("product lattice needs equal ambient rank")
    k = a.ambient
    vectors = []
    for u in a.basis:
        for v in b.basis:
            out = [0] * k
            for i, ui in enumerate(u):
                if not ui:
                    continue
                for j, vj in enumerate(v):
                    if not vj:
                        continue
                    cij = mult[i][j]
                    f = ui * vj
                    for t in range(k):
                        if cij[t]:
                            out[t] += f * cij[t]
            vectors.append(tuple(out))
    return hnf(vectors, k)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SnfResult:
    """Smith normal form with transformation witnesses U @ m @ V = diag."""

    invariants: tuple[int, ...]
    row_ops: Matrix  # U, unimodular, rows x rows
    col_ops: Matrix  # V, unimodular, cols x cols
    shape: tuple[int, int]

    @property
    def rank(self) -> int:
        return len(self.invariants)

    def diagonal_matrix(self) -> Matrix:
        r, c = self.shape
        return tuple(
            tuple(self.invariants[i] if i == j and i < len(self.invariants) else 0 for j in range(c))
            for i in range(r)
        )


def snf(m: Matrix) -> SnfResult:
    """Smith normal form over Z with recorded row/column operations."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(r) for r in m]
    u = [list(r) for r in mat_identity(rows)]
    v = [list(r) for r in mat_identity(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in a:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while True:
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < best):
                    best = abs(a[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            # clear column t and row t
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, q)
                    if a[i][t]:  # remainder smaller than pivot: promote it
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        if a[t][t] < 0:
            negate_row(t)
        # enforce divisibility: pivot must divide every remaining entry
        offender = None
        d = a[t][t]
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % d:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(t, offender, -1)  # row_t += row_offender
            continue
        t += 1

    invariants = tuple(a[i][i] for i in range(t))
    for i in range(len(invariants) - 1):
        assert invariants[i + 1] % invariants[i] == 0
    return SnfResult(invariants=invariants, row_ops=mat(u), col_ops=mat(v), shape=(rows, cols))


def kernel_lattice(m: Matrix, cols: Optional[int] = None) -> IntLattice:
    """Integer kernel of the map x |-> m @ x, as a (saturated) lattice in Z^cols."""
    if cols is None:
        if not m:
            raise ValidationError("column count required for an empty matrix")
        cols = len(m[0])
    if not m or cols == 0:
        return full_lattice(cols)
    res = snf(m)
    r = res.rank
    # m = U^-1 D V^-1, so m x = 0 iff the first r coordinates of V^-1 x vanish;
    # kernel basis = last cols-r columns of V.
    vt = mat_transpose(res.col_ops)
    return hnf(vt[r:], cols) if r < cols else zero_lattice(cols)


def cokernel_invariants(m: Matrix, rows: Optional[int] = None) -> tuple[int, tuple[int, ...]]:
    """(free rank, nontrivial torsion invariants) of Z^rows / m(Z^cols)."""
    if rows is None:
        rows = len(m)
    if not m:
        return rows, ()
    res = snf(m)
    torsion = tuple(d for d in res.invariants if d > 1)
    return rows - res.rank, torsion


def image_lattice(m: Matrix) -> IntLattice:
    """Image of the map x |-> m @ x as a lattice in Z^rows."""
    if not m:
        raise ValidationError("image of an empty matrix is ambiguous; pass the zero matrix")
    return hnf(mat_transpose(m), len(m))


def preimage_lattice(m: Matrix, target: IntLattice, cols: Optional[int] = None) -> IntLattice:
    """{x in Z^cols : m @ x in target}."""
    if cols is None:
        if not m:
            raise ValidationError("column count required for an empty matrix")
        cols = len(m[0])
    if not m:
        return full_lattice(cols)
    if len(m) != target.ambient:
        raise ValidationError("preimage target lives in the wrong ambient space")
    if target.rank == 0:
        return kernel_lattice(m, cols)
    # solve m x = c^T B for integer (x, c): kernel of [m | -B^T]
    bt = mat_transpose(target.basis)
    combined = tuple(row + tuple(-x for x in bt_row) for row, bt_row in zip(m, bt))
    ker = kernel_lattice(combined, cols + target.rank)
    return hnf([kv[:cols] for kv in ker.basis], cols)


def direct_sum_lattice(parts: Sequence[IntLattice]) -> IntLattice:
    total = sum(p.ambient for p in parts)
    rows = []
    offset = 0
    for p in parts:
        for row in p.basis:
            rows.append((0,) * offset + row + (0,) * (total - offset - p.ambient))
        offset += p.ambient
    return hnf(rows, total)

"""Dense exact linear algebra over a :class:`FieldSpec`.

Matrices are plain lists of rows. Subspaces of ``k^N`` are stored by their
reduced row echelon basis, which makes the representation canonical: two
subspaces are equal exactly when their dataclasses compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import DimensionError, FieldMismatch
from .field import FieldSpec, Scalar

Matrix = list[list[Scalar]]
Vector = Sequence[Scalar]


def _echelonize(rows: Matrix, ncols: int) -> tuple[Matrix, list[int]]:
    """In-place Gauss-Jordan elimination; returns (nonzero rows, pivot columns)."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        lead = prow[c]
        if lead != lead * 0 + 1:
            scale = 1 / lead
            prow = rows[r] = [x * scale for x in prow]
        support = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f:
                for j in support:
                    row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``field^ambient_dim`` in canonical echelon form."""

    field: FieldSpec
    ambient_dim: int
    basis: tuple[tuple[Scalar, ...], ...]
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    @cached_property
    def supports(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(j for j, x in enumerate(row) if x) for row in self.basis)


def _check_field(field: FieldSpec, rows) -> None:
    for row in rows:
        for x in row:
            if not field.contains(x):
                raise FieldMismatch(f"entry {x!r} does not belong to {field}")


def rref(rows: Sequence[Vector], field: FieldSpec, ncols: int | None = None) -> Subspace:
    """Row space of ``rows`` in canonical reduced row echelon form."""
    rows = [list(r) for r in rows]
    if ncols is None:
        if not rows:
            raise DimensionError("ncols is required for an empty matrix")
        ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise DimensionError("ragged matrix")
    _check_field(field, rows)
    basis, pivots = _echelonize(rows, ncols)
    return Subspace(field, ncols, tuple(tuple(r) for r in basis), tuple(pivots))


def zero_subspace(field: FieldSpec, n: int) -> Subspace:
    return Subspace(field, n, (), ())


def full_subspace(field: FieldSpec, n: int) -> Subspace:
    return rref(identity(field, n), field, n)


def identity(field: FieldSpec, n: int) -> Matrix:
    zero, one = field.zero, field.one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def kernel(rows: Sequence[Vector], field: FieldSpec, ncols: int) -> Subspace:
    """Null space ``{v : M v = 0}`` of ``M`` acting on column vectors."""
    R = rref(rows, field, ncols)
    pivset = set(R.pivots)
    zero, one = field.zero, field.one
    vecs = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [zero] * ncols
        v[f] = one
        for row, pc in zip(R.basis, R.pivots):
            if row[f]:
                v[pc] = -row[f]
        vecs.append(v)
    return rref(vecs, field, ncols)


def _check_compatible(U: Subspace, V: Subspace) -> None:
    if U.ambient_dim != V.ambient_dim:
        raise DimensionError(f"ambient dimensions differ: {U.ambient_dim} vs {V.ambient_dim}")
    if U.field != V.field:
        raise FieldMismatch(f"fields differ: {U.field} vs {V.field}")


def span_sum(U: Subspace, V: Subspace) -> Subspace:
    _check_compatible(U, V)
    return rref(list(U.basis) + list(V.basis), U.field, U.ambient_dim)


def intersect(U: Subspace, V: Subspace) -> Subspace:
    """Canonical ``U ∩ V`` via the kernel of the stacked coefficient system.

    Solves ``sum a_i u_i - sum b_j v_j = 0`` and maps the ``a`` part back
    through the basis of ``U``.
    """
    _check_compatible(U, V)
    field, N = U.field, U.ambient_dim
    if not U.dim or not V.dim:
        return zero_subspace(field, N)
    cols = list(U.basis) + [[-x for x in v] for v in V.basis]
    system = [[col[i] for col in cols] for i in range(N)]
    K = kernel(system, field, len(cols))
    vecs = []
    for coeffs in K.basis:
        v = [field.zero] * N
        for a, u in zip(coeffs[: U.dim], U.basis):
            if a:
                v = [x + a * y for x, y in zip(v, u)]
        vecs.append(v)
    return rref(vecs, field, N)


def reduce_vector(U: Subspace, v: Vector) -> list[Scalar]:
    """Normal form of ``v`` modulo ``U``: the representative vanishing on all pivots."""
    if len(v) != U.ambient_dim:
        raise DimensionError(f"vector of length {len(v)} in ambient dimension {U.ambient_dim}")
    w = list(v)
    for row, pc, support in zip(U.basis, U.pivots, U.supports):
        f = w[pc]
        if f:
            for j in support:
                w[j] = w[j] - f * row[j]
    return w


def contains(U: Subspace, v: Vector) -> bool:
    return not any(reduce_vector(U, v))


def is_subspace(U: Subspace, V: Subspace) -> bool:
    _check_compatible(U, V)
    return all(contains(V, u) for u in U.basis)


def coordinates(U: Subspace, v: Vector) -> list[Scalar]:
    """Coordinates of ``v`` (assumed in U) with respect to U's echelon basis."""
    return [v[pc] for pc in U.pivots]


def complement_coords(U: Subspace) -> tuple[int, ...]:
    """Non-pivot columns: the canonical coordinate complement of ``U``."""
    pivset = set(U.pivots)
    return tuple(c for c in range(U.ambient_dim) if c not in pivset)


def matmul(A: Matrix, B: Matrix, field: FieldSpec) -> Matrix:
    if not A:
        return []
    inner = len(B)
    if any(len(row) != inner for row in A):
        raise DimensionError("inner dimensions differ")
    ncols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [field.zero] * ncols
        for a, brow in zip(row, B):
            if a:
                acc = [x + a * y for x, y in zip(acc, brow)]
        out.append(acc)
    return out


def matvec(A: Matrix, v: Vector, field: FieldSpec) -> list[Scalar]:
    out = []
    for row in A:
        s = field.zero
        for a, x in zip(row, v):
            if a and x:
                s = s + a * x
        out.append(s)
    return out


def transpose(A: Matrix, ncols: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def rank(rows: Sequence[Vector], field: FieldSpec, ncols: int) -> int:
    return rref(rows, field, ncols).dim


def det(A: Matrix, field: FieldSpec) -> Scalar:
    """Determinant by elimination, tracking swaps and pivot scalings."""
    n = len(A)
    M = [list(r) for r in A]
    d = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return field.zero
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = -d
        lead = M[c][c]
        d = d * lead
        for i in range(c + 1, n):
            f = M[i][c] / lead
            if f:
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return d


def inverse(A: Matrix, field: FieldSpec) -> Matrix | None:
    """Matrix inverse, or ``None`` when ``A`` is singular."""
    n = len(A)
    aug = [list(row) + e for row, e in zip(A, identity(field, n))]
    rows, pivots = _echelonize(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(rows) < n:
        return None
    return [row[n:] for row in rows[:n]]

"""Graded ideals and the inverse-system construction I(φ).

Given a non-trivial functional φ on A_m, the ideal I(φ) has

* I_0 = 0,
* I_j = {a in A_j : φ(a · A_{m-j}) = 0} for 0 < j < m,
* I_m = ker φ,
* I_j = A_j for j > m,

and A/I(φ) is Artinian Gorenstein with socle in degree m.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .action import GAction
from .errors import DimensionError, FunctionalError, IdealError
from .field import FieldSpec
from .linalg import Subspace
from .poly import (
    Functional,
    HPoly,
    basis_size,
    monomial_basis,
    monomial_index,
    multiply_coords,
    poly_from_json,
)


@dataclass(frozen=True)
class GradedIdeal:
    """A homogeneous ideal given degree by degree up to ``top``.

    ``pieces[d]`` is I_d inside A_d coordinates for d <= top; every piece
    above ``top`` is all of A_d.
    """

    field: FieldSpec
    n: int
    top: int
    pieces: tuple[Subspace, ...]

    def __post_init__(self):
        if self.top < 0 or len(self.pieces) != self.top + 1:
            raise IdealError("need exactly one piece per degree 0..top")
        for d, P in enumerate(self.pieces):
            if P.ambient_dim != basis_size(self.n, d) or P.field != self.field:
                raise DimensionError(f"piece {d} does not live in A_{d}")

    def piece(self, d: int) -> Subspace:
        if d <= self.top:
            return self.pieces[d]
        return linalg.full_subspace(self.field, basis_size(self.n, d))

    def dims(self) -> list[int]:
        return [P.dim for P in self.pieces]

    def contains(self, f: HPoly) -> bool:
        if f.degree > self.top:
            return True
        return linalg.contains(self.pieces[f.degree], f.coeffs)

    def is_closed(self) -> bool:
        """Ideal closure: X_i · I_d ⊆ I_{d+1} for all d < top."""
        for d in range(self.top):
            nxt = self.pieces[d + 1]
            for u in self.pieces[d].basis:
                for x in _variables(self.field, self.n):
                    if not linalg.contains(nxt, multiply_coords(self.field, self.n, d, u, 1, x)):
                        return False
        return True

    def generator_polys(self, d: int) -> list[HPoly]:
        return [HPoly(self.field, self.n, d, row) for row in self.piece(d).basis]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "field": self.field.to_json(),
            "top": self.top,
            "pieces": [
                {
                    "degree": d,
                    "dim": P.dim,
                    "basis": [HPoly(self.field, self.n, d, row).to_json() for row in P.basis],
                }
                for d, P in enumerate(self.pieces)
            ],
        }


def _variables(field: FieldSpec, n: int) -> list[list]:
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def build_inverse_system(phi: Functional) -> GradedIdeal:
    """The ideal I(φ), with top = deg φ."""
    if not any(phi.coeffs):
        raise FunctionalError("functional must be non-trivial")
    field, n, m = phi.field, phi.n, phi.degree
    pieces = [linalg.zero_subspace(field, 1)]
    for j in range(1, m):
        pieces.append(linalg.kernel(pairing_matrix(phi, j), field, basis_size(n, j)))
    pieces.append(linalg.kernel([list(phi.coeffs)], field, len(phi.coeffs)))
    return GradedIdeal(field, n, m, tuple(pieces))


def pairing_matrix(phi: Functional, j: int) -> list[list]:
    """P_j[ν][μ] = φ(μ ν) with rows ν over A_{m-j} and columns μ over A_j.

    I_j is the kernel of P_j; P_{m-j} is the transpose of P_j.
    """
    n, m = phi.n, phi.degree
    idx_m = monomial_index(n, m)
    cols = monomial_basis(n, j)
    return [
        [phi.coeffs[idx_m[tuple(a + b for a, b in zip(mu, nu))]] for mu in cols]
        for nu in monomial_basis(n, m - j)
    ]


def check_g_invariance(I: GradedIdeal, act: GAction) -> bool:
    """Whether every generator of G maps every piece of I into itself."""
    if act.n != I.n or act.field != I.field:
        raise DimensionError("group and ideal live over different rings")
    for gi in act.group.generator_indices:
        for d, P in enumerate(I.pieces):
            for u in P.basis:
                if not linalg.contains(P, act.apply_coords(gi, d, u)):
                    return False
    return True


def generated_ideal(field: FieldSpec, n: int, generators: Sequence[HPoly], top: int) -> GradedIdeal:
    """The ideal generated by ``generators`` plus every form of degree > top."""
    by_degree: dict[int, list] = {}
    for g in generators:
        if g.n != n or g.field != field:
            raise DimensionError("generator lives in a different ring")
        if g.degree <= top:
            by_degree.setdefault(g.degree, []).append(list(g.coeffs))
    xs = _variables(field, n)
    pieces = []
    prev: Subspace | None = None
    for d in range(top + 1):
        rows = list(by_degree.get(d, []))
        if prev is not None:
            for u in prev.basis:
                for x in xs:
                    rows.append(multiply_coords(field, n, d - 1, u, 1, x))
        prev = linalg.rref(rows, field, basis_size(n, d))
        pieces.append(prev)
    return GradedIdeal(field, n, top, tuple(pieces))


def ideal_from_json(obj: dict) -> GradedIdeal:
    field = FieldSpec.from_json(obj["field"])
    n, top = obj["n"], obj["top"]
    pieces = []
    for d, entry in enumerate(obj["pieces"]):
        if entry.get("degree", d) != d:
            raise IdealError("pieces must be listed in degree order")
        rows = [list(poly_from_json(field, n, p).coeffs) if p else [field.zero] * basis_size(n, d)
                for p in entry["basis"]]
        pieces.append(linalg.rref(rows, field, basis_size(n, d)))
    return GradedIdeal(field, n, top, tuple(pieces))

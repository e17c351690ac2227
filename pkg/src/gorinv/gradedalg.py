"""Artinian graded algebras A/Q and their invariant subalgebras A^G/Q^G.

Elements of (A/Q)_d are coordinate vectors over the complement monomials of
Q_d (the non-pivot columns of its echelon basis). Lifting a class places its
coordinates back on those monomials, so reduce(lift(u)) = u.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from . import linalg
from .action import GAction, fixed_subspace
from .errors import IdealError
from .field import Scalar
from .invsys import GradedIdeal, check_g_invariance
from .linalg import Subspace
from .poly import HPoly, basis_size, multiply_coords


@dataclass(frozen=True)
class GorensteinVerdict:
    is_gorenstein: bool
    socle_dims: tuple[int, ...]
    socle_degree: int | None
    a_invariant: int
    hilbert: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "hilbert": list(self.hilbert),
            "gorenstein": self.is_gorenstein,
            "socle_degree": self.socle_degree,
            "a_invariant": self.a_invariant,
            "socle_dims": list(self.socle_dims),
        }


def _verdict(hilbert: Sequence[int], socle_dims: Sequence[int]) -> GorensteinVerdict:
    total = sum(socle_dims)
    socle_degree = next(d for d, s in enumerate(socle_dims) if s) if total == 1 else None
    a = max(d for d, h in enumerate(hilbert) if h)
    return GorensteinVerdict(total == 1, tuple(socle_dims), socle_degree, a, tuple(hilbert))


class ArtinQuotient:
    """R = A/Q for a graded ideal Q with Q_0 = 0 and Q_d = A_d for d > top."""

    def __init__(self, ideal: GradedIdeal):
        if ideal.pieces[0].dim != 0:
            raise IdealError("the ideal must be proper (Q_0 = 0)")
        self.ideal = ideal
        self.field = ideal.field
        self.n = ideal.n
        self.top = ideal.top
        self.complements = tuple(linalg.complement_coords(P) for P in ideal.pieces)
        self.hilbert = tuple(len(c) for c in self.complements)

    def dim(self, d: int) -> int:
        return self.hilbert[d] if 0 <= d <= self.top else 0

    @property
    def total_dim(self) -> int:
        return sum(self.hilbert)

    @cached_property
    def _normal_forms(self) -> tuple[tuple[tuple[tuple[int, Scalar], ...], ...], ...]:
        # sparse normal form of each monomial of A_d, in quotient coordinates
        out = []
        f = self.field
        for d, P in enumerate(self.ideal.pieces):
            comp = self.complements[d]
            pos = {c: k for k, c in enumerate(comp)}
            pivot_row = dict(zip(P.pivots, P.basis))
            forms = []
            for mono in range(P.ambient_dim):
                if mono in pos:
                    v = [f.zero] * len(comp)
                    v[pos[mono]] = f.one
                else:
                    row = pivot_row[mono]
                    v = [-row[c] for c in comp]
                forms.append(tuple((k, x) for k, x in enumerate(v) if x))
            out.append(tuple(forms))
        return tuple(out)

    def reduce_coords(self, d: int, v: Sequence[Scalar]) -> list[Scalar]:
        """Class of the A_d vector ``v`` in (A/Q)_d; empty beyond ``top``."""
        if d > self.top:
            return []
        forms = self._normal_forms[d]
        out = [self.field.zero] * self.hilbert[d]
        for a, form in zip(v, forms):
            if a:
                for k, y in form:
                    out[k] = out[k] + a * y
        return out

    def reduce(self, f: HPoly) -> list[Scalar]:
        return self.reduce_coords(f.degree, f.coeffs)

    def lift(self, d: int, u: Sequence[Scalar]) -> list[Scalar]:
        v = [self.field.zero] * basis_size(self.n, d)
        for c, a in zip(self.complements[d], u):
            v[c] = a
        return v

    def multiply(self, d: int, u: Sequence[Scalar], e: int, w: Sequence[Scalar]) -> list[Scalar]:
        """Product of classes u in (A/Q)_d and w in (A/Q)_e."""
        if d + e > self.top:
            return []
        prod = multiply_coords(self.field, self.n, d, self.lift(d, u), e, self.lift(e, w))
        return self.reduce_coords(d + e, prod)

    def unit(self, d: int, k: int) -> list[Scalar]:
        f = self.field
        return [f.one if i == k else f.zero for i in range(self.hilbert[d])]


def quotient(ideal: GradedIdeal) -> ArtinQuotient:
    return ArtinQuotient(ideal)


def _annihilator(R: ArtinQuotient, d: int, basis: Sequence[Sequence[Scalar]],
                 multipliers: Sequence[tuple[int, Sequence[Scalar]]]) -> Subspace:
    """{sum c_r basis_r : (sum c_r basis_r) · w = 0 for every (e, w) in multipliers}.

    ``basis`` lives in (A/Q)_d; the result is returned in (A/Q)_d coordinates.
    """
    f = R.field
    rows: list[list[Scalar]] = []
    for e, w in multipliers:
        if d + e > R.top:
            continue
        images = [R.multiply(d, b, e, w) for b in basis]
        for k in range(R.hilbert[d + e]):
            rows.append([img[k] for img in images])
    K = linalg.kernel(rows, f, len(basis))
    vecs = []
    for c in K.basis:
        v = [f.zero] * R.hilbert[d]
        for a, b in zip(c, basis):
            if a:
                v = [x + a * y for x, y in zip(v, b)]
        vecs.append(v)
    return linalg.rref(vecs, f, R.hilbert[d])


def socle(R: ArtinQuotient) -> list[Subspace]:
    """Per-degree socle (0 : m): classes killed by every variable."""
    f = R.field
    variables = [(1, R.reduce_coords(1, [f.one if i == j else f.zero for j in range(R.n)]))
                 for i in range(R.n)] if R.top >= 1 else []
    out = []
    for d in range(R.top + 1):
        basis = [R.unit(d, k) for k in range(R.hilbert[d])]
        out.append(_annihilator(R, d, basis, variables))
    return out


def gorenstein_verdict(R: ArtinQuotient) -> GorensteinVerdict:
    return _verdict(R.hilbert, [S.dim for S in socle(R)])


class InvariantQuotient:
    """B = A^G/Q^G realized as the image of A^G in A/Q, degree by degree."""

    def __init__(self, base: ArtinQuotient, act: GAction, check: bool = True):
        if act.n != base.n or act.field != base.field:
            raise IdealError("group and quotient live over different rings")
        if check and not check_g_invariance(base.ideal, act):
            raise IdealError("the ideal is not G-invariant")
        self.base = base
        self.act = act
        pieces = []
        for d in range(base.top + 1):
            inv = fixed_subspace(act, d)
            rows = [base.reduce_coords(d, row) for row in inv.basis]
            pieces.append(linalg.rref(rows, base.field, base.hilbert[d]))
        self.pieces: tuple[Subspace, ...] = tuple(pieces)
        self.dims = tuple(P.dim for P in pieces)

    def invariant_ideal_piece(self, d: int) -> Subspace:
        """Q^G_d = Q_d ∩ A^G_d inside A_d coordinates."""
        return linalg.intersect(self.base.ideal.piece(d), fixed_subspace(self.act, d))

    @property
    def top(self) -> int:
        return self.base.top


def invariant_quotient(R: ArtinQuotient, act: GAction) -> InvariantQuotient:
    return InvariantQuotient(R, act)


def invariant_socle(B: InvariantQuotient) -> list[Subspace]:
    """Socle of B relative to B_+: classes killed by every B_e, 1 <= e <= top."""
    R = B.base
    multipliers = [(e, w) for e in range(1, B.top + 1) for w in B.pieces[e].basis]
    return [_annihilator(R, d, B.pieces[d].basis, multipliers) for d in range(B.top + 1)]


def gorenstein_verdict_invariant(B: InvariantQuotient) -> GorensteinVerdict:
    return _verdict(B.dims, [S.dim for S in invariant_socle(B)])


def induced_fixed_subspace(R: ArtinQuotient, act: GAction, d: int) -> Subspace:
    """((A/Q)_d)^G for the action induced on the quotient (Q assumed G-invariant)."""
    f = R.field
    h = R.dim(d)
    rows = []
    for gi in act.group.generator_indices:
        imgs = [R.reduce_coords(d, act.apply_coords(gi, d, R.lift(d, R.unit(d, k))))
                for k in range(h)]
        for r in range(h):
            row = [img[r] for img in imgs]
            row[r] = row[r] - f.one
            rows.append(row)
    return linalg.kernel(rows, f, h)


def is_symmetric(hilbert: Sequence[int]) -> bool:
    a = max(d for d, h in enumerate(hilbert) if h)
    return all(hilbert[d] == hilbert[a - d] for d in range(a + 1))

"""Linear action of a matrix group on k[X_1..X_n].

Convention: σ sends X_j to sum_i σ[i][j] X_i, extended multiplicatively. In
the basis X_1..X_n of A_1 the matrix of σ is σ itself, so the action
matrices satisfy M(στ) = M(σ) M(τ) in every degree.
"""

from __future__ import annotations

import threading
from typing import Sequence

from . import linalg
from .errors import FunctionalError, GroupError
from .field import Scalar
from .groups import Character, GMatrix, MatrixGroup
from .linalg import Matrix, Subspace
from .poly import Functional, HPoly, basis_size, monomial_basis, monomial_index, multiply_coords

__all__ = [
    "Character",
    "GAction",
    "apply",
    "reynolds",
    "fixed_subspace",
    "semi_invariant_subspace",
    "check_equivariant",
    "lift_functional",
]


class GAction:
    """The action of ``group`` on the polynomial ring in ``group.n`` variables.

    Action matrices are memoized per (element, degree). Columns are images of
    basis monomials, so ``coords(σ f) = M(σ) · coords(f)``.
    """

    def __init__(self, group: MatrixGroup):
        self.group = group
        self.n = group.n
        self.field = group.field
        self._lock = threading.RLock()
        self._images: dict[tuple[int, int], list[list[Scalar]]] = {}
        self._matrices: dict[tuple[int, int], Matrix] = {}
        self._reynolds: dict[tuple[int, tuple | None], Matrix] = {}
        self._fixed: dict[tuple[int, tuple | None], Subspace] = {}

    def _element_index(self, sigma: GMatrix | int) -> int:
        if isinstance(sigma, int):
            if not 0 <= sigma < self.group.order:
                raise GroupError(f"element index {sigma} out of range")
            return sigma
        return self.group.index(sigma)

    def images(self, sigma: GMatrix | int, d: int) -> list[list[Scalar]]:
        """Coordinates of σ(μ) for each monomial μ of degree d, in basis order."""
        i = self._element_index(sigma)
        key = (i, d)
        cached = self._images.get(key)
        if cached is not None:
            return cached
        with self._lock:
            if key in self._images:
                return self._images[key]
            f, n = self.field, self.n
            if d == 0:
                imgs = [[f.one]]
            else:
                g = self.group.elements[i].entries
                linear = [[g[k][j] for k in range(n)] for j in range(n)]
                prev = self.images(i, d - 1)
                prev_idx = monomial_index(n, d - 1)
                imgs = []
                for mu in monomial_basis(n, d):
                    j = next(v for v, e in enumerate(mu) if e)
                    rest = mu[:j] + (mu[j] - 1,) + mu[j + 1:]
                    imgs.append(multiply_coords(f, n, d - 1, prev[prev_idx[rest]], 1, linear[j]))
            self._images[key] = imgs
            return imgs

    def matrix(self, sigma: GMatrix | int, d: int) -> Matrix:
        i = self._element_index(sigma)
        key = (i, d)
        cached = self._matrices.get(key)
        if cached is not None:
            return cached
        with self._lock:
            if key not in self._matrices:
                self._matrices[key] = linalg.transpose(self.images(i, d))
            return self._matrices[key]

    def apply_coords(self, sigma: GMatrix | int, d: int, v: Sequence[Scalar]) -> list[Scalar]:
        imgs = self.images(sigma, d)
        out = [self.field.zero] * basis_size(self.n, d)
        for a, col in zip(v, imgs):
            if a:
                out = [x + a * y for x, y in zip(out, col)]
        return out

    def reynolds_matrix(self, d: int, character: Character | None = None) -> Matrix:
        """Matrix of f ↦ |G|^-1 sum_σ χ(σ)^-1 σ(f) on A_d (χ trivial by default)."""
        key = (d, _char_key(character))
        cached = self._reynolds.get(key)
        if cached is not None:
            return cached
        with self._lock:
            if key not in self._reynolds:
                f, G = self.field, self.group
                N = basis_size(self.n, d)
                acc = [[f.zero] * N for _ in range(N)]
                for i in range(G.order):
                    w = f.one if character is None else 1 / character(i)
                    M = self.matrix(i, d)
                    for r in range(N):
                        row, mrow = acc[r], M[r]
                        for c in range(N):
                            if mrow[c]:
                                row[c] = row[c] + w * mrow[c]
                scale = 1 / f(G.order)
                self._reynolds[key] = [[scale * x for x in row] for row in acc]
            return self._reynolds[key]

    def eigen_subspace(self, d: int, character: Character | None = None) -> Subspace:
        """{f in A_d : σ f = χ(σ) f for all σ}, cut out by the generators alone."""
        key = (d, _char_key(character))
        cached = self._fixed.get(key)
        if cached is not None:
            return cached
        with self._lock:
            if key not in self._fixed:
                f, N = self.field, basis_size(self.n, d)
                rows = []
                for gi in self.group.generator_indices:
                    lam = f.one if character is None else character(gi)
                    M = self.matrix(gi, d)
                    for r in range(N):
                        row = list(M[r])
                        row[r] = row[r] - lam
                        rows.append(row)
                self._fixed[key] = linalg.kernel(rows, f, N)
            return self._fixed[key]


def _char_key(character: Character | None):
    if character is None or character.is_trivial():
        return None
    return character.values


def apply(act: GAction, sigma: GMatrix | int, f: HPoly) -> HPoly:
    if f.n != act.n or f.field != act.field:
        raise GroupError("polynomial does not live in the ring the group acts on")
    return HPoly(f.field, f.n, f.degree, tuple(act.apply_coords(sigma, f.degree, f.coeffs)))


def reynolds(act: GAction, f: HPoly, character: Character | None = None) -> HPoly:
    if f.n != act.n or f.field != act.field:
        raise GroupError("polynomial does not live in the ring the group acts on")
    R = act.reynolds_matrix(f.degree, character)
    return HPoly(f.field, f.n, f.degree, tuple(linalg.matvec(R, f.coeffs, f.field)))


def fixed_subspace(act: GAction, d: int) -> Subspace:
    """A^G_d as a canonical subspace of A_d coordinates."""
    return act.eigen_subspace(d)


def semi_invariant_subspace(act: GAction, d: int, character: Character) -> Subspace:
    return act.eigen_subspace(d, character)


def check_equivariant(act: GAction, phi: Functional, character: Character | None = None) -> bool:
    """Whether φ(σ a) = χ(σ) φ(a) for every σ in G and every monomial a.

    ``character`` defaults to the one attached to ``phi`` (trivial if none).
    """
    if character is None:
        character = phi.character
    if character is not None and character.group is not act.group:
        raise GroupError("character belongs to a different group")
    f = act.field
    for i in range(act.group.order):
        lam = f.one if character is None else character(i)
        for img, value in zip(act.images(i, phi.degree), phi.coeffs):
            if phi.evaluate(img) != lam * value:
                return False
    return True


def lift_functional(act: GAction, m: int, eta_values: Sequence,
                    character: Character | None = None) -> Functional:
    """φ = η ∘ ρ on A_m, with η given on the echelon basis of the target space.

    For the trivial character the target is A^G_m and ρ the Reynolds operator;
    for a character χ it is the χ-semi-invariant subspace and the twisted
    projector, which makes φ χ-equivariant.
    """
    if m < 1:
        raise FunctionalError("functional degree must be at least 1")
    f = act.field
    space = act.eigen_subspace(m, character)
    if space.dim == 0:
        what = "invariants" if _char_key(character) is None else "semi-invariants"
        raise FunctionalError(f"{what} vanish in degree {m}")
    eta = [f(x) for x in eta_values]
    if len(eta) != space.dim:
        raise FunctionalError(f"expected {space.dim} values for η, got {len(eta)}")
    if not any(eta):
        raise FunctionalError("η must be non-trivial")
    R = act.reynolds_matrix(m, character)
    N = basis_size(act.n, m)
    coeffs = []
    for col in range(N):
        s = f.zero
        for e, pc in zip(eta, space.pivots):
            if e:
                s = s + e * R[pc][col]
        coeffs.append(s)
    return Functional(f, act.n, m, tuple(coeffs), character)

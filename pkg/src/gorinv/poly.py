"""The standard graded polynomial ring k[X_1, ..., X_n].

Each graded piece A_d is identified with k^N, N = C(n+d-1, d), through the
degree-d monomial basis in graded-lex order (higher exponent on earlier
variables comes first, so for n = 2, d = 3 the order is X^3, X^2Y, XY^2, Y^3).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import TYPE_CHECKING, Mapping, Sequence

from .errors import DimensionError, FieldMismatch, FunctionalError
from .field import FieldSpec, Scalar

if TYPE_CHECKING:
    from .action import Character

MAX_VARS = 6
MAX_DEGREE = 20

Monomial = tuple[int, ...]

VAR_NAMES = "XYZWUV"


def _check_bounds(n: int, d: int) -> None:
    if not 1 <= n <= MAX_VARS:
        raise DimensionError(f"number of variables must be in 1..{MAX_VARS}, got {n}")
    if not 0 <= d <= MAX_DEGREE:
        raise DimensionError(f"degree must be in 0..{MAX_DEGREE}, got {d}")


@lru_cache(maxsize=None)
def monomial_basis(n: int, d: int) -> tuple[Monomial, ...]:
    """All degree-``d`` exponent vectors in ``n`` variables, graded-lex order."""
    _check_bounds(n, d)
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n: int, d: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomial_basis(n, d))}


def basis_size(n: int, d: int) -> int:
    return comb(n + d - 1, d)


def grlex_key(m: Monomial) -> tuple:
    """Sort key placing monomials in basis order (ascending key = earlier)."""
    return (sum(m), tuple(-e for e in m))


@lru_cache(maxsize=None)
def product_table(n: int, d: int, e: int) -> tuple[tuple[int, ...], ...]:
    """``table[i][j]`` = index in basis(n, d+e) of basis(n,d)[i] * basis(n,e)[j]."""
    idx = monomial_index(n, d + e)
    right = monomial_basis(n, e)
    return tuple(
        tuple(idx[tuple(a + b for a, b in zip(mu, nu))] for nu in right)
        for mu in monomial_basis(n, d)
    )


def multiply_coords(field: FieldSpec, n: int, d: int, u: Sequence[Scalar], e: int,
                    w: Sequence[Scalar]) -> list[Scalar]:
    """Product of coordinate vectors from A_d and A_e, as a vector in A_{d+e}."""
    table = product_table(n, d, e)
    out = [field.zero] * basis_size(n, d + e)
    wnz = [(j, b) for j, b in enumerate(w) if b]
    for i, a in enumerate(u):
        if not a:
            continue
        row = table[i]
        for j, b in wnz:
            k = row[j]
            out[k] = out[k] + a * b
    return out


def monomial_str(m: Monomial) -> str:
    parts = []
    for name, e in zip(VAR_NAMES, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) or "1"


def monomial_key(m: Monomial) -> str:
    """JSON key for a monomial: its exponent tuple as a compact array."""
    return json.dumps(list(m), separators=(",", ":"))


def parse_monomial_key(key: str | Sequence[int], n: int | None = None) -> Monomial:
    try:
        exps = json.loads(key) if isinstance(key, str) else list(key)
    except json.JSONDecodeError:
        raise DimensionError(f"malformed monomial key {key!r}") from None
    if not isinstance(exps, list) or not all(isinstance(x, int) and x >= 0 for x in exps):
        raise DimensionError(f"monomial key must be an array of nonnegative integers: {key!r}")
    if n is not None and len(exps) != n:
        raise DimensionError(f"monomial {key!r} does not have {n} exponents")
    return tuple(exps)


@dataclass(frozen=True)
class HPoly:
    """A homogeneous polynomial: dense coefficients over ``monomial_basis(n, degree)``."""

    field: FieldSpec
    n: int
    degree: int
    coeffs: tuple[Scalar, ...]

    def __post_init__(self):
        _check_bounds(self.n, self.degree)
        if len(self.coeffs) != basis_size(self.n, self.degree):
            raise DimensionError(
                f"expected {basis_size(self.n, self.degree)} coefficients, got {len(self.coeffs)}")

    @classmethod
    def zero(cls, field: FieldSpec, n: int, d: int) -> HPoly:
        return cls(field, n, d, (field.zero,) * basis_size(n, d))

    @classmethod
    def from_terms(cls, field: FieldSpec, n: int, terms: Mapping[Monomial, object]) -> HPoly:
        """Build from ``{exponent tuple: scalar}``; all terms must share one degree."""
        degs = {sum(m) for m in terms}
        if len(degs) > 1:
            raise DimensionError(f"terms of mixed degrees {sorted(degs)}")
        if not degs:
            raise DimensionError("cannot infer the degree of an empty term map")
        d = degs.pop()
        idx = monomial_index(n, d)
        c = [field.zero] * len(idx)
        for m, a in terms.items():
            if len(m) != n:
                raise DimensionError(f"monomial {m} does not have {n} exponents")
            c[idx[tuple(m)]] += field(a)
        return cls(field, n, d, tuple(c))

    @classmethod
    def monomial(cls, field: FieldSpec, m: Monomial) -> HPoly:
        return cls.from_terms(field, len(m), {tuple(m): 1})

    @classmethod
    def variable(cls, field: FieldSpec, n: int, i: int) -> HPoly:
        return cls.monomial(field, tuple(1 if j == i else 0 for j in range(n)))

    def terms(self) -> dict[Monomial, Scalar]:
        return {m: a for m, a in zip(monomial_basis(self.n, self.degree), self.coeffs) if a}

    def _check(self, other: HPoly) -> None:
        if self.field != other.field:
            raise FieldMismatch(f"polynomials over {self.field} and {other.field}")
        if self.n != other.n:
            raise DimensionError(f"polynomials in {self.n} and {other.n} variables")

    def __add__(self, other: HPoly) -> HPoly:
        self._check(other)
        if self.degree != other.degree:
            raise DimensionError("sum of homogeneous polynomials of different degrees")
        return HPoly(self.field, self.n, self.degree,
                     tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> HPoly:
        return HPoly(self.field, self.n, self.degree, tuple(-a for a in self.coeffs))

    def __sub__(self, other: HPoly) -> HPoly:
        return self + (-other)

    def scale(self, c) -> HPoly:
        c = self.field(c)
        return HPoly(self.field, self.n, self.degree, tuple(c * a for a in self.coeffs))

    def __mul__(self, other: HPoly) -> HPoly:
        return hmul(self, other)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self):
        if self.is_zero():
            return "0"
        out = ""
        for m, a in self.terms().items():
            text = self.field.format(a)
            negative = text.startswith("-")
            text = text.lstrip("-")
            mono = monomial_str(m)
            term = mono if text == "1" and mono != "1" else (text if mono == "1" else f"{text}*{mono}")
            if not out:
                out = f"-{term}" if negative else term
            else:
                out += f" - {term}" if negative else f" + {term}"
        return out

    def to_json(self) -> dict[str, str]:
        return {monomial_key(m): self.field.format(a) for m, a in self.terms().items()}


def hmul(f: HPoly, g: HPoly) -> HPoly:
    f._check(g)
    return HPoly(f.field, f.n, f.degree + g.degree,
                 tuple(multiply_coords(f.field, f.n, f.degree, f.coeffs, g.degree, g.coeffs)))


def coords(f: HPoly) -> list[Scalar]:
    return list(f.coeffs)


def from_coords(field: FieldSpec, n: int, d: int, v: Sequence) -> HPoly:
    return HPoly(field, n, d, tuple(field(x) for x in v))


def poly_from_json(field: FieldSpec, n: int, obj: Mapping[str, object]) -> HPoly:
    return HPoly.from_terms(field, n, {parse_monomial_key(k, n): v for k, v in obj.items()})


@dataclass(frozen=True)
class Functional:
    """A linear map A_m -> k, given by its values on the degree-m monomial basis.

    ``character`` is the twist under which the functional is meant to be
    equivariant; ``None`` means the trivial character.
    """

    field: FieldSpec
    n: int
    degree: int
    coeffs: tuple[Scalar, ...]
    character: Character | None = None

    def __post_init__(self):
        if self.degree < 1:
            raise FunctionalError(f"functional degree must be at least 1, got {self.degree}")
        _check_bounds(self.n, self.degree)
        if len(self.coeffs) != basis_size(self.n, self.degree):
            raise DimensionError(
                f"expected {basis_size(self.n, self.degree)} values, got {len(self.coeffs)}")
        if not any(self.coeffs):
            raise FunctionalError("functional must be non-trivial")

    @classmethod
    def from_values(cls, field: FieldSpec, n: int, values: Mapping[Monomial, object],
                    character: Character | None = None) -> Functional:
        """Values keyed by exponent tuples; unlisted monomials map to zero."""
        degs = {sum(m) for m in values}
        if len(degs) != 1:
            raise FunctionalError("functional values must be given on monomials of one degree")
        m = degs.pop()
        if m < 1:
            raise FunctionalError("functional degree must be at least 1")
        idx = monomial_index(n, m)
        c = [field.zero] * len(idx)
        for mono, a in values.items():
            if len(mono) != n:
                raise DimensionError(f"monomial {mono} does not have {n} exponents")
            c[idx[tuple(mono)]] = field(a)
        return cls(field, n, m, tuple(c), character)

    def __call__(self, f: HPoly) -> Scalar:
        if f.degree != self.degree or f.n != self.n:
            raise DimensionError("functional applied to a polynomial of the wrong degree")
        return self.evaluate(f.coeffs)

    def evaluate(self, v: Sequence[Scalar]) -> Scalar:
        s = self.field.zero
        for a, x in zip(self.coeffs, v):
            if a and x:
                s = s + a * x
        return s

    def value_at(self, m: Monomial) -> Scalar:
        return self.coeffs[monomial_index(self.n, self.degree)[m]]

    def to_json(self) -> dict:
        out = {
            "degree": self.degree,
            "values": {monomial_key(m): self.field.format(a)
                       for m, a in zip(monomial_basis(self.n, self.degree), self.coeffs)},
        }
        if self.character is not None:
            out["character"] = self.character.to_json()
        return out

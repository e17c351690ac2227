"""Exact coefficient fields: the rationals and prime fields F_p.

Rational elements are plain :class:`fractions.Fraction` values (already
canonical: reduced, positive denominator). Prime-field elements are
:class:`Residue` values holding the least nonnegative residue. Both support
the ordinary arithmetic operators, so the linear algebra further up is written
once against ``+ - * /`` and truthiness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import FieldError, FieldMismatch, ZeroInverse

MAX_PRIME = 2**31


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order (trial division)."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class Residue:
    """An element of F_p, stored as its least nonnegative residue."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.p != self.p:
                raise FieldMismatch(f"cannot combine elements of F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return other
        raise FieldMismatch(f"cannot combine an element of F_{self.p} with {type(other).__name__}")

    def __add__(self, other):
        return Residue(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Residue(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return Residue(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return Residue(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.p)

    def inverse(self) -> Residue:
        if self.value == 0:
            raise ZeroInverse(f"0 has no inverse in F_{self.p}")
        return Residue(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        return self * Residue(self._coerce(other), self.p).inverse()

    def __rtruediv__(self, other):
        return Residue(self._coerce(other), self.p) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Residue(pow(self.value, k, self.p), self.p)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return f"Residue({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


Scalar = Union[Fraction, Residue]


@dataclass(frozen=True)
class FieldSpec:
    """The coefficient field: ``FieldSpec()`` is Q, ``FieldSpec(p)`` is F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if isinstance(self.p, bool) or not isinstance(self.p, int):
                raise FieldError(f"prime modulus must be an integer, got {self.p!r}")
            if not 2 <= self.p < MAX_PRIME:
                raise FieldError(f"prime modulus must lie in [2, 2^31), got {self.p}")
            if not is_prime(self.p):
                raise FieldError(f"{self.p} is not prime")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(p)

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    def __str__(self):
        return self.name

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.p is None else Residue(0, self.p)

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.p is None else Residue(1, self.p)

    def __call__(self, x) -> Scalar:
        """Convert an int, Fraction, literal string or element into this field."""
        if isinstance(x, str):
            return self.parse(x)
        if self.p is None:
            if isinstance(x, Residue):
                raise FieldMismatch(f"cannot read an element of F_{x.p} as a rational")
            if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
                raise FieldError(f"not an exact rational: {x!r}")
            return Fraction(x)
        if isinstance(x, Residue):
            if x.p != self.p:
                raise FieldMismatch(f"cannot read an element of F_{x.p} in F_{self.p}")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"{x} has no image in F_{self.p}")
            return Residue(x.numerator, self.p) / Residue(x.denominator, self.p)
        if isinstance(x, bool) or not isinstance(x, int):
            raise FieldError(f"not an exact scalar: {x!r}")
        return Residue(x, self.p)

    def parse(self, literal: str | int) -> Scalar:
        """Parse a scalar literal: an integer or an ``"a/b"`` string."""
        if isinstance(literal, int) and not isinstance(literal, bool):
            return self(literal)
        if not isinstance(literal, str):
            raise FieldError(f"scalar literal must be a string or integer, got {literal!r}")
        text = literal.strip()
        try:
            if "/" in text:
                num, den = text.split("/")
                value = Fraction(int(num), int(den))
            else:
                value = Fraction(int(text))
        except (ValueError, ZeroDivisionError):
            raise FieldError(f"malformed scalar literal {literal!r}") from None
        return self(value)

    def format(self, x: Scalar) -> str:
        if isinstance(x, Residue):
            return str(x.value)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def contains(self, x) -> bool:
        if self.p is None:
            return isinstance(x, Fraction)
        return isinstance(x, Residue) and x.p == self.p

    def normalize(self, x) -> Scalar:
        return self(x)

    def sort_key(self, x: Scalar):
        return x.value if isinstance(x, Residue) else x

    def elements(self) -> list[Scalar]:
        if self.p is None:
            raise FieldError("Q is infinite")
        return [Residue(v, self.p) for v in range(self.p)]

    def to_json(self):
        return "Q" if self.p is None else {"Fp": self.p}

    @classmethod
    def from_json(cls, obj) -> FieldSpec:
        if obj == "Q":
            return cls(None)
        if isinstance(obj, dict) and set(obj) == {"Fp"}:
            return cls(obj["Fp"])
        raise FieldError(f'field spec must be "Q" or {{"Fp": p}}, got {obj!r}')


def field_of(x: Scalar) -> FieldSpec:
    if isinstance(x, Residue):
        return FieldSpec(x.p)
    if isinstance(x, Fraction):
        return FieldSpec(None)
    raise FieldError(f"not a field element: {x!r}")


def _check_same(a: Scalar, b: Scalar) -> None:
    if field_of(a) != field_of(b):
        raise FieldMismatch(f"field mismatch: {field_of(a)} vs {field_of(b)}")


def add(a: Scalar, b: Scalar) -> Scalar:
    _check_same(a, b)
    return a + b


def mul(a: Scalar, b: Scalar) -> Scalar:
    _check_same(a, b)
    return a * b


def neg(a: Scalar) -> Scalar:
    field_of(a)
    return -a


def inv(a: Scalar) -> Scalar:
    field_of(a)
    if not a:
        raise ZeroInverse("zero has no inverse")
    if isinstance(a, Residue):
        return a.inverse()
    return 1 / a


def has_primitive_pth_root(field: FieldSpec, p: int) -> bool:
    """Whether ``field`` contains a primitive p-th root of unity (p prime).

    The only roots of unity in Q are +-1; F_q^* is cyclic of order q - 1.
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if field.is_rational:
        return p == 2
    return p != field.p and (field.p - 1) % p == 0

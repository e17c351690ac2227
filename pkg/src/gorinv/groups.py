"""Finite matrix groups G ⊆ GL_n(k), stored as explicit element lists.

A group carries its full Cayley table (indices into ``elements``), which the
commutator subgroup, the character machinery and the brute-force
one-dimensional representation oracle all read from.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Sequence

from . import linalg
from .errors import GroupError
from .field import FieldSpec, Scalar, has_primitive_pth_root, prime_factors

DEFAULT_CAP = 5000

Entries = tuple[tuple[Scalar, ...], ...]


def default_cap() -> int:
    raw = os.environ.get("GORINV_GROUP_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise GroupError(f"GORINV_GROUP_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise GroupError("GORINV_GROUP_CAP must be positive")
    return cap


def _mat_mul(a: Entries, b: Entries) -> Entries:
    n = len(a)
    cols = list(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in cols:
            s = row[0] * col[0]
            for k in range(1, n):
                s = s + row[k] * col[k]
            out_row.append(s)
        out.append(tuple(out_row))
    return tuple(out)


@dataclass(frozen=True)
class GMatrix:
    """An invertible n×n matrix with its cached inverse."""

    field: FieldSpec
    entries: Entries
    inverse: Entries = dc_field(compare=False, repr=False, default=())

    @classmethod
    def make(cls, field: FieldSpec, rows: Sequence[Sequence]) -> GMatrix:
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise GroupError("group elements must be non-empty square matrices")
        entries = tuple(tuple(field(x) for x in r) for r in rows)
        inv = linalg.inverse([list(r) for r in entries], field)
        if inv is None:
            raise GroupError("singular generator matrix")
        return cls(field, entries, tuple(tuple(r) for r in inv))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __matmul__(self, other: GMatrix) -> GMatrix:
        return GMatrix(self.field, _mat_mul(self.entries, other.entries),
                       _mat_mul(other.inverse, self.inverse))

    def sort_key(self):
        return tuple(self.field.sort_key(x) for row in self.entries for x in row)

    def det(self) -> Scalar:
        return linalg.det([list(r) for r in self.entries], self.field)

    def is_identity(self) -> bool:
        one, zero = self.field.one, self.field.zero
        return all(x == (one if i == j else zero)
                   for i, row in enumerate(self.entries) for j, x in enumerate(row))

    def to_json(self) -> list[list[str]]:
        return [[self.field.format(x) for x in row] for row in self.entries]


def identity_matrix(field: FieldSpec, n: int) -> GMatrix:
    return GMatrix.make(field, linalg.identity(field, n))


@dataclass(frozen=True, eq=False)
class MatrixGroup:
    n: int
    field: FieldSpec
    generators: tuple[GMatrix, ...]
    elements: tuple[GMatrix, ...]
    cayley: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "_index", {g: i for i, g in enumerate(self.elements)})

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def index(self, g: GMatrix) -> int:
        try:
            return self._index[g]
        except KeyError:
            raise GroupError("matrix is not an element of the group") from None

    def __contains__(self, g: GMatrix) -> bool:
        return g in self._index

    @property
    def generator_indices(self) -> tuple[int, ...]:
        return tuple(self._index[g] for g in self.generators)

    def inverse_index(self, i: int) -> int:
        return self._index[GMatrix(self.field, self.elements[i].inverse, self.elements[i].entries)]

    def is_abelian(self) -> bool:
        t = self.cayley
        return all(t[i][j] == t[j][i] for i in range(len(t)) for j in range(i))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "field": self.field.to_json(),
            "generators": [g.to_json() for g in self.generators],
        }


def _from_elements(field: FieldSpec, n: int, generators: Sequence[GMatrix],
                   elements: Sequence[GMatrix]) -> MatrixGroup:
    ident = identity_matrix(field, n)
    rest = sorted((g for g in set(elements) if g != ident), key=GMatrix.sort_key)
    ordered = (ident, *rest)
    index = {g: i for i, g in enumerate(ordered)}
    table = []
    for a in ordered:
        row = []
        for b in ordered:
            c = a @ b
            if c not in index:
                raise GroupError("element list is not closed under multiplication")
            row.append(index[c])
        table.append(tuple(row))
    return MatrixGroup(n, field, tuple(generators), ordered, tuple(table))


def close(generators: Sequence[GMatrix], cap: int | None = None,
          allow_trivial: bool = False) -> MatrixGroup:
    """Breadth-first closure of ``generators`` into a finite group.

    Raises :class:`GroupError` if the closure exceeds ``cap`` elements, if the
    characteristic divides the order, or (unless ``allow_trivial``) if the
    group is trivial.
    """
    if not generators:
        raise GroupError("at least one generator is required")
    cap = default_cap() if cap is None else cap
    field, n = generators[0].field, generators[0].n
    for g in generators:
        if g.field != field or g.n != n:
            raise GroupError("generators must share one size and one field")
    ident = identity_matrix(field, n)
    seen = {ident}
    queue = deque([ident])
    while queue:
        a = queue.popleft()
        for s in generators:
            b = a @ s
            if b not in seen:
                seen.add(b)
                if len(seen) > cap:
                    raise GroupError(f"group closure exceeds cap of {cap} elements")
                queue.append(b)
    if len(seen) < 2 and not allow_trivial:
        raise GroupError("group must be non-trivial")
    p = field.characteristic
    if p and len(seen) % p == 0:
        raise GroupError(f"characteristic {p} divides the group order {len(seen)}")
    return _from_elements(field, n, generators, seen)


def group_from_matrices(field: FieldSpec, matrices: Sequence[Sequence[Sequence]],
                        cap: int | None = None) -> MatrixGroup:
    return close([GMatrix.make(field, m) for m in matrices], cap)


def group_from_json(obj: dict, cap: int | None = None) -> MatrixGroup:
    """Parse ``{"n": 2, "field": "Q", "generators": [[["0","-1"],["1","-1"]]]}``."""
    if not isinstance(obj, dict) or "generators" not in obj:
        raise GroupError("group spec must be an object with 'generators'")
    field = FieldSpec.from_json(obj.get("field", "Q"))
    gens = obj["generators"]
    if not isinstance(gens, list) or not gens:
        raise GroupError("'generators' must be a non-empty list of matrices")
    n = obj.get("n", len(gens[0]))
    for g in gens:
        if not isinstance(g, list) or len(g) != n or any(not isinstance(r, list) or len(r) != n for r in g):
            raise GroupError(f"every generator must be an {n}x{n} array of scalar literals")
    return group_from_matrices(field, gens, cap)


def _closure_indices(G: MatrixGroup, seeds: Sequence[int]) -> set[int]:
    seen = {0}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for s in seeds:
            b = G.cayley[a][s]
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return seen


def commutator_subgroup(G: MatrixGroup) -> MatrixGroup:
    """[G, G], generated by all g h g^-1 h^-1; may be trivial."""
    t = G.cayley
    inv = [G.inverse_index(i) for i in range(G.order)]
    comms = sorted({t[t[t[g][h]][inv[g]]][inv[h]] for g in range(G.order) for h in range(G.order)})
    members = _closure_indices(G, comms)
    gens = [G.elements[i] for i in comms if i != 0] or [G.elements[0]]
    return _from_elements(G.field, G.n, gens, [G.elements[i] for i in members])


@dataclass(frozen=True)
class Verdict:
    exists: bool
    witness_prime: int | None
    r: int

    def to_json(self) -> dict:
        return {"exists": self.exists, "witness_prime": self.witness_prime, "r": self.r}


def has_nontrivial_onedim_rep(G: MatrixGroup) -> Verdict:
    """Decide whether some non-trivial homomorphism G -> k^* exists.

    With r = |G/[G,G]|, such a map exists iff some prime p | r has a primitive
    p-th root of unity in k.
    """
    r = G.order // commutator_subgroup(G).order
    for p in prime_factors(r):
        if has_primitive_pth_root(G.field, p):
            return Verdict(True, p, r)
    return Verdict(False, None, r)


@dataclass(frozen=True, eq=False)
class Character:
    """A homomorphism G -> k^*, recorded on every group element."""

    group: MatrixGroup
    values: tuple[Scalar, ...]

    def __post_init__(self):
        G, vals = self.group, self.values
        if len(vals) != G.order:
            raise GroupError("a character needs one value per group element")
        if any(not v for v in vals):
            raise GroupError("character values must be nonzero")
        if vals[0] != G.field.one:
            raise GroupError("a character must send the identity to 1")
        for i, row in enumerate(G.cayley):
            for j, k in enumerate(row):
                if vals[k] != vals[i] * vals[j]:
                    raise GroupError("values do not define a group homomorphism")

    @classmethod
    def trivial(cls, G: MatrixGroup) -> Character:
        return cls(G, (G.field.one,) * G.order)

    @classmethod
    def from_generator_values(cls, G: MatrixGroup, gen_values: Sequence) -> Character:
        """Extend values on the generators along the Cayley table, then validate."""
        if len(gen_values) != len(G.generators):
            raise GroupError(f"expected {len(G.generators)} generator values, got {len(gen_values)}")
        vals = _extend(G, [G.field(v) for v in gen_values])
        if vals is None:
            raise GroupError("generator values do not extend to a group homomorphism")
        return cls(G, tuple(vals))

    def __call__(self, i: int) -> Scalar:
        return self.values[i]

    def is_trivial(self) -> bool:
        one = self.group.field.one
        return all(v == one for v in self.values)

    def __eq__(self, other):
        return isinstance(other, Character) and self.group is other.group and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def to_json(self) -> dict:
        f = self.group.field
        return {"generator_values": [f.format(self.values[i]) for i in self.group.generator_indices]}


def _extend(G: MatrixGroup, gen_values: Sequence[Scalar]) -> list[Scalar] | None:
    vals: list[Scalar | None] = [None] * G.order
    vals[0] = G.field.one
    queue = deque([0])
    gens = G.generator_indices
    while queue:
        a = queue.popleft()
        for s, v in zip(gens, gen_values):
            b = G.cayley[a][s]
            val = vals[a] * v
            if vals[b] is None:
                vals[b] = val
                queue.append(b)
            elif vals[b] != val:
                return None
    return vals


def _characters_with_values(G: MatrixGroup, candidates: Sequence[Scalar]) -> list[Character]:
    out = []
    for assignment in product(candidates, repeat=len(G.generators)):
        vals = _extend(G, assignment)
        if vals is None:
            continue
        try:
            out.append(Character(G, tuple(vals)))
        except GroupError:
            continue
    return out


def enumerate_onedim_reps_oracle(G: MatrixGroup) -> list[Character]:
    """Every homomorphism G -> F_q^*, by exhaustive search over F_q^* on generators.

    Each candidate is checked against the full Cayley table; no use is made of
    the commutator subgroup.
    """
    q = G.field.p
    if q is None:
        raise GroupError("the brute-force oracle needs a finite field")
    if q > 101:
        raise GroupError("the brute-force oracle is limited to q <= 101")
    units = [x for x in G.field.elements() if x]
    return _characters_with_values(G, units)


def enumerate_characters(G: MatrixGroup) -> list[Character]:
    """All characters G -> k^*; over Q these take values in {1, -1}."""
    if G.field.is_rational:
        return _characters_with_values(G, [G.field.one, -G.field.one])
    return enumerate_onedim_reps_oracle(G)

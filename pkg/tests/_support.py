"""Shared helpers and brute-force oracles for the test suite."""

from __future__ import annotations

import itertools
import random

from gorinv.field import FieldSpec
from gorinv.harness import group_and_action, ZOO
from gorinv.poly import HPoly, basis_size

Q = FieldSpec()

# (zoo name, field) pairs whose characteristic does not divide the order
GROUP_POOL = [
    ("neg-identity", Q), ("neg-identity", FieldSpec(3)), ("neg-identity", FieldSpec(5)),
    ("cyclic3", Q), ("cyclic3", FieldSpec(5)), ("cyclic3", FieldSpec(7)),
    ("s3-perm", Q), ("s3-perm", FieldSpec(5)), ("s3-perm", FieldSpec(7)),
    ("a3-perm", Q), ("a3-perm", FieldSpec(7)),
    ("cyclic5", Q), ("cyclic5", FieldSpec(11)),
]


def pool_action(name, field):
    return group_and_action(field, ZOO[name])


def random_scalar(rng: random.Random, field: FieldSpec):
    if field.is_rational:
        return field(rng.randint(-3, 3))
    return field(rng.randrange(field.p))


def random_poly(rng: random.Random, field: FieldSpec, n: int, d: int, density: float = 0.6) -> HPoly:
    coeffs = tuple(random_scalar(rng, field) if rng.random() < density else field.zero
                   for _ in range(basis_size(n, d)))
    return HPoly(field, n, d, coeffs)


def nonzero_poly(rng, field, n, d) -> HPoly:
    while True:
        f = random_poly(rng, field, n, d)
        if not f.is_zero():
            return f


# --- brute-force socle oracle over a small prime field -------------------

def _monomials(n: int, d: int) -> list[tuple[int, ...]]:
    # independent enumeration, sorted the same way as the package's basis
    out = [e for e in itertools.product(range(d + 1), repeat=n) if sum(e) == d]
    return sorted(out, reverse=True)


def _span_set(rows, p: int, size: int) -> set[tuple[int, ...]]:
    out = set()
    for coeffs in itertools.product(range(p), repeat=len(rows)):
        v = [0] * size
        for c, r in zip(coeffs, rows):
            if c:
                for k, x in enumerate(r):
                    v[k] = (v[k] + c * x) % p
        out.add(tuple(v))
    return out


def brute_force_socle_dims(ideal) -> list[int]:
    """Socle dimensions of A/Q by exhaustive enumeration of every A_d vector.

    The number of f in A_d with x_i f in Q_{d+1} for all i is
    p^(dim Q_d + dim socle_d), which is what is counted here.
    """
    p, n, top = ideal.field.p, ideal.n, ideal.top
    dims = []
    spans = []
    for d in range(top + 2):
        size = basis_size(n, d)
        if d > top:
            spans.append(None)
        else:
            rows = [[x.value for x in r] for r in ideal.piece(d).basis]
            spans.append(_span_set(rows, p, size))
    for d in range(top + 1):
        mons = _monomials(n, d)
        nxt = {m: i for i, m in enumerate(_monomials(n, d + 1))}
        shift = [[nxt[tuple(a + (1 if j == i else 0) for j, a in enumerate(m))] for m in mons]
                 for i in range(n)]
        count = 0
        for f in itertools.product(range(p), repeat=len(mons)):
            ok = True
            if d < top:
                for i in range(n):
                    g = [0] * len(nxt)
                    for k, c in enumerate(f):
                        if c:
                            g[shift[i][k]] = c
                    if tuple(g) not in spans[d + 1]:
                        ok = False
                        break
            count += ok
        exp = 0
        while count > 1:
            assert count % p == 0
            count //= p
            exp += 1
        dims.append(exp - len(ideal.piece(d).basis))
    return dims

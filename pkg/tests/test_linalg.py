from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gorinv import linalg
from gorinv.errors import DimensionError
from gorinv.field import FieldSpec

Q = FieldSpec()
F5 = FieldSpec(5)


def rows(field, m):
    return [[field(x) for x in r] for r in m]


def test_rref_examples():
    assert linalg.rref(rows(Q, [[1, 1], [1, 1]]), Q, 2).basis == (tuple(rows(Q, [[1, 1]])[0]),)
    assert linalg.rref(rows(Q, [[2, 0], [0, 3]]), Q, 2) == linalg.full_subspace(Q, 2)
    assert linalg.rref(rows(F5, [[1, 2], [2, 4], [1, 1]]), F5, 2).dim == 2


def test_kernel_examples():
    assert linalg.kernel(rows(Q, [[1, 1, 0]]), Q, 3).dim == 2
    assert linalg.kernel(linalg.identity(Q, 3), Q, 3).dim == 0


def test_intersection_examples():
    e = linalg.identity(Q, 3)
    U = linalg.rref([e[0], e[1]], Q, 3)
    V = linalg.rref([e[1], e[2]], Q, 3)
    assert linalg.intersect(U, V) == linalg.rref([e[1]], Q, 3)
    assert linalg.intersect(U, U) == U
    with pytest.raises(DimensionError):
        linalg.intersect(U, linalg.full_subspace(Q, 2))


def test_membership_and_complement():
    U = linalg.rref(rows(Q, [[1, 1]]), Q, 2)
    assert not linalg.contains(U, rows(Q, [[1, 0]])[0])
    assert linalg.contains(U, rows(Q, [[3, 3]])[0])
    assert linalg.zero_subspace(Q, 4).dim == 0
    # span{Y^2} inside (X^2, XY, Y^2): complement is X^2, XY
    assert linalg.complement_coords(linalg.rref(rows(Q, [[0, 0, 1]]), Q, 3)) == (0, 1)
    with pytest.raises(DimensionError):
        linalg.contains(U, rows(Q, [[1, 0, 0]])[0])


def test_rref_is_canonical():
    S = linalg.rref(rows(Q, [[0, 2, 4], [3, 0, 1], [3, 2, 5]]), Q, 3)
    assert S.pivots == (0, 1)
    for r, p in zip(S.basis, S.pivots):
        assert r[p] == 1
        assert all(other[p] == 0 for other in S.basis if other is not r)


def test_det_and_inverse():
    A = rows(Q, [[2, 1], [7, 4]])
    assert linalg.det(A, Q) == 1
    assert linalg.matmul(A, linalg.inverse(A, Q), Q) == linalg.identity(Q, 2)
    assert linalg.inverse(rows(Q, [[1, 2], [2, 4]]), Q) is None


def _random_matrix(rng, field, r, c):
    hi = 3 if field.is_rational else field.p - 1
    return [[field(rng.randint(-hi, hi)) if rng.random() < 0.7 else field.zero for _ in range(c)]
            for _ in range(r)]


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([Q, FieldSpec(2), F5, FieldSpec(7)]),
       st.integers(0, 6), st.integers(1, 7))
def test_rank_nullity_and_idempotence(seed, field, r, c):
    rng = random.Random(seed)
    M = _random_matrix(rng, field, r, c)
    S = linalg.rref(M, field, c)
    K = linalg.kernel(M, field, c)
    assert S.dim + K.dim == c
    assert linalg.rref([list(b) for b in S.basis], field, c) == S
    scale = rng.choice([x for x in (field(2), field(3), field(-1)) if x])
    assert linalg.rref([[scale * x for x in row] for row in M], field, c) == S
    for v in K.basis:
        assert all(not x for x in linalg.matvec(M, list(v), field)) if M else True
    for row in M:
        assert linalg.contains(S, row)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32), st.integers(0, 5), st.integers(1, 6))
def test_rank_and_kernel_against_sympy(seed, r, c):
    rng = random.Random(seed)
    M = _random_matrix(rng, Q, r, c)
    if not M:
        return
    SM = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in M])
    assert linalg.rank(M, Q, c) == SM.rank()
    expected = SM.rref()[0]
    S = linalg.rref(M, Q, c)
    for i, row in enumerate(S.basis):
        assert [Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in expected.row(i)] \
            == list(row)
    assert linalg.kernel(M, Q, c).dim == len(SM.nullspace())
    if r == c and r:
        assert linalg.det(M, Q) == Fraction(str(SM.det()))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([Q, FieldSpec(3), F5]), st.integers(1, 6))
def test_inclusion_exclusion(seed, field, c):
    rng = random.Random(seed)
    U = linalg.rref(_random_matrix(rng, field, rng.randint(0, c), c), field, c)
    V = linalg.rref(_random_matrix(rng, field, rng.randint(0, c), c), field, c)
    W = linalg.intersect(U, V)
    assert U.dim + V.dim == linalg.span_sum(U, V).dim + W.dim
    assert linalg.is_subspace(W, U) and linalg.is_subspace(W, V)
    assert linalg.intersect(V, U) == W
    comp = linalg.complement_coords(U)
    assert len(comp) + U.dim == c
    assert set(comp).isdisjoint(U.pivots)

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from gorinv import linalg
from gorinv.errors import IdealError
from gorinv.field import FieldSpec
from gorinv.gradedalg import (
    InvariantQuotient,
    gorenstein_verdict,
    gorenstein_verdict_invariant,
    invariant_quotient,
    invariant_socle,
    is_symmetric,
    quotient,
    socle,
)
from gorinv.harness import ZOO, group_and_action
from gorinv.invsys import GradedIdeal, build_inverse_system
from gorinv.poly import Functional, HPoly, basis_size

from _support import Q, random_poly

ALPHA = {(3, 0): 1, (2, 1): 1}
PHI35 = {(3, 0): 1}


def setup(values):
    _, act = group_and_action(Q, ZOO["neg-identity"])
    R = quotient(build_inverse_system(Functional.from_values(Q, 2, values)))
    return R, act


def P(terms):
    return HPoly.from_terms(Q, 2, terms)


def test_hilbert_functions():
    assert setup(ALPHA)[0].hilbert == (1, 2, 2, 1)
    assert setup(PHI35)[0].hilbert == (1, 1, 1, 1)


def test_reduction():
    R, _ = setup(ALPHA)
    x3 = R.reduce(P({(3, 0): 1}))
    assert any(x3)
    assert x3 == R.reduce(P({(2, 1): 1}))
    assert not any(R.reduce(P({(0, 2): 1})))
    assert R.reduce(P({(4, 0): 1, (1, 3): 2})) == []
    for d in range(R.top + 1):
        for k in range(R.hilbert[d]):
            assert R.reduce_coords(d, R.lift(d, R.unit(d, k))) == R.unit(d, k)


def test_socles():
    R35, _ = setup(PHI35)
    S = socle(R35)
    assert [s.dim for s in S] == [0, 0, 0, 1]
    assert R35.lift(3, list(S[3].basis[0])) == list(P({(3, 0): 1}).coeffs)
    R34, _ = setup(ALPHA)
    assert [s.dim for s in socle(R34)] == [0, 0, 0, 1]


def test_verdicts():
    for values in (ALPHA, PHI35):
        v = gorenstein_verdict(setup(values)[0])
        assert (v.is_gorenstein, v.socle_degree, v.a_invariant) == (True, 3, 3)
    assert set(gorenstein_verdict(setup(ALPHA)[0]).to_json()) >= {
        "hilbert", "gorenstein", "socle_degree", "a_invariant"}


def test_invariant_quotients():
    R, act = setup(ALPHA)
    B = invariant_quotient(R, act)
    assert B.dims == (1, 0, 2, 0)
    v = gorenstein_verdict_invariant(B)
    assert not v.is_gorenstein and v.socle_dims == (0, 0, 2, 0)
    assert B.invariant_ideal_piece(2) == linalg.rref([list(P({(0, 2): 1}).coeffs)], Q, 3)
    R, act = setup(PHI35)
    B = invariant_quotient(R, act)
    assert B.dims == (1, 0, 1, 0)
    v = gorenstein_verdict_invariant(B)
    assert v.is_gorenstein and v.a_invariant == 2 and v.socle_degree == 2
    assert [s.dim for s in invariant_socle(B)] == [0, 0, 1, 0]


def test_b_dims_formula():
    for values in (ALPHA, PHI35):
        R, act = setup(values)
        B = InvariantQuotient(R, act)
        for d in range(R.top + 1):
            from gorinv.action import fixed_subspace
            assert B.dims[d] == fixed_subspace(act, d).dim - B.invariant_ideal_piece(d).dim


def test_rejections():
    full = GradedIdeal(Q, 2, 1, (linalg.full_subspace(Q, 1), linalg.full_subspace(Q, 2)))
    with pytest.raises(IdealError):
        quotient(full)
    _, act3 = group_and_action(Q, ZOO["cyclic3"])
    R, _ = setup(PHI35)
    with pytest.raises(IdealError):
        InvariantQuotient(R, act3)
    _, act5 = group_and_action(FieldSpec(5), ZOO["cyclic3"])
    with pytest.raises(IdealError):
        InvariantQuotient(R, act5)


def test_is_symmetric():
    assert is_symmetric([1, 2, 2, 1])
    assert is_symmetric([1, 0, 1, 0])
    assert not is_symmetric([1, 2, 1, 1])


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([Q, FieldSpec(2), FieldSpec(3), FieldSpec(7)]),
       st.integers(1, 3), st.integers(1, 4))
def test_inverse_system_quotients_are_gorenstein(seed, field, n, m):
    rng = random.Random(seed)
    f = random_poly(rng, field, n, m)
    if f.is_zero():
        return
    R = quotient(build_inverse_system(Functional(field, n, m, f.coeffs)))
    v = gorenstein_verdict(R)
    assert v.is_gorenstein and v.socle_degree == m and v.a_invariant == m
    assert is_symmetric(R.hilbert)
    for d in range(m + 1):
        assert R.hilbert[d] + R.ideal.piece(d).dim == basis_size(n, d)

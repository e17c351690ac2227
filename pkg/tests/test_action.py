from __future__ import annotations

import random
import threading
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gorinv import linalg
from gorinv.action import (
    GAction,
    apply,
    check_equivariant,
    fixed_subspace,
    lift_functional,
    reynolds,
    semi_invariant_subspace,
)
from gorinv.errors import FunctionalError, GroupError
from gorinv.field import FieldSpec
from gorinv.groups import Character, GMatrix, close, enumerate_characters
from gorinv.harness import ZOO, group_and_action, zoo_group
from gorinv.poly import Functional, HPoly, monomial_basis

from _support import GROUP_POOL, Q, pool_action, random_poly

SX, SY = sympy.symbols("X Y")


def P(terms, n=2, field=Q):
    return HPoly.from_terms(field, n, terms)


def _to_sympy(f):
    xs = sympy.symbols("X0:%d" % f.n)
    return sympy.expand(sum(sympy.Rational(a.numerator, a.denominator) * sympy.prod(
        [x**e for x, e in zip(xs, m)]) for m, a in f.terms().items())), xs


def _orbit_average_oracle(G, f):
    """Average of the substitutions X_j -> sum_i g[i][j] X_i, done symbolically."""
    expr, xs = _to_sympy(f)
    total = 0
    for g in G.elements:
        sub = {xs[j]: sum(sympy.Rational(g.entries[i][j].numerator, g.entries[i][j].denominator) * xs[i]
                          for i in range(G.n)) for j in range(G.n)}
        total += expr.subs(sub, simultaneous=True)
    return sympy.expand(total / G.order)


def test_apply_examples():
    G, act = group_and_action(Q, ZOO["neg-identity"])
    sigma = G.elements[1]
    assert apply(act, sigma, P({(1, 0): 1})) == P({(1, 0): -1})
    assert apply(act, sigma, P({(2, 1): 1})) == P({(2, 1): -1})
    stranger = GMatrix.make(Q, [[0, 1], [1, 0]])
    with pytest.raises(GroupError):
        apply(act, stranger, P({(1, 0): 1}))


def test_reynolds_examples():
    _, act = group_and_action(Q, ZOO["neg-identity"])
    assert reynolds(act, P({(1, 0): 1})).is_zero()
    assert reynolds(act, P({(2, 0): 1})) == P({(2, 0): 1})
    _, act3 = group_and_action(Q, ZOO["cyclic3"])
    # X -> Y -> -X-Y under the column convention
    third = Fraction(1, 3)
    expected = (P({(2, 0): 1}) + P({(0, 2): 1}) + P({(2, 0): 1, (1, 1): 2, (0, 2): 1})).scale(third)
    assert reynolds(act3, P({(2, 0): 1})) == expected
    # the transposed generator acts as X -> -Y, giving the average over X^2, Y^2, (X-Y)^2
    _, actT = group_and_action(Q, [[[0, 1], [-1, -1]]])
    expectedT = (P({(2, 0): 1}) + P({(0, 2): 1}) + P({(2, 0): 1, (1, 1): -2, (0, 2): 1})).scale(third)
    assert reynolds(actT, P({(2, 0): 1})) == expectedT


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from(["neg-identity", "cyclic3", "s3-perm", "a3-perm"]))
def test_reynolds_matches_symbolic_oracle(seed, name):
    rng = random.Random(seed)
    G, act = group_and_action(Q, ZOO[name])
    f = random_poly(rng, Q, G.n, rng.randint(0, 3))
    got, _ = _to_sympy(reynolds(act, f))
    assert sympy.expand(got - _orbit_average_oracle(G, f)) == 0


def test_fixed_subspace_examples():
    _, act = group_and_action(Q, ZOO["neg-identity"])
    assert fixed_subspace(act, 1).dim == 0
    assert fixed_subspace(act, 2).is_full
    for name, field in GROUP_POOL:
        assert fixed_subspace(pool_action(name, field)[1], 0).is_full


def test_action_is_multiplicative():
    for name, field in GROUP_POOL:
        G, act = pool_action(name, field)
        for d in range(5 if G.n <= 3 else 4):
            for i in range(G.order):
                for j in range(G.order):
                    prod = linalg.matmul(act.matrix(i, d), act.matrix(j, d), field)
                    assert act.matrix(G.cayley[i][j], d) == prod


def test_fixed_dims_invariant_under_conjugation():
    rng = random.Random(5)
    for name, field in GROUP_POOL:
        G, act = pool_action(name, field)
        n = G.n
        while True:
            Pm = [[field(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
            Pinv = linalg.inverse(Pm, field)
            if Pinv is not None:
                break
        gens = [GMatrix.make(field, linalg.matmul(linalg.matmul(Pinv, [list(r) for r in g.entries], field),
                                                  Pm, field)) for g in G.generators]
        act2 = GAction(close(gens))
        for d in range(4 if n <= 3 else 3):
            assert fixed_subspace(act, d).dim == fixed_subspace(act2, d).dim


def test_equivariance_examples():
    G, act = group_and_action(Q, ZOO["neg-identity"])
    alpha = Functional.from_values(Q, 2, {(3, 0): 1, (2, 1): 1})
    eta = Character.from_generator_values(G, [-1])
    assert check_equivariant(act, alpha, eta)
    assert not check_equivariant(act, alpha)
    assert check_equivariant(act, Functional(Q, 2, 3, alpha.coeffs, eta))


def test_lift_functional_errors():
    _, act = group_and_action(Q, ZOO["neg-identity"])
    with pytest.raises(FunctionalError, match="vanish"):
        lift_functional(act, 3, [1])
    with pytest.raises(FunctionalError):
        lift_functional(act, 2, [0, 0, 0])
    with pytest.raises(FunctionalError):
        lift_functional(act, 2, [1])


def test_lifted_functionals_are_equivariant():
    rng = random.Random(11)
    for name, field in GROUP_POOL:
        G, act = pool_action(name, field)
        for chi in enumerate_characters(G):
            for m in range(1, 4):
                S = semi_invariant_subspace(act, m, chi)
                if S.dim == 0:
                    continue
                eta = [field(rng.randint(1, 3)) for _ in range(S.dim)]
                phi = lift_functional(act, m, eta, None if chi.is_trivial() else chi)
                assert check_equivariant(act, phi, chi)
                # eta is recovered on the echelon basis
                assert [phi.evaluate(list(b)) for b in S.basis] == eta


def test_action_cache_is_thread_safe():
    G = zoo_group("cyclic5")
    act = GAction(G)
    results = []

    def work():
        results.append([act.matrix(i, 3) for i in range(G.order)])

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == results[0] for r in results)
    fresh = GAction(G)
    assert results[0] == [fresh.matrix(i, 3) for i in range(G.order)]


def test_monomial_images_preserve_degree():
    _, act = group_and_action(Q, ZOO["cyclic3"])
    for d in range(5):
        for row in act.images(1, d):
            assert len(row) == len(monomial_basis(2, d))


def test_rejects_wrong_ring():
    _, act = group_and_action(FieldSpec(5), ZOO["cyclic3"])
    with pytest.raises(Exception):
        reynolds(act, P({(2, 0): 1}))

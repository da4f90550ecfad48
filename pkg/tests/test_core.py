"""Core arithmetic and identity checkers."""

from fractions import Fraction as Q

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from novikov.core import (Algebra, DimensionMismatch, Operator, ad, associator,
                          basis_vector, check_compatibility,
                          check_left_symmetric, check_lie, check_novikov,
                          check_operator_identity, commutator_sparse,
                          left_mult, multiply, multiply_sparse, right_mult,
                          sparse_to_vector, vector_to_sparse)
from novikov.constructions import (abelian, counterexample_13, free_3step_lie,
                                   novikov_f910, novikov_free_3step,
                                   standard_filiform)

# dim 3, b1.b1 = b2, b1.b2 = b3: handy non-symmetric test algebra
TOY = Algebra(3, {(0, 0, 1): Q(1), (0, 1, 2): Q(1)})


def test_algebra_drops_zero_constants():
    a = Algebra(2, {(0, 1, 0): Q(0), (0, 0, 1): Q(3)})
    assert a.constants == {(0, 0, 1): Q(3)}
    assert a.basis_product(0, 1) == {}
    assert a.basis_product(0, 0) == {1: Q(3)}


def test_algebra_rejects_bad_input():
    with pytest.raises(ValueError):
        Algebra(0, {})
    with pytest.raises(ValueError):
        Algebra(2, {(0, 2, 0): Q(1)})
    with pytest.raises(ValueError):
        Algebra(2, {}, labels=("a",))


def test_algebra_equality_is_constants_equality():
    a = Algebra(2, {(0, 1, 0): Q(1)})
    b = Algebra(2, {(0, 1, 0): Q(2, 2)}, labels=("u", "v"))
    assert a == b and hash(a) == hash(b)
    assert a != Algebra(2, {(0, 1, 0): Q(2)})


def test_multiply_basis_and_bilinearity():
    # (b1 + 2 b2) . b1 in TOY: b1.b1 = b2, b2.b1 = 0
    out = multiply(TOY, (Q(1), Q(2), Q(0)), basis_vector(3, 0))
    assert out == (Q(0), Q(1), Q(0))
    # sparse and dense agree
    x = {0: Q(1, 3), 1: Q(-2)}
    y = {0: Q(5), 2: Q(7)}
    dense = multiply(TOY, sparse_to_vector(x, 3), sparse_to_vector(y, 3))
    assert vector_to_sparse(dense) == multiply_sparse(TOY, x, y)


def test_multiply_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        multiply(TOY, (Q(1), Q(0)), (Q(0), Q(1), Q(0)))


def test_commutator_and_associator():
    assert commutator_sparse(TOY, {0: Q(1)}, {1: Q(1)}) == {2: Q(1)}
    # (b1, b1, b1) = b1.(b1.b1) - (b1.b1).b1 = b1.b2 - b2.b1 = b3
    e1 = basis_vector(3, 0)
    assert associator(TOY, e1, e1, e1) == (Q(0), Q(0), Q(1))


def test_operators_ad_equals_left_minus_right():
    nv = novikov_free_3step(3)
    for i in range(nv.dim):
        lhs = ad(nv.lie, i)
        rhs = left_mult(nv.product, i) + right_mult(nv.product, i).scaled(Q(-1))
        assert lhs.cols == rhs.cols


def test_operator_matmul_entry():
    op = left_mult(TOY, 0)
    assert op.entry(1, 0) == Q(1)  # b1.b1 has b2-coordinate 1
    sq = op @ op
    assert sq.entry(2, 0) == Q(1)  # b1.(b1.b1) = b3
    assert op.commutator(op).is_zero()


def test_check_lie_passes_on_shipped_brackets():
    for named in (counterexample_13(), free_3step_lie(3), abelian(4)):
        assert check_lie(named.lie).passed


def test_check_lie_catches_broken_antisymmetry():
    bad = Algebra(2, {(0, 1, 0): Q(1)})  # [b1,b2]=b1 but [b2,b1]=0
    rep = check_lie(bad)
    assert not rep.passed
    assert rep.witness == (0, 1)
    assert "antisym" in rep.detail


def test_check_lie_catches_broken_jacobi():
    # [b1,b2]=b3, [b1,b3]=b1: Jacobi fails on (b1,b2,b3)
    c = {(0, 1, 2): Q(1), (1, 0, 2): Q(-1), (0, 2, 0): Q(1), (2, 0, 0): Q(-1)}
    rep = check_lie(Algebra(3, c))
    assert not rep.passed and rep.witness == (0, 1, 2)


def test_left_symmetric_and_novikov_checkers_on_valid_structure():
    nv = novikov_free_3step(3)
    assert check_left_symmetric(nv.product).passed
    assert check_novikov(nv.product).passed
    assert check_compatibility(nv.product, nv.lie).passed
    assert check_operator_identity(nv.product, nv.lie).passed


def test_checkers_catch_single_coefficient_mutation():
    nv = novikov_free_3step(2)
    good = dict(nv.product.constants)
    (i, j, k), c = next(iter(sorted(good.items())))
    good[(i, j, k)] = c + 1
    mutated = Algebra(nv.product.dim, good, nv.product.labels)
    reports = [check_left_symmetric(mutated),
               check_novikov(mutated),
               check_compatibility(mutated, nv.lie),
               check_operator_identity(mutated, nv.lie)]
    failing = [r for r in reports if not r.passed]
    assert failing, "mutation went unnoticed"
    assert all(r.witness is not None for r in failing)


def test_compatibility_failure_witness():
    lie = counterexample_13().lie
    rep = check_compatibility(abelian(13).lie, lie)  # zero product, nonzero bracket
    assert not rep.passed and rep.witness == (0, 1)


def test_structure_checks_and_validity():
    nv = novikov_f910(4).structure
    names = [r.name for r in nv.checks()]
    assert names == ["lie", "left-symmetric", "novikov",
                     "compatibility", "operator-identity"]
    assert nv.is_valid()


def test_standard_filiform_is_valid():
    assert standard_filiform(6).structure.is_valid()


def test_report_describe_mentions_labels():
    bad = Algebra(2, {(0, 1, 0): Q(1)}, labels=("p", "q"))
    rep = check_lie(bad)
    assert "p" in rep.describe(bad) and "q" in rep.describe(bad)


# --- property tests ---------------------------------------------------------

small_q = st.builds(Q, st.integers(-3, 3), st.integers(1, 3))


@st.composite
def random_algebra(draw, dim=3):
    n = draw(st.integers(0, 6))
    consts = {}
    for _ in range(n):
        i = draw(st.integers(0, dim - 1))
        j = draw(st.integers(0, dim - 1))
        k = draw(st.integers(0, dim - 1))
        consts[(i, j, k)] = draw(small_q)
    return Algebra(dim, consts)


@settings(max_examples=60, deadline=None)
@given(random_algebra())
def test_novikov_check_matches_commuting_right_mults(a):
    # (x.y).z = (x.z).y on basis vectors is literally [R_j, R_k] = 0.
    commute = all(right_mult(a, j).commutator(right_mult(a, k)).is_zero()
                  for j in range(a.dim) for k in range(j + 1, a.dim))
    eq2 = all(
        multiply_sparse(a, a.basis_product(i, j), {k: Q(1)})
        == multiply_sparse(a, a.basis_product(i, k), {j: Q(1)})
        for i in range(a.dim) for j in range(a.dim) for k in range(a.dim))
    assert check_novikov(a).passed == (commute and eq2)
    assert commute == eq2


@settings(max_examples=60, deadline=None)
@given(random_algebra(), small_q, small_q)
def test_multiply_is_bilinear(a, s, t):
    x = (Q(1), Q(-2), Q(3))
    y = (Q(0), Q(1, 2), Q(-1))
    z = (Q(2), Q(0), Q(1))
    left = multiply(a, tuple(s * xi + t * yi for xi, yi in zip(x, y)), z)
    right = tuple(s * u + t * v for u, v in
                  zip(multiply(a, x, z), multiply(a, y, z)))
    assert left == right


@settings(max_examples=40, deadline=None)
@given(random_algebra())
def test_left_symmetry_check_matches_associator_symmetry(a):
    brute = all(
        associator(a, basis_vector(3, i), basis_vector(3, j), basis_vector(3, k))
        == associator(a, basis_vector(3, j), basis_vector(3, i), basis_vector(3, k))
        for i in range(3) for j in range(3) for k in range(3))
    assert check_left_symmetric(a).passed == brute

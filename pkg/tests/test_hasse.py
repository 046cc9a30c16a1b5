"""Hasse derivatives, evaluation vectors, composition coefficients and Hermite interpolation."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kakeya_zn.algebra.cyclotomic import CycloNumber, CycloPoly, interpolation_modulus
from kakeya_zn.algebra.hasse import (
    MultiPoly,
    composition_coeffs,
    eval_vector,
    hermite_coeffs,
    monomial_exponents,
)
from kakeya_zn.core.errors import InvalidInputError

P, K = 3, 1


def zeta(e: int, p: int = P, k: int = K) -> CycloNumber:
    return CycloNumber.zeta_pow(p, k, e)


small_ints = st.integers(-3, 3)


@st.composite
def cyclo_points(draw: st.DrawFn) -> CycloNumber:
    return CycloNumber(P, K, [draw(small_ints), draw(small_ints)])


@st.composite
def univariate(draw: st.DrawFn, max_degree: int = 8) -> CycloPoly:
    degree = draw(st.integers(0, max_degree))
    return CycloPoly(P, K, [draw(small_ints) for _ in range(degree + 1)])


@st.composite
def multivariate(draw: st.DrawFn) -> MultiPoly:
    n = draw(st.integers(1, 2))
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, 4)] * n).filter(lambda v: sum(v) <= 4), small_ints, max_size=6
        )
    )
    return MultiPoly(n, terms)


# Hasse derivatives


def test_hasse_derivative_examples() -> None:
    assert MultiPoly.monomial((3,)).hasse_derivative((2,)) == MultiPoly.monomial((1,), 3)
    assert MultiPoly.monomial((2, 1)).hasse_derivative((1, 1)) == MultiPoly.monomial((1, 0), 2)
    assert MultiPoly.monomial((2,)).hasse_derivative((3,)).is_zero()


def test_multipoly_rejects_wrong_arity() -> None:
    with pytest.raises(InvalidInputError, match="nonnegative integers"):
        MultiPoly(2, {(1,): 1})


def test_zero_coefficients_are_not_stored() -> None:
    f = MultiPoly(1, {(1,): 1}) + MultiPoly(1, {(1,): -1})

    assert f.is_zero()
    assert f.terms == {}


@pytest.mark.slow
@settings(max_examples=1000)
@given(f=univariate(max_degree=5), y=cyclo_points(), w=st.integers(1, 3), g=univariate(max_degree=3))
def test_vanishing_derivatives_iff_divisible(f: CycloPoly, y: CycloNumber, w: int, g: CycloPoly) -> None:
    factor = CycloPoly(P, K, [1])
    for _ in range(w):
        factor = factor * CycloPoly(P, K, [-y, 1])
    multiple = f * factor
    derivatives_vanish = all(multiple.hasse_derivative(j).evaluate(y).is_zero() for j in range(w))
    assert derivatives_vanish

    # g is divisible by (x − y)^w exactly when its remainder by factor is zero
    remainder = CycloPoly(P, K, g.coeffs, factor)
    assert all(g.hasse_derivative(j).evaluate(y).is_zero() for j in range(w)) == remainder.is_zero()


# Evaluation vectors


def test_eval_vector_examples() -> None:
    y = zeta(1)

    assert eval_vector(2, 1, (1,), [y]) == (0, 1)
    assert eval_vector(2, 2, (0, 0), [y, CycloNumber.one(P, K)]) == (1, 1, y, y)
    assert monomial_exponents(2, 2) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_eval_vector_at_order_zero_is_plain_evaluation() -> None:
    y = [zeta(1), zeta(2)]

    row = eval_vector(3, 2, (0, 0), y)

    assert row == tuple(MultiPoly.monomial(v).evaluate(y) for v in monomial_exponents(3, 2))


# Composition


def test_composition_examples() -> None:
    gamma = zeta(1)

    first = composition_coeffs((2,), 1, gamma)
    second = composition_coeffs((2,), 2, gamma)

    assert first[(1,)] == gamma * 2
    assert first[(0,)].is_zero()
    assert second[(1,)] == 1
    assert second[(2,)] == gamma * gamma * 4
    assert composition_coeffs((2, 3), 0, gamma) == {(0, 0): CycloNumber.one(P, K)}


@pytest.mark.slow
@settings(max_examples=1000)
@given(
    f=multivariate(),
    gamma_exponent=st.integers(0, 2),
    w=st.integers(0, 3),
    data=st.data(),
)
def test_composition_matches_direct_differentiation(
    f: MultiPoly, gamma_exponent: int, w: int, data: st.DataObject
) -> None:
    exponents = tuple(data.draw(st.integers(0, 4)) for _ in range(f.n))
    gamma = zeta(gamma_exponent) + 1
    h = f.along_curve(exponents, P, K)
    point = [gamma**u for u in exponents]

    direct = h.hasse_derivative(w).evaluate(gamma)
    combined = CycloNumber.zero(P, K)
    for alpha, b in composition_coeffs(exponents, w, gamma).items():
        combined = combined + b * f.hasse_derivative(alpha).evaluate(point)

    assert direct == combined


# Hermite interpolation


def test_hermite_two_nodes_over_q() -> None:
    t = hermite_coeffs([(CycloNumber.one(2, 1), 1), (CycloNumber.from_scalar(2, 1, -1), 1)])

    half = CycloNumber.from_scalar(2, 1, 1) / 2
    assert t[(0, 0)].coeffs == (half, half)
    assert t[(1, 0)].coeffs == (half, -half)


def test_hermite_single_node_gives_taylor_coefficients() -> None:
    t = hermite_coeffs([(CycloNumber.zero(3, 1), 3)])

    for j in range(3):
        assert t[(0, j)] == CycloPoly.monomial(3, 1, j)


def test_hermite_simple_node_is_one() -> None:
    t = hermite_coeffs([(zeta(2), 1)])

    assert t[(0, 0)] == CycloPoly(P, K, [1])


def test_hermite_rejects_repeated_nodes() -> None:
    with pytest.raises(InvalidInputError, match="pairwise distinct"):
        hermite_coeffs([(zeta(1), 1), (zeta(1), 2)])


@pytest.mark.slow
@settings(max_examples=1000)
@given(
    multiplicities=st.lists(st.integers(0, 3), min_size=3, max_size=3).filter(any),
    f=univariate(max_degree=10),
)
def test_hermite_roundtrip(multiplicities: list[int], f: CycloPoly) -> None:
    nodes = [(zeta(lam), m) for lam, m in enumerate(multiplicities) if m]
    h = interpolation_modulus(nodes)
    t = hermite_coeffs(nodes)

    total = CycloPoly(P, K, [], h)
    for (i, j), coeff in t.items():
        total = total + coeff * f.hasse_derivative(j).evaluate(nodes[i][0])

    assert total == CycloPoly(P, K, f.coeffs, h)
    assert sum(m for _, m in nodes) == h.degree

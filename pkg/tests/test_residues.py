"""Exact residue arithmetic: factorization, CRT, digits, valuations and binomials."""

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kakeya_zn.algebra.residues import (
    binom_exact,
    binom_real,
    ceil_fraction,
    ceil_log,
    crt_combine,
    crt_split,
    euler_phi,
    factorize,
    from_digits,
    is_unit,
    lucas_binom,
    p_digits,
    p_valuation,
)
from kakeya_zn.core.errors import InvalidInputError, ModulusMismatchError
from kakeya_zn.domain.models import Factorization, ZmodElem


@pytest.mark.parametrize(
    "N,factors",
    [(12, ((2, 2), (3, 1))), (81, ((3, 4),)), (2, ((2, 1),)), (30, ((2, 1), (3, 1), (5, 1)))],
)
def test_factorize_orders_primes(N: int, factors: tuple[tuple[int, int], ...]) -> None:
    f = factorize(N)

    assert f.factors == factors
    assert math.prod(f.moduli) == N


def test_factorize_rejects_one() -> None:
    with pytest.raises(InvalidInputError, match="N >= 2"):
        factorize(1)


def test_factorization_model_rejects_composite_bases() -> None:
    with pytest.raises(ValueError, match="prime"):
        Factorization(N=4, factors=((4, 1),))


def test_factorization_flags() -> None:
    assert factorize(30).is_squarefree
    assert not factorize(12).is_squarefree
    assert factorize(81).is_prime_power
    assert factorize(12).r == 2


@pytest.mark.parametrize("value,modulus,expected", [(3, 4, True), (2, 4, False), (0, 5, False), (1, 2, True)])
def test_is_unit(value: int, modulus: int, expected: bool) -> None:
    assert is_unit(ZmodElem(value=value, modulus=modulus)) is expected


def test_crt_split_example() -> None:
    parts = crt_split(ZmodElem(value=7, modulus=12), factorize(12))

    assert parts == [ZmodElem(value=3, modulus=4), ZmodElem(value=1, modulus=3)]


@pytest.mark.parametrize("N", [6, 12, 30, 36, 60, 210, 1001])
def test_crt_roundtrip_is_exhaustive_identity(N: int) -> None:
    f = factorize(N)
    for value in range(N):
        x = ZmodElem(value=value, modulus=N)
        parts = crt_split(x, f)
        assert crt_combine(parts, f) == x
        assert is_unit(x) == all(is_unit(part) for part in parts)


def test_crt_rejects_mismatched_moduli() -> None:
    with pytest.raises(ModulusMismatchError):
        crt_split(ZmodElem(value=1, modulus=10), factorize(12))
    with pytest.raises(ModulusMismatchError):
        crt_combine([ZmodElem(value=1, modulus=3), ZmodElem(value=1, modulus=4)], factorize(12))


@pytest.mark.parametrize(
    "x,p,length,digits",
    [(11, 2, 4, [1, 1, 0, 1]), (0, 3, 3, [0, 0, 0]), (5, 3, 4, [2, 1, 0, 0])],
)
def test_p_digits(x: int, p: int, length: int, digits: list[int]) -> None:
    assert p_digits(x, p, length) == digits


def test_p_digits_rejects_overflow() -> None:
    with pytest.raises(InvalidInputError, match="does not fit"):
        p_digits(16, 2, 4)


@given(p=st.sampled_from([2, 3, 5, 7]), length=st.integers(1, 8), data=st.data())
def test_digits_then_horner_is_identity(p: int, length: int, data: st.DataObject) -> None:
    x = data.draw(st.integers(0, p**length - 1))

    assert from_digits(p_digits(x, p, length), p) == x


@pytest.mark.parametrize("x,p,expected", [(12, 2, 2), (5, 5, 1), (7, 3, 0), (81, 3, 4)])
def test_p_valuation(x: int, p: int, expected: int) -> None:
    assert p_valuation(x, p) == expected


def test_p_valuation_rejects_zero() -> None:
    with pytest.raises(InvalidInputError):
        p_valuation(0, 2)


@pytest.mark.parametrize("a,b,p,expected", [(5, 2, 3, 1), (10, 4, 3, 0), (17, 0, 5, 1)])
def test_lucas_binom_examples(a: int, b: int, p: int, expected: int) -> None:
    assert lucas_binom(a, b, p) == expected


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_lucas_matches_exact_binomials(p: int) -> None:
    for a in range(201):
        for b in range(201):
            assert lucas_binom(a, b, p) == binom_exact(a, b) % p


def test_binom_exact_outside_range_is_zero() -> None:
    assert binom_exact(4, 2) == 6
    assert binom_exact(3, 5) == 0
    assert binom_exact(3, -1) == 0


def test_binom_real_with_fractional_argument() -> None:
    value = binom_real(Fraction(9, 2) + 2, 2)

    assert value == Fraction(143, 8)
    assert ceil_fraction(value) == 18
    assert binom_real(Fraction(7, 3), 0) == 1


@given(a=st.integers(0, 60), n=st.integers(0, 10))
def test_binom_real_agrees_on_integers(a: int, n: int) -> None:
    assert binom_real(a, n) == binom_exact(a, n)


@pytest.mark.parametrize("n,p,expected", [(1, 2, 0), (2, 2, 1), (3, 2, 2), (4, 2, 2), (5, 2, 3), (3, 5, 1), (27, 3, 3)])
def test_ceil_log_is_exact(n: int, p: int, expected: int) -> None:
    assert ceil_log(n, p) == expected


def test_euler_phi() -> None:
    assert euler_phi(12) == 4
    assert euler_phi(81) == 54

"""Decoding monomials from Hasse evaluations on a line, checked exactly after ψ."""

import pytest
from pydantic import ValidationError

from kakeya_zn.algebra.cyclotomic import psi_poly
from kakeya_zn.algebra.fp_poly import FpQuotient, x_power_minus_one
from kakeya_zn.core.errors import InvalidInputError
from kakeya_zn.domain.models import Line, WeightFunction
from kakeya_zn.services.decoding import (
    decode_coeffs,
    decode_row,
    decode_sweep,
    decoded_value,
    trim_weights,
    uniform_weights,
    verify_decode,
)
from kakeya_zn.services.geometry import canonicalize
from kakeya_zn.services.incidence import build_M, lift_directions


def line_mod(N: int, base: tuple[int, ...], u: tuple[int, ...]) -> Line:
    return Line(base=base, direction=canonicalize(u, N))


BINARY_LINE = line_mod(2, (0,), (1,))


# Weights


def test_uniform_weights_front_load_the_remainder() -> None:
    line = line_mod(3, (0, 1), (1, 2))

    assert uniform_weights(line, 4).weights == (2, 1, 1)
    assert uniform_weights(line, 9).weights == (3, 3, 3)


def test_trim_weights_takes_from_the_largest_lambda_first() -> None:
    line = line_mod(3, (0,), (1,))

    trimmed = trim_weights(WeightFunction(line=line, weights=(3, 2, 1)), 4)

    assert trimmed.weights == (3, 1, 0)
    assert trim_weights(trimmed, 4) == trimmed


def test_trim_weights_rejects_short_totals() -> None:
    with pytest.raises(InvalidInputError, match="below the required 4"):
        trim_weights(uniform_weights(BINARY_LINE, 3), 4)


@pytest.mark.parametrize("weights,match", [((1,), "one weight"), ((3, -1), "nonnegative")])
def test_weight_function_validation(weights: tuple[int, ...], match: str) -> None:
    with pytest.raises(ValidationError, match=match):
        WeightFunction(line=BINARY_LINE, weights=weights)


# Closed forms


def test_cube_decodes_to_z() -> None:
    decoded = decode_coeffs(BINARY_LINE, (3,), uniform_weights(BINARY_LINE, 4), 2)
    modulus = x_power_minus_one(2, 4)

    assert psi_poly(decoded_value(decoded, (3,))).coeffs == FpQuotient.monomial(2, modulus, 1).coeffs
    assert psi_poly(decoded_value(decoded, (0,))).coeffs == FpQuotient.monomial(2, modulus, 0).coeffs


def test_single_node_weights_give_taylor_coefficients() -> None:
    weights = WeightFunction(line=BINARY_LINE, weights=(4, 0))

    decoded = decode_coeffs(BINARY_LINE, (1,), weights, 2)

    assert {lam for lam, _ in decoded.coeffs} == {0}
    assert verify_decode(BINARY_LINE, (1,), weights, 2).passed


@pytest.mark.parametrize("weights", [(2, 2), (4, 0), (1, 3), (0, 4), (3, 3)])
def test_decoded_values_do_not_depend_on_the_weights(weights: tuple[int, int]) -> None:
    report = verify_decode(BINARY_LINE, (3,), WeightFunction(line=BINARY_LINE, weights=weights), 2)

    assert report.passed
    assert report.exponents_checked == 4
    assert sum(report.weights) == 4


def test_verify_decode_limits_to_requested_exponents() -> None:
    report = verify_decode(BINARY_LINE, (3,), uniform_weights(BINARY_LINE, 4), 2, test_exponents=[(3,), (0,)])

    assert report.exponents_checked == 2
    assert report.mismatches == ()


# Input validation


@pytest.mark.parametrize(
    "lift,ell,match",
    [((2,), 2, "does not reduce"), ((4,), 2, "residues mod"), ((1, 1), 2, "dimensions differ"), ((1,), 0, "residues")],
)
def test_decode_rejects_bad_lifts(lift: tuple[int, ...], ell: int, match: str) -> None:
    with pytest.raises(InvalidInputError, match=match):
        decode_coeffs(BINARY_LINE, lift, uniform_weights(BINARY_LINE, 4), ell)


def test_decode_rejects_composite_moduli() -> None:
    line = line_mod(6, (0,), (1,))

    with pytest.raises(InvalidInputError, match="prime-power"):
        decode_coeffs(line, (1,), uniform_weights(line, 6), 1)


def test_decode_rejects_weights_of_another_line() -> None:
    other = line_mod(2, (1,), (1,))

    with pytest.raises(InvalidInputError, match="different line"):
        decode_coeffs(BINARY_LINE, (1,), uniform_weights(other, 2), 1)


# Decode rows reproduce M


@pytest.mark.parametrize(
    "line,ell",
    [
        (line_mod(2, (0,), (1,)), 2),
        (line_mod(2, (1, 0), (1, 1)), 1),
        (line_mod(3, (2,), (1,)), 1),
        (line_mod(4, (1,), (1,)), 2),
    ],
)
def test_decode_row_is_a_row_of_M(line: Line, ell: int) -> None:
    p = 2 if line.modulus % 2 == 0 else 3
    M = build_M(p, ell, line.n)
    for lift in lift_directions([line.direction], ell).lifted:
        row = decode_row(line, lift, uniform_weights(line, p**ell), ell)
        assert row.array.tolist() == M.matrix.take_rows([M.index(lift)]).array.tolist()


# Sweeps


@pytest.mark.parametrize("p,k,ell,n", [(2, 1, 1, 1), (2, 1, 2, 1), (3, 1, 1, 1), (2, 1, 1, 2), (2, 2, 2, 1)])
def test_decode_sweep(p: int, k: int, ell: int, n: int) -> None:
    reports = decode_sweep(p, k, ell, n, seed=1)

    assert reports
    assert all(report.passed for report in reports)
    assert {report.exponents_checked for report in reports} == {p ** (ell * n)}


@pytest.mark.slow
@pytest.mark.parametrize("p,k,ell,n", [(2, 2, 2, 2), (3, 1, 2, 1)])
def test_decode_sweep_larger_cases(p: int, k: int, ell: int, n: int) -> None:
    assert all(report.passed for report in decode_sweep(p, k, ell, n, seed=2))


def test_decode_sweep_counts_checks() -> None:
    reports = decode_sweep(2, 1, 2, 1, random_bases=1, seed=0)

    # one direction, two bases, two lifts
    assert len(reports) == 4
    assert len(decode_sweep(2, 1, 1, 2, all_directions=False, random_bases=0)) == 1

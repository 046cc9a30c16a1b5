"""Closed-form lower and upper bounds and the bound table."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kakeya_zn.algebra.residues import factorize
from kakeya_zn.core.errors import InvalidInputError
from kakeya_zn.services.bounds import (
    bound_table,
    certified_bound_N,
    construction_spec,
    display,
    lb_general,
    lb_m_eps,
    lb_pk,
    lb_squarefree,
    recommended_ell,
    ub_construction,
    ub_construction_N,
)
from kakeya_zn.services.construction import construct_kakeya_N, construct_kakeya_pk


@pytest.mark.parametrize("N,n,expected", [(6, 2, Fraction(9, 4)), (2, 2, Fraction(1)), (30, 1, Fraction(15, 4))])
def test_lb_squarefree(N: int, n: int, expected: Fraction) -> None:
    assert lb_squarefree(N, n) == expected


def test_lb_squarefree_rejects_square_factors() -> None:
    with pytest.raises(InvalidInputError, match="not square-free"):
        lb_squarefree(12, 2)


@pytest.mark.parametrize("p,k,n,expected", [(2, 2, 2, Fraction(1)), (3, 1, 2, Fraction(9, 4)), (5, 1, 1, Fraction(5))])
def test_lb_pk(p: int, k: int, n: int, expected: Fraction) -> None:
    assert lb_pk(p, k, n) == expected


def test_lb_m_eps_without_sharper_branch() -> None:
    bound = lb_m_eps(2, 2, 2, 4, 1)

    assert bound.general == Fraction(4, 9)
    assert bound.sharper is None
    assert bound.value == Fraction(4, 9)


def test_lb_m_eps_takes_the_larger_branch() -> None:
    bound = lb_m_eps(5, 1, 2, 5, 1)

    assert bound.general == Fraction(25, 16)
    assert bound.sharper == Fraction(625, 196)
    assert bound.value == Fraction(625, 196)


def test_lb_m_eps_vanishes_at_zero_epsilon() -> None:
    assert lb_m_eps(3, 2, 2, 9, 0).value == 0


@pytest.mark.parametrize(
    "m,epsilon,match",
    [(0, Fraction(1), "m must lie"), (10, Fraction(1), "m must lie"), (3, Fraction(-1, 2), "ε must lie")],
)
def test_lb_m_eps_rejects_out_of_range(m: int, epsilon: Fraction, match: str) -> None:
    with pytest.raises(InvalidInputError, match=match):
        lb_m_eps(3, 2, 2, m, epsilon)


@given(
    pk=st.sampled_from([(2, 1), (2, 3), (3, 1), (3, 2), (5, 1), (7, 2)]),
    n=st.integers(1, 4),
    data=st.data(),
)
def test_lb_m_eps_is_monotone(pk: tuple[int, int], n: int, data: st.DataObject) -> None:
    p, k = pk
    m1, m2 = sorted(data.draw(st.lists(st.integers(1, p**k), min_size=2, max_size=2)))
    e1, e2 = sorted(data.draw(st.lists(st.fractions(0, 1, max_denominator=50), min_size=2, max_size=2)))

    assert lb_m_eps(p, k, n, m1, e2).value <= lb_m_eps(p, k, n, m2, e2).value
    assert lb_m_eps(p, k, n, m2, e1).value <= lb_m_eps(p, k, n, m2, e2).value


@pytest.mark.parametrize("N,n,expected", [(12, 2, Fraction(1, 4)), (4, 2, Fraction(4, 9))])
def test_lb_general(N: int, n: int, expected: Fraction) -> None:
    bound = lb_general(N, n)

    assert bound.general == expected
    assert bound.sharper is None


def test_lb_general_sharpens_for_large_primes() -> None:
    bound = lb_general(35, 2)

    assert bound.sharper is not None
    assert bound.value == max(bound.general, bound.sharper)


def test_lb_general_accepts_a_factorization() -> None:
    assert lb_general(factorize(12), 2) == lb_general(12, 2)


def test_dimension_must_be_positive() -> None:
    with pytest.raises(InvalidInputError, match="dimension n"):
        lb_pk(2, 1, 0)


@pytest.mark.parametrize("p,k,n,expected", [(2, 1, 2, 2), (3, 1, 2, 2), (5, 1, 2, 2), (5, 1, 1, 1), (2, 3, 5, 6)])
def test_recommended_ell(p: int, k: int, n: int, expected: int) -> None:
    assert recommended_ell(p, k, n) == expected


def test_upper_bounds() -> None:
    assert ub_construction(3, 1, 2) == Fraction(59049, 16)
    assert ub_construction(2, 0, 1) == 4
    assert ub_construction_N([(2, 0), (3, 0)], 2) == ub_construction(2, 0, 2) * ub_construction(3, 0, 2)
    assert certified_bound_N([(3, 1)], 2) == 4374


@pytest.mark.parametrize("spec,n", [([(2, 1)], 2), ([(2, 0), (3, 0)], 2), ([(2, 1)], 3)])
def test_constructions_meet_their_upper_bounds(spec: list[tuple[int, int]], n: int) -> None:
    size = construct_kakeya_N(spec, n).points.size

    assert size <= certified_bound_N(spec, n)
    assert size <= ub_construction_N(spec, n)


def test_construction_spec() -> None:
    assert construction_spec(factorize(24)) == [(2, 1), (3, 0)]
    assert construction_spec(factorize(12)) is None


def test_display_rounds_for_humans() -> None:
    assert display(Fraction(59049, 16)) == "3690.56"
    assert display(Fraction(1, 4)) == "0.25"


# Bound table


def test_bound_table_for_a_prime_power() -> None:
    size = construct_kakeya_pk(2, 1, 2).points.size

    report = bound_table(8, 2, measured_size=size)
    names = [b.name for b in report.bounds]

    assert names == [
        "lb_general",
        "lb_general.general",
        "lb_pk",
        "lb_m_eps",
        "lb_m_eps.general",
        "ub_construction",
        "ub_certified",
    ]
    assert report.recommended_ell == 4
    assert report.lower_bounds_respected
    assert report.upper_bounds_met == {"ub_construction": True, "ub_certified": True}


def test_bound_table_for_a_square_free_modulus() -> None:
    report = bound_table(6, 2)
    names = {b.name for b in report.bounds}

    assert {"lb_squarefree", "ub_construction", "ub_certified"} <= names
    assert "lb_pk" not in names
    assert report.recommended_ell is None
    assert report.lower_bounds_respected is None


def test_bound_table_notes_missing_pieces() -> None:
    report = bound_table(12, 2, m=3)

    assert "no admissible construction for this N" in report.notes
    assert "lb_m_eps applies to prime-power N only" in report.notes
    assert all(b.kind == "lower" for b in report.bounds)


def test_bound_table_flags_violated_lower_bounds() -> None:
    report = bound_table(9, 2, measured_size=1)

    assert report.lower_bounds_respected is False


def test_bound_table_serializes_exact_values() -> None:
    document = bound_table(9, 2, m=3, epsilon=Fraction(1, 2)).model_dump(mode="json", by_alias=True)

    assert document["schema"] == "kzn/1"
    assert document["epsilon"] == "1/2"
    assert all(isinstance(b["value"], str) for b in document["bounds"])


def test_bound_table_rejects_tiny_moduli() -> None:
    with pytest.raises(InvalidInputError, match="N must be at least 2"):
        bound_table(1, 2)


@pytest.mark.parametrize(
    "m,epsilon,respected",
    [(1, Fraction(1), True), (3, Fraction(1, 2), True), (None, None, False), (4, Fraction(1), False)],
)
def test_partial_sets_answer_only_to_the_m_eps_bound(m: int | None, epsilon: Fraction | None, respected: bool) -> None:
    # {0} in Z/4 is a (1, 1)-Kakeya set but lies below lb_pk(2, 2, 1) = 2
    report = bound_table(4, 1, m=m, epsilon=epsilon, measured_size=1)

    assert report.lower_bounds_respected is respected

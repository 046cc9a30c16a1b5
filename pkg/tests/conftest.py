"""Shared fixtures for kakeya-zn tests."""

import os
import sys
from collections.abc import Callable, Iterator
from fractions import Fraction
from functools import wraps

# Tests never export spans.
os.environ.setdefault("LOGFIRE_IGNORE_NO_CONFIG", "1")

import pytest
import structlog
from hypothesis import HealthCheck, settings

from kakeya_zn.algebra.residues import factorize
from kakeya_zn.domain.models import KakeyaConstruction, PointSet, VerificationReport
from kakeya_zn.services import construction, search, verification
from kakeya_zn.services.bounds import lb_general, lb_m_eps, lb_pk, lb_squarefree

settings.register_profile("kzn", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("kzn")


@pytest.fixture(autouse=True)
def _reset_logging() -> Iterator[None]:
    """CLI tests point structlog at a captured stderr; later tests must not inherit it."""
    yield
    structlog.reset_defaults()


def assert_kakeya_lower_bounds(points: PointSet) -> None:
    """A full Kakeya set is at least as large as every lower bound that applies to its N."""
    f = factorize(points.N)
    n = points.n
    assert points.size >= lb_general(f, n).value
    if f.is_squarefree:
        assert points.size >= lb_squarefree(f, n)
    if f.is_prime_power:
        p, k = f.factors[0]
        assert points.size >= lb_pk(p, k, n)
        assert points.size >= lb_m_eps(p, k, n, points.N, 1).value


def assert_verified_lower_bounds(points: PointSet, report: VerificationReport) -> None:
    """The fraction of satisfied directions certifies the (m, ε) bound; full coverage certifies the rest."""
    if report.is_kakeya:
        assert_kakeya_lower_bounds(points)
        return
    f = factorize(points.N)
    if f.is_prime_power:
        p, k = f.factors[0]
        epsilon = Fraction(report.satisfied, report.total)
        assert points.size >= lb_m_eps(p, k, points.n, report.m, epsilon).value


@pytest.fixture(scope="session")
def certify_kakeya() -> Callable[[PointSet], None]:
    return assert_kakeya_lower_bounds


def _certified[**P, R](fn: Callable[P, R]) -> Callable[P, R]:
    @wraps(fn)
    def wrapper(*args: P.args, **kwargs: P.kwargs) -> R:
        result = fn(*args, **kwargs)
        if isinstance(result, VerificationReport):
            points = kwargs.get("points", args[0] if args else None)
            assert isinstance(points, PointSet)
            assert_verified_lower_bounds(points, result)
        elif isinstance(result, KakeyaConstruction):
            assert_kakeya_lower_bounds(result.points)
        elif isinstance(result, tuple) and isinstance(result[-1], PointSet):
            assert_kakeya_lower_bounds(result[-1])
        return result

    return wrapper


_KAKEYA_PRODUCERS = {
    "verify_kakeya": verification.verify_kakeya,
    "min_kakeya_bruteforce": search.min_kakeya_bruteforce,
    "greedy_kakeya": search.greedy_kakeya,
    "construct_kakeya_pk": construction.construct_kakeya_pk,
    "construct_kakeya_N": construction.construct_kakeya_N,
}


@pytest.fixture(autouse=True)
def _certify_every_kakeya_set(request: pytest.FixtureRequest, monkeypatch: pytest.MonkeyPatch) -> None:
    """Every Kakeya set a test verifies, searches for or constructs must respect the lower bounds."""
    modules = [m for name, m in list(sys.modules.items()) if name.startswith("kakeya_zn")]
    if request.module is not None:
        modules.append(request.module)
    for name, original in _KAKEYA_PRODUCERS.items():
        wrapper = _certified(original)
        for module in modules:
            if getattr(module, name, None) is original:
                monkeypatch.setattr(module, name, wrapper)

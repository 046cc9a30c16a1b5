"""Runtime configuration: defaults, environment overrides and startup validation."""

import pytest
from pydantic import ValidationError

from kakeya_zn.core.config import Settings


def test_defaults_are_single_threaded_with_positive_budgets() -> None:
    config = Settings(_env_file=None)

    assert config.threads == 1
    assert config.log_level == "INFO"
    assert config.bruteforce_grid_limit == 20
    assert config.restricted_rank_budget <= config.rank_row_budget
    config.validate_runtime()


def test_environment_overrides_use_the_kzn_prefix(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("KZN_THREADS", "4")
    monkeypatch.setenv("KZN_RANK_ROW_BUDGET", "50000")

    config = Settings(_env_file=None)

    assert config.threads == 4
    assert config.rank_row_budget == 50_000


@pytest.mark.parametrize(
    "overrides",
    [
        {"threads": 0},
        {"log_level": "VERBOSE"},
        {"bruteforce_grid_limit": 31},
    ],
)
def test_out_of_range_fields_are_rejected(overrides: dict[str, object]) -> None:
    with pytest.raises(ValidationError):
        Settings(_env_file=None, **overrides)


@pytest.mark.parametrize(
    "overrides,fragment",
    [
        ({"restricted_rank_budget": 500, "rank_row_budget": 100}, "KZN_RESTRICTED_RANK_BUDGET"),
        ({"g_image_budget": 2_000, "max_grid_points": 1_000}, "KZN_G_IMAGE_BUDGET"),
    ],
)
def test_contradictory_budgets_fail_startup(overrides: dict[str, int], fragment: str) -> None:
    config = Settings(_env_file=None, **overrides)

    with pytest.raises(ValueError, match=fragment):
        config.validate_runtime()

import logging

import pytest
from pydantic import ValidationError

from shifted_orders.settings import (
    FIELD_PRESETS,
    FieldConfig,
    GlobalSettings,
    LogLevel,
    SearchConfig,
    configure_logging,
    load_settings,
    validate_all_configs,
)


class TestFieldConfig:
    def test_prime_needs_p(self):
        with pytest.raises(ValidationError):
            FieldConfig(kind="prime")

    def test_rationals_take_no_p(self):
        with pytest.raises(ValidationError):
            FieldConfig(kind="rationals", p=3)

    def test_p_must_be_prime(self):
        with pytest.raises(ValidationError):
            FieldConfig(kind="prime", p=15)

    def test_p_below_limit(self):
        with pytest.raises(ValidationError):
            FieldConfig(kind="prime", p=2 ** 31 + 11)

    def test_labels(self):
        assert FieldConfig(kind="rationals").label == "q"
        assert FieldConfig(kind="prime", p=32003).label == "p32003"

    def test_config_validation(self):
        """Test that every preset is valid"""
        for name, is_valid in validate_all_configs().items():
            assert is_valid, f"Configuration for {name} is invalid"
        assert "p101" in FIELD_PRESETS


class TestGlobalSettings:
    def test_defaults(self, monkeypatch):
        """Test the defaults with a clean environment"""
        for key in ("CAP", "SEED", "DEFAULT_FIELD", "LOG_LEVEL", "MAX_WORKERS"):
            monkeypatch.delenv(f"SHIFTED_ORDERS_{key}", raising=False)
        settings = GlobalSettings()
        assert settings.cap == 24
        assert settings.seed == 0
        assert settings.default_field == "p101"
        assert settings.log_level == LogLevel.WARNING
        assert settings.search == SearchConfig()

    def test_environment_override(self, monkeypatch):
        """Test SHIFTED_ORDERS_* variables reach the settings"""
        monkeypatch.setenv("SHIFTED_ORDERS_CAP", "7")
        monkeypatch.setenv("SHIFTED_ORDERS_DEFAULT_FIELD", "q")
        settings = GlobalSettings()
        assert settings.cap == 7
        assert settings.default_field == "q"

    def test_bad_environment_field(self, monkeypatch):
        monkeypatch.setenv("SHIFTED_ORDERS_DEFAULT_FIELD", "p4")
        with pytest.raises(ValidationError):
            GlobalSettings()

    def test_cap_range(self):
        with pytest.raises(ValidationError):
            GlobalSettings(cap=0)

    def test_load_settings_skips_none(self, monkeypatch):
        """Test that None overrides leave the environment value in place"""
        monkeypatch.setenv("SHIFTED_ORDERS_SEED", "5")
        settings = load_settings(cap=9, seed=None)
        assert settings.cap == 9
        assert settings.seed == 5

    def test_load_settings_validates_overrides(self):
        with pytest.raises(ValidationError):
            load_settings(cap=0)
        assert load_settings(log_level="DEBUG").log_level == LogLevel.DEBUG


class TestLogging:
    def test_configure_logging_sets_level(self):
        configure_logging(LogLevel.DEBUG)
        assert logging.getLogger("shifted_orders").level == logging.DEBUG
        configure_logging(LogLevel.WARNING)
        assert logging.getLogger("shifted_orders").level == logging.WARNING

    def test_single_handler(self):
        """Test repeated configuration does not stack handlers"""
        configure_logging(LogLevel.INFO)
        configure_logging(LogLevel.INFO)
        assert len(logging.getLogger("shifted_orders").handlers) == 1

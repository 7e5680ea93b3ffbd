import logging

from config import (
    Config, DevelopmentConfig, ProductionConfig, TestingConfig, get_config, setup_logging,
    validate_configuration,
)


def test_config_map():
    assert get_config("production") is ProductionConfig
    assert get_config("testing") is TestingConfig
    assert get_config("unknown") is DevelopmentConfig


def test_environment_overrides():
    assert ProductionConfig.RENDER_CONFIG["max_cells"] == 1024
    assert ProductionConfig.LOGGING_CONFIG["level"] == "WARNING"
    assert ProductionConfig.ALGEBRA_CONFIG["locate_bound"] == 16384
    assert Config.ALGEBRA_CONFIG["locate_bound"] == 65536
    assert TestingConfig.ORACLE_CONFIG["table_bound"] == 4096
    assert TestingConfig.ORACLE_CONFIG["disjointness_factor"] == Config.ORACLE_CONFIG["disjointness_factor"]
    assert not Config.ALGEBRA_CONFIG["relaxed_complement"]


def test_default_configurations_validate():
    for config in (Config, DevelopmentConfig, ProductionConfig, TestingConfig):
        result = validate_configuration(config)
        assert result["valid"], result["errors"]


def test_validation_reports_bad_values():
    class Broken(Config):
        ORACLE_CONFIG = {**Config.ORACLE_CONFIG, "table_bound": 0}
        LOGGING_CONFIG = {**Config.LOGGING_CONFIG, "level": "LOUD"}

    result = validate_configuration(Broken)
    assert not result["valid"]
    assert len(result["errors"]) == 2


def test_validation_warns_about_relaxed_complement():
    class Relaxed(Config):
        ALGEBRA_CONFIG = {**Config.ALGEBRA_CONFIG, "relaxed_complement": True}

    result = validate_configuration(Relaxed)
    assert result["valid"]
    assert any("Relaxed complement" in w for w in result["warnings"])


def test_setup_logging_applies_the_level():
    root = setup_logging(DevelopmentConfig)
    assert root.level == logging.DEBUG
    setup_logging(Config)
    assert logging.getLogger().level == logging.INFO

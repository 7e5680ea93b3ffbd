"""
Layout Algebra - Configuration
Configuration settings for the layout algebra library, CLI and HTTP service
"""

import logging
import os
from typing import Any, Dict


class Config:
    """Base configuration class."""

    # Application settings
    APP_NAME = "Layout Algebra"
    VERSION = "1.0.0"

    # Server settings
    HOST = "0.0.0.0"
    PORT = int(os.environ.get('PORT', 8080))
    DEBUG = os.environ.get('FLASK_DEBUG', 'False').lower() == 'true'

    # Operator settings
    ALGEBRA_CONFIG = {
        "relaxed_complement": False,
        "check_overflow": True,
        "int_bits": 64,
        "locate_bound": 65536  # largest instruction layout locate_offsets will scan
    }

    # Reference oracle settings
    ORACLE_CONFIG = {
        "table_bound": 65536,
        "disjointness_factor": 4,  # complement disjointness checked up to factor * M
        "history_size": 256
    }

    # Grid rendering settings
    RENDER_CONFIG = {
        "column_separator": " ",
        "max_cells": 4096
    }

    # Logging settings
    LOGGING_CONFIG = {
        "level": "INFO",
        "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        "file_logging": False,
        "log_file": "layout_algebra.log"
    }


class DevelopmentConfig(Config):
    """Development configuration."""
    DEBUG = True
    LOGGING_CONFIG = {
        **Config.LOGGING_CONFIG,
        "level": "DEBUG"
    }


class ProductionConfig(Config):
    """Production configuration."""
    DEBUG = False
    ALGEBRA_CONFIG = {
        **Config.ALGEBRA_CONFIG,
        "locate_bound": 16384
    }
    LOGGING_CONFIG = {
        **Config.LOGGING_CONFIG,
        "level": "WARNING",
        "file_logging": True
    }
    RENDER_CONFIG = {
        **Config.RENDER_CONFIG,
        "max_cells": 1024
    }


class TestingConfig(Config):
    """Testing configuration."""
    DEBUG = True
    TESTING = True
    ORACLE_CONFIG = {
        **Config.ORACLE_CONFIG,
        "table_bound": 4096
    }


# Configuration mapping
config_map = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': DevelopmentConfig
}


def get_config(config_name: str = None) -> Config:
    """Get configuration based on environment."""
    if config_name is None:
        config_name = os.environ.get('FLASK_ENV', 'default')

    return config_map.get(config_name, DevelopmentConfig)


def setup_logging(config: Config = Config) -> logging.Logger:
    """Apply LOGGING_CONFIG to the root logger."""
    settings = config.LOGGING_CONFIG
    handlers = [logging.StreamHandler()]
    if settings.get("file_logging"):
        handlers.append(logging.FileHandler(settings["log_file"]))
    logging.basicConfig(
        level=getattr(logging, settings.get("level", "INFO")),
        format=settings["format"],
        handlers=handlers,
        force=True
    )
    return logging.getLogger()


def validate_configuration(config: Config = None) -> Dict[str, Any]:
    """Validate configuration and return status."""
    config = config or get_config()
    validation_results = {
        "valid": True,
        "warnings": [],
        "errors": []
    }

    bounds = {
        "ORACLE_CONFIG.table_bound": config.ORACLE_CONFIG.get("table_bound", 0),
        "ORACLE_CONFIG.disjointness_factor": config.ORACLE_CONFIG.get("disjointness_factor", 0),
        "RENDER_CONFIG.max_cells": config.RENDER_CONFIG.get("max_cells", 0),
        "ALGEBRA_CONFIG.int_bits": config.ALGEBRA_CONFIG.get("int_bits", 0),
        "ALGEBRA_CONFIG.locate_bound": config.ALGEBRA_CONFIG.get("locate_bound", 0),
    }
    for name, value in bounds.items():
        if not isinstance(value, int) or value <= 0:
            validation_results["errors"].append(f"{name} must be a positive integer, got {value!r}")
            validation_results["valid"] = False

    if config.ALGEBRA_CONFIG.get("int_bits") not in (None, 64):
        validation_results["warnings"].append("Only 64-bit offset checking is implemented")

    if config.ALGEBRA_CONFIG.get("relaxed_complement"):
        validation_results["warnings"].append(
            "Relaxed complement is enabled - results are not guaranteed exact")

    if config.LOGGING_CONFIG.get("level") not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        validation_results["errors"].append(
            f"Unknown logging level {config.LOGGING_CONFIG.get('level')!r}")
        validation_results["valid"] = False

    return validation_results


# Export main configuration
current_config = get_config()

"""
Configuration management for qheine.

Loads settings from:
1. config/config.yaml (base configuration)
2. config/catalog.yaml (generators, Heine transformations, reference tables)
3. Environment variables (.env file)
"""

import os
import yaml
from pathlib import Path
from typing import Dict, Any, List, Optional
from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from src.models.schemas import EvalConfig
from src.utils.errors import ConfigurationError


# Load environment variables from .env file
load_dotenv()

# Determine project root directory
PROJECT_ROOT = Path(__file__).parent.parent.parent
CONFIG_DIR = PROJECT_ROOT / "config"


class SeriesSettings(BaseSettings):
    """Exact series verification settings."""
    model_config = SettingsConfigDict(env_file=".env", extra="ignore", populate_by_name=True)

    truncation: int = Field(default=24, ge=1, alias="QHEINE_TRUNCATION")
    left_clear: bool = True


class NumericsSettings(BaseSettings):
    """Numerical evaluation settings (environment overrides for EvalConfig)."""
    model_config = SettingsConfigDict(env_file=".env", extra="ignore", populate_by_name=True)

    precision: int = Field(default=128, alias="QHEINE_PRECISION")
    tol: float = Field(default=1e-10, alias="QHEINE_TOL")
    seed: int = Field(default=20240501, alias="QHEINE_SEED")


class ClassificationSettings(BaseSettings):
    """Classification run settings."""
    model_config = SettingsConfigDict(env_file=".env", extra="ignore", populate_by_name=True)

    workers: int = Field(default=1, ge=1, alias="QHEINE_WORKERS")
    group_safety_bound: int = Field(default=100, ge=12)


class PathSettings(BaseSettings):
    """File system paths."""
    model_config = SettingsConfigDict(env_file=".env", extra="ignore", populate_by_name=True)

    log_file: Path = Field(default=Path("logs/qheine.log"), alias="QHEINE_LOG_FILE")


class Config:
    """
    Central configuration manager.

    Usage:
        config = Config()
        print(config.series.truncation)
        print(config.catalog["generators"][0]["name"])
    """

    def __init__(self, config_path: Optional[Path] = None, catalog_path: Optional[Path] = None):
        """
        Initialize configuration.

        Args:
            config_path: Optional path to config.yaml. Defaults to config/config.yaml
            catalog_path: Optional path to catalog.yaml. Defaults to config/catalog.yaml
        """
        self.config_path = config_path or (CONFIG_DIR / "config.yaml")
        self.catalog_path = catalog_path or (CONFIG_DIR / "catalog.yaml")

        self._load_yaml_config()
        self._load_catalog()
        self._initialize_settings()
        self._ensure_directories()

    def _load_yaml_config(self) -> None:
        """Load main configuration from YAML."""
        if not self.config_path.exists():
            raise ConfigurationError(f"Config file not found: {self.config_path}")

        with open(self.config_path, 'r', encoding="utf-8") as f:
            self.yaml_config: Dict[str, Any] = yaml.safe_load(f) or {}

    def _load_catalog(self) -> None:
        """Load the reference catalog from YAML."""
        if not self.catalog_path.exists():
            raise ConfigurationError(f"Catalog file not found: {self.catalog_path}")

        with open(self.catalog_path, 'r', encoding="utf-8") as f:
            self.catalog: Dict[str, Any] = yaml.safe_load(f) or {}

        for key in ("generators", "heine", "candidate_table", "g_prefactor"):
            if key not in self.catalog:
                raise ConfigurationError(f"Catalog is missing section '{key}'", config_key=key)

    def _initialize_settings(self) -> None:
        """Initialize Pydantic settings objects, YAML first, environment on top."""
        yaml_series = self.yaml_config.get("series", {})
        yaml_numerics = self.yaml_config.get("numerics", {})
        yaml_classification = self.yaml_config.get("classification", {})

        # Environment variables win over YAML: only pass YAML values the env does not set
        self.series = SeriesSettings(**_without_env(SeriesSettings, yaml_series))
        self.numerics_env = NumericsSettings(**_without_env(NumericsSettings, yaml_numerics))
        self.classification = ClassificationSettings(
            **_without_env(ClassificationSettings, yaml_classification)
        )
        self.paths = PathSettings()

        self.membership = self.yaml_config.get("membership", {})
        self.output = self.yaml_config.get("output", {})
        self.logging = self.yaml_config.get("logging", {})
        self._numerics_yaml = yaml_numerics

    def _ensure_directories(self) -> None:
        """Create necessary directories if they don't exist."""
        log_dir = Path(self.paths.log_file).parent
        log_dir.mkdir(parents=True, exist_ok=True)

    @property
    def expected_survivors(self) -> List[tuple]:
        """Survivor set the classification must reproduce."""
        rows = self.yaml_config.get("classification", {}).get("expected_survivors", [])
        return [tuple(row) for row in rows]

    def get_generator(self, name: str) -> List[Dict[str, Any]]:
        """
        Get the terms of a catalog operator by name.

        Args:
            name: Generator name (e.g., "P_a"), or "abc_relation"

        Returns:
            List of {"shift": [...], "coeff": "..."} terms
        """
        if name == "abc_relation":
            return self.catalog.get("abc_relation", {}).get("terms", [])
        for entry in self.catalog["generators"]:
            if entry["name"] == name:
                return entry["terms"]
        raise ConfigurationError(f"Unknown generator: {name}", config_key=f"generators.{name}")

    def get_matrix(self, name: str) -> List[List[int]]:
        """
        Get a 5x5 parameter matrix from the catalog.

        Args:
            name: "t_h", "t_ab" or "excluded"
        """
        if name == "excluded":
            matrix = self.catalog.get("excluded_matrix")
        else:
            matrix = self.catalog["heine"].get(name, {}).get("matrix")
        if not matrix:
            raise ConfigurationError(f"Unknown matrix: {name}", config_key=name)
        return matrix

    def eval_config(self, **overrides: Any) -> EvalConfig:
        """
        Build the numerical EvalConfig from YAML, environment and overrides.

        Args:
            **overrides: Explicit values (e.g. from CLI flags); None values are ignored

        Returns:
            Validated EvalConfig
        """
        values = dict(self._numerics_yaml)
        values.update(
            precision=self.numerics_env.precision,
            tol=self.numerics_env.tol,
            seed=self.numerics_env.seed,
        )
        values.update({k: v for k, v in overrides.items() if v is not None})
        return EvalConfig(**values)

    def reload(self) -> None:
        """Reload configuration from files."""
        self._load_yaml_config()
        self._load_catalog()
        self._initialize_settings()


def _without_env(settings_cls: type, yaml_values: Dict[str, Any]) -> Dict[str, Any]:
    """Drop YAML values whose field is overridden by an environment variable."""
    result = {}
    for name, field in settings_cls.model_fields.items():
        if name not in yaml_values:
            continue
        if field.alias and field.alias in os.environ:
            continue
        result[name] = yaml_values[name]
    return result


# Global configuration instance
_config_instance: Optional[Config] = None


def get_config(reload: bool = False) -> Config:
    """
    Get the global configuration instance (singleton pattern).

    Args:
        reload: Force reload configuration from files

    Returns:
        Config instance
    """
    global _config_instance

    if _config_instance is None or reload:
        _config_instance = Config()

    return _config_instance

"""Run configuration: defaults, a YAML file, the environment and flags."""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, fields

import yaml

from kdirac.consts import Command, OutputFormat
from kdirac.exceptions import ConfigErrorBadFile, ConfigErrorInvalidValue
from kdirac.partitions import check_stable_range

__all__ = ["RunConfig", "load_config_file", "environment_overrides"]

logger = logging.getLogger(__name__)

CACHE_DIR_ENV = "KDIRAC_CACHE_DIR"
LOG_LEVEL_ENV = "KDIRAC_LOG_LEVEL"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


@dataclass(frozen=True)
class RunConfig:
    command: Command
    k: int = 2
    n: int = 2
    degree: int | None = None
    max_degree: int = 4
    output_format: OutputFormat = OutputFormat.JSON
    cache_dir: str | None = None
    allow_unstable_range: bool = False
    jobs: int = 1
    window: int = 3
    log_level: str = "WARNING"

    def __post_init__(self):
        for name in ("k", "n", "max_degree", "jobs", "window"):
            _require_int(name, getattr(self, name))
        if self.degree is not None:
            _require_int("degree", self.degree)
        if self.k < 1 or self.n < 1:
            raise ConfigErrorInvalidValue(f"k and n must be positive, got k={self.k} n={self.n}")
        check_stable_range(self.k, self.n, bool(self.allow_unstable_range))
        if self.max_degree < 0:
            raise ConfigErrorInvalidValue(f"max_degree must be >= 0, got {self.max_degree}")
        if self.degree is not None and self.degree < 0:
            raise ConfigErrorInvalidValue(f"degree must be >= 0, got {self.degree}")
        if self.cache_dir is not None and not isinstance(self.cache_dir, str):
            raise ConfigErrorInvalidValue(f"cache_dir must be a path, got {self.cache_dir!r}")
        if self.jobs < 1:
            raise ConfigErrorInvalidValue(f"jobs must be >= 1, got {self.jobs}")
        if self.window < 0:
            raise ConfigErrorInvalidValue(f"window must be >= 0, got {self.window}")
        if not isinstance(self.log_level, str) or self.log_level.upper() not in LOG_LEVELS:
            raise ConfigErrorInvalidValue(f"unknown log level {self.log_level!r}")
        try:
            object.__setattr__(self, "output_format", OutputFormat(self.output_format))
            object.__setattr__(self, "command", Command(self.command))
        except ValueError as e:
            raise ConfigErrorInvalidValue(str(e)) from None
        object.__setattr__(self, "log_level", self.log_level.upper())

    @classmethod
    def field_names(cls):
        return {f.name for f in fields(cls)} - {"command"}

    @classmethod
    def build(cls, command, file_values=None, env=None, flags=None):
        """Merges the sources; later ones win and None means unset."""
        values: dict = {}
        for source in (file_values or {}, env or {}, flags or {}):
            for key, value in source.items():
                if value is not None:
                    values[key] = value
        return cls(command=command, **values)

    @property
    def degrees(self):
        """The degrees a command iterates over."""
        if self.degree is not None:
            return [self.degree]
        return list(range(self.max_degree + 1))


def _require_int(name, value):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigErrorInvalidValue(f"{name} must be an integer, got {value!r}")


def load_config_file(path):
    """Reads RunConfig fields from a YAML mapping."""
    try:
        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except OSError as e:
        raise ConfigErrorBadFile(f"cannot read {path}: {e.strerror}") from None
    except yaml.YAMLError as e:
        raise ConfigErrorBadFile(f"{path} is not valid YAML: {e}") from None
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigErrorBadFile(f"{path} must hold a mapping")
    data = {str(key).replace("-", "_"): value for key, value in data.items()}
    unknown = sorted(set(data) - RunConfig.field_names())
    if unknown:
        raise ConfigErrorBadFile(f"{path}: unknown keys {', '.join(unknown)}")
    logger.debug("loaded %d settings from %s", len(data), path)
    return data


def environment_overrides(environ=None):
    environ = os.environ if environ is None else environ
    rv = {}
    if environ.get(CACHE_DIR_ENV):
        rv["cache_dir"] = environ[CACHE_DIR_ENV]
    if environ.get(LOG_LEVEL_ENV):
        rv["log_level"] = environ[LOG_LEVEL_ENV]
    return rv

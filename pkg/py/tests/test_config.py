import pytest

from kdirac import (
    ConfigErrorBadFile,
    ConfigErrorInvalidValue,
    ConfigErrorUnstableRange,
    RunConfig,
    environment_overrides,
    load_config_file,
)
from kdirac.consts import Command, OutputFormat


def test_defaults():
    config = RunConfig(Command.DIMS)
    assert (config.k, config.n) == (2, 2)
    assert config.output_format == OutputFormat.JSON
    assert config.degrees == [0, 1, 2, 3, 4]
    assert RunConfig(Command.DIMS, degree=3).degrees == [3]


def test_sources_are_layered():
    config = RunConfig.build(
        "dims",
        file_values={"k": 3, "n": 3, "max_degree": 1},
        env={"log_level": "debug"},
        flags={"n": 4, "max_degree": None, "output_format": "csv"},
    )
    assert (config.k, config.n, config.max_degree) == (3, 4, 1)
    assert config.log_level == "DEBUG"
    assert config.output_format == OutputFormat.CSV
    assert config.command == Command.DIMS


@pytest.mark.parametrize(
    "values",
    [
        {"k": 0},
        {"max_degree": -1},
        {"degree": -2},
        {"jobs": 0},
        {"window": -1},
        {"log_level": "LOUD"},
        {"log_level": 10},
        {"cache_dir": 5},
        {"output_format": "xml"},
        {"k": "2"},
        {"n": True},
    ],
)
def test_invalid_values(values):
    with pytest.raises(ConfigErrorInvalidValue):
        RunConfig(Command.DIMS, **values)


def test_unstable_range():
    with pytest.raises(ConfigErrorUnstableRange):
        RunConfig(Command.DIMS, k=3, n=2)
    config = RunConfig(Command.DIMS, k=3, n=2, allow_unstable_range=True)
    assert config.allow_unstable_range


def test_load_config_file(tmpdir):
    path = tmpdir.join("run.yml")
    path.write("k: 3\nn: 4\nmax-degree: 2\noutput_format: csv\n")
    assert load_config_file(str(path)) == {
        "k": 3,
        "n": 4,
        "max_degree": 2,
        "output_format": "csv",
    }
    empty = tmpdir.join("empty.yml")
    empty.write("")
    assert load_config_file(str(empty)) == {}


@pytest.mark.parametrize(
    "text", ["k: [1, 2\n", "- 1\n- 2\n", "k: 2\ncolour: blue\n", "command: dims\n"]
)
def test_bad_config_files(tmpdir, text):
    path = tmpdir.join("bad.yml")
    path.write(text)
    with pytest.raises(ConfigErrorBadFile):
        load_config_file(str(path))


def test_missing_config_file(tmpdir):
    with pytest.raises(ConfigErrorBadFile):
        load_config_file(str(tmpdir.join("missing.yml")))


def test_environment_overrides():
    assert environment_overrides({}) == {}
    assert environment_overrides(
        {"KDIRAC_CACHE_DIR": "/tmp/m", "KDIRAC_LOG_LEVEL": "info", "HOME": "/"}
    ) == {"cache_dir": "/tmp/m", "log_level": "info"}


def test_non_string_log_level_in_file(tmpdir):
    path = tmpdir.join("run.yml")
    path.write("log_level: 10\n")
    values = load_config_file(str(path))
    with pytest.raises(ConfigErrorInvalidValue):
        RunConfig.build("dims", file_values=values)

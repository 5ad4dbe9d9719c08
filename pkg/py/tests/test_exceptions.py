import pytest

import kdirac
from kdirac import KDiracError
from kdirac.consts import Command, ErrorCode
from kdirac.exceptions import exceptions_by_code


@pytest.mark.parametrize("code", list(ErrorCode))
def test_every_code_has_an_exception(code):
    exc = exceptions_by_code[code]
    assert exc.code == code
    assert issubclass(exc, KDiracError)
    assert getattr(kdirac, exc.__name__) is exc


def test_families_share_a_base():
    assert issubclass(kdirac.ConfigErrorUnstableRange, kdirac.ConfigError)
    assert issubclass(kdirac.ArgumentErrorIndexOutOfRange, kdirac.ArgumentError)
    assert not issubclass(kdirac.CacheErrorCorrupted, kdirac.ConfigError)


def test_error_report():
    error = kdirac.ConfigErrorBadFile("run.yml is not valid YAML")
    assert str(error) == "[203] run.yml is not valid YAML"
    assert error.to_report() == {
        "error": "ConfigErrorBadFile",
        "code": 203,
        "message": "run.yml is not valid YAML",
    }


def test_api_names():
    assert ErrorCode.COMMAND_ERROR_USAGE.api_name() == "command_error_usage"


def test_command_parse():
    assert Command.parse("verify-complex") == Command.VERIFY_COMPLEX
    assert Command.parse("verify") is None


def test_package_exports():
    import kdirac

    assert "ConfigErrorBadFile" in kdirac.__all__
    assert "discover_complex" in kdirac.__all__
    assert len(set(kdirac.__all__)) == len(kdirac.__all__)
    assert all(hasattr(kdirac, name) for name in kdirac.__all__)

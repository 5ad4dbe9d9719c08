from __future__ import annotations

from typing import TYPE_CHECKING

from kdirac.consts import ErrorCode

__all__ = ["KDiracError"]
exceptions_by_code: dict[int, type[KDiracError]] = {}


class KDiracError(Exception):
    code: int | None = None

    def __init__(self, msg):
        Exception.__init__(self, msg)
        self.message = msg

    def __str__(self):
        if self.code is not None:
            return f"[{self.code}] {self.message}"
        return self.message

    def to_report(self):
        """Returns the error as a report document."""
        return {
            "error": type(self).__name__,
            "code": self.code,
            "message": self.message,
        }


def _make_error(error_name, base=KDiracError, code=None):
    class Exc(base):
        pass

    Exc.__name__ = error_name
    Exc.__qualname__ = error_name
    if code is not None:
        Exc.code = code
    globals()[Exc.__name__] = Exc
    __all__.append(Exc.__name__)
    return Exc


def _get_error_base(error_name):
    pieces = error_name.split("Error", 1)
    if len(pieces) == 2 and pieces[0] and pieces[1]:
        base_error_name = pieces[0] + "Error"
        base_class = globals().get(base_error_name)
        if base_class is None:
            base_class = _make_error(base_error_name)
        return base_class
    return KDiracError


def _make_exceptions():
    for member in ErrorCode:
        error_name = member.name.title().replace("_", "")
        base = _get_error_base(error_name)
        exc = _make_error(error_name, base=base, code=int(member))
        exceptions_by_code[exc.code] = exc


_make_exceptions()

if TYPE_CHECKING:
    # treat unknown attribute names as exception types
    def __getattr__(name: str) -> type[KDiracError]: ...

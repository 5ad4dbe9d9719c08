from enum import IntEnum, StrEnum

__all__ = [
    "ErrorCode",
    "Command",
    "OutputFormat",
    "CLIFFORD_SIGN",
    "CLIFFORD_CONVENTION",
    "MODULE_LAYOUT",
]


class ErrorCode(IntEnum):
    # begin stable codes
    ARGUMENT_ERROR_DIMENSION_MISMATCH = 101
    ARGUMENT_ERROR_INDEX_OUT_OF_RANGE = 102
    ARGUMENT_ERROR_GRADE_MISMATCH = 103
    ARGUMENT_ERROR_INVALID_PARTITION = 104
    ARGUMENT_ERROR_NOT_INVARIANT = 105
    ARGUMENT_ERROR_EMPTY_GENERATORS = 106
    ARGUMENT_ERROR_NOT_SOLVABLE = 107
    ARGUMENT_ERROR_UNKNOWN_ACTION = 108
    ARGUMENT_ERROR_NOT_IN_ALGEBRA = 109
    CONFIG_ERROR_UNSTABLE_RANGE = 201
    CONFIG_ERROR_INVALID_VALUE = 202
    CONFIG_ERROR_BAD_FILE = 203
    CACHE_ERROR_CORRUPTED = 301
    COMMAND_ERROR_UNKNOWN_COMMAND = 401
    COMMAND_ERROR_USAGE = 402
    # end stable codes

    def api_name(self):
        """
        Returns the name used for this code in reports.
        """
        return self.name.lower()


class Command(StrEnum):
    SK_TABLE = "sk-table"
    DIMS = "dims"
    VERIFY_LIEALG = "verify-liealg"
    VERIFY_FIELDS = "verify-fields"
    VERIFY_DESCEND = "verify-descend"
    DUALITY = "duality"
    SOLUTION_DIMS = "solution-dims"
    DISCOVER = "discover"
    VERIFY_COMPLEX = "verify-complex"

    @classmethod
    def parse(cls, name):
        """
        Parses a `Command` from its command-line name, `None` if unknown.
        """
        try:
            return cls(name)
        except ValueError:
            return None


class OutputFormat(StrEnum):
    JSON = "json"
    CSV = "csv"


# gamma_alpha ** 2 == CLIFFORD_SIGN * identity
CLIFFORD_SIGN = -1
CLIFFORD_CONVENTION = "gamma_alpha^2 = -1"

MODULE_LAYOUT = "C^k (x) S as k consecutive blocks of 2^n"

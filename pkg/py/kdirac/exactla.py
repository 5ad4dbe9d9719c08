"""Exact Gaussian-rational scalars and matrices.

Elimination runs in sympy's sparse `DomainMatrix` over `QQ_I`; this module
only converts to and from it and keeps the public types immutable.
"""

from __future__ import annotations

import logging
import re
from fractions import Fraction

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from kdirac.exceptions import (
    ArgumentErrorDimensionMismatch,
    ArgumentErrorIndexOutOfRange,
    CacheErrorCorrupted,
)
from kdirac.utils import _NoDict

__all__ = [
    "Scalar",
    "ExactMatrix",
    "rank",
    "kernel_basis",
    "transpose",
    "rref",
    "solve",
    "rank_of_columns",
    "pivot_columns",
]

logger = logging.getLogger(__name__)

_TEXT_RE = re.compile(r"^(-?\d+)/(\d+)\+(-?\d+)/(\d+) i$")


def _qq(value):
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, int):
        return QQ(value)
    raise TypeError(f"cannot use {type(value).__name__} as a rational part")


def _fraction(value):
    return Fraction(int(value.numerator), int(value.denominator))


def _lift(value):
    if isinstance(value, Scalar):
        return value.value
    if isinstance(value, (int, Fraction)):
        return QQ_I(_qq(value), QQ(0))
    return None


class Scalar(metaclass=_NoDict):
    """A Gaussian rational re + im*i, held as an element of sympy's `QQ_I`."""

    __slots__ = ("value",)

    def __init__(self, re=0, im=0):
        if isinstance(re, Scalar):
            self.value = re.value + QQ_I(QQ(0), _qq(im))
        else:
            self.value = QQ_I(_qq(re), _qq(im))

    @classmethod
    def _wrap(cls, value):
        rv = cls.__new__(cls)
        rv.value = value
        return rv

    @classmethod
    def coerce(cls, value):
        if isinstance(value, Scalar):
            return value
        if isinstance(value, complex):
            raise TypeError("floating point values are not exact")
        return cls(value)

    @classmethod
    def parse(cls, text):
        """Parses the cache text form ``a/b+c/d i``."""
        match = _TEXT_RE.match(text.strip())
        if match is None:
            raise CacheErrorCorrupted(f"not an exact scalar: {text!r}")
        a, b, c, d = (int(g) for g in match.groups())
        if b == 0 or d == 0:
            raise CacheErrorCorrupted(f"zero denominator in {text!r}")
        return cls(Fraction(a, b), Fraction(c, d))

    def to_text(self):
        re, im = self.re, self.im
        return "%d/%d+%d/%d i" % (
            re.numerator,
            re.denominator,
            im.numerator,
            im.denominator,
        )

    @property
    def re(self):
        return _fraction(self.value.x)

    @property
    def im(self):
        return _fraction(self.value.y)

    def is_zero(self):
        return not self.value.x and not self.value.y

    def is_real(self):
        return not self.value.y

    def __bool__(self):
        return not self.is_zero()

    def conjugate(self):
        return Scalar._wrap(QQ_I(self.value.x, -self.value.y))

    def __neg__(self):
        return Scalar._wrap(-self.value)

    def __add__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return Scalar._wrap(self.value + other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return Scalar._wrap(self.value - other)

    def __rsub__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return Scalar._wrap(other - self.value)

    def __mul__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return Scalar._wrap(self.value * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _lift(Scalar.coerce(other))
        if not other.x and not other.y:
            raise ZeroDivisionError("division by zero scalar")
        return Scalar._wrap(QQ_I.quo(self.value, other))

    def __rtruediv__(self, other):
        return Scalar.coerce(other) / self

    def __eq__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return self.value == other

    def __hash__(self):
        if self.is_real():
            return hash(self.re)
        return hash((self.re, self.im))

    def __reduce__(self):
        return (Scalar, (self.re, self.im))

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        re, im = self.re, self.im
        if not im:
            return str(re)
        if not re:
            return "i" if im == 1 else "-i" if im == -1 else f"{im}i"
        sign = "+" if im > 0 else "-"
        mag = abs(im)
        return f"{re}{sign}{'' if mag == 1 else mag}i"

    def to_domain(self):
        return self.value

    @classmethod
    def from_domain(cls, value):
        return cls._wrap(QQ_I.convert(value))


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
HALF = Scalar(Fraction(1, 2))


class ExactMatrix(metaclass=_NoDict):
    """An immutable rows x cols matrix of `Scalar` entries.

    Only nonzero entries are stored; `entries` gives the dense row-major view.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise ArgumentErrorDimensionMismatch(f"negative shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self._data = {}
        if entries is None:
            return
        entries = list(entries)
        if len(entries) != rows * cols:
            raise ArgumentErrorDimensionMismatch(
                f"{len(entries)} entries for a {rows}x{cols} matrix"
            )
        for pos, value in enumerate(entries):
            value = Scalar.coerce(value)
            if value:
                self._data[divmod(pos, cols)] = value

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ArgumentErrorDimensionMismatch("ragged rows")
        return cls(len(rows), cols, [v for r in rows for v in r])

    @classmethod
    def from_sparse(cls, rows, cols, data):
        rv = cls(rows, cols)
        for (i, j), value in data.items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise ArgumentErrorIndexOutOfRange(
                    f"entry ({i}, {j}) outside a {rows}x{cols} matrix"
                )
            value = Scalar.coerce(value)
            if value:
                rv._data[(i, j)] = value
        return rv

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, size):
        return cls.from_sparse(size, size, {(i, i): ONE for i in range(size)})

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def entries(self):
        get = self._data.get
        return tuple(
            get((i, j), ZERO) for i in range(self.rows) for j in range(self.cols)
        )

    def __getitem__(self, pos):
        i, j = pos
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise ArgumentErrorIndexOutOfRange(f"entry {pos} outside {self.shape}")
        return self._data.get((i, j), ZERO)

    def items(self):
        """Yields ((i, j), value) for the nonzero entries in row-major order."""
        return iter(sorted(self._data.items()))

    def nnz(self):
        return len(self._data)

    def row(self, i):
        return tuple(self[i, j] for j in range(self.cols))

    def column(self, j):
        return tuple(self[i, j] for i in range(self.rows))

    def is_zero(self):
        return not self._data

    def _row_map(self):
        rv: dict[int, list] = {}
        for (i, j), v in self._data.items():
            rv.setdefault(i, []).append((j, v))
        return rv

    def transpose(self):
        rv = ExactMatrix(self.cols, self.rows)
        rv._data = {(j, i): v for (i, j), v in self._data.items()}
        return rv

    @property
    def T(self):
        return self.transpose()

    def __matmul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ArgumentErrorDimensionMismatch(
                f"cannot multiply {self.shape} by {other.shape}"
            )
        right = other._row_map()
        acc: dict = {}
        for (i, j), v in self._data.items():
            for l, w in right.get(j, ()):
                key = (i, l)
                acc[key] = acc[key] + v * w if key in acc else v * w
        rv = ExactMatrix(self.rows, other.cols)
        rv._data = {key: v for key, v in acc.items() if v}
        return rv

    def _combine(self, other, sign):
        if self.shape != other.shape:
            raise ArgumentErrorDimensionMismatch(
                f"cannot combine {self.shape} and {other.shape}"
            )
        data = dict(self._data)
        for key, v in other._data.items():
            cur = data.get(key, ZERO)
            new = cur + v if sign > 0 else cur - v
            if new:
                data[key] = new
            else:
                data.pop(key, None)
        rv = ExactMatrix(self.rows, self.cols)
        rv._data = data
        return rv

    def __add__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self._combine(other, 1)

    def __sub__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, factor):
        factor = Scalar.coerce(factor)
        rv = ExactMatrix(self.rows, self.cols)
        if factor:
            rv._data = {key: v * factor for key, v in self._data.items()}
        return rv

    def apply(self, vector):
        """Returns the matrix-vector product as a tuple of scalars."""
        vector = tuple(vector)
        if len(vector) != self.cols:
            raise ArgumentErrorDimensionMismatch(
                f"vector of length {len(vector)} for {self.cols} columns"
            )
        out = [ZERO] * self.rows
        for (i, j), v in self._data.items():
            if vector[j]:
                out[i] = out[i] + v * vector[j]
        return tuple(out)

    def kron(self, other):
        rv = ExactMatrix(self.rows * other.rows, self.cols * other.cols)
        rv._data = {
            (i * other.rows + p, j * other.cols + q): v * w
            for (i, j), v in self._data.items()
            for (p, q), w in other._data.items()
        }
        return rv

    def embed(self, rows, cols, row_offset=0, col_offset=0):
        """Places this matrix as a block inside a zero rows x cols matrix."""
        if row_offset + self.rows > rows or col_offset + self.cols > cols:
            raise ArgumentErrorDimensionMismatch("block does not fit")
        rv = ExactMatrix(rows, cols)
        rv._data = {
            (i + row_offset, j + col_offset): v for (i, j), v in self._data.items()
        }
        return rv

    def submatrix(self, row_indices, col_indices):
        row_pos = {r: p for p, r in enumerate(row_indices)}
        col_pos = {c: p for p, c in enumerate(col_indices)}
        rv = ExactMatrix(len(row_pos), len(col_pos))
        rv._data = {
            (row_pos[i], col_pos[j]): v
            for (i, j), v in self._data.items()
            if i in row_pos and j in col_pos
        }
        return rv

    def trace(self):
        rv = ZERO
        for (i, j), v in self._data.items():
            if i == j:
                rv = rv + v
        return rv

    def is_antisymmetric(self):
        if self.rows != self.cols:
            return False
        return (self + self.transpose()).is_zero()

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        return f"<ExactMatrix {self.rows}x{self.cols} nnz={len(self._data)}>"

    def to_domain_matrix(self):
        sdm: dict[int, dict] = {}
        for (i, j), v in self._data.items():
            sdm.setdefault(i, {})[j] = v.to_domain()
        return DomainMatrix(sdm, (self.rows, self.cols), QQ_I)


def transpose(m):
    return m.transpose()


def _rref_rows(m):
    """Reduced row echelon form as ({row: {col: Scalar}}, pivots)."""
    if m.rows == 0 or m.cols == 0 or m.is_zero():
        return {}, ()
    logger.debug("rref of %dx%d matrix with %d nonzeros", m.rows, m.cols, m.nnz())
    reduced, pivots = m.to_domain_matrix().rref()
    rows = {}
    for i, row in reduced.to_sparse().rep.items():
        rows[i] = {j: Scalar.from_domain(v) for j, v in row.items()}
    return rows, tuple(pivots)


def rref(m):
    """Returns the reduced row echelon form of `m` and its pivot columns."""
    rows, pivots = _rref_rows(m)
    data = {(i, j): v for i, row in rows.items() for j, v in row.items()}
    return ExactMatrix.from_sparse(m.rows, m.cols, data), pivots


def pivot_columns(m):
    return _rref_rows(m)[1]


def rank(m):
    """Exact rank over the Gaussian rationals; an empty matrix has rank 0."""
    return len(pivot_columns(m))


def kernel_basis(m):
    """Returns a basis of the right null space of `m` as tuples of scalars.

    :param m: the matrix whose kernel is wanted.
    """
    if m.cols == 0:
        return []
    rows, pivots = _rref_rows(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vec = [ZERO] * m.cols
        vec[free] = ONE
        for r, p in enumerate(pivots):
            value = rows.get(r, {}).get(free)
            if value is not None:
                vec[p] = -value
        basis.append(tuple(vec))
    return basis


def solve(a, b):
    """Returns X with a @ X == b, or None when the system is inconsistent."""
    if a.rows != b.rows:
        raise ArgumentErrorDimensionMismatch(
            f"cannot solve {a.shape} against {b.shape}"
        )
    data = dict(a._data)
    data.update({(i, j + a.cols): v for (i, j), v in b._data.items()})
    augmented = ExactMatrix.from_sparse(a.rows, a.cols + b.cols, data)
    rows, pivots = _rref_rows(augmented)
    if any(p >= a.cols for p in pivots):
        return None
    out = {}
    for r, p in enumerate(pivots):
        for j, v in rows.get(r, {}).items():
            if j >= a.cols:
                out[(p, j - a.cols)] = v
    return ExactMatrix.from_sparse(a.cols, b.cols, out)


def rank_of_columns(vectors, length):
    """Rank of the family `vectors`, each a mapping or sequence of `length` scalars."""
    data = {}
    for j, vec in enumerate(vectors):
        items = vec.items() if isinstance(vec, dict) else enumerate(vec)
        for i, v in items:
            if v:
                data[(i, j)] = v
    return rank(ExactMatrix.from_sparse(length, len(vectors), data))

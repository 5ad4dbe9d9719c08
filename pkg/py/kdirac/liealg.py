"""The |2|-graded Lie algebra so(k, 2n+k) in block-matrix form.

Basis order is e_1..e_k, eps_1..eps_2n, e^1..e^k with the Gram matrix
h = [[0, 0, 1], [0, -1, 0], [1, 0, 0]].  An element is stored as the
assembled matrix

    [[ A,  Z^T,  W  ],
     [ X,  B,    Z  ],
     [ Y,  X^T, -A^T]]

with B, Y, W antisymmetric.  Grades: Y -2, X -1, (A, B) 0, Z 1, W 2.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from itertools import combinations
from typing import NamedTuple

from kdirac.exactla import ONE, ZERO, ExactMatrix, Scalar, rank
from kdirac.exceptions import (
    ArgumentErrorDimensionMismatch,
    ArgumentErrorGradeMismatch,
    ArgumentErrorNotInAlgebra,
)

__all__ = [
    "BasisLabel",
    "BlockElement",
    "GradedBasis",
    "bracket",
    "grading_element",
    "basis",
    "killing_pair",
    "coordinates",
    "from_coordinates",
    "structure_constants",
    "killing_matrix",
    "wedge_bracket_matrix",
    "jacobi_defect",
    "generated_rank",
    "gram_matrix",
    "basis_element",
]

logger = logging.getLogger(__name__)

BLOCK_GRADES = {"Y": -2, "X": -1, "A": 0, "B": 0, "Z": 1, "W": 2}


class BasisLabel(NamedTuple):
    """Names a distinguished basis vector.

    For X and Z the indices are (i, alpha); for Y and W they are (r, s)
    with r < s; for A they are (i, j) and for B (alpha, beta) with
    alpha < beta.  All indices are 1-based.
    """

    block: str
    a: int
    b: int

    @property
    def grade(self):
        return BLOCK_GRADES[self.block]

    def __str__(self):
        if self.block == "X":
            return f"e^{self.a}(x)eps_{self.b}"
        if self.block == "Y":
            return f"e^{self.a}^e^{self.b}"
        if self.block == "Z":
            return f"e_{self.a}(x)eps_{self.b}"
        if self.block == "W":
            return f"e_{self.a}^e_{self.b}"
        return f"{self.block}_{self.a}{self.b}"


class BlockElement:
    __slots__ = ("k", "n", "matrix")

    def __init__(self, k, n, matrix):
        size = 2 * k + 2 * n
        if matrix.shape != (size, size):
            raise ArgumentErrorDimensionMismatch(
                f"so(k, 2n+k) with k={k}, n={n} needs {size}x{size}, got {matrix.shape}"
            )
        self.k = k
        self.n = n
        self.matrix = matrix

    @property
    def size(self):
        return 2 * self.k + 2 * self.n

    def _offsets(self):
        k, two_n = self.k, 2 * self.n
        return (0, k), (k, k + two_n), (k + two_n, 2 * k + two_n)

    def _block(self, row, col):
        offsets = self._offsets()
        r0, r1 = offsets[row]
        c0, c1 = offsets[col]
        return self.matrix.submatrix(range(r0, r1), range(c0, c1))

    @property
    def A(self):
        return self._block(0, 0)

    @property
    def B(self):
        return self._block(1, 1)

    @property
    def X(self):
        return self._block(1, 0)

    @property
    def Y(self):
        return self._block(2, 0)

    @property
    def Z(self):
        return self._block(1, 2)

    @property
    def W(self):
        return self._block(0, 2)

    @classmethod
    def from_blocks(cls, k, n, A=None, B=None, X=None, Y=None, Z=None, W=None):
        two_n = 2 * n
        shapes = {
            "A": (A, (k, k)),
            "B": (B, (two_n, two_n)),
            "X": (X, (two_n, k)),
            "Y": (Y, (k, k)),
            "Z": (Z, (two_n, k)),
            "W": (W, (k, k)),
        }
        blocks = {}
        for name, (value, shape) in shapes.items():
            if value is None:
                value = ExactMatrix.zeros(*shape)
            elif not isinstance(value, ExactMatrix):
                value = ExactMatrix.from_rows(value, shape[1])
            if value.shape != shape:
                raise ArgumentErrorDimensionMismatch(
                    f"block {name} must be {shape[0]}x{shape[1]}, got {value.shape}"
                )
            blocks[name] = value
        for name in ("B", "Y", "W"):
            if not blocks[name].is_antisymmetric():
                raise ArgumentErrorNotInAlgebra(f"block {name} must be antisymmetric")

        size = 2 * k + two_n
        a, b, x, y, z, w = (blocks[c] for c in "ABXYZW")
        parts = [
            (a, 0, 0),
            (z.transpose(), 0, k),
            (w, 0, k + two_n),
            (x, k, 0),
            (b, k, k),
            (z, k, k + two_n),
            (y, k + two_n, 0),
            (x.transpose(), k + two_n, k),
            (-a.transpose(), k + two_n, k + two_n),
        ]
        matrix = ExactMatrix.zeros(size, size)
        for block, r, c in parts:
            matrix = matrix + block.embed(size, size, r, c)
        return cls(k, n, matrix)

    @classmethod
    def from_matrix(cls, k, n, matrix):
        rv = cls(k, n, matrix)
        if not rv.is_valid():
            raise ArgumentErrorNotInAlgebra("matrix does not preserve h")
        return rv

    @classmethod
    def zero(cls, k, n):
        size = 2 * k + 2 * n
        return cls(k, n, ExactMatrix.zeros(size, size))

    def is_valid(self):
        h = gram_matrix(self.k, self.n)
        return (self.matrix.transpose() @ h + h @ self.matrix).is_zero()

    def _check_compatible(self, other):
        if (self.k, self.n) != (other.k, other.n):
            raise ArgumentErrorDimensionMismatch(
                f"elements of so(k, 2n+k) for (k, n)={self.k, self.n} "
                f"and {other.k, other.n}"
            )

    def __add__(self, other):
        self._check_compatible(other)
        return BlockElement(self.k, self.n, self.matrix + other.matrix)

    def __sub__(self, other):
        self._check_compatible(other)
        return BlockElement(self.k, self.n, self.matrix - other.matrix)

    def __neg__(self):
        return BlockElement(self.k, self.n, -self.matrix)

    def scale(self, factor):
        return BlockElement(self.k, self.n, self.matrix.scale(factor))

    def is_zero(self):
        return self.matrix.is_zero()

    def __eq__(self, other):
        if not isinstance(other, BlockElement):
            return NotImplemented
        return (self.k, self.n) == (other.k, other.n) and self.matrix == other.matrix

    __hash__ = None  # type: ignore[assignment]

    def grades(self):
        """The set of grades with a nonzero component."""
        return {label.grade for label in coordinates(self)}

    def component(self, grade):
        """The grade-`grade` part of this element."""
        coords = {
            label: value
            for label, value in coordinates(self).items()
            if label.grade == grade
        }
        return from_coordinates(self.k, self.n, coords)

    def __repr__(self):
        coords = coordinates(self)
        inner = ", ".join(f"{v}*{label}" for label, v in sorted(coords.items()))
        return f"<BlockElement k={self.k} n={self.n} [{inner}]>"


@lru_cache(maxsize=None)
def gram_matrix(k, n):
    size = 2 * k + 2 * n
    data = {}
    for i in range(k):
        data[(i, k + 2 * n + i)] = ONE
        data[(k + 2 * n + i, i)] = ONE
    for alpha in range(2 * n):
        data[(k + alpha, k + alpha)] = -ONE
    return ExactMatrix.from_sparse(size, size, data)


def bracket(x, y):
    """The matrix commutator xy - yx."""
    x._check_compatible(y)
    return BlockElement(x.k, x.n, x.matrix @ y.matrix - y.matrix @ x.matrix)


def grading_element(k, n):
    return BlockElement.from_blocks(k, n, A=ExactMatrix.identity(k))


def _unit(rows, cols, i, j, antisymmetric=False):
    data = {(i, j): ONE}
    if antisymmetric:
        data[(j, i)] = -ONE
    return ExactMatrix.from_sparse(rows, cols, data)


def basis_element(k, n, label):
    two_n = 2 * n
    block, a, b = label
    if block in ("X", "Z"):
        return BlockElement.from_blocks(k, n, **{block: _unit(two_n, k, b - 1, a - 1)})
    if block in ("Y", "W"):
        return BlockElement.from_blocks(
            k, n, **{block: _unit(k, k, a - 1, b - 1, antisymmetric=True)}
        )
    if block == "A":
        return BlockElement.from_blocks(k, n, A=_unit(k, k, a - 1, b - 1))
    return BlockElement.from_blocks(
        k, n, B=_unit(two_n, two_n, a - 1, b - 1, antisymmetric=True)
    )


def _labels(k, n):
    two_n = 2 * n
    pairs_k = list(combinations(range(1, k + 1), 2))
    mixed = [(i, alpha) for i in range(1, k + 1) for alpha in range(1, two_n + 1)]
    rv = [BasisLabel("Y", r, s) for r, s in pairs_k]
    rv += [BasisLabel("X", i, alpha) for i, alpha in mixed]
    rv += [BasisLabel("A", i, j) for i in range(1, k + 1) for j in range(1, k + 1)]
    rv += [
        BasisLabel("B", a, b) for a, b in combinations(range(1, two_n + 1), 2)
    ]
    rv += [BasisLabel("Z", i, alpha) for i, alpha in mixed]
    rv += [BasisLabel("W", r, s) for r, s in pairs_k]
    return rv


class GradedBasis:
    """The distinguished basis of so(k, 2n+k), grouped by grade."""

    def __init__(self, k, n):
        self.k = k
        self.n = n
        self.labels = _labels(k, n)
        self.elements = {label: basis_element(k, n, label) for label in self.labels}

    def grade(self, i):
        return [(label, self.elements[label]) for label in self.labels if label.grade == i]

    def labels_of_grade(self, i):
        return [label for label in self.labels if label.grade == i]

    def __getitem__(self, label):
        return self.elements[label]

    def __iter__(self):
        return iter(self.elements.items())

    def __len__(self):
        return len(self.labels)


@lru_cache(maxsize=None)
def basis(k, n):
    return GradedBasis(k, n)


def coordinates(x):
    """Coordinates of `x` in the distinguished basis (nonzero entries only)."""
    k, two_n = x.k, 2 * x.n
    m = x.matrix
    off_eps, off_dual = k, k + two_n
    rv = {}

    def put(label, value):
        if value:
            rv[label] = value

    for i in range(k):
        for alpha in range(two_n):
            put(BasisLabel("X", i + 1, alpha + 1), m[off_eps + alpha, i])
            put(BasisLabel("Z", i + 1, alpha + 1), m[off_eps + alpha, off_dual + i])
        for j in range(k):
            put(BasisLabel("A", i + 1, j + 1), m[i, j])
            if i < j:
                put(BasisLabel("Y", i + 1, j + 1), m[off_dual + i, j])
                put(BasisLabel("W", i + 1, j + 1), m[i, off_dual + j])
    for a in range(two_n):
        for b in range(a + 1, two_n):
            put(BasisLabel("B", a + 1, b + 1), m[off_eps + a, off_eps + b])
    return rv


def from_coordinates(k, n, coords):
    b = basis(k, n)
    rv = BlockElement.zero(k, n)
    for label, value in coords.items():
        value = Scalar.coerce(value)
        if value:
            rv = rv + b[label].scale(value)
    return rv


def killing_pair(x, y):
    """The trace form tr(xy) between homogeneous elements of opposite grades."""
    x._check_compatible(y)
    gx, gy = x.grades(), y.grades()
    if len(gx) > 1 or len(gy) > 1:
        raise ArgumentErrorGradeMismatch("killing_pair needs homogeneous elements")
    if gx and gy and next(iter(gx)) + next(iter(gy)) != 0:
        raise ArgumentErrorGradeMismatch(
            f"grades {next(iter(gx))} and {next(iter(gy))} are not opposite"
        )
    return (x.matrix @ y.matrix).trace()


def killing_matrix(k, n, grade):
    """Pairing matrix between the grade `grade` and grade `-grade` bases."""
    b = basis(k, n)
    rows = b.grade(grade)
    cols = b.grade(-grade)
    return ExactMatrix.from_rows(
        [[killing_pair(x, y) for _, y in cols] for _, x in rows], len(cols)
    )


@lru_cache(maxsize=None)
def structure_constants(k, n):
    """Coordinates of [a, b] for every ordered pair of basis labels."""
    b = basis(k, n)
    table: dict[tuple[BasisLabel, BasisLabel], dict[BasisLabel, Scalar]] = {}
    for i, la in enumerate(b.labels):
        table[(la, la)] = {}
        for lb in b.labels[i + 1 :]:
            coords = coordinates(bracket(b[la], b[lb]))
            table[(la, lb)] = coords
            table[(lb, la)] = {label: -v for label, v in coords.items()}
    logger.debug("structure constants for k=%d n=%d: %d pairs", k, n, len(table))
    return table


def wedge_bracket_matrix(k, n):
    """Matrix of Lambda^2 g_-1 -> g_-2, one column per pair of g_-1 basis vectors."""
    b = basis(k, n)
    table = structure_constants(k, n)
    minus_one = b.labels_of_grade(-1)
    minus_two = b.labels_of_grade(-2)
    row_of = {label: r for r, label in enumerate(minus_two)}
    data = {}
    pairs = list(combinations(minus_one, 2))
    for c, (x, y) in enumerate(pairs):
        for label, v in table[(x, y)].items():
            if label not in row_of:
                raise ArgumentErrorGradeMismatch(f"[{x}, {y}] leaves g_-2")
            data[(row_of[label], c)] = v
    return ExactMatrix.from_sparse(len(minus_two), len(pairs), data)


def _bracket_coords(table, u, v):
    rv: dict[BasisLabel, Scalar] = {}
    for la, ca in u.items():
        for lb, cb in v.items():
            for label, value in table[(la, lb)].items():
                rv[label] = rv.get(label, ZERO) + ca * cb * value
    return {label: value for label, value in rv.items() if value}


def jacobi_defect(k, n, a, b, c):
    """Coordinates of [a,[b,c]] + [b,[c,a]] + [c,[a,b]] for basis labels."""
    table = structure_constants(k, n)
    total: dict[BasisLabel, Scalar] = {}
    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
        term = _bracket_coords(table, {x: ONE}, table[(y, z)])
        for label, value in term.items():
            total[label] = total.get(label, ZERO) + value
    return {label: value for label, value in total.items() if value}


def generated_rank(k, n):
    """Rank of the span of [g_-1, g_-1] inside g_-2."""
    return rank(wedge_bracket_matrix(k, n))

"""Symmetric Young diagrams indexing the terms of the k-Dirac complex."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import NamedTuple

from kdirac.exceptions import ArgumentErrorInvalidPartition, ConfigErrorUnstableRange

__all__ = [
    "Partition",
    "DiagramStats",
    "SkTable",
    "CoverPair",
    "DimsRow",
    "is_symmetric",
    "stats",
    "conjugate",
    "less",
    "enumerate_Sk",
    "cover_pairs",
    "dim_W",
    "dims_table",
    "flat_jet_dim",
    "euler_solution_dims",
    "predicted_generators",
    "check_stable_range",
]


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of parts inside the k x n box.

    Trailing zeros are dropped, so ``Partition((2, 1, 0), 3, 3)`` and
    ``Partition((2, 1), 3, 3)`` are the same value.
    """

    parts: tuple[int, ...]
    k: int = field(default=0, compare=False)
    n: int = field(default=0, compare=False)

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise ArgumentErrorInvalidPartition(f"negative part in {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ArgumentErrorInvalidPartition(f"{parts} is not weakly decreasing")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if self.k and len(parts) > self.k:
            raise ArgumentErrorInvalidPartition(f"{parts} has more than {self.k} parts")
        if self.n and parts and parts[0] > self.n:
            raise ArgumentErrorInvalidPartition(f"{parts} has a part above {self.n}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self):
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def boxes(self):
        """Yields the 1-based (row, column) cells of the diagram."""
        for i, part in enumerate(self.parts, 1):
            for j in range(1, part + 1):
                yield (i, j)

    def __str__(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"


class DiagramStats(NamedTuple):
    q: int
    d: int
    r: int


class CoverPair(NamedTuple):
    source: Partition
    target: Partition
    order: int


def _parts(a):
    return a.parts if isinstance(a, Partition) else Partition(tuple(a)).parts


def conjugate(a):
    parts = _parts(a)
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p >= j) for j in range(1, parts[0] + 1))


def is_symmetric(a):
    return conjugate(a) == _parts(a)


def stats(a):
    parts = _parts(a)
    q = sum(max(0, p - i) for i, p in enumerate(parts, 1))
    d = sum(1 for i, p in enumerate(parts, 1) if p >= i)
    return DiagramStats(q, d, q + d)


def less(a, b):
    """The partial order: a != b and a_i <= b_i for every i."""
    pa, pb = _parts(a), _parts(b)
    if pa == pb or len(pa) > len(pb):
        return False
    return all(x <= y for x, y in zip(pa, pb))


def check_stable_range(k, n, allow_unstable=False):
    if allow_unstable:
        if k < 1 or n < 1:
            raise ConfigErrorUnstableRange(f"k={k}, n={n}: both must be positive")
        return
    if not n >= k >= 2:
        raise ConfigErrorUnstableRange(
            f"k={k}, n={n} is outside the stable range n >= k >= 2"
        )


def _decreasing(k, n):
    if k == 0:
        yield ()
        return
    for first in range(n, -1, -1):
        for rest in _decreasing(k - 1, first):
            yield (first,) + rest


@dataclass(frozen=True)
class SkTable:
    """The symmetric diagrams in the k x n box graded by r = q + d."""

    k: int
    n: int
    levels: dict[int, tuple[Partition, ...]]

    def level(self, j):
        return self.levels.get(j, ())

    @property
    def max_level(self):
        return max(self.levels)

    def all(self):
        return [a for j in sorted(self.levels) for a in self.levels[j]]

    def less(self, a, b):
        return less(a, b)

    def to_dict(self):
        return {
            str(j): [list(a.parts) for a in self.levels[j]] for j in sorted(self.levels)
        }


def enumerate_Sk(k, n):
    if k < 1 or n < 1:
        raise ConfigErrorUnstableRange(f"k={k}, n={n}: both must be positive")
    levels: dict[int, list[Partition]] = {}
    for parts in _decreasing(k, n):
        if not is_symmetric(parts):
            continue
        a = Partition(parts, k, n)
        levels.setdefault(stats(a).r, []).append(a)
    return SkTable(
        k,
        n,
        {
            j: tuple(sorted(levels[j], key=lambda a: (a.size, a.parts)))
            for j in sorted(levels)
        },
    )


def cover_pairs(k, n, allow_unstable=False):
    check_stable_range(k, n, allow_unstable)
    table = enumerate_Sk(k, n)
    rv = []
    for j in sorted(table.levels):
        for a in table.level(j):
            for b in table.level(j + 1):
                if less(a, b):
                    rv.append(CoverPair(a, b, b.size - a.size))
    return rv


def dim_W(a, k):
    """Dimension of the GL(k) irreducible labelled by `a` (hook content formula).

    :param a: a `Partition` or a sequence of parts.
    :param k: the rank of GL(k).
    """
    parts = _parts(a)
    if len(parts) > k:
        raise ArgumentErrorInvalidPartition(f"{parts} has more than {k} nonzero parts")
    conj = conjugate(parts)
    rv = Fraction(1)
    for i, part in enumerate(parts, 1):
        for j in range(1, part + 1):
            hook = (part - j) + (conj[j - 1] - i) + 1
            rv *= Fraction(k + j - i, hook)
    assert rv.denominator == 1
    return int(rv)


def _spinor_dim(n):
    return 2**n


def flat_jet_dim(a, k, n, i):
    """dim gr^i of the shifted grading on polynomials with values in V_a."""
    m = i - stats(a).q
    if m < 0:
        return 0
    return comb(2 * n * k + m - 1, m) * dim_W(a, k) * _spinor_dim(n)


class DimsRow(NamedTuple):
    partition: Partition
    level: int
    stats: DiagramStats
    dim_W: int
    dim_V: int
    level_dim: int
    eigenvalue: Fraction
    flat_dims: tuple[int, ...]

    def to_dict(self):
        return {
            "partition": list(self.partition.parts),
            "j": self.level,
            "q": self.stats.q,
            "d": self.stats.d,
            "r": self.stats.r,
            "dim_W": self.dim_W,
            "dim_V": self.dim_V,
            "dim_level": self.level_dim,
            "eigenvalue": str(self.eigenvalue),
            "flat_dims": list(self.flat_dims),
        }


def dims_table(k, n, max_degree, allow_unstable=False):
    check_stable_range(k, n, allow_unstable)
    table = enumerate_Sk(k, n)
    level_dims = {
        j: sum(dim_W(a, k) * _spinor_dim(n) for a in table.level(j))
        for j in table.levels
    }
    rows = []
    for j in sorted(table.levels):
        for a in table.level(j):
            w = dim_W(a, k)
            rows.append(
                DimsRow(
                    partition=a,
                    level=j,
                    stats=stats(a),
                    dim_W=w,
                    dim_V=w * _spinor_dim(n),
                    level_dim=level_dims[j],
                    eigenvalue=Fraction(k * (n - 1), 2) + a.size,
                    flat_dims=tuple(
                        flat_jet_dim(a, k, n, i) for i in range(max_degree + 1)
                    ),
                )
            )
    return rows


def euler_solution_dims(k, n, degree, allow_unstable=False):
    """Alternating sum of the shifted flat-jet dimensions at total degree `degree`.

    When the descended complex resolves the k-Dirac operator this is the
    dimension of its homogeneous polynomial solutions of that degree.
    """
    check_stable_range(k, n, allow_unstable)
    table = enumerate_Sk(k, n)
    total = 0
    for j in table.levels:
        if degree - j < 0:
            continue
        sign = -1 if j % 2 else 1
        total += sign * sum(flat_jet_dim(a, k, n, degree - j) for a in table.level(j))
    return total


def predicted_generators(k, n, level, allow_unstable=False):
    """Predicted new syzygy generators after the operator leaving V_level.

    Returns a map from generator order to count.  Orders are measured from
    the smallest |a| among the summands of V_{level+1}.
    """
    check_stable_range(k, n, allow_unstable)
    table = enumerate_Sk(k, n)
    targets = table.level(level + 1)
    if not targets:
        return {}
    base = min(a.size for a in targets)
    rv: dict[int, int] = {}
    for b in table.level(level + 2):
        order = b.size - base
        rv[order] = rv.get(order, 0) + dim_W(b, k) * _spinor_dim(n)
    return rv

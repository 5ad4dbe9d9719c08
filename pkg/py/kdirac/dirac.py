"""The k-Dirac operator on G- and on U, descending, and prolongation matrices."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import NamedTuple

from kdirac import clifford, liealg, partitions
from kdirac.exactla import ExactMatrix
from kdirac.exceptions import (
    ArgumentErrorDimensionMismatch,
    ArgumentErrorGradeMismatch,
    ConfigErrorUnstableRange,
)
from kdirac.polydiff import (
    DiffOp,
    PolynomialSpace,
    compose,
    field_expansion,
    left_invariant_field,
    pullback_q,
    WeightedPolynomial,
)
from kdirac.utils import compositions, falling_factorial

__all__ = [
    "GradedOperator",
    "WeightBlock",
    "build_D0_affine",
    "build_D0_flat",
    "field_operator",
    "compose_graded",
    "descend",
    "gr_matrix",
    "gr_blocks",
    "level_basis",
    "homogeneity_defect",
    "descend_defects",
    "spinor_weight",
]

logger = logging.getLogger(__name__)


def _unit_weight(k, i):
    return tuple(int(c == i) for c in range(k))


@dataclass(frozen=True)
class GradedOperator:
    """A differential operator with its grading data.

    `source_weights` and `target_weights` hold, for each module coordinate,
    its GL(k) torus weight followed by n Cartan weights of so(2n).  The
    Cartan part refers to the null frame used by `kdirac.syzygy`; a flat
    operator preserves both parts of the total weight.  `words`
    is the U(g-) expansion of an operator on G-, when known.
    """

    op: DiffOp
    order: int
    name: str
    source_weights: tuple[tuple[int, ...], ...]
    target_weights: tuple[tuple[int, ...], ...]
    shifts: tuple[tuple[str, int], ...] = ()
    words: dict | None = field(default=None, compare=False, repr=False)

    @property
    def space(self):
        return self.op.space

    @property
    def source_dim(self):
        return self.op.source_dim

    @property
    def target_dim(self):
        return self.op.target_dim

    @property
    def is_flat(self):
        return not self.space.weighted

    @property
    def k(self):
        return self.space.k

    @property
    def n(self):
        return self.space.n

    def symbol(self):
        """Map derivative exponents -> matrix; only for constant coefficients."""
        if not self.op.is_constant_coefficient():
            raise ArgumentErrorGradeMismatch(f"{self.name} has variable coefficients")
        return self.op.constant_part()


def _shift_data(k, n, level):
    try:
        table = partitions.enumerate_Sk(k, n)
        partitions.check_stable_range(k, n)
    except ConfigErrorUnstableRange:
        return ()
    return tuple((str(a), partitions.stats(a).q) for a in table.level(level))


def _gamma_blocks(k, n):
    spinors = clifford.build(n)
    size = spinors.dim
    blocks = {}
    for alpha in range(1, 2 * n + 1):
        gamma = spinors.gamma(alpha)
        for i in range(1, k + 1):
            blocks[(alpha, i)] = gamma.embed(k * size, size, (i - 1) * size, 0)
    return spinors, blocks


def spinor_weight(n, s):
    """Occupation numbers of the Fock basis vector `s`."""
    return tuple((s >> j) & 1 for j in range(n))


def _d0_weights(k, n):
    size = 2**n
    source = tuple((0,) * k + spinor_weight(n, s) for s in range(size))
    target = tuple(
        _unit_weight(k, i) + spinor_weight(n, s) for i in range(k) for s in range(size)
    )
    return source, target


def build_D0_affine(k, n):
    """sum_alpha (gamma_alpha L_{e^1 eps_alpha}, ..., gamma_alpha L_{e^k eps_alpha})."""
    space = PolynomialSpace.affine(k, n)
    spinors, blocks = _gamma_blocks(k, n)
    op = DiffOp.zero(space, k * spinors.dim, spinors.dim)
    words = {}
    for (alpha, i), matrix in blocks.items():
        label = liealg.BasisLabel("X", i, alpha)
        op = op + left_invariant_field(space, label).with_matrix(matrix)
        words[(label,)] = matrix
    source, target = _d0_weights(k, n)
    return GradedOperator(
        op=op,
        order=1,
        name="D0_affine",
        source_weights=source,
        target_weights=target,
        shifts=_shift_data(k, n, 0),
        words=words,
    )


def build_D0_flat(k, n):
    """psi -> sum_alpha (gamma_alpha d psi/dx_{alpha 1}, ..., gamma_alpha d psi/dx_{alpha k})."""
    space = PolynomialSpace.flat(k, n)
    spinors, blocks = _gamma_blocks(k, n)
    op = DiffOp.zero(space, k * spinors.dim, spinors.dim)
    for (alpha, i), matrix in blocks.items():
        op = op + DiffOp.partial(space, space.x_index(alpha, i)).with_matrix(matrix)
    source, target = _d0_weights(k, n)
    return GradedOperator(
        op=op,
        order=1,
        name="D0",
        source_weights=source,
        target_weights=target,
        shifts=_shift_data(k, n, 0),
    )


def field_operator(k, n, label):
    """The left-invariant field of a g- basis label as a graded operator."""
    space = PolynomialSpace.affine(k, n)
    op = left_invariant_field(space, label)
    zero = ((0,) * (k + n),)
    return GradedOperator(
        op=op,
        order=-label.grade,
        name=f"L[{label}]",
        source_weights=zero,
        target_weights=zero,
        words={(label,): ExactMatrix.identity(1)},
    )


def compose_graded(d2, d1):
    """d2 after d1, keeping the U(g-) expansion when both have one."""
    words = None
    if d2.words is not None and d1.words is not None:
        words = {}
        for w2, m2 in d2.words.items():
            for w1, m1 in d1.words.items():
                m = m2 @ m1
                if m.is_zero():
                    continue
                key = w2 + w1
                words[key] = words[key] + m if key in words else m
    return GradedOperator(
        op=compose(d2.op, d1.op),
        order=d2.order + d1.order,
        name=f"{d2.name}*{d1.name}",
        source_weights=d1.source_weights,
        target_weights=d2.target_weights,
        words=words,
    )


def descend(d):
    """The constant-coefficient operator on U induced by an invariant operator on G-.

    Each word of L-fields maps to the product of the x-derivatives of its
    g_-1 letters; words containing a g_-2 letter map to zero.
    """
    if d.is_flat:
        raise ArgumentErrorDimensionMismatch(f"{d.name} already lives on U")
    words = d.words if d.words is not None else field_expansion(d.op)
    flat = PolynomialSpace.flat(d.k, d.n)
    symbols: dict[tuple[int, ...], ExactMatrix] = {}
    for word, matrix in words.items():
        if any(label.block != "X" for label in word):
            continue
        exps = [0] * flat.nvars
        for label in word:
            exps[flat.x_index(label.b, label.a)] += 1
        key = tuple(exps)
        symbols[key] = symbols[key] + matrix if key in symbols else matrix
    op = DiffOp.constant_coefficient(flat, symbols, d.target_dim, d.source_dim)
    name = d.name[: -len("_affine")] if d.name.endswith("_affine") else f"descend({d.name})"
    return replace(d, op=op, name=name, words=None)


def _slice_index(monomials):
    return {e: i for i, e in enumerate(monomials)}


def homogeneity_defect(d, degree):
    """Output monomials that leave the expected slice when `d` acts on slice `degree`."""
    space = d.space
    expected = degree - d.order
    bad = set()
    for c in space.monomials(degree):
        for (a, b), _ in d.op.raw_terms():
            if not falling_factorial(c, b):
                continue
            exps = tuple(ci - bi + ai for ci, bi, ai in zip(c, b, a))
            if space.wdeg(exps) != expected:
                bad.add(exps)
    return sorted(bad)


def _compute_gr_matrix(d, degree):
    space = d.space
    source = space.monomials(degree)
    target = space.monomials(degree - d.order)
    row_of = _slice_index(target)
    sdim, tdim = d.source_dim, d.target_dim
    data: dict = {}
    for (a, b), m in d.op.raw_terms():
        by_col: dict[int, list] = {}
        for (t, s), v in m.items():
            by_col.setdefault(s, []).append((t, v))
        for col_mono, c in enumerate(source):
            factor = falling_factorial(c, b)
            if not factor:
                continue
            exps = tuple(ci - bi + ai for ci, bi, ai in zip(c, b, a))
            row_mono = row_of.get(exps)
            if row_mono is None:
                raise ArgumentErrorGradeMismatch(
                    f"{d.name} is not homogeneous of order {d.order}: "
                    f"degree {degree} monomial maps outside the degree "
                    f"{degree - d.order} slice"
                )
            for s, entries in by_col.items():
                for t, v in entries:
                    key = (row_mono * tdim + t, col_mono * sdim + s)
                    value = v * factor
                    data[key] = data[key] + value if key in data else value
    logger.debug(
        "gr matrix %s degree %d: %dx%d",
        d.name,
        degree,
        len(target) * tdim,
        len(source) * sdim,
    )
    return ExactMatrix.from_sparse(len(target) * tdim, len(source) * sdim, data)


def gr_matrix(d, degree, weighted=True, cache=None):
    """Matrix of `d` from the degree-`degree` slice to the degree-(degree - r) slice.

    Bases are the monomials of the slice in decreasing lex order, each
    followed by the module index.  With `weighted=False` an operator on G-
    is descended first and ordinary degrees on U are used.

    :param cache: optional `MatrixCache` consulted before computing.
    """
    if not weighted and not d.is_flat:
        d = descend(d)
    if weighted and d.is_flat:
        raise ArgumentErrorDimensionMismatch(f"{d.name} lives on U, not on G-")
    key = (d.k, d.n, d.name, degree, weighted)
    if cache is not None:
        cached = cache.load(*key)
        if cached is not None:
            return cached
    rv = _compute_gr_matrix(d, degree)
    if cache is not None:
        cache.store(*key, rv)
    return rv


class WeightBlock(NamedTuple):
    weight: tuple[int, ...]
    matrix: ExactMatrix
    source_basis: tuple[tuple[tuple[int, ...], int], ...]
    target_basis: tuple[tuple[tuple[int, ...], int], ...]


def level_basis(space, coordinate_weights, weight):
    """Pairs (monomial, coordinate) of total torus weight `weight`."""
    rv = []
    for s, cw in enumerate(coordinate_weights):
        rest = tuple(w - c for w, c in zip(weight, cw[: space.k]))
        for mono in space.monomials_of_weight(rest):
            rv.append((mono, s))
    return tuple(rv)


def gr_blocks(d, level):
    """Torus-weight blocks of a flat operator on polynomials of total weight `level`.

    Source and target coordinates are counted with their own weights, so
    the blocks together form the prolongation of `d` at that level.
    """
    if not d.is_flat:
        raise ArgumentErrorDimensionMismatch("gr_blocks works on U")
    space = d.space
    symbol = d.symbol()
    columns = {}
    for b, m in symbol.items():
        by_col: dict[int, list] = {}
        for (t, s), v in m.items():
            by_col.setdefault(s, []).append((t, v))
        columns[b] = by_col
    blocks = []
    for weight in compositions(level, d.k):
        source = level_basis(space, d.source_weights, weight)
        target = level_basis(space, d.target_weights, weight)
        if not source and not target:
            continue
        row_of = {entry: r for r, entry in enumerate(target)}
        data: dict = {}
        for col, (c, s) in enumerate(source):
            for b, by_col in columns.items():
                entries = by_col.get(s)
                if not entries:
                    continue
                factor = falling_factorial(c, b)
                if not factor:
                    continue
                lowered = tuple(ci - bi for ci, bi in zip(c, b))
                for t, v in entries:
                    row = row_of.get((lowered, t))
                    if row is None:
                        raise ArgumentErrorGradeMismatch(
                            f"{d.name} does not preserve torus weight"
                        )
                    key = (row, col)
                    value = v * factor
                    data[key] = data[key] + value if key in data else value
        blocks.append(
            WeightBlock(
                weight,
                ExactMatrix.from_sparse(len(target), len(source), data),
                source,
                target,
            )
        )
    return blocks


def descend_defects(affine, flat, max_degree):
    """Monomials h (with a spinor index) where affine(q* h) != q*(flat h)."""
    space = flat.space
    bad = []
    for degree in range(max_degree + 1):
        for exps in space.monomials(degree):
            for s in range(flat.source_dim):
                vec = [0] * flat.source_dim
                vec[s] = 1
                h = WeightedPolynomial.monomial(space, exps, vec)
                lhs = affine.op.apply(pullback_q(h, affine.space))
                rhs = pullback_q(flat.op.apply(h), affine.space)
                if lhs != rhs:
                    bad.append((exps, s))
    return bad

"""Syzygies of constant-coefficient symbols and the complexes built from them.

Rank and kernel computations run in a null frame.  For every column i and
every j the pair xi_{2j-1,i}, xi_{2j,i} is traded for

    zeta_{j,i} = (xi_{2j-1,i} - i xi_{2j,i}) / 2,
    zetabar_{j,i} = (xi_{2j-1,i} + i xi_{2j,i}) / 2,

stored at the positions of xi_{2j-1,i} and xi_{2j,i}.  The symbol of D0
becomes sum_j (-2 a_j zeta_j + 2 a_j^+ zetabar_j), and every map preserves
the full torus weight (GL(k) part and so(2n) Cartan part) so matrices split
into small blocks.  The change of variables is invertible, so ranks and
generator counts are those of the original frame.  Everything returned from
this module is converted back to the xi variables.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from kdirac import clifford, liealg, partitions
from kdirac.dirac import GradedOperator, build_D0_flat
from kdirac.exactla import (
    HALF,
    I,
    ONE,
    ZERO,
    ExactMatrix,
    kernel_basis,
    pivot_columns,
    rank,
    rank_of_columns,
    solve,
)
from kdirac.exceptions import (
    ArgumentErrorDimensionMismatch,
    ArgumentErrorEmptyGenerators,
    ArgumentErrorGradeMismatch,
    ArgumentErrorIndexOutOfRange,
    ArgumentErrorUnknownAction,
    ConfigErrorUnstableRange,
)
from kdirac.polydiff import DiffOp, PolynomialSpace, compose
from kdirac.utils import compositions, falling_factorial, parallel_map

__all__ = [
    "SymbolMatrix",
    "GeneratorRow",
    "DegreeStats",
    "StackLevel",
    "OperatorStack",
    "RowAction",
    "ExactnessRow",
    "SolutionRow",
    "DiscoveryRow",
    "CompositeRow",
    "ClosureReport",
    "DiscoveryResult",
    "so_weight",
    "new_generators",
    "assemble_operator",
    "composite_zero",
    "verify_exactness",
    "solution_dims",
    "row_action_for",
    "equivariance_closure",
    "discovery_rows",
    "discover_complex",
]

logger = logging.getLogger(__name__)

DEFAULT_WINDOW = 3


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def so_weight(space, exps):
    """so(2n) Cartan weight of a null-frame monomial: zeta_j is -e_j, zetabar_j +e_j."""
    k = space.k
    rv = [0] * space.n
    for v, e in enumerate(exps[: space.nx]):
        if e:
            alpha = v // k + 1
            j = (alpha - 1) // 2
            rv[j] += e if alpha % 2 == 0 else -e
    return tuple(rv)


def _unit_exps(space, index):
    exps = [0] * space.nvars
    exps[index] = 1
    return tuple(exps)


@lru_cache(maxsize=None)
def _frame_images(space, to_null):
    """Image of every variable under the change of frame, as a polynomial."""
    images = [{_unit_exps(space, v): ONE} for v in range(space.nvars)]
    for j in range(1, space.n + 1):
        for i in range(1, space.k + 1):
            odd = space.x_index(2 * j - 1, i)
            even = space.x_index(2 * j, i)
            eo, ee = _unit_exps(space, odd), _unit_exps(space, even)
            if to_null:
                # xi_odd = zeta + zetabar, xi_even = i zeta - i zetabar
                images[odd] = {eo: ONE, ee: ONE}
                images[even] = {eo: I, ee: -I}
            else:
                images[odd] = {eo: HALF, ee: -HALF * I}
                images[even] = {eo: HALF, ee: HALF * I}
    return tuple(images)


def _poly_mul(p, q):
    out: dict = {}
    for a, u in p.items():
        for b, v in q.items():
            key = _add(a, b)
            out[key] = out.get(key, ZERO) + u * v
    return {e: c for e, c in out.items() if c}


def _substitute(space, poly, to_null):
    images = _frame_images(space, to_null)
    powers: dict = {}

    def power(v, e):
        key = (v, e)
        if key not in powers:
            powers[key] = images[v] if e == 1 else _poly_mul(power(v, e - 1), images[v])
        return powers[key]

    out: dict = {}
    for exps, coef in poly.items():
        term = {space.zero_exps: coef}
        for v, e in enumerate(exps):
            if e:
                term = _poly_mul(term, power(v, e))
        for key, value in term.items():
            out[key] = out.get(key, ZERO) + value
    return {e: c for e, c in out.items() if c}


class SymbolMatrix:
    """Principal symbol: entry (a, b) is a homogeneous polynomial in xi.

    Entries are maps exponent vector -> scalar; `frame` is "xi" or "null".
    """

    __slots__ = ("space", "rows", "cols", "entries", "frame")

    def __init__(self, space, rows, cols, entries, frame="xi"):
        self.space = space
        self.rows = rows
        self.cols = cols
        self.entries = {key: dict(p) for key, p in entries.items() if p}
        self.frame = frame

    @classmethod
    def from_operator(cls, op):
        if not op.is_flat:
            raise ArgumentErrorDimensionMismatch(f"{op.name} lives on G-, not on U")
        entries: dict = {}
        for exps, m in op.symbol().items():
            for (a, b), v in m.items():
                entries.setdefault((a, b), {})[exps] = v
        return cls(op.space, op.target_dim, op.source_dim, entries)

    def degrees(self):
        return {sum(e) for p in self.entries.values() for e in p}

    @property
    def degree(self):
        degrees = self.degrees()
        return next(iter(degrees)) if len(degrees) == 1 else None

    def entry(self, a, b):
        return dict(self.entries.get((a, b), {}))

    def _convert(self, frame):
        if frame == self.frame:
            return self
        to_null = frame == "null"
        return SymbolMatrix(
            self.space,
            self.rows,
            self.cols,
            {
                key: _substitute(self.space, p, to_null)
                for key, p in self.entries.items()
            },
            frame,
        )

    def to_null(self):
        return self._convert("null")

    def to_xi(self):
        return self._convert("xi")

    def by_row(self):
        """Row a -> list of (b, exps, coef)."""
        rv: dict[int, list] = {}
        for (a, b), p in sorted(self.entries.items()):
            for exps, coef in p.items():
                rv.setdefault(a, []).append((b, exps, coef))
        return rv

    def by_column(self):
        """Column b -> list of (a, exps, coef)."""
        rv: dict[int, list] = {}
        for (a, b), p in sorted(self.entries.items()):
            for exps, coef in p.items():
                rv.setdefault(b, []).append((a, exps, coef))
        return rv

    def __matmul__(self, other):
        if self.cols != other.rows or self.frame != other.frame:
            raise ArgumentErrorDimensionMismatch("symbols cannot be multiplied")
        left = self.by_row()
        out: dict = {}
        right: dict[int, list] = {}
        for (m, c), p in other.entries.items():
            right.setdefault(m, []).append((c, p))
        for a, terms in left.items():
            for m, exps, coef in terms:
                for c, p in right.get(m, ()):
                    acc = out.setdefault((a, c), {})
                    for e2, v in p.items():
                        key = _add(exps, e2)
                        acc[key] = acc.get(key, ZERO) + coef * v
        cleaned = {
            key: {e: v for e, v in p.items() if v} for key, p in out.items()
        }
        return SymbolMatrix(self.space, self.rows, other.cols, cleaned, self.frame)

    def is_zero(self):
        return not self.entries

    def __repr__(self):
        return f"<SymbolMatrix {self.rows}x{self.cols} {self.frame}>"


@dataclass(frozen=True)
class GeneratorRow:
    """A minimal syzygy generator: a row Q with Q . sigma = 0.

    `terms` maps (exponents, coordinate) to coefficients in the xi frame;
    `row_weights` are the weights of the coordinates the row pairs with.
    """

    space: PolynomialSpace
    weight: tuple[int, ...]
    degree: int
    row_weights: tuple[tuple[int, ...], ...]
    terms: dict = field(compare=False)
    null_terms: dict = field(compare=False, repr=False)

    @property
    def width(self):
        return len(self.row_weights)

    def entry(self, a):
        return {exps: v for (exps, b), v in self.terms.items() if b == a}

    @classmethod
    def from_null(cls, space, weight, degree, row_weights, null_terms):
        per_coord: dict[int, dict] = {}
        for (exps, a), v in null_terms.items():
            per_coord.setdefault(a, {})[exps] = v
        terms = {}
        for a, poly in per_coord.items():
            for exps, v in _substitute(space, poly, to_null=False).items():
                terms[(exps, a)] = v
        return cls(space, weight, degree, row_weights, terms, dict(null_terms))


class DegreeStats(NamedTuple):
    degree: int
    unknowns: int
    syzygies: int
    multiples: int
    found: int


class StackLevel(NamedTuple):
    level: int
    partitions: tuple[str, ...]
    dim: int
    shifts: tuple[int, ...]


class RowAction(NamedTuple):
    """How g0 acts on the dual coordinates of a module.

    `matrices[label]` is R with X . e*_a = sum_a' R[a', a] e*_a'.
    """

    width: int
    matrices: dict


def _buckets(space, coordinate_weights, gl_weight):
    """(monomial, coordinate) pairs of GL(k) weight `gl_weight`, keyed by Cartan weight."""
    k = space.k
    rv: dict[tuple[int, ...], list] = {}
    for a, cw in enumerate(coordinate_weights):
        rest = _sub(gl_weight, cw[:k])
        if any(c < 0 for c in rest):
            continue
        for mono in space.monomials_of_weight(rest):
            key = _add(so_weight(space, mono), cw[k:])
            rv.setdefault(key, []).append((mono, a))
    return rv


def _constraint_matrix(by_row, unknowns, equations):
    row_of = {entry: r for r, entry in enumerate(equations)}
    data: dict = {}
    for c, (mu, a) in enumerate(unknowns):
        for b, beta, coef in by_row.get(a, ()):
            r = row_of.get((_add(mu, beta), b))
            if r is None:
                raise ArgumentErrorGradeMismatch("symbol does not preserve weight")
            key = (r, c)
            data[key] = data.get(key, ZERO) + coef
    return ExactMatrix.from_sparse(len(equations), len(unknowns), data)


def _derivative_matrix(by_col, source, target):
    row_of = {entry: r for r, entry in enumerate(target)}
    data: dict = {}
    for c, (mu, b) in enumerate(source):
        for a, beta, coef in by_col.get(b, ()):
            factor = falling_factorial(mu, beta)
            if not factor:
                continue
            r = row_of.get((_sub(mu, beta), a))
            if r is None:
                raise ArgumentErrorGradeMismatch("operator does not preserve weight")
            key = (r, c)
            data[key] = data.get(key, ZERO) + coef * factor
    return ExactMatrix.from_sparse(len(target), len(source), data)


def _generators_for_weight(task):
    space, by_row, target_weights, source_weights, gl_weight, lower = task
    k = space.k
    unknown_buckets = _buckets(space, target_weights, gl_weight)
    equation_buckets = _buckets(space, source_weights, gl_weight)
    results = []
    for key in sorted(unknown_buckets, reverse=True):
        unknowns = unknown_buckets[key]
        equations = equation_buckets.get(key, [])
        matrix = _constraint_matrix(by_row, unknowns, equations)
        syzygies = len(unknowns) - rank(matrix)
        if not syzygies:
            results.append((key, len(unknowns), 0, 0, []))
            continue
        col_of = {entry: c for c, entry in enumerate(unknowns)}
        multiples = []
        for weight, terms in lower:
            gl_rest = _sub(gl_weight, weight[:k])
            so_rest = _sub(key, weight[k:])
            for nu in space.monomials_of_weight(gl_rest):
                if so_weight(space, nu) != so_rest:
                    continue
                multiples.append(
                    {col_of[(_add(mu, nu), a)]: v for (mu, a), v in terms.items()}
                )
        span = rank_of_columns(multiples, len(unknowns)) if multiples else 0
        new = []
        if syzygies > span:
            kernel = kernel_basis(matrix)
            data = {}
            for j, vec in enumerate(multiples):
                for i, v in vec.items():
                    data[(i, j)] = v
            for j, vec in enumerate(kernel, start=len(multiples)):
                for i, v in enumerate(vec):
                    if v:
                        data[(i, j)] = v
            combined = ExactMatrix.from_sparse(
                len(unknowns), len(multiples) + len(kernel), data
            )
            for p in pivot_columns(combined):
                if p >= len(multiples):
                    vec = kernel[p - len(multiples)]
                    new.append({unknowns[i]: v for i, v in enumerate(vec) if v})
        results.append((key, len(unknowns), syzygies, span, new))
    return gl_weight, results


def _is_stable(k, n, allow_unstable=False):
    try:
        partitions.check_stable_range(k, n)
    except ConfigErrorUnstableRange:
        if not allow_unstable:
            raise
        return False
    return True


def _base_total(weights, k):
    return min(sum(w[:k]) for w in weights)


def _stack_level(table, j, k, n):
    parts = table.level(j)
    return StackLevel(
        level=j,
        partitions=tuple(str(a) for a in parts),
        dim=sum(partitions.dim_W(a, k) for a in parts) * 2**n,
        shifts=tuple(partitions.stats(a).q for a in parts),
    )


class OperatorStack:
    """The operators found so far, D_0 first, with the predicted shape.

    `actions[j]` is the g0 action on the dual coordinates of V_j, when known.
    """

    def __init__(self, k, n, ops, actions=(), allow_unstable=False, jobs=1):
        self.k = k
        self.n = n
        self.ops = list(ops)
        self.actions = list(actions)
        self.allow_unstable = allow_unstable
        self.jobs = jobs
        self._symbols: dict[int, SymbolMatrix] = {}
        self._generators: dict[int, list[GeneratorRow]] = {}
        self.stats: dict[int, DegreeStats] = {}

    @classmethod
    def start(cls, k, n, allow_unstable=False, jobs=1):
        partitions.check_stable_range(k, n, allow_unstable)
        actions = [row_action_for(k, n, 0), row_action_for(k, n, 1)]
        return cls(k, n, [build_D0_flat(k, n)], actions, allow_unstable, jobs)

    def extended(self, op, action=None):
        if op.source_weights != self.last.target_weights:
            raise ArgumentErrorDimensionMismatch(
                f"{op.name} does not start where {self.last.name} ends"
            )
        return OperatorStack(
            self.k,
            self.n,
            self.ops + [op],
            self.actions + [action],
            self.allow_unstable,
            self.jobs,
        )

    @property
    def last(self):
        return self.ops[-1]

    @property
    def length(self):
        return len(self.ops)

    @property
    def stable(self):
        return _is_stable(self.k, self.n, self.allow_unstable)

    @property
    def predicted(self):
        """The shape the complex should have, [] outside the stable range."""
        if not self.stable:
            return []
        table = partitions.enumerate_Sk(self.k, self.n)
        return [_stack_level(table, j, self.k, self.n) for j in sorted(table.levels)]

    def predicted_generators(self):
        """Order -> count expected after the last operator, None when unknown."""
        if not self.stable:
            return None
        return partitions.predicted_generators(self.k, self.n, self.length - 1)

    def null_symbol(self, j):
        if j not in self._symbols:
            self._symbols[j] = SymbolMatrix.from_operator(self.ops[j]).to_null()
        return self._symbols[j]

    def generators(self):
        """Every generator found so far after the last operator, by degree."""
        return [g for d in sorted(self._generators) for g in self._generators[d]]

    def __repr__(self):
        names = ", ".join(op.name for op in self.ops)
        return f"<OperatorStack k={self.k} n={self.n} [{names}]>"


def _find_generators(stack, degree, lower):
    last = stack.last
    space = last.space
    k = stack.k
    by_row = stack.null_symbol(stack.length - 1).by_row()
    total = degree + _base_total(last.target_weights, k)
    lower_data = [(g.weight, g.null_terms) for g in lower]
    tasks = [
        (space, by_row, last.target_weights, last.source_weights, w, lower_data)
        for w in compositions(total, k)
    ]
    unknowns = syzygies = multiples = 0
    found = []
    for gl_weight, results in parallel_map(_generators_for_weight, tasks, stack.jobs):
        for key, count, syz, span, new in results:
            unknowns += count
            syzygies += syz
            multiples += span
            for terms in new:
                found.append(
                    GeneratorRow.from_null(
                        space, gl_weight + key, degree, last.target_weights, terms
                    )
                )
    stack.stats[degree] = DegreeStats(degree, unknowns, syzygies, multiples, len(found))
    logger.info(
        "after %s, degree %d: %d syzygies, %d from lower degrees, %d new",
        last.name,
        degree,
        syzygies,
        multiples,
        len(found),
    )
    return found


def new_generators(stack, d):
    """Minimal generators of the syzygies of the last operator at order `d`.

    Order is measured from the smallest total GL(k) weight among the target
    coordinates.  Lower orders are computed and remembered on `stack` first.
    """
    if d < 0:
        return []
    for degree in range(d + 1):
        if degree not in stack._generators:
            lower = [g for dd in range(degree) for g in stack._generators[dd]]
            stack._generators[degree] = _find_generators(stack, degree, lower)
    return list(stack._generators[d])


def assemble_operator(gens, name=None):
    """The constant-coefficient operator whose rows are `gens`."""
    if not gens:
        raise ArgumentErrorEmptyGenerators("cannot build an operator without rows")
    first = gens[0]
    for g in gens[1:]:
        if g.row_weights != first.row_weights or g.space != first.space:
            raise ArgumentErrorDimensionMismatch("generators pair with different modules")
    space = first.space
    data: dict[tuple[int, ...], dict] = {}
    order = 0
    for c, g in enumerate(gens):
        for (exps, a), v in g.terms.items():
            data.setdefault(exps, {})[(c, a)] = v
            order = max(order, sum(exps))
    symbols = {
        exps: ExactMatrix.from_sparse(len(gens), first.width, entries)
        for exps, entries in data.items()
    }
    op = DiffOp.constant_coefficient(space, symbols, len(gens), first.width)
    return GradedOperator(
        op=op,
        order=order,
        name=name or f"D[{len(gens)}x{first.width}]",
        source_weights=first.row_weights,
        target_weights=tuple(g.weight for g in gens),
    )


class CompositeRow(NamedTuple):
    k: int
    n: int
    spot: int
    first: str
    second: str
    passed: bool

    def to_dict(self):
        return {
            "k": self.k,
            "n": self.n,
            "spot": self.spot,
            "check": f"{self.second}*{self.first}=0",
            "pass": self.passed,
        }


def composite_zero(stack):
    """D_{j+1} after D_j vanishes for every consecutive pair."""
    rows = []
    for j in range(stack.length - 1):
        first, second = stack.ops[j], stack.ops[j + 1]
        ok = compose(second.op, first.op).is_zero()
        if not ok:
            logger.warning("%s * %s is not zero", second.name, first.name)
        rows.append(CompositeRow(stack.k, stack.n, j + 1, first.name, second.name, ok))
    return rows


class ExactnessRow(NamedTuple):
    k: int
    n: int
    spot: int
    degree: int
    rank: int
    kernel_dim: int
    predicted: int | None
    passed: bool

    def to_dict(self):
        return {
            "k": self.k,
            "n": self.n,
            "spot": self.spot,
            "degree": self.degree,
            "rank": self.rank,
            "kernel_dim": self.kernel_dim,
            "predicted": self.predicted,
            "pass": self.passed,
        }


SolutionRow = ExactnessRow


def _exactness_for_weight(task):
    space, incoming, outgoing, weights_in, weights_mid, weights_out, gl_weight = task
    before = _buckets(space, weights_in, gl_weight)
    middle = _buckets(space, weights_mid, gl_weight)
    after = _buckets(space, weights_out, gl_weight) if outgoing is not None else {}
    image = kernel = 0
    for key, basis in middle.items():
        source = before.get(key, [])
        if source:
            image += rank(_derivative_matrix(incoming, source, basis))
        if outgoing is None:
            kernel += len(basis)
        else:
            out = _derivative_matrix(outgoing, basis, after.get(key, []))
            kernel += len(basis) - rank(out)
    return image, kernel


def _slice_dim(space, coordinate_weights, total, k):
    return sum(len(space.monomials(total - sum(cw[:k]))) for cw in coordinate_weights)


def _predicted_kernel(stack, spot, total):
    """Euler count of ker D_spot at GL(k) degree `total`, None when unstable.

    Assumes exactness at every earlier spot and the solution count of D_0
    from the jet dimensions, so no rank enters it.
    """
    if not stack.stable:
        return None
    k = stack.k
    rv = 0
    for i in range(spot):
        sign = 1 if (spot - 1 - i) % 2 == 0 else -1
        rv += sign * _slice_dim(stack.ops[i].space, stack.ops[i].source_weights, total, k)
    sign = 1 if spot % 2 == 0 else -1
    return rv + sign * partitions.euler_solution_dims(k, stack.n, total)


def verify_exactness(stack, spot, degrees):
    """Compares image of D_{spot-1} and kernel of D_spot on polynomial slices.

    `degrees` count the polynomial degree on V_spot above its lowest
    coordinate.  At the last module (`spot` == number of operators) the
    outgoing map is zero and the check is surjectivity of the last operator.
    Each row's `predicted` is the Euler count of the kernel.
    """
    if not 1 <= spot <= stack.length:
        raise ArgumentErrorIndexOutOfRange(
            f"spot {spot} outside 1..{stack.length} for {stack!r}"
        )
    k = stack.k
    incoming = stack.ops[spot - 1]
    space = incoming.space
    in_cols = stack.null_symbol(spot - 1).by_column()
    if spot < stack.length:
        outgoing = stack.ops[spot]
        out_cols = stack.null_symbol(spot).by_column()
        weights_out = outgoing.target_weights
    else:
        out_cols = None
        weights_out = ()
    base = _base_total(incoming.target_weights, k)
    rows = []
    for degree in degrees:
        if degree < 0:
            rows.append(ExactnessRow(k, stack.n, spot, degree, 0, 0, None, True))
            continue
        tasks = [
            (
                space,
                in_cols,
                out_cols,
                incoming.source_weights,
                incoming.target_weights,
                weights_out,
                w,
            )
            for w in compositions(degree + base, k)
        ]
        image = kernel = 0
        for a, b in parallel_map(_exactness_for_weight, tasks, stack.jobs):
            image += a
            kernel += b
        ok = image == kernel
        logger.info(
            "spot %d degree %d: rank %d, kernel %d%s",
            spot,
            degree,
            image,
            kernel,
            "" if ok else " (not exact)",
        )
        predicted = _predicted_kernel(stack, spot, degree + base)
        rows.append(ExactnessRow(k, stack.n, spot, degree, image, kernel, predicted, ok))
    return rows


def _solutions_for_weight(task):
    space, by_col, source_weights, target_weights, gl_weight = task
    source = _buckets(space, source_weights, gl_weight)
    target = _buckets(space, target_weights, gl_weight)
    total = 0
    for key, basis in source.items():
        total += len(basis) - rank(_derivative_matrix(by_col, basis, target.get(key, [])))
    return total


def solution_dims(d0, degrees, jobs=1, allow_unstable=False):
    """Dimensions of the homogeneous polynomial solutions of `d0` by degree.

    Each row carries the alternating jet-dimension count as `predicted`,
    or None outside the stable range.
    """
    k, n = d0.k, d0.n
    stable = _is_stable(k, n, allow_unstable)
    by_col = SymbolMatrix.from_operator(d0).to_null().by_column()
    rows = []
    for degree in degrees:
        tasks = [
            (d0.space, by_col, d0.source_weights, d0.target_weights, w)
            for w in compositions(degree, k)
        ]
        kernel = sum(parallel_map(_solutions_for_weight, tasks, jobs))
        source = d0.source_dim * len(d0.space.monomials(degree))
        predicted = partitions.euler_solution_dims(k, n, degree) if stable else None
        ok = predicted is None or predicted == kernel
        rows.append(ExactnessRow(k, n, 0, degree, source - kernel, kernel, predicted, ok))
    return rows


def row_action_for(k, n, level):
    """The g0 action on the dual coordinates of V_0 = S or V_1 = C^k (x) S."""
    if level not in (0, 1):
        raise ArgumentErrorUnknownAction(
            f"no built-in action on V_{level}; pass the induced one"
        )
    spinors = clifford.build(n)
    size = spinors.dim
    matrices = {}
    for label, element in liealg.basis(k, n).grade(0):
        if label.block == "A":
            if level == 0:
                matrices[label] = ExactMatrix.zeros(size, size)
            else:
                matrices[label] = element.A.kron(ExactMatrix.identity(size))
        else:
            dual = -clifford.spin_action(spinors, element.B).transpose()
            if level == 1:
                dual = ExactMatrix.identity(k).kron(dual)
            matrices[label] = dual
    return RowAction(size if level == 0 else k * size, matrices)


def _variable_action(space, label, element):
    """var index -> list of (index, coef): X . xi_v = sum coef xi_index."""
    rv: dict[int, list] = {}
    if label.block == "A":
        for (j, i), v in element.A.items():
            for alpha in range(1, 2 * space.n + 1):
                rv.setdefault(space.x_index(alpha, i + 1), []).append(
                    (space.x_index(alpha, j + 1), v)
                )
    else:
        for (beta, alpha), v in element.B.items():
            for i in range(1, space.k + 1):
                rv.setdefault(space.x_index(alpha + 1, i), []).append(
                    (space.x_index(beta + 1, i), v)
                )
    return rv


def _act_on_row(space, terms, coordinate_matrix, variables):
    out: dict = {}
    columns: dict[int, list] = {}
    for (a2, a), r in coordinate_matrix.items():
        columns.setdefault(a, []).append((a2, r))
    for (mono, a), c in terms.items():
        for a2, r in columns.get(a, ()):
            key = (mono, a2)
            out[key] = out.get(key, ZERO) + c * r
        for v, e in enumerate(mono):
            if not e:
                continue
            for q, t in variables.get(v, ()):
                shifted = list(mono)
                shifted[v] -= 1
                shifted[q] += 1
                key = (tuple(shifted), a)
                out[key] = out.get(key, ZERO) + c * t * e
    return {key: v for key, v in out.items() if v}


def _multiply(terms, nu):
    return {(_add(mu, nu), a): v for (mu, a), v in terms.items()}


class ClosureReport(NamedTuple):
    invariant: bool
    span_dim: int
    checked: int
    failing: tuple[str, ...]
    induced: RowAction | None

    def to_dict(self):
        return {
            "invariant": self.invariant,
            "span_dim": self.span_dim,
            "checked": self.checked,
            "failing": list(self.failing),
        }


def _infer_action(gens, k, n):
    row_weights = gens[0].row_weights
    d0 = build_D0_flat(k, n)
    if row_weights == d0.source_weights:
        return row_action_for(k, n, 0)
    if row_weights == d0.target_weights:
        return row_action_for(k, n, 1)
    raise ArgumentErrorUnknownAction(
        "no built-in action on these coordinates; pass the induced one"
    )


def equivariance_closure(gens, k, n, action=None, lower=()):
    """Checks that g0 maps span(gens) into span(gens) plus multiples of `lower`.

    `lower` are generators of smaller order of the same syzygy module.  When
    the span is closed the report carries the induced action on the new
    coordinates, ready for the next level.
    """
    if not gens:
        raise ArgumentErrorEmptyGenerators("no generators to act on")
    action = action or _infer_action(gens, k, n)
    if action.width != gens[0].width:
        raise ArgumentErrorDimensionMismatch(
            f"action on {action.width} coordinates, rows have {gens[0].width}"
        )
    space = gens[0].space
    degree = max(sum(exps) for g in gens for exps, _ in g.terms)
    multiples = []
    for g in lower:
        g_degree = max(sum(exps) for exps, _ in g.terms)
        for nu in space.monomials(degree - g_degree):
            multiples.append(_multiply(g.terms, nu))
    spanning = [g.terms for g in gens] + multiples
    elements = liealg.basis(k, n).grade(0)
    acted = {}
    for label, element in elements:
        variables = _variable_action(space, label, element)
        acted[label] = [
            _act_on_row(space, g.terms, action.matrices[label], variables) for g in gens
        ]
    index: dict = {}
    for vec in spanning + [v for vs in acted.values() for v in vs]:
        for key in vec:
            index.setdefault(key, len(index))

    def columns(vectors):
        return [{index[key]: v for key, v in vec.items()} for vec in vectors]

    span_cols = columns(spanning)
    base = rank_of_columns(span_cols, len(index))
    failing = []
    for label, vectors in acted.items():
        if rank_of_columns(span_cols + columns(vectors), len(index)) > base:
            failing.append(str(label))
    if failing:
        logger.warning("generator span not closed under %s", ", ".join(failing))
        return ClosureReport(False, base, len(elements), tuple(failing), None)
    span_matrix = _columns_matrix(span_cols, len(index))
    induced = {}
    for label, vectors in acted.items():
        solution = solve(span_matrix, _columns_matrix(columns(vectors), len(index)))
        induced[label] = solution.submatrix(range(len(gens)), range(len(gens)))
    return ClosureReport(True, base, len(elements), (), RowAction(len(gens), induced))


def _columns_matrix(cols, length):
    data = {}
    for j, vec in enumerate(cols):
        for i, v in vec.items():
            data[(i, j)] = v
    return ExactMatrix.from_sparse(length, len(cols), data)


class DiscoveryRow(NamedTuple):
    k: int
    n: int
    spot: int
    degree: int
    rank: int
    syzygies: int
    kernel_dim: int
    predicted: int | None
    passed: bool

    def to_dict(self):
        return {
            "k": self.k,
            "n": self.n,
            "spot": self.spot,
            "degree": self.degree,
            "rank": self.rank,
            "syzygies": self.syzygies,
            "kernel_dim": self.kernel_dim,
            "predicted": self.predicted,
            "pass": self.passed,
        }


@dataclass
class DiscoveryResult:
    stack: OperatorStack
    rows: list[DiscoveryRow]
    closures: list[ClosureReport]
    composites: list[CompositeRow]

    @property
    def passed(self):
        return (
            all(r.passed for r in self.rows)
            and all(c.invariant for c in self.closures)
            and all(c.passed for c in self.composites)
        )


def discovery_rows(stack, degrees):
    """Finds generators after the last operator at each degree and scores them."""
    predicted = stack.predicted_generators()
    rows = []
    gens = []
    for d in degrees:
        new = new_generators(stack, d)
        gens.extend(new)
        stats = stack.stats[d]
        expected = None if predicted is None else predicted.get(d, 0)
        ok = expected is None or expected == len(new)
        rows.append(
            DiscoveryRow(
                stack.k,
                stack.n,
                stack.length - 1,
                d,
                stats.unknowns - stats.syzygies,
                stats.syzygies,
                len(new),
                expected,
                ok,
            )
        )
    return rows, gens


def discover_complex(
    k, n, window=DEFAULT_WINDOW, max_length=None, jobs=1, allow_unstable=False
):
    """Builds D_1, D_2, ... as minimal syzygies, starting from D_0.

    At each level every order up to the last predicted one plus `window` is
    searched.  The search stops when a level yields no generator or after
    `max_length` operators.
    """
    stack = OperatorStack.start(k, n, allow_unstable, jobs)
    rows: list[DiscoveryRow] = []
    closures: list[ClosureReport] = []
    while max_length is None or stack.length < max_length:
        predicted = stack.predicted_generators() or {}
        top = max(predicted, default=0) + window
        level_rows, gens = discovery_rows(stack, range(1, top + 1))
        rows.extend(level_rows)
        if not gens:
            break
        action = stack.actions[-1] if len(stack.actions) >= stack.length + 1 else None
        induced = None
        if action is not None:
            by_degree: dict[int, list] = {}
            for g in gens:
                by_degree.setdefault(g.degree, []).append(g)
            lower: list = []
            pieces = []
            for d in sorted(by_degree):
                report = equivariance_closure(by_degree[d], k, n, action, lower)
                closures.append(report)
                pieces.append(report.induced)
                lower = lower + by_degree[d]
            if len(pieces) == 1:
                induced = pieces[0]
        name = f"D{stack.length}"
        op = assemble_operator(gens, name=name)
        logger.info("found %s: %dx%d of order %d", name, op.target_dim, op.source_dim, op.order)
        stack = stack.extended(op, induced)
    return DiscoveryResult(stack, rows, closures, composite_zero(stack))

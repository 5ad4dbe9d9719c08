"""Polynomials on G- and U, and polynomial-coefficient differential operators.

Exponent vectors are tuples ordered x_11, x_12, ..., x_{2n,k} (alpha-major)
followed, on G-, by y_12, ..., y_{k-1,k}.  x variables have weighted degree 1,
y variables weighted degree 2.  Each variable also carries a GL(k) torus
weight: x_{alpha i} has e_i and y_{rs} has e_r + e_s.

A `DiffOp` is kept in normal order: every term is ``M * x^a * d^b`` with
the coefficient monomial to the left of the derivative monomial.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, combinations_with_replacement, product
from math import comb
from typing import NamedTuple

from kdirac import liealg
from kdirac.exactla import HALF, ONE, ZERO, ExactMatrix, Scalar, solve
from kdirac.exceptions import (
    ArgumentErrorDimensionMismatch,
    ArgumentErrorGradeMismatch,
    ArgumentErrorNotInvariant,
)
from kdirac.utils import falling_factorial, multi_factorial

__all__ = [
    "PolynomialSpace",
    "WeightedPolynomial",
    "DiffOp",
    "DiffTerm",
    "left_invariant_field",
    "compose",
    "pairing",
    "pullback_q",
    "wgrade_slice",
    "weighted_slice_dim",
    "enveloping_basis",
    "word_operator",
    "pairing_matrix",
    "field_expansion",
    "field_bracket_ratio",
    "bracket_normalization",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PolynomialSpace:
    """Polynomial coordinates on G- (`weighted`) or on U."""

    k: int
    n: int
    weighted: bool = True

    @classmethod
    def affine(cls, k, n):
        return cls(k, n, True)

    @classmethod
    def flat(cls, k, n):
        return cls(k, n, False)

    @cached_property
    def nx(self):
        return 2 * self.n * self.k

    @cached_property
    def y_pairs(self):
        if not self.weighted:
            return ()
        return tuple(combinations(range(1, self.k + 1), 2))

    @property
    def ny(self):
        return len(self.y_pairs)

    @property
    def nvars(self):
        return self.nx + self.ny

    def x_index(self, alpha, i):
        if not (1 <= alpha <= 2 * self.n and 1 <= i <= self.k):
            raise ArgumentErrorDimensionMismatch(f"no variable x_{alpha}{i}")
        return (alpha - 1) * self.k + (i - 1)

    def y_index(self, r, s):
        try:
            return self.nx + self.y_pairs.index((r, s))
        except ValueError:
            raise ArgumentErrorDimensionMismatch(f"no variable y_{r}{s}") from None

    @cached_property
    def names(self):
        xs = [
            f"x{alpha}_{i}"
            for alpha in range(1, 2 * self.n + 1)
            for i in range(1, self.k + 1)
        ]
        return tuple(xs + [f"y{r}_{s}" for r, s in self.y_pairs])

    @cached_property
    def wdegs(self):
        return (1,) * self.nx + (2,) * self.ny

    @cached_property
    def torus(self):
        rv = []
        for _alpha in range(2 * self.n):
            for i in range(self.k):
                rv.append(tuple(int(c == i) for c in range(self.k)))
        for r, s in self.y_pairs:
            rv.append(tuple(int(c in (r - 1, s - 1)) for c in range(self.k)))
        return tuple(rv)

    @property
    def zero_exps(self):
        return (0,) * self.nvars

    def wdeg(self, exps):
        return sum(e * w for e, w in zip(exps, self.wdegs))

    def degree(self, exps):
        return sum(exps)

    def torus_weight(self, exps):
        rv = [0] * self.k
        for e, wt in zip(exps, self.torus):
            if e:
                for c in range(self.k):
                    rv[c] += e * wt[c]
        return tuple(rv)

    def has_y(self, exps):
        return any(exps[self.nx :])

    def monomials(self, w):
        """Exponent vectors of weighted degree `w`, in decreasing lex order."""
        return _monomials(self, w)

    def monomials_of_weight(self, weight):
        """Exponent vectors with GL(k) torus weight `weight`, decreasing lex order."""
        return _monomials_of_weight(self, tuple(weight))

    def slice_dim(self, w):
        return len(self.monomials(w))

    def __str__(self):
        kind = "G-" if self.weighted else "U"
        return f"{kind}(k={self.k}, n={self.n})"


@lru_cache(maxsize=None)
def _monomials(space, w):
    if w < 0:
        return ()
    rv = []
    for ell in range(w // 2 + 1 if space.ny else 1):
        for ys in combinations_with_replacement(range(space.ny), ell):
            for xs in combinations_with_replacement(range(space.nx), w - 2 * ell):
                exps = [0] * space.nvars
                for v in xs:
                    exps[v] += 1
                for v in ys:
                    exps[space.nx + v] += 1
                rv.append(tuple(exps))
    rv.sort(reverse=True)
    return tuple(rv)


@lru_cache(maxsize=None)
def _monomials_of_weight(space, weight):
    if any(c < 0 for c in weight):
        return ()
    torus = space.torus
    nvars = space.nvars
    rv = []
    exps = [0] * nvars

    def walk(v, remaining):
        if v == nvars:
            if not any(remaining):
                rv.append(tuple(exps))
            return
        wt = torus[v]
        top = min(remaining[c] // wt[c] for c in range(len(wt)) if wt[c])
        for e in range(top, -1, -1):
            exps[v] = e
            walk(v + 1, tuple(r - e * x for r, x in zip(remaining, wt)))
        exps[v] = 0

    walk(0, weight)
    rv.sort(reverse=True)
    return tuple(rv)


def weighted_slice_dim(k, n, r):
    """sum_l dim S^l g_2 * dim S^(r-2l) g_1, the closed form of dim S^r p+."""
    ny = k * (k - 1) // 2
    nx = 2 * n * k
    total = 0
    for ell in range(r // 2 + 1):
        m = r - 2 * ell
        y_part = comb(ny + ell - 1, ell) if ny else int(ell == 0)
        total += y_part * comb(nx + m - 1, m)
    return total


def _add_vec(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _nonzero(vec):
    return any(vec)


class WeightedPolynomial:
    """A polynomial with values in a module of dimension `dim`."""

    __slots__ = ("space", "dim", "terms")

    def __init__(self, space, dim, terms=None):
        self.space = space
        self.dim = dim
        self.terms = {}
        for exps, vec in (terms or {}).items():
            vec = tuple(Scalar.coerce(v) for v in vec)
            if len(exps) != space.nvars or len(vec) != dim:
                raise ArgumentErrorDimensionMismatch(
                    f"term {exps} -> {len(vec)} values in {space} with dim {dim}"
                )
            if _nonzero(vec):
                self.terms[tuple(exps)] = vec

    @classmethod
    def zero(cls, space, dim=1):
        return cls(space, dim)

    @classmethod
    def monomial(cls, space, exps, vector=(ONE,)):
        vector = tuple(vector)
        return cls(space, len(vector), {tuple(exps): vector})

    @classmethod
    def constant(cls, space, vector=(ONE,)):
        return cls.monomial(space, space.zero_exps, vector)

    @classmethod
    def variable(cls, space, index):
        exps = [0] * space.nvars
        exps[index] = 1
        return cls.monomial(space, exps)

    def _check(self, other):
        if self.space != other.space or self.dim != other.dim:
            raise ArgumentErrorDimensionMismatch(
                f"cannot combine polynomials in {self.space}/{self.dim} "
                f"and {other.space}/{other.dim}"
            )

    def _with_terms(self, terms):
        rv = WeightedPolynomial(self.space, self.dim)
        rv.terms = {e: v for e, v in terms.items() if _nonzero(v)}
        return rv

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for exps, vec in other.terms.items():
            terms[exps] = _add_vec(terms[exps], vec) if exps in terms else vec
        return self._with_terms(terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, factor):
        factor = Scalar.coerce(factor)
        return self._with_terms(
            {e: tuple(v * factor for v in vec) for e, vec in self.terms.items()}
        )

    def __mul__(self, other):
        """Product with a scalar-valued polynomial or a scalar."""
        if not isinstance(other, WeightedPolynomial):
            return self.scale(other)
        if other.dim != 1 and self.dim != 1:
            raise ArgumentErrorDimensionMismatch("one factor must be scalar-valued")
        if self.space != other.space:
            raise ArgumentErrorDimensionMismatch("factors live in different spaces")
        scalar, vector = (other, self) if other.dim == 1 else (self, other)
        terms: dict = {}
        for e1, (c,) in scalar.terms.items():
            for e2, vec in vector.terms.items():
                exps = _add_vec(e1, e2)
                value = tuple(c * v for v in vec)
                terms[exps] = _add_vec(terms[exps], value) if exps in terms else value
        rv = WeightedPolynomial(self.space, vector.dim)
        rv.terms = {e: v for e, v in terms.items() if _nonzero(v)}
        return rv

    __rmul__ = __mul__

    def derivative(self, index):
        terms = {}
        for exps, vec in self.terms.items():
            e = exps[index]
            if e:
                lowered = exps[:index] + (e - 1,) + exps[index + 1 :]
                terms[lowered] = tuple(v * e for v in vec)
        return self._with_terms(terms)

    def evaluate_zero(self):
        return self.terms.get(self.space.zero_exps, (ZERO,) * self.dim)

    def is_zero(self):
        return not self.terms

    def wdegs(self):
        return sorted({self.space.wdeg(e) for e in self.terms})

    def __eq__(self, other):
        if not isinstance(other, WeightedPolynomial):
            return NotImplemented
        return (
            self.space == other.space
            and self.dim == other.dim
            and self.terms == other.terms
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        parts = []
        for exps, vec in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.space.names, exps)
                if e
            )
            parts.append(f"({', '.join(str(v) for v in vec)}){'*' + mono if mono else ''}")
        return f"<WeightedPolynomial {' + '.join(parts) or '0'}>"


def wgrade_slice(p, r):
    """The weighted-degree-`r` component of `p`."""
    return p._with_terms({e: v for e, v in p.terms.items() if p.space.wdeg(e) == r})


def pullback_q(h, space=None):
    """q*: a polynomial on U viewed as a polynomial on G-."""
    if h.space.weighted:
        if any(h.space.has_y(e) for e in h.terms):
            raise ArgumentErrorDimensionMismatch("q* takes polynomials without y")
        return h
    target = space or PolynomialSpace.affine(h.space.k, h.space.n)
    pad = (0,) * target.ny
    rv = WeightedPolynomial(target, h.dim)
    rv.terms = {exps + pad: vec for exps, vec in h.terms.items()}
    return rv


class DiffTerm(NamedTuple):
    matrix: ExactMatrix
    coefficient: WeightedPolynomial
    derivative: tuple[int, ...]


class DiffOp:
    """sum of M * x^a * d^b acting on polynomials with values in `source_dim`."""

    __slots__ = ("space", "target_dim", "source_dim", "_terms")

    def __init__(self, space, target_dim, source_dim, terms=None):
        self.space = space
        self.target_dim = target_dim
        self.source_dim = source_dim
        self._terms: dict[tuple[tuple[int, ...], tuple[int, ...]], ExactMatrix] = {}
        for (a, b), matrix in (terms or {}).items():
            self._accumulate(tuple(a), tuple(b), matrix)

    def _accumulate(self, a, b, matrix):
        if matrix.shape != (self.target_dim, self.source_dim):
            raise ArgumentErrorDimensionMismatch(
                f"term matrix {matrix.shape} in a "
                f"{self.target_dim}x{self.source_dim} operator"
            )
        if len(a) != self.space.nvars or len(b) != self.space.nvars:
            raise ArgumentErrorDimensionMismatch("exponent vector of wrong width")
        key = (a, b)
        if key in self._terms:
            matrix = self._terms[key] + matrix
        if matrix.is_zero():
            self._terms.pop(key, None)
        else:
            self._terms[key] = matrix

    @classmethod
    def zero(cls, space, target_dim=1, source_dim=1):
        return cls(space, target_dim, source_dim)

    @classmethod
    def identity(cls, space, dim=1):
        zero = space.zero_exps
        return cls(space, dim, dim, {(zero, zero): ExactMatrix.identity(dim)})

    @classmethod
    def partial(cls, space, index, dim=1):
        b = [0] * space.nvars
        b[index] = 1
        return cls(space, dim, dim, {(space.zero_exps, tuple(b)): ExactMatrix.identity(dim)})

    @classmethod
    def multiplication(cls, space, exps, dim=1):
        return cls(space, dim, dim, {(tuple(exps), space.zero_exps): ExactMatrix.identity(dim)})

    @classmethod
    def constant_coefficient(cls, space, symbols, target_dim, source_dim):
        """Builds sum_b M_b d^b from a map derivative exponents -> matrix."""
        zero = space.zero_exps
        return cls(
            space,
            target_dim,
            source_dim,
            {(zero, tuple(b)): m for b, m in symbols.items()},
        )

    @property
    def terms(self):
        return tuple(
            DiffTerm(m, WeightedPolynomial.monomial(self.space, a), b)
            for (a, b), m in sorted(self._terms.items(), reverse=True)
        )

    def raw_terms(self):
        return self._terms.items()

    def _check(self, other):
        if (self.space, self.target_dim, self.source_dim) != (
            other.space,
            other.target_dim,
            other.source_dim,
        ):
            raise ArgumentErrorDimensionMismatch(
                "operators differ in space or dimensions"
            )

    def __add__(self, other):
        self._check(other)
        rv = DiffOp(self.space, self.target_dim, self.source_dim, self._terms)
        for (a, b), m in other._terms.items():
            rv._accumulate(a, b, m)
        return rv

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, factor):
        factor = Scalar.coerce(factor)
        return DiffOp(
            self.space,
            self.target_dim,
            self.source_dim,
            {key: m.scale(factor) for key, m in self._terms.items()},
        )

    def with_matrix(self, matrix):
        """Tensors a scalar operator with a constant matrix."""
        if (self.target_dim, self.source_dim) != (1, 1):
            raise ArgumentErrorDimensionMismatch("with_matrix needs a scalar operator")
        return DiffOp(
            self.space,
            matrix.rows,
            matrix.cols,
            {key: matrix.scale(m[0, 0]) for key, m in self._terms.items()},
        )

    def is_zero(self):
        return not self._terms

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return (
            self.space == other.space
            and self.target_dim == other.target_dim
            and self.source_dim == other.source_dim
            and self._terms == other._terms
        )

    __hash__ = None  # type: ignore[assignment]

    def is_constant_coefficient(self):
        zero = self.space.zero_exps
        return all(a == zero for a, _ in self._terms)

    def weighted_orders(self):
        """The set of wdeg(b) - wdeg(a) over all terms."""
        wdeg = self.space.wdeg
        return {wdeg(b) - wdeg(a) for a, b in self._terms}

    def weighted_order(self):
        orders = self.weighted_orders()
        if len(orders) != 1:
            return None
        return next(iter(orders))

    def max_derivative_wdeg(self):
        return max((self.space.wdeg(b) for _, b in self._terms), default=0)

    def constant_part(self):
        """Map derivative exponents -> matrix for terms with constant coefficient."""
        zero = self.space.zero_exps
        return {b: m for (a, b), m in self._terms.items() if a == zero}

    def apply(self, f):
        if f.space != self.space:
            raise ArgumentErrorDimensionMismatch(f"operator on {self.space}, polynomial on {f.space}")
        if f.dim != self.source_dim:
            raise ArgumentErrorDimensionMismatch(
                f"operator takes {self.source_dim} components, got {f.dim}"
            )
        out: dict = {}
        for (a, b), m in self._terms.items():
            for c, vec in f.terms.items():
                factor = falling_factorial(c, b)
                if not factor:
                    continue
                exps = tuple(ci - bi + ai for ci, bi, ai in zip(c, b, a))
                value = m.apply(vec)
                if factor != 1:
                    value = tuple(v * factor for v in value)
                out[exps] = _add_vec(out[exps], value) if exps in out else value
        rv = WeightedPolynomial(self.space, self.target_dim)
        rv.terms = {e: v for e, v in out.items() if _nonzero(v)}
        return rv

    def __repr__(self):
        return (
            f"<DiffOp {self.space} {self.target_dim}x{self.source_dim} "
            f"terms={len(self._terms)}>"
        )


def compose(d2, d1):
    """d2 after d1, brought back to normal order with the Leibniz rule."""
    if d2.space != d1.space:
        raise ArgumentErrorDimensionMismatch("operators live on different spaces")
    if d2.source_dim != d1.target_dim:
        raise ArgumentErrorDimensionMismatch(
            f"cannot compose {d2.target_dim}x{d2.source_dim} "
            f"after {d1.target_dim}x{d1.source_dim}"
        )
    rv = DiffOp(d2.space, d2.target_dim, d1.source_dim)
    for (a2, b2), m2 in d2._terms.items():
        for (a1, b1), m1 in d1._terms.items():
            m = m2 @ m1
            if m.is_zero():
                continue
            ranges = [range(min(x, y) + 1) for x, y in zip(b2, a1)]
            for gamma in product(*ranges):
                factor = 1
                for g, x, y in zip(gamma, b2, a1):
                    if g:
                        factor *= comb(x, g) * falling_factorial((y,), (g,))
                a = tuple(x2 + x1 - g for x2, x1, g in zip(a2, a1, gamma))
                b = tuple(y2 - g + y1 for y2, g, y1 in zip(b2, gamma, b1))
                rv._accumulate(a, b, m.scale(factor) if factor != 1 else m)
    return rv


def _require_affine(space):
    if not space.weighted:
        raise ArgumentErrorDimensionMismatch("left-invariant fields live on G-")


@lru_cache(maxsize=None)
def _field_of_label(space, label):
    _require_affine(space)
    if label.block == "Y":
        return DiffOp.partial(space, space.y_index(label.a, label.b))
    if label.block != "X":
        raise ArgumentErrorGradeMismatch(f"{label} is not in g-")
    i, alpha = label.a, label.b
    zero = space.zero_exps
    terms = {}

    def unit(index):
        exps = [0] * space.nvars
        exps[index] = 1
        return tuple(exps)

    terms[(zero, unit(space.x_index(alpha, i)))] = ExactMatrix.identity(1)
    for j in range(1, space.k + 1):
        if j == i:
            continue
        coeff = unit(space.x_index(alpha, j))
        if i < j:
            deriv, sign = unit(space.y_index(i, j)), -HALF
        else:
            deriv, sign = unit(space.y_index(j, i)), HALF
        terms[(coeff, deriv)] = ExactMatrix.from_rows([[sign]])
    return DiffOp(space, 1, 1, terms)


def left_invariant_field(space, b):
    """L_b for a g- basis label or a g- element of so(k, 2n+k).

    L_{e^i(x)eps_a} = d/dx_{ai} - 1/2 sum_j x_{aj} d/dy_{ij} with
    d/dy_{ij} = -d/dy_{ji}, and L_{e^r^e^s} = d/dy_{rs}.
    """
    if isinstance(b, liealg.BasisLabel):
        if b.grade not in (-1, -2):
            raise ArgumentErrorGradeMismatch(f"{b} is not in g-")
        return _field_of_label(space, b)
    coords = liealg.coordinates(b)
    rv = DiffOp.zero(space)
    for label, value in coords.items():
        if label.grade not in (-1, -2):
            raise ArgumentErrorGradeMismatch(f"component {label} is not in g-")
        rv = rv + _field_of_label(space, label).scale(value)
    return rv


def _g_minus_labels(space):
    b = liealg.basis(space.k, space.n)
    return b.labels_of_grade(-1), b.labels_of_grade(-2)


@lru_cache(maxsize=None)
def word_operator(space, word):
    """L_{w1} o L_{w2} o ... for a word of g- basis labels."""
    rv = DiffOp.identity(space)
    for label in reversed(word):
        rv = compose(_field_of_label(space, label), rv)
    return rv


@lru_cache(maxsize=None)
def _words(space, r):
    minus_one, minus_two = _g_minus_labels(space)
    words = []
    for ell in range(r // 2 + 1):
        for xs in combinations_with_replacement(minus_one, r - 2 * ell):
            for ys in combinations_with_replacement(minus_two, ell):
                words.append(tuple(xs) + tuple(ys))
    return tuple(words)


def enveloping_basis(space, r):
    """Normal-ordered PBW words of U_r(g-) and their operators.

    g_-1 factors come first, g_-2 factors last; each group is sorted.
    """
    _require_affine(space)
    return [(word, word_operator(space, word)) for word in _words(space, r)]


def pairing(d, f):
    """(D f)(e): the operator applied to `f` and evaluated at the origin."""
    if (d.target_dim, d.source_dim) != (1, 1) or f.dim != 1:
        raise ArgumentErrorDimensionMismatch("pairing takes scalar operators and polynomials")
    rv = ZERO
    for b, m in d.constant_part().items():
        coeff = f.terms.get(b)
        if coeff is not None:
            rv = rv + m[0, 0] * coeff[0] * multi_factorial(b)
    return rv


def pairing_matrix(space, r, s):
    """Rows: PBW words of U_r; columns: monomials of weighted degree s."""
    words = enveloping_basis(space, r)
    monomials = space.monomials(s)
    col_of = {e: c for c, e in enumerate(monomials)}
    data = {}
    for row, (_, op) in enumerate(words):
        for b, m in op.constant_part().items():
            c = col_of.get(b)
            if c is not None:
                data[(row, c)] = m[0, 0] * multi_factorial(b)
    return ExactMatrix.from_sparse(len(words), len(monomials), data)


def field_expansion(op):
    """Writes `op` as sum_w M_w (x) L_w over PBW words w.

    The coefficients are read off the jets of `op` at the origin through
    the duality pairing; the expansion is then checked against `op` itself.
    """
    space = op.space
    _require_affine(space)
    constant = op.constant_part()
    top = op.max_derivative_wdeg()
    entries = op.target_dim * op.source_dim
    expansion: dict[tuple, ExactMatrix] = {}
    for s in range(top + 1):
        words = _words(space, s)
        if not words:
            continue
        monomials = space.monomials(s)
        values = {}
        for row, exps in enumerate(monomials):
            m = constant.get(exps)
            if m is None:
                continue
            factor = multi_factorial(exps)
            for (t, src), v in m.items():
                values[(row, t * op.source_dim + src)] = v * factor
        if not values:
            continue
        rhs = ExactMatrix.from_sparse(len(monomials), entries, values)
        coeffs = solve(pairing_matrix(space, s, s).transpose(), rhs)
        if coeffs is None:
            raise ArgumentErrorNotInvariant(f"jets of degree {s} are not reachable")
        for w, word in enumerate(words):
            data = {
                divmod(j, op.source_dim): coeffs[w, j]
                for j in range(entries)
                if coeffs[w, j]
            }
            if data:
                expansion[word] = ExactMatrix.from_sparse(
                    op.target_dim, op.source_dim, data
                )
    rebuilt = DiffOp.zero(space, op.target_dim, op.source_dim)
    for word, m in expansion.items():
        rebuilt = rebuilt + _tensor(word_operator(space, word), m)
    if rebuilt != op:
        raise ArgumentErrorNotInvariant("operator is not a combination of L-fields")
    return expansion


def _tensor(scalar_op, matrix):
    return scalar_op.with_matrix(matrix)


def field_bracket_ratio(space, x, y):
    """The constant c with [L_x, L_y] = c L_[x,y].

    Returns (c, True) when proportional; c is None when both sides vanish.
    Returns (None, False) when they are not proportional.
    """
    lx = left_invariant_field(space, x)
    ly = left_invariant_field(space, y)
    commutator = compose(lx, ly) - compose(ly, lx)
    k, n = space.k, space.n
    b = liealg.basis(k, n)
    ex = b[x] if isinstance(x, liealg.BasisLabel) else x
    ey = b[y] if isinstance(y, liealg.BasisLabel) else y
    target = left_invariant_field(space, liealg.bracket(ex, ey))
    if target.is_zero():
        return (None, commutator.is_zero())
    key, m = next(iter(sorted(target.raw_terms())))
    other = dict(commutator.raw_terms()).get(key)
    if other is None:
        return (None, False)
    ratio = other[0, 0] / m[0, 0]
    return (ratio, commutator == target.scale(ratio))


@lru_cache(maxsize=None)
def bracket_normalization(k, n):
    """The constant c in [L_X, L_Y] = c L_[X,Y], read off the first g_-1 pair."""
    space = PolynomialSpace.affine(k, n)
    x = liealg.BasisLabel("X", 1, 1)
    y = liealg.BasisLabel("X", 2, 1)
    ratio, ok = field_bracket_ratio(space, x, y)
    if not ok or ratio is None:
        raise ArgumentErrorNotInvariant("L-fields do not close on the bracket")
    return ratio

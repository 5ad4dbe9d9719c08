"""Verification suites behind the CLI commands.

Each suite returns a list of `Check` records; a suite passes when every
record does.
"""

from __future__ import annotations

import logging
from itertools import combinations
from typing import NamedTuple

from kdirac import dirac, liealg
from kdirac.exactla import rank
from kdirac.polydiff import (
    DiffOp,
    PolynomialSpace,
    bracket_normalization,
    field_bracket_ratio,
    pairing_matrix,
    weighted_slice_dim,
)

__all__ = [
    "Check",
    "liealg_suite",
    "fields_suite",
    "descend_suite",
    "duality_suite",
    "slice_suite",
]

logger = logging.getLogger(__name__)


class Check(NamedTuple):
    suite: str
    name: str
    passed: bool
    detail: dict

    def to_dict(self):
        rv = {"suite": self.suite, "check": self.name, "pass": self.passed}
        rv.update(self.detail)
        return rv


def liealg_suite(k, n):
    basis = liealg.basis(k, n)
    table = liealg.structure_constants(k, n)
    checks = []

    grading = liealg.grading_element(k, n)
    bad = [
        str(label)
        for label, x in basis
        if liealg.bracket(grading, x) != x.scale(label.grade)
    ]
    grades = sorted({label.grade for label in basis.labels})
    checks.append(
        Check(
            "liealg",
            "grading element",
            not bad and grades == [-2, -1, 0, 1, 2],
            {"eigenvalues": grades, "failing": bad},
        )
    )

    bad = []
    for (a, b), coords in table.items():
        expected = a.grade + b.grade
        if any(label.grade != expected for label in coords):
            bad.append(f"[{a}, {b}]")
    checks.append(
        Check("liealg", "bracket respects grading", not bad, {"failing": bad[:20]})
    )

    bad = []
    triples = 0
    for a, b, c in combinations(basis.labels, 3):
        triples += 1
        if liealg.jacobi_defect(k, n, a, b, c):
            bad.append(f"{a}, {b}, {c}")
    logger.info("checked Jacobi on %d triples", triples)
    checks.append(
        Check("liealg", "jacobi", not bad, {"triples": triples, "failing": bad[:20]})
    )

    minus_two = len(basis.labels_of_grade(-2))
    got = liealg.generated_rank(k, n)
    checks.append(
        Check(
            "liealg",
            "g_-1 generates g_-2",
            got == minus_two,
            {"rank": got, "dim": minus_two},
        )
    )

    for grade in (0, 1, 2):
        m = liealg.killing_matrix(k, n, grade)
        r = rank(m)
        checks.append(
            Check(
                "liealg",
                f"trace form on g_{grade} x g_{-grade}",
                r == m.rows == m.cols,
                {"rank": r, "dim": m.rows},
            )
        )
    return checks


def fields_suite(k, n):
    space = PolynomialSpace.affine(k, n)
    constant = bracket_normalization(k, n)
    labels = liealg.basis(k, n).labels_of_grade(-1) + liealg.basis(
        k, n
    ).labels_of_grade(-2)
    bad = []
    pairs = 0
    for x, y in combinations(labels, 2):
        pairs += 1
        ratio, ok = field_bracket_ratio(space, x, y)
        if not ok or (ratio is not None and ratio != constant):
            bad.append(f"[{x}, {y}]")
    return [
        Check(
            "fields",
            "[L_X, L_Y] = c L_[X,Y]",
            not bad,
            {"pairs": pairs, "constant": constant.to_text(), "failing": bad},
        )
    ]


def _restricted(weighted, affine_space, flat_space, degree, order, dims):
    """Rows and columns of a weighted prolongation on y-free monomials."""
    nx = flat_space.nx

    def indices(w, dim):
        position = {e[:nx]: i for i, e in enumerate(affine_space.monomials(w))}
        return [
            position[e] * dim + s for e in flat_space.monomials(w) for s in range(dim)
        ]

    target_dim, source_dim = dims
    return weighted.submatrix(
        indices(degree - order, target_dim), indices(degree, source_dim)
    )


def descend_suite(k, n, max_degree, cache=None):
    affine = dirac.build_D0_affine(k, n)
    flat = dirac.build_D0_flat(k, n)
    checks = []

    bad = dirac.descend_defects(affine, flat, max_degree)
    checks.append(
        Check(
            "descend",
            "D0(q* h) = q*(D0 h)",
            not bad,
            {"max_degree": max_degree, "failing": [list(e) + [s] for e, s in bad[:20]]},
        )
    )

    checks.append(
        Check("descend", "descend(D0_affine) = D0", dirac.descend(affine).op == flat.op, {})
    )

    basis = liealg.basis(k, n)
    space = flat.space
    bad_fields = []
    for label in basis.labels_of_grade(-1) + basis.labels_of_grade(-2):
        got = dirac.descend(dirac.field_operator(k, n, label)).op
        if label.block == "X":
            expected = DiffOp.partial(space, space.x_index(label.b, label.a))
        else:
            expected = DiffOp.zero(space)
        if got != expected:
            bad_fields.append(str(label))
    checks.append(
        Check(
            "descend",
            "descend(L_X) = d_x, descend(L_Y) = 0",
            not bad_fields,
            {"failing": bad_fields},
        )
    )

    bad_slices = [
        degree
        for degree in range(max_degree + 1)
        if dirac.homogeneity_defect(affine, degree)
    ]
    checks.append(
        Check(
            "descend",
            "D0 lowers weighted degree by one",
            not bad_slices,
            {"failing": bad_slices},
        )
    )

    bad_matrices = []
    for degree in range(max_degree + 1):
        weighted = dirac.gr_matrix(affine, degree, weighted=True, cache=cache)
        plain = dirac.gr_matrix(affine, degree, weighted=False, cache=cache)
        restricted = _restricted(
            weighted,
            affine.space,
            space,
            degree,
            affine.order,
            (affine.target_dim, affine.source_dim),
        )
        if restricted != plain:
            bad_matrices.append(degree)
    checks.append(
        Check(
            "descend",
            "prolongations agree on pulled-back slices",
            not bad_matrices,
            {"failing": bad_matrices},
        )
    )
    return checks


def duality_suite(k, n, max_degree):
    space = PolynomialSpace.affine(k, n)
    checks = []
    for r in range(max_degree + 1):
        m = pairing_matrix(space, r, r)
        got = rank(m)
        checks.append(
            Check(
                "duality",
                f"U_{r} x S^{r} invertible",
                m.rows == m.cols == got,
                {"degree": r, "rank": got, "dim": m.cols},
            )
        )
    bad = [
        [r, s]
        for r in range(max_degree + 1)
        for s in range(max_degree + 1)
        if r != s and not pairing_matrix(space, r, s).is_zero()
    ]
    checks.append(Check("duality", "cross-degree pairings vanish", not bad, {"failing": bad}))
    return checks


def slice_suite(k, n, max_degree):
    """The closed form for dim S^r p+ against brute enumeration."""
    space = PolynomialSpace.affine(k, n)
    checks = []
    for r in range(max_degree + 1):
        brute = space.slice_dim(r)
        formula = weighted_slice_dim(k, n, r)
        checks.append(
            Check(
                "dims",
                f"dim S^{r} p+",
                brute == formula,
                {"degree": r, "dim": brute, "predicted": formula},
            )
        )
    return checks

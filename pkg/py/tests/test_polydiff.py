import pytest

from kdirac import (
    ArgumentErrorDimensionMismatch,
    ArgumentErrorGradeMismatch,
    ArgumentErrorNotInvariant,
    BasisLabel,
    DiffOp,
    ExactMatrix,
    PolynomialSpace,
    WeightedPolynomial,
    bracket_normalization,
    compose,
    enveloping_basis,
    left_invariant_field,
    pairing,
    pairing_matrix,
    pullback_q,
    rank,
    weighted_slice_dim,
    wgrade_slice,
)
from kdirac.exactla import HALF
from kdirac.polydiff import field_bracket_ratio, field_expansion


@pytest.fixture
def space():
    return PolynomialSpace.affine(2, 2)


def test_space_layout(space):
    assert space.nx == 8
    assert space.ny == 1
    assert space.names[:3] == ("x1_1", "x1_2", "x2_1")
    assert space.names[-1] == "y1_2"
    assert space.wdegs[-1] == 2
    assert space.torus[space.y_index(1, 2)] == (1, 1)
    with pytest.raises(ArgumentErrorDimensionMismatch):
        space.x_index(5, 1)
    with pytest.raises(ArgumentErrorDimensionMismatch):
        PolynomialSpace.flat(2, 2).y_index(1, 2)


@pytest.mark.parametrize("r", range(5))
def test_slice_dims_match_closed_form(space, r):
    assert space.slice_dim(r) == weighted_slice_dim(2, 2, r)


def test_weighted_slice_two(space):
    assert weighted_slice_dim(2, 2, 2) == 37
    assert PolynomialSpace.flat(2, 2).slice_dim(2) == 36


def test_monomials_of_weight(space):
    monomials = space.monomials_of_weight((1, 1))
    # x_a1 x_b2 for 4 x 4 choices, plus y12
    assert len(monomials) == 17
    assert all(space.torus_weight(e) == (1, 1) for e in monomials)
    assert space.monomials_of_weight((-1, 0)) == ()


def test_polynomial_arithmetic(space):
    x = WeightedPolynomial.variable(space, 0)
    y = WeightedPolynomial.variable(space, space.y_index(1, 2))
    p = x * x + y.scale(3)
    assert p.wdegs() == [2]
    assert p.derivative(0) == x.scale(2)
    assert (p - p).is_zero()
    assert wgrade_slice(p + x, 1) == x
    assert WeightedPolynomial.constant(space, (1, 2)).evaluate_zero() == (1, 2)


def test_left_invariant_field_on_y(space):
    field = left_invariant_field(space, BasisLabel("X", 1, 1))
    y = WeightedPolynomial.variable(space, space.y_index(1, 2))
    x12 = WeightedPolynomial.variable(space, space.x_index(1, 2))
    assert field.apply(y) == x12.scale(-HALF)
    other = left_invariant_field(space, BasisLabel("X", 2, 1))
    x11 = WeightedPolynomial.variable(space, space.x_index(1, 1))
    assert other.apply(y) == x11.scale(HALF)


def test_left_invariant_field_rejects_g0(space):
    with pytest.raises(ArgumentErrorGradeMismatch):
        left_invariant_field(space, BasisLabel("A", 1, 1))
    with pytest.raises(ArgumentErrorDimensionMismatch):
        left_invariant_field(PolynomialSpace.flat(2, 2), BasisLabel("X", 1, 1))


def test_compose_uses_leibniz(space):
    x = tuple(int(v == 0) for v in range(space.nvars))
    d = DiffOp.partial(space, 0)
    m = DiffOp.multiplication(space, x)
    assert compose(d, m) == compose(m, d) + DiffOp.identity(space)
    with pytest.raises(ArgumentErrorDimensionMismatch):
        compose(DiffOp.zero(space, 2, 2), DiffOp.zero(space, 3, 1))


def test_diffop_rejects_bad_matrix(space):
    with pytest.raises(ArgumentErrorDimensionMismatch):
        DiffOp(space, 2, 1, {(space.zero_exps, space.zero_exps): ExactMatrix.identity(2)})


def test_field_brackets(space):
    assert bracket_normalization(2, 2) == 1
    ratio, ok = field_bracket_ratio(space, BasisLabel("X", 1, 1), BasisLabel("X", 1, 2))
    assert ratio is None and ok
    ratio, ok = field_bracket_ratio(space, BasisLabel("X", 1, 3), BasisLabel("X", 2, 3))
    assert ok and ratio == 1


def test_enveloping_basis_size(space):
    assert len(enveloping_basis(space, 2)) == 37
    assert len(enveloping_basis(space, 1)) == 8


def test_pairing(space):
    word, op = enveloping_basis(space, 1)[0]
    field = WeightedPolynomial.variable(space, space.x_index(word[0].b, word[0].a))
    assert pairing(op, field) == 1
    assert pairing(op, field * field) == 0


@pytest.mark.parametrize("r", [0, 1, 2])
def test_pairing_matrix_invertible(space, r):
    m = pairing_matrix(space, r, r)
    assert m.rows == m.cols == rank(m)


def test_pairing_matrix_cross_degree_zero(space):
    assert pairing_matrix(space, 1, 2).is_zero()
    assert pairing_matrix(space, 2, 1).is_zero()


def test_field_expansion(space):
    label = BasisLabel("X", 2, 3)
    expansion = field_expansion(left_invariant_field(space, label))
    assert list(expansion) == [(label,)]
    with pytest.raises(ArgumentErrorNotInvariant):
        field_expansion(DiffOp.multiplication(space, space.monomials(1)[0]))


def test_pullback_q():
    flat = PolynomialSpace.flat(2, 2)
    h = WeightedPolynomial.variable(flat, 3)
    pulled = pullback_q(h)
    assert pulled.space == PolynomialSpace.affine(2, 2)
    assert list(pulled.terms) == [tuple(int(v == 3) for v in range(9))]
    y = WeightedPolynomial.variable(pulled.space, 8)
    with pytest.raises(ArgumentErrorDimensionMismatch):
        pullback_q(y)

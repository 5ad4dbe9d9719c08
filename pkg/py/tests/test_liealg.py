import pytest

from kdirac import (
    ArgumentErrorDimensionMismatch,
    ArgumentErrorGradeMismatch,
    ArgumentErrorNotInAlgebra,
    BasisLabel,
    BlockElement,
    ExactMatrix,
    basis,
    bracket,
    coordinates,
    from_coordinates,
    generated_rank,
    grading_element,
    jacobi_defect,
    killing_matrix,
    killing_pair,
    rank,
)


@pytest.mark.parametrize("k,n", [(2, 2), (2, 3), (3, 3)])
def test_basis_sizes(k, n):
    b = basis(k, n)
    size = 2 * k + 2 * n
    assert len(b) == size * (size - 1) // 2
    assert len(b.labels_of_grade(-2)) == k * (k - 1) // 2
    assert len(b.labels_of_grade(-1)) == 2 * n * k
    assert len(b.labels_of_grade(0)) == k * k + n * (2 * n - 1)
    assert all(x.is_valid() for _, x in b)


def test_grading_element_eigenvalues():
    e = grading_element(2, 2)
    for label, x in basis(2, 2):
        assert bracket(e, x) == x.scale(label.grade)


def test_bracket_of_x_blocks_lands_in_y():
    b = basis(2, 2)
    x1 = b[BasisLabel("X", 1, 1)]
    x2 = b[BasisLabel("X", 2, 1)]
    assert bracket(x1, x2).grades() == {-2}
    assert bracket(x1, b[BasisLabel("X", 1, 2)]).is_zero()


def test_jacobi_on_mixed_grades():
    assert not jacobi_defect(
        2, 2, BasisLabel("X", 1, 1), BasisLabel("Z", 2, 3), BasisLabel("B", 1, 3)
    )
    assert not jacobi_defect(
        2, 2, BasisLabel("Y", 1, 2), BasisLabel("W", 1, 2), BasisLabel("A", 1, 2)
    )


@pytest.mark.parametrize("k,n", [(2, 2), (3, 3)])
def test_g_minus_one_generates(k, n):
    assert generated_rank(k, n) == k * (k - 1) // 2


@pytest.mark.parametrize("grade", [0, 1, 2])
def test_trace_form_nondegenerate(grade):
    m = killing_matrix(2, 2, grade)
    assert m.rows == m.cols
    assert rank(m) == m.rows


def test_killing_pair_needs_opposite_grades():
    b = basis(2, 2)
    with pytest.raises(ArgumentErrorGradeMismatch):
        killing_pair(b[BasisLabel("X", 1, 1)], b[BasisLabel("X", 2, 1)])


def test_coordinates_rebuild_element():
    b = basis(2, 3)
    x = b[BasisLabel("X", 1, 4)] + b[BasisLabel("B", 2, 5)].scale(3) - b[
        BasisLabel("W", 1, 2)
    ]
    coords = coordinates(x)
    assert len(coords) == 3
    assert from_coordinates(2, 3, coords) == x
    assert x.component(-1) == b[BasisLabel("X", 1, 4)]


def test_block_element_rejects_bad_input():
    with pytest.raises(ArgumentErrorDimensionMismatch):
        BlockElement(2, 2, ExactMatrix.identity(6))
    with pytest.raises(ArgumentErrorNotInAlgebra):
        BlockElement.from_blocks(2, 2, Y=[[0, 1], [1, 0]])
    with pytest.raises(ArgumentErrorNotInAlgebra):
        BlockElement.from_matrix(2, 2, ExactMatrix.identity(8))
    with pytest.raises(ArgumentErrorDimensionMismatch):
        bracket(grading_element(2, 2), grading_element(2, 3))

import pytest

from kdirac import (
    ArgumentErrorDimensionMismatch,
    ArgumentErrorEmptyGenerators,
    ArgumentErrorIndexOutOfRange,
    ArgumentErrorUnknownAction,
    OperatorStack,
    PolynomialSpace,
    SymbolMatrix,
    assemble_operator,
    build_D0_flat,
    composite_zero,
    discover_complex,
    discovery_rows,
    equivariance_closure,
    new_generators,
    row_action_for,
    so_weight,
    solution_dims,
    verify_exactness,
)


@pytest.fixture(scope="module")
def stack():
    return OperatorStack.start(2, 2)


@pytest.fixture(scope="module")
def first_generators(stack):
    return new_generators(stack, 2)


@pytest.fixture(scope="module")
def complex_2_2():
    return discover_complex(2, 2, window=3)


@pytest.fixture(scope="module")
def second_stack(stack, first_generators):
    d1 = assemble_operator(first_generators, name="D1")
    return stack.extended(d1)


def test_so_weight():
    space = PolynomialSpace.flat(2, 2)

    def unit(alpha, i):
        return tuple(int(v == space.x_index(alpha, i)) for v in range(space.nvars))

    assert so_weight(space, unit(1, 1)) == (-1, 0)
    assert so_weight(space, unit(2, 2)) == (1, 0)
    assert so_weight(space, unit(3, 1)) == (0, -1)


def test_symbol_frames():
    symbol = SymbolMatrix.from_operator(build_D0_flat(2, 2))
    assert symbol.degree == 1
    null = symbol.to_null()
    assert null.frame == "null"
    assert null.to_xi().entries == symbol.entries
    # a_j and a_j^+ each pick a single null variable
    assert all(len(p) == 1 for p in null.entries.values())


def test_start_stack(stack):
    assert stack.length == 1
    assert stack.stable
    assert [level.dim for level in stack.predicted] == [4, 8, 8, 4]
    assert stack.predicted_generators() == {2: 8}
    assert stack.actions[1].width == 8


def test_first_generators(stack, first_generators):
    assert new_generators(stack, 0) == []
    assert new_generators(stack, 1) == []
    assert len(first_generators) == 8
    assert stack.stats[2].found == 8
    assert all(g.width == 8 for g in first_generators)
    assert all(sum(g.weight[:2]) == 3 for g in first_generators)


def test_assembled_operator(second_stack):
    d1 = second_stack.last
    assert (d1.target_dim, d1.source_dim) == (8, 8)
    assert d1.order == 2
    assert second_stack.predicted_generators() == {1: 4}
    assert [row.passed for row in composite_zero(second_stack)] == [True]


def test_symbols_compose_to_zero(second_stack):
    s0 = second_stack.null_symbol(0)
    s1 = second_stack.null_symbol(1)
    assert (s1 @ s0).is_zero()
    with pytest.raises(ArgumentErrorDimensionMismatch):
        s0 @ s0


def test_assemble_rejects_empty():
    with pytest.raises(ArgumentErrorEmptyGenerators):
        assemble_operator([])


def test_extended_checks_weights(stack):
    with pytest.raises(ArgumentErrorDimensionMismatch):
        stack.extended(build_D0_flat(2, 2))


def test_exactness_at_terminal_spot(stack):
    rows = verify_exactness(stack, 1, [0, 1, 2])
    assert [(r.rank, r.kernel_dim) for r in rows] == [(8, 8), (64, 64), (280, 288)]
    assert [r.predicted for r in rows] == [8, 64, 280]
    assert [r.passed for r in rows] == [True, True, False]
    with pytest.raises(ArgumentErrorIndexOutOfRange):
        verify_exactness(stack, 2, [0])


def test_exactness_after_first_syzygies(second_stack):
    rows = verify_exactness(second_stack, 1, [0, 1, 2])
    assert all(r.passed for r in rows)
    assert rows[2].rank == 280
    assert all(r.predicted == r.kernel_dim for r in rows)
    assert verify_exactness(second_stack, 1, [-1])[0].passed


def test_exactness_prediction_uses_no_ranks(stack, monkeypatch):
    monkeypatch.setattr("kdirac.syzygy.rank", lambda m: 0)
    rows = verify_exactness(stack, 1, [0, 1, 2])
    assert [r.rank for r in rows] == [0, 0, 0]
    assert [r.predicted for r in rows] == [8, 64, 280]


def test_exactness_has_no_prediction_when_unstable():
    stack = OperatorStack.start(2, 1, allow_unstable=True)
    (row,) = verify_exactness(stack, 1, [1])
    assert row.predicted is None


def test_solution_dims():
    rows = solution_dims(build_D0_flat(2, 2), [0, 1, 2])
    assert [r.kernel_dim for r in rows] == [4, 24, 80]
    assert all(r.passed for r in rows)
    assert rows[1].to_dict()["predicted"] == 24


def test_row_actions():
    assert row_action_for(2, 2, 0).width == 4
    assert len(row_action_for(2, 2, 1).matrices) == 4 + 6
    with pytest.raises(ArgumentErrorUnknownAction):
        row_action_for(2, 2, 2)


def test_closure_of_first_generators(first_generators):
    report = equivariance_closure(first_generators, 2, 2)
    assert report.invariant
    assert report.span_dim == 8
    assert report.induced.width == 8
    assert report.to_dict()["failing"] == []


@pytest.mark.parametrize("size", [1, 7])
def test_truncated_generators_are_not_closed(first_generators, size):
    report = equivariance_closure(first_generators[:size], 2, 2)
    assert not report.invariant
    assert report.failing
    assert report.induced is None


def test_discovery_rows(stack):
    rows, gens = discovery_rows(stack, [1, 2])
    assert [r.kernel_dim for r in rows] == [0, 8]
    assert [r.predicted for r in rows] == [0, 8]
    assert all(r.passed for r in rows)
    assert len(gens) == 8


@pytest.mark.slow
def test_discover_complex_2_2():
    result = discover_complex(2, 2, window=1)
    stack = result.stack
    assert [op.name for op in stack.ops] == ["D0", "D1", "D2"]
    assert [(op.target_dim, op.source_dim) for op in stack.ops] == [(8, 4), (8, 8), (4, 8)]
    assert [op.order for op in stack.ops] == [1, 2, 1]
    assert result.passed
    assert all(c.invariant for c in result.closures)
    for spot in (1, 2, 3):
        assert all(r.passed for r in verify_exactness(stack, spot, range(3)))


@pytest.mark.slow
def test_discover_complex_default_window(complex_2_2):
    stack = complex_2_2.stack
    assert [op.order for op in stack.ops] == [1, 2, 1]
    assert [(op.target_dim, op.source_dim) for op in stack.ops] == [(8, 4), (8, 8), (4, 8)]
    assert complex_2_2.passed


@pytest.mark.slow
def test_exactness_at_higher_degrees(complex_2_2):
    stack = complex_2_2.stack
    rows = verify_exactness(stack, 1, range(2, 6))
    assert [r.rank for r in rows] == [280, 900, 2384, 5520]
    assert all(r.passed for r in rows)
    assert all(r.passed for r in verify_exactness(stack, 2, range(1, 5)))


def test_unstable_range_has_no_predictions():
    stack = OperatorStack.start(2, 1, allow_unstable=True)
    assert stack.predicted == []
    assert stack.predicted_generators() is None

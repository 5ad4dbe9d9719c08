import pytest

from kdirac import (
    ArgumentErrorInvalidPartition,
    ConfigErrorUnstableRange,
    Partition,
    conjugate,
    cover_pairs,
    dim_W,
    dims_table,
    enumerate_Sk,
    euler_solution_dims,
    flat_jet_dim,
    less,
    predicted_generators,
    stats,
)


def test_partition_normalizes_trailing_zeros():
    assert Partition((2, 1, 0), 3, 3) == Partition((2, 1), 3, 3)
    assert Partition((2, 1, 0)).size == 3


@pytest.mark.parametrize("parts", [(1, 2), (-1,), (3,)])
def test_partition_rejects(parts):
    with pytest.raises(ArgumentErrorInvalidPartition):
        Partition(parts, 2, 2)


def test_conjugate():
    assert conjugate((3, 1)) == (2, 1, 1)
    assert conjugate(()) == ()
    assert conjugate(conjugate((4, 2, 2))) == (4, 2, 2)


def test_stats():
    assert stats(()) == (0, 0, 0)
    assert stats((1,)) == (0, 1, 1)
    assert stats((2, 1)) == (1, 1, 2)
    assert stats((2, 2)) == (1, 2, 3)
    assert stats((3, 3, 3)) == (3, 3, 6)


def test_less():
    assert less((1,), (2, 1))
    assert not less((2, 1), (2, 1))
    assert not less((2,), (1, 1))
    assert not less((1, 1, 1), (2, 2))


def test_sk_table_2_2():
    table = enumerate_Sk(2, 2)
    assert table.to_dict() == {"0": [[]], "1": [[1]], "2": [[2, 1]], "3": [[2, 2]]}
    assert table.max_level == 3


def test_sk_table_3_3_levels():
    table = enumerate_Sk(3, 3)
    assert [a.parts for a in table.level(3)] == [(2, 2), (3, 1, 1)]
    assert table.level(6) == (Partition((3, 3, 3)),)
    assert all(conjugate(a) == a.parts for a in table.all())


@pytest.mark.parametrize("k", [2, 3, 4])
def test_cover_orders(k):
    orders = {p.order for p in cover_pairs(k, k)}
    assert orders <= {1, 2}


def test_cover_pairs_need_stable_range():
    with pytest.raises(ConfigErrorUnstableRange):
        cover_pairs(3, 2)
    assert cover_pairs(3, 2, allow_unstable=True)


@pytest.mark.parametrize(
    "parts,k,expected",
    [((), 2, 1), ((1,), 2, 2), ((2, 1), 2, 2), ((2, 2), 2, 1), ((2, 1), 3, 8), ((1, 1), 4, 6)],
)
def test_dim_W(parts, k, expected):
    assert dim_W(parts, k) == expected


def test_dims_table_2_2():
    rows = dims_table(2, 2, max_degree=2)
    assert [r.dim_V for r in rows] == [4, 8, 8, 4]
    assert [r.level_dim for r in rows] == [4, 8, 8, 4]
    assert rows[0].flat_dims == (4, 32, 144)
    assert rows[2].flat_dims == (0, 8, 64)
    assert rows[1].to_dict()["partition"] == [1]


def test_flat_jet_dim_is_shifted():
    assert flat_jet_dim((2, 1), 2, 2, 0) == 0
    assert flat_jet_dim((2, 1), 2, 2, 1) == 8


def test_euler_solution_dims():
    assert [euler_solution_dims(2, 2, d) for d in range(5)] == [4, 24, 80, 200, 420]


def test_predicted_generators():
    assert predicted_generators(2, 2, 0) == {2: 8}
    assert predicted_generators(2, 2, 1) == {1: 4}
    assert predicted_generators(2, 2, 2) == {}
    assert predicted_generators(3, 3, 0) == {2: 64}

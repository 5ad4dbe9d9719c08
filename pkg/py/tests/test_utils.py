import os

from kdirac import atomic_write_text, compositions, parallel_map
from kdirac.utils import falling_factorial, multi_factorial


def test_compositions():
    assert list(compositions(2, 2)) == [(2, 0), (1, 1), (0, 2)]
    assert list(compositions(0, 0)) == [()]
    assert list(compositions(1, 0)) == []
    assert len(list(compositions(3, 3))) == 10


def test_factorials():
    assert falling_factorial((3, 2), (2, 1)) == 12
    assert falling_factorial((1, 0), (0, 1)) == 0
    assert multi_factorial((3, 0, 2)) == 12


def test_parallel_map_keeps_order():
    items = [-3, 1, -2, 5]
    assert parallel_map(abs, items) == [3, 1, 2, 5]
    assert parallel_map(abs, items, jobs=2) == [3, 1, 2, 5]


def test_atomic_write_text(tmpdir):
    path = os.path.join(str(tmpdir), "nested", "out.txt")
    atomic_write_text(path, "first")
    atomic_write_text(path, "second")
    with open(path) as f:
        assert f.read() == "second"
    assert os.listdir(os.path.dirname(path)) == ["out.txt"]

import os

import pytest

from kdirac import CacheErrorCorrupted, ExactMatrix, MatrixCache, Scalar, build_D0_flat, gr_matrix
from kdirac.consts import ErrorCode


def test_store_and_load(tmpdir):
    cache = MatrixCache(str(tmpdir))
    m = ExactMatrix.from_rows([[Scalar(1, 2), 0], [Scalar(0, -1), 3]])
    cache.store(2, 2, "D0", 1, True, m)
    assert cache.load(2, 2, "D0", 1, True) == m
    assert cache.hits == 1
    assert cache.load(2, 2, "D0", 1, False) is None
    assert cache.misses == 1


def test_file_format(tmpdir):
    cache = MatrixCache(str(tmpdir))
    cache.store(2, 3, "D1", 0, False, ExactMatrix.from_rows([[1, Scalar(0, 1)]]))
    path = cache.path(2, 3, "D1", 0, False)
    with open(path) as f:
        assert f.read() == (
            "kdirac-matrix/1 k=2 n=3 op=D1 degree=0 weighted=0 rows=1 cols=2\n"
            "1/1+0/1 i, 0/1+1/1 i\n"
        )


def test_unsafe_names_are_escaped(tmpdir):
    cache = MatrixCache(str(tmpdir))
    path = cache.path(2, 2, "L[e^1(x)eps_2]", 0, True)
    assert os.path.dirname(path) == str(tmpdir)
    assert "[" not in os.path.basename(path)


def test_corrupted_file_is_dropped(tmpdir):
    cache = MatrixCache(str(tmpdir))
    cache.store(2, 2, "D0", 1, True, ExactMatrix.identity(2))
    path = cache.path(2, 2, "D0", 1, True)
    with open(path, "w") as f:
        f.write("kdirac-matrix/1 k=2 n=2 op=D0 degree=1 weighted=1 rows=2 cols=2\n1.0, 0\n")
    assert cache.load(2, 2, "D0", 1, True) is None
    assert not os.path.exists(path)
    (event,) = cache.events
    assert event["code"] == ErrorCode.CACHE_ERROR_CORRUPTED
    assert event["error"] == "CacheErrorCorrupted"


def test_header_must_match_key(tmpdir):
    cache = MatrixCache(str(tmpdir))
    cache.store(2, 2, "D0", 1, True, ExactMatrix.identity(1))
    os.rename(cache.path(2, 2, "D0", 1, True), cache.path(2, 2, "D0", 2, True))
    assert cache.load(2, 2, "D0", 2, True) is None
    assert len(cache.events) == 1


def test_gr_matrix_goes_through_cache(tmpdir):
    cache = MatrixCache(str(tmpdir))
    d0 = build_D0_flat(2, 2)
    first = gr_matrix(d0, 1, weighted=False, cache=cache)
    assert cache.misses == 1
    assert gr_matrix(d0, 1, weighted=False, cache=cache) == first
    assert cache.hits == 1


def test_unreadable_entry_raises(tmpdir):
    cache = MatrixCache(str(tmpdir))
    os.makedirs(cache.path(2, 2, "D0", 1, True))
    with pytest.raises(CacheErrorCorrupted):
        cache.load(2, 2, "D0", 1, True)


def test_directory_that_is_a_file_raises(tmpdir):
    blocker = tmpdir.join("cache")
    blocker.write("")
    cache = MatrixCache(str(blocker))
    with pytest.raises(CacheErrorCorrupted):
        cache.store(2, 2, "D0", 1, True, ExactMatrix.identity(1))
    with pytest.raises(CacheErrorCorrupted):
        cache.load(2, 2, "D0", 1, True)

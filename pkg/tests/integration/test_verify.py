import os

import pytest


@pytest.mark.parametrize("k,n", [(2, 2), (2, 3), (3, 3)])
def test_verify_liealg(kdirac, k, n):
    run = kdirac("verify-liealg", "--k", k, "--n", n)
    assert run.status == 0, run.stdout
    assert all(check["pass"] for check in run.report["checks"])


def test_verify_fields(kdirac):
    run = kdirac("verify-fields", "--k", 2, "--n", 3)
    assert run.status == 0
    (check,) = run.report["checks"]
    assert check["constant"] == run.report["normalization"]


def test_verify_descend_reuses_cache(kdirac, cache_dir):
    directory = cache_dir("matrices")
    first = kdirac("verify-descend", "--max-degree", 2, "--cache", directory)
    assert first.status == 0
    files = sorted(os.listdir(str(directory)))
    assert files

    # break one entry; it is reported, rebuilt and the run still passes
    with open(os.path.join(str(directory), files[0]), "w") as f:
        f.write("not a matrix\n")
    second = kdirac("verify-descend", "--max-degree", 2, "--cache", directory)
    assert second.status == 0
    (event,) = second.report["cache_events"]
    assert event["code"] == 301
    assert sorted(os.listdir(str(directory))) == files


def test_cache_dir_from_environment(kdirac, cache_dir):
    directory = cache_dir("env")
    run = kdirac("verify-descend", "--max-degree", 1, env={"KDIRAC_CACHE_DIR": str(directory)})
    assert run.status == 0
    assert os.listdir(str(directory))


def test_duality(kdirac):
    run = kdirac("duality", "--k", 2, "--n", 2, "--max-degree", 3)
    assert run.status == 0
    invertible = [c for c in run.report["checks"] if c.get("degree") is not None]
    assert [c["dim"] for c in invertible] == [1, 8, 37, 128]

import pytest


def test_solution_dims(kdirac):
    run = kdirac("solution-dims", "--k", 2, "--n", 2, "--max-degree", 4)
    assert run.status == 0
    rows = run.report["rows"]
    assert [row["kernel_dim"] for row in rows] == [4, 24, 80, 200, 420]
    assert all(row["pass"] for row in rows)


def test_discover_first_syzygies(kdirac):
    run = kdirac("discover", "--k", 2, "--n", 2, "--degree", 2)
    assert run.status == 0
    (row,) = run.report["rows"]
    assert (row["kernel_dim"], row["predicted"]) == (8, 8)


def test_discover_unstable_has_no_prediction(kdirac):
    run = kdirac(
        "discover", "--k", 2, "--n", 1, "--degree", 1, "--allow-unstable-range"
    )
    assert run.status == 0
    (row,) = run.report["rows"]
    assert row["predicted"] is None


@pytest.mark.slow
def test_discover_3_3_first_syzygies(kdirac):
    run = kdirac("discover", "--k", 3, "--n", 3, "--degree", 2, "--jobs", 2)
    assert run.status == 0
    (row,) = run.report["rows"]
    assert row["kernel_dim"] == 64


@pytest.mark.slow
def test_discover_complex_2_2(kdirac):
    run = kdirac("discover", "--k", 2, "--n", 2, "--window", 1)
    assert run.status == 0, run.stdout
    report = run.report
    assert [(op["name"], op["rows"], op["cols"], op["order"]) for op in report["operators"]] == [
        ("D0", 8, 4, 1),
        ("D1", 8, 8, 2),
        ("D2", 4, 8, 1),
    ]
    assert all(check["pass"] for check in report["checks"])


@pytest.mark.slow
def test_verify_complex_2_2(kdirac):
    run = kdirac("verify-complex", "--k", 2, "--n", 2, "--max-degree", 2, "--window", 1)
    assert run.status == 0, run.stdout
    rows = run.report["rows"]
    assert {row["spot"] for row in rows} == {1, 2, 3}
    assert all(row["rank"] == row["kernel_dim"] for row in rows)

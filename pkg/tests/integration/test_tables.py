import csv
import io

import pytest


def test_sk_table_2_2(kdirac):
    run = kdirac("sk-table", "--k", 2, "--n", 2)
    assert run.status == 0, run.stderr
    report = run.report
    assert report["clifford_convention"] == "gamma_alpha^2 = -1"
    assert [(row["j"], row["partition"]) for row in report["rows"]] == [
        (0, []),
        (1, [1]),
        (2, [2, 1]),
        (3, [2, 2]),
    ]
    assert report["pass"] is True


@pytest.mark.parametrize("k", [3, 4])
def test_cover_orders(kdirac, k):
    run = kdirac("sk-table", "--k", k, "--n", k)
    assert run.status == 0
    orders = {pair["order"] for pair in run.report["cover_pairs"]}
    assert orders == {1, 2}


def test_dims(kdirac):
    run = kdirac("dims", "--k", 2, "--n", 2, "--max-degree", 3)
    assert run.status == 0
    report = run.report
    assert [row["dim_V"] for row in report["rows"]] == [4, 8, 8, 4]
    assert report["rows"][1]["eigenvalue"] == "2"
    slices = [c for c in report["checks"] if c["check"].startswith("dim S^")]
    assert [c["dim"] for c in slices] == [1, 8, 37, 128]


def test_dims_csv(kdirac):
    run = kdirac("dims", "--max-degree", 1, "--format", "csv")
    assert run.status == 0
    rows = list(csv.DictReader(io.StringIO(run.stdout)))
    assert rows[0]["dim_V"] == "4"
    assert rows[0]["flat_dims"] == "[4, 32]"
    assert all(row["pass"] in ("", "true") for row in rows)

import csv
import re

import pytest

from twinarray.bench import CSV_HEADER, TrialRecord, write_csv
from twinarray.cli import main
from twinarray.datagen import HEADER_SIZE, read_dataset


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_writes_tas1(tmp_path, capsys):
    out = tmp_path / "d.bin"
    code, stdout, _ = run(capsys, "gen", "--dist", "u_random", "--n", 100, "--k", 99, "--seed", 7, "--out", out)
    assert code == 0
    assert out.stat().st_size == 8 * 100 + 21
    assert re.search(r"n=100 k=99 seed=7 digest=[0-9a-f]{16}", stdout)
    data, k = read_dataset(out)
    assert sorted(data) == list(range(100)) and k == 99


def test_gen_is_byte_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a.bin", tmp_path / "b.bin"
    for path in (a, b):
        assert run(capsys, "gen", "--dist", "nsorted", "--n", 500, "--seed", 3, "--out", path)[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_invalid_spec(tmp_path, capsys):
    out = tmp_path / "x.bin"
    code, _, err = run(capsys, "gen", "--dist", "u_random", "--n", 100, "--k", 50, "--out", out)
    assert code == 2
    assert not out.exists()


@pytest.mark.parametrize("flag", [["--n", "-5"], ["--n", "ten"], ["--displacement", "2"]])
def test_gen_bad_numeric_flag(tmp_path, capsys, flag):
    out = tmp_path / "x.bin"
    argv = ["gen", "--dist", "random", "--n", "10", "--out", str(out)]
    argv += flag
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2
    assert not out.exists()


def test_gen_io_failure(tmp_path, capsys):
    code, _, _ = run(capsys, "gen", "--dist", "random", "--n", 10, "--out", tmp_path / "missing" / "d.bin")
    assert code == 3


@pytest.fixture
def dataset(tmp_path, capsys):
    path = tmp_path / "u.bin"
    assert run(capsys, "gen", "--dist", "u_random", "--n", 300, "--k", 1000, "--seed", 2, "--out", path)[0] == 0
    return path


def test_sort_twinarray_distinct_path(tmp_path, capsys, dataset):
    out = tmp_path / "s.bin"
    code, stdout, _ = run(capsys, "sort", "--algo", "twinarray", "--in", dataset, "--out", out, "--verify")
    assert code == 0
    assert "path=distinct" in stdout
    assert "verify=pass" in stdout
    assert re.search(r"wall_time_s=\S+ aux_words=\d+", stdout)
    original, k = read_dataset(dataset)
    assert read_dataset(out) == (sorted(original), k)


@pytest.mark.parametrize(
    "algo", ["twinarray", "counting", "pigeonhole", "msd_radix", "spreadsort", "flashsort", "bucket", "quicksort"]
)
def test_sort_every_algo_verifies(tmp_path, capsys, dataset, algo):
    code, stdout, _ = run(capsys, "sort", "--algo", algo, "--in", dataset, "--out", tmp_path / "o.bin", "--verify")
    assert code == 0
    assert ("path=" in stdout) == (algo == "twinarray")


def test_sort_bad_algo(tmp_path, dataset):
    with pytest.raises(SystemExit) as info:
        main(["sort", "--algo", "heapsort", "--in", str(dataset), "--out", str(tmp_path / "o.bin")])
    assert info.value.code == 2


def test_sort_missing_input(tmp_path, capsys):
    code, _, _ = run(capsys, "sort", "--algo", "twinarray", "--in", tmp_path / "nope.bin", "--out", tmp_path / "o.bin")
    assert code == 3


def test_sort_truncated_input(tmp_path, capsys, dataset):
    bad = tmp_path / "bad.bin"
    bad.write_bytes(dataset.read_bytes()[:-3])
    code, _, _ = run(capsys, "sort", "--algo", "twinarray", "--in", bad, "--out", tmp_path / "o.bin")
    assert code == 4
    bad.write_bytes(dataset.read_bytes()[: HEADER_SIZE - 1])
    assert run(capsys, "sort", "--algo", "quicksort", "--in", bad, "--out", tmp_path / "o.bin")[0] == 4


def test_sort_verification_failure(tmp_path, capsys, dataset, monkeypatch):
    from twinarray import cli

    monkeypatch.setattr(cli, "reference_sort", lambda data: sorted(data, reverse=True))
    code, stdout, _ = run(capsys, "sort", "--algo", "bucket", "--in", dataset, "--out", tmp_path / "o.bin", "--verify")
    assert code == 5
    assert "verify=fail" in stdout


def test_sort_range_guard(tmp_path, capsys, dataset):
    code, _, err = run(capsys, "sort", "--algo", "counting", "--in", dataset, "--out", tmp_path / "o.bin",
                       "--max-slots", 10)
    assert code == 2
    assert "range guard" in err


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_bench_grid_and_header(tmp_path, capsys):
    out = tmp_path / "b.csv"
    code, stdout, _ = run(capsys, "bench", "--algos", "twinarray,quicksort", "--dists", "random,u_random",
                          "--sizes", "50,100", "--reps", 2, "--seed", 5, "--csv", out)
    assert code == 0
    rows = read_rows(out)
    assert rows[0] == CSV_HEADER
    assert len(rows) == 1 + 2 * 2 * 2 * 2
    assert all(r[-1] == "ok" for r in rows[1:])
    assert all((r[8] != "") == (r[0] == "twinarray") for r in rows[1:])

    again = tmp_path / "c.csv"
    run(capsys, "bench", "--algos", "twinarray,quicksort", "--dists", "random,u_random",
        "--sizes", "50,100", "--reps", 2, "--seed", 5, "--csv", again)
    assert [r[7] for r in rows] == [r[7] for r in read_rows(again)]


def test_bench_full_algorithm_grid(tmp_path, capsys):
    out = tmp_path / "b.csv"
    assert run(capsys, "bench", "--sizes", 64, "--reps", 5, "--csv", out)[0] == 0
    rows = read_rows(out)[1:]
    assert len(rows) == 8 * 6 * 5
    assert all(r[-1] == "ok" for r in rows)


def test_bench_fixed_k_records_failures_in_file(tmp_path, capsys):
    out = tmp_path / "b.csv"
    code, _, _ = run(capsys, "bench", "--algos", "counting,quicksort", "--dists", "random", "--sizes", 100,
                     "--k-mode", "fixed:100000", "--reps", 1, "--max-slots", 1000, "--csv", out)
    assert code == 0
    rows = read_rows(out)[1:]
    assert [(r[0], r[-1]) for r in rows] == [("counting", "failed"), ("quicksort", "ok")]


def test_bench_invalid_grid(tmp_path):
    for argv in (["--sizes", ""], ["--sizes", "10", "--algos", "bogo"], ["--sizes", "10", "--k-mode", "double"]):
        with pytest.raises(SystemExit) as info:
            main(["bench", "--csv", str(tmp_path / "x.csv"), *argv])
        assert info.value.code == 2
    assert not (tmp_path / "x.csv").exists()


def test_bench_unique_cells_invalid_are_recorded(tmp_path, capsys):
    out = tmp_path / "b.csv"
    code, _, _ = run(capsys, "bench", "--algos", "twinarray", "--dists", "u_random", "--sizes", 100,
                     "--k-mode", "fixed:10", "--reps", 1, "--csv", out)
    assert code == 0
    assert read_rows(out)[1][-1] == "failed"


def test_analyze_single_row(tmp_path, capsys):
    src = tmp_path / "one.csv"
    write_csv([TrialRecord("twinarray", "random", 10, 9, 0, 0, 0.1, 20, "frequency")], src)
    code, _, err = run(capsys, "analyze", "--csv", src, "--report", tmp_path / "r.md", "--plotdata", tmp_path / "p")
    assert code == 0
    assert "warning" in err
    assert "Warnings" in (tmp_path / "r.md").read_text()


def test_analyze_malformed_csv(tmp_path, capsys):
    src = tmp_path / "bad.csv"
    src.write_text("algo,dist\nfoo,bar\n")
    code, _, _ = run(capsys, "analyze", "--csv", src, "--report", tmp_path / "r.md", "--plotdata", tmp_path / "p")
    assert code == 2


def test_analyze_missing_csv(tmp_path, capsys):
    code, _, _ = run(capsys, "analyze", "--csv", tmp_path / "none.csv", "--report", tmp_path / "r.md",
                     "--plotdata", tmp_path / "p")
    assert code == 3


def test_range_sweep_via_cli(tmp_path, capsys):
    csv_path = tmp_path / "sweep.csv"
    code, _, _ = run(capsys, "bench", "--algos", "twinarray", "--dists", "random", "--sizes", 100,
                     "--k-mode", "fixed:10000,20000,40000,80000,160000", "--reps", 3, "--csv", csv_path)
    assert code == 0
    report = tmp_path / "r.md"
    plots = tmp_path / "plots"
    assert run(capsys, "analyze", "--csv", csv_path, "--report", report, "--plotdata", plots)[0] == 0
    text = report.read_text()
    row = next(line for line in text.splitlines() if line.startswith("| twinarray | random | 100 |"))
    memory_r = row.split("|")[-2].strip()
    assert memory_r.startswith("1.000000")
    assert (plots / "twinarray_random_aux_vs_k.dat").exists()
    assert (plots / "twinarray_random_time_vs_k.dat").exists()
    lines = (plots / "twinarray_random_aux_vs_k.dat").read_text().splitlines()
    assert len(lines) == 5
    for line in lines:
        k, aux = line.split()
        assert int(aux) == 2 * (int(k) + 1)

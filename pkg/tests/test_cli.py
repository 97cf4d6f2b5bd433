import json

import pytest

from curvecensus.cli import (
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_RESOURCE,
    EXIT_USAGE,
    SWEEP_HEADER,
    main,
)


def run(argv, capsys):
    code = main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_census_json(tmp_path, capsys):
    out = tmp_path / "c5.json"
    code, _, _ = run(["--cache-dir", str(tmp_path / "cache"),
                      "census", "5", "--out", str(out)], capsys)
    assert code == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["q"] == 5 and doc["p"] == 5 and doc["k"] == 1
    assert doc["F"] == 11
    assert doc["G_max"] == 2
    assert doc["t_max"] == [0]
    assert len(doc["entries"]) == 11
    keys = [(e["n"], e["m"]) for e in doc["entries"]]
    assert keys == sorted(keys)
    assert doc["bounds"]["lower"] < doc["F"] < doc["bounds"]["upper"]


def test_census_csv_stdout(tmp_path, capsys):
    code, out, _ = run(["--cache-dir", str(tmp_path), "census", "5", "--format", "csv"], capsys)
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "m,n,t,count"
    assert len(lines) == 12
    assert "1,6,0,2" in lines


def test_census_q4_supersingular(tmp_path, capsys):
    code, out, _ = run(["--cache-dir", str(tmp_path), "census", "4"], capsys)
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["F"] == 9
    entries = {(e["m"], e["n"]): e["count"] for e in doc["entries"]}
    assert entries[(3, 3)] == 1 and entries[(1, 1)] == 1


def test_census_characteristic_two_and_three(tmp_path, capsys):
    code, out, _ = run(["--cache-dir", str(tmp_path), "census", "2"], capsys)
    assert code == EXIT_OK
    assert json.loads(out)["F"] == 5
    code, out, _ = run(["--cache-dir", str(tmp_path), "census", "27"], capsys)
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["p"] == 3 and doc["k"] == 3
    entries = {(e["m"], e["n"]): e["count"] for e in doc["entries"]}
    assert entries[(1, 19)] == 1 and entries[(1, 37)] == 1  # traces +-9 = +-sqrt(pq)


def test_census_rejects_non_prime_power(tmp_path, capsys):
    code, _, err = run(["--cache-dir", str(tmp_path), "census", "6"], capsys)
    assert code == EXIT_USAGE
    assert "not a prime power" in err


def test_census_deterministic(tmp_path, capsys):
    a = run(["--cache-dir", str(tmp_path), "census", "49"], capsys)[1]
    b = run(["--cache-dir", str(tmp_path), "census", "49"], capsys)[1]
    assert a == b


def test_verify_small(tmp_path, capsys):
    code, out, _ = run(["--cache-dir", str(tmp_path), "verify", "8"], capsys)
    assert code == EXIT_OK
    assert "q=5: OK" in out
    assert "q=7: OK" in out
    assert "q=8: skipped (p=2" in out
    assert "q=4: skipped" in out


def test_verify_extension_fields(tmp_path, capsys):
    code, out, _ = run(["--cache-dir", str(tmp_path), "verify", "30"], capsys)
    assert code == EXIT_OK
    assert "q=25: OK" in out


def test_verify_cap(tmp_path, capsys):
    code, _, err = run(["--cache-dir", str(tmp_path), "verify", "10000"], capsys)
    assert code == EXIT_USAGE
    assert "oracle cap" in err


def test_sweep_csv_and_summary(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    code, _, _ = run(["--cache-dir", str(tmp_path / "cache"),
                      "sweep", "200", "--out", str(out)], capsys)
    assert code == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0].startswith("#") and "natural" in lines[0]
    assert lines[1] == SWEEP_HEADER
    assert len(lines) == 2 + 46  # primes up to 200
    row5 = next(l for l in lines if l.startswith("5,"))
    fields = row5.split(",")
    assert fields[:5] == ["5", "2", "2", "1", "1"]
    assert fields[5] == "0" and fields[6] == "1"
    summary = json.loads(out.with_suffix(".csv.summary.json").read_text())
    assert summary["primes"] == 46
    assert summary["same_t"] + summary["different_t"] == 46
    assert set(summary["ratio_one_primes"]) >= {2, 5, 7, 17, 29, 41, 101}


def test_sweep_deterministic(tmp_path, capsys):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    run(["--cache-dir", str(tmp_path), "sweep", "300", "--out", str(out1)], capsys)
    run(["--cache-dir", str(tmp_path), "sweep", "300", "--out", str(out2)], capsys)
    assert out1.read_bytes() == out2.read_bytes()


def test_avg(tmp_path, capsys):
    code, out, _ = run(["--cache-dir", str(tmp_path), "avg", "100"], capsys)
    assert code == EXIT_OK
    from curvecensus.arith import prime_powers_up_to
    from curvecensus.census import count_F

    expected = sum(count_F(q) for q in prime_powers_up_to(100))
    assert f"q <= 100: {expected}" in out
    assert "ratio:" in out


def test_avg_usage_errors(tmp_path, capsys):
    assert run(["--cache-dir", str(tmp_path), "avg", "0"], capsys)[0] == EXIT_USAGE
    assert run(["--cache-dir", str(tmp_path), "avg", "2000000"], capsys)[0] == EXIT_USAGE


def test_theta(tmp_path, capsys):
    code, out, _ = run(["--cache-dir", str(tmp_path), "theta", "1"], capsys)
    assert code == EXIT_OK
    assert "2.666666667" in out
    _, out10, _ = run(["--cache-dir", str(tmp_path), "theta", "10"], capsys)
    _, out100, _ = run(["--cache-dir", str(tmp_path), "theta", "100"], capsys)

    def tail(s):
        return float(s.splitlines()[1].split(":")[1])

    assert tail(out10) > tail(out100)


def test_theta_usage(tmp_path, capsys):
    assert run(["--cache-dir", str(tmp_path), "theta", "0"], capsys)[0] == EXIT_USAGE


def test_bad_subcommand_exit_code(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--cache-dir", str(tmp_path), "nonsense"])
    assert exc.value.code == EXIT_USAGE


def test_cache_reuse(tmp_path, capsys):
    cache = tmp_path / "cache"
    run(["--cache-dir", str(cache), "census", "30011"], capsys)
    files = list(cache.glob("cnt_*.bin"))
    assert len(files) == 1
    # a second command within the cached limit must not create a new file
    run(["--cache-dir", str(cache), "census", "29989"], capsys)
    assert list(cache.glob("cnt_*.bin")) == files

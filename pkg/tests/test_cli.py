import json

import pytest

from propp.cli import main
from propp.construct import enumerate_s


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_sieve_csv(capsys):
    code, out, _ = run(capsys, "sieve", "--limit", "100", "--emit", "csv")
    assert code == 0
    assert [int(line) for line in out.split()] == \
        [3, 7, 11, 19, 23, 31, 43, 47, 59, 67, 71, 79, 83]


def test_sieve_json(capsys):
    code, out, _ = run(capsys, "sieve", "--limit", "20", "--emit", "json")
    body = json.loads(out)
    assert code == 0
    assert body["schema_version"] == "1"
    assert body["class3"] == [3, 7, 11, 19]
    assert body["prime_count"] == 8


def test_construct_seqfile_and_json(capsys):
    code, out, _ = run(capsys, "construct", "--set-index", "1", "--limit", "10000")
    assert code == 0
    assert out == "729\n3969\n9801\n"
    code, out, _ = run(capsys, "construct", "--all", "--limit", "10000",
                       "--emit", "json")
    body = json.loads(out)
    assert body["count"] == 3
    assert body["elements"][0] == {"value": 729, "set_index": 1, "nu_factors": [3]}


def test_construct_big_values_emitted_as_strings(capsys):
    code, out, _ = run(capsys, "construct", "--set-index", "8",
                       "--limit", str(10 ** 27), "--emit", "json")
    body = json.loads(out)
    assert code == 0
    assert body["count"] >= 1
    value = body["elements"][0]["value"]
    assert isinstance(value, str)  # beyond 2^53, decimal string
    assert int(value) == 47 ** 4 * (3 * 7 * 11 * 19 * 23 * 31 * 43 * 47) ** 2


def test_construct_requires_exactly_one_selector(capsys):
    code, _, err = run(capsys, "construct", "--limit", "100")
    assert code == 2 and "set-index" in err


def test_baseline(capsys):
    code, out, _ = run(capsys, "baseline", "--kind", "squares", "--limit", "150")
    assert code == 0 and out == "9\n49\n121\n"
    code, out, _ = run(capsys, "baseline", "--kind", "block", "--x", "9")
    assert code == 0 and out == "6\n7\n8\n9\n"
    code, _, err = run(capsys, "baseline", "--kind", "block")
    assert code == 2


def test_verify_roundtrip(tmp_path, capsys):
    path = tmp_path / "s.txt"
    path.write_text("729\n3969\n9801\n")
    code, out, _ = run(capsys, "verify", "--input", str(path))
    body = json.loads(out)
    assert code == 0 and body["holds"] is True

    path.write_text("1\n2\n3\n")
    code, out, _ = run(capsys, "verify", "--input", str(path))
    body = json.loads(out)
    assert code == 1
    assert body["holds"] is False and body["witness"] == [1, 2, 3]

    path.write_text("3\n2\n")
    code, _, err = run(capsys, "verify", "--input", str(path))
    assert code == 2 and "ascending" in err


def test_lemma1(capsys):
    code, out, _ = run(capsys, "lemma1", "21", "7", "14")
    assert code == 0 and out == "applicable+verified p=3\n"
    code, out, _ = run(capsys, "lemma1", "25", "3", "4", "--emit", "json")
    body = json.loads(out)
    assert code == 0
    assert body["outcome"] == "not-applicable" and body["prime"] is None
    code, _, err = run(capsys, "lemma1", "0", "1", "1")
    assert code == 2


def test_pik_exact(capsys):
    code, out, _ = run(capsys, "pik", "--x", "100", "--k", "2", "--mode", "exact")
    body = json.loads(out)
    assert code == 0 and body["exact"] == 6


def test_pik_all_small_truncations(capsys):
    code, out, _ = run(capsys, "pik", "--x", "1000000", "--k", "2",
                       "--mode", "all", "--plimit", "1000000",
                       "--h-plimit", "100000")
    body = json.loads(out)
    assert code == 0
    assert body["exact"] > 0
    assert body["meng_full"] > body["meng_main"] > 0
    assert body["landau"] == pytest.approx(body["meng_main"] * 4, rel=1e-12)
    assert "neglected_term_scale" in body


def test_pik_domain_error_exit_code(capsys):
    code, _, err = run(capsys, "pik", "--x", "100", "--k", "0")
    assert code == 2 and "error:" in err


def test_compare_csv_columns(capsys):
    code, out, _ = run(capsys, "compare", "--x-grid", "100,1000", "--k-set", "1,2",
                       "--plimit", "1000000", "--h-plimit", "100000")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "x,k,exact,landau,meng_main,meng_full,ratio"
    assert len(lines) == 5
    first = lines[1].split(",")
    assert first[0] == "100" and first[1] == "1" and first[2] == "13"
    # k = 1 rows leave the expansion columns empty
    assert first[4] == "" and first[5] == ""


def test_count_s(capsys):
    code, out, _ = run(capsys, "count-s", "--limit", "10000")
    body = json.loads(out)
    assert code == 0
    assert body["per_index"] == {"1": 3}
    assert body["total"] == 3
    assert body["baseline_squares"] == 13
    assert body["envelope"] == pytest.approx(10.505067, rel=1e-5)
    code, out, _ = run(capsys, "count-s", "--limit", "728")
    body = json.loads(out)
    assert body["total"] == 0 and body["per_index"] == {}
    assert body["envelope"] == pytest.approx(7.348513, rel=1e-5)
    # below e^e the envelope is undefined and reported as null
    code, out, _ = run(capsys, "count-s", "--limit", "10")
    body = json.loads(out)
    assert body["total"] == 0 and body["envelope"] is None


def test_count_s_total_matches_union(capsys):
    code, out, _ = run(capsys, "count-s", "--limit", "100000000")
    body = json.loads(out)
    assert code == 0
    assert body["total"] == len(enumerate_s(10 ** 8))


def test_bounds_small_truncations(capsys):
    code, out, _ = run(capsys, "bounds", "--plimit", "1000000",
                       "--h-plimit", "100000")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines and all(line.startswith("PASS") for line in lines)
    code, out, _ = run(capsys, "bounds", "--plimit", "1000000",
                       "--h-plimit", "100000", "--emit", "json")
    body = json.loads(out)
    assert body["all_passed"] is True


def test_constants_json(capsys):
    code, out, _ = run(capsys, "constants", "--plimit", "1000000",
                       "--h-plimit", "100000")
    body = json.loads(out)
    assert code == 0
    assert body["m34"]["truncation"] == 1000000
    assert 0.0432 < body["m34"]["value"] < 0.0533
    assert body["all_passed"] is True


def test_envelope_and_theorem_terms(capsys):
    code, out, _ = run(capsys, "envelope", "--x", "1000000")
    body = json.loads(out)
    assert code == 0 and body["value"] == pytest.approx(41.8694, rel=1e-4)

    code, out, _ = run(capsys, "theorem-terms", "--log-x", "1e5", "--j", "2")
    body = json.loads(out)
    assert code == 0 and body["bracket"] >= 1 / 2.7182818284590455

    big_x = str(10 ** 2590)
    code, out, _ = run(capsys, "theorem-terms", "--x", big_x, "--j", "2")
    body = json.loads(out)
    assert code == 0 and body["k"] == 4
    assert body["x"] == big_x  # huge int survives as a decimal string

    code, _, err = run(capsys, "theorem-terms", "--j", "2")
    assert code == 2


def test_plimit_env_var_default(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("PROPP_PLIMIT", "100000")
    # parser defaults are evaluated at build time, so rebuild through main
    code, out, _ = run(capsys, "constants", "--h-plimit", "100000")
    body = json.loads(out)
    assert code == 0 and body["plimit"] == 100000


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "out.txt"
    code, out, _ = run(capsys, "sieve", "--limit", "30", "--emit", "csv",
                       "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text() == "3\n7\n11\n19\n23\n"


def test_unknown_flag_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["sieve", "--limit", "10", "--bogus"])
    assert exc.value.code == 2

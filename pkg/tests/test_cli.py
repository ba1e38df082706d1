import json

from muram.cli import main


def write_covering(tmp_path, obj, name="cov.json"):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def kummer_obj(p, exponents, factors, **extra):
    obj = {"group": {"p": p, "exponents": exponents}, "kind": "kummer", "f": factors}
    obj.update(extra)
    return obj


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


def test_ramify_mu3(tmp_path, capsys):
    path = write_covering(tmp_path, kummer_obj(3, [1], [[0, 1]]))
    code, rep = run(capsys, ["ramify", "--input", path])
    assert code == 0
    assert rep["degree"] == 2
    assert rep["divisor"]["places"] == [
        {"mult": 2, "place": {"kind": "finite", "poly": {"coeffs": [0, 1], "p": 3}}}
    ]
    assert rep["schema_version"] == 1


def test_validate_ok_and_exit_codes(tmp_path, capsys):
    path = write_covering(tmp_path, kummer_obj(2, [2], [[0, 1]]))
    code, rep = run(capsys, ["validate", "--input", path])
    assert code == 0 and rep["ok"]


def test_validate_reports_bad_normalization(tmp_path, capsys):
    # alpha(0,1) = x must fail validation, not be silently normalized
    obj = {
        "group": {"p": 2, "exponents": [1]},
        "kind": "cocycle",
        "entries": [[[0], [0], [1]], [[0], [1], [0, 1]], [[1], [1], [0, 1]]],
    }
    path = write_covering(tmp_path, obj)
    code, rep = run(capsys, ["validate", "--input", path])
    assert code == 2 and not rep["ok"]
    assert any(f["invariant"] == "normalization" for f in rep["failures"])


def test_usage_error_is_exit_1(capsys):
    assert main(["ramify"]) == 1  # missing --input
    assert main(["no-such-command"]) == 1


def test_missing_file_is_exit_1(capsys):
    assert main(["ramify", "--input", "/nonexistent/file.json"]) == 1


def test_model_rejection_is_exit_2(tmp_path, capsys):
    # f a p-th power: rejected with exit 2
    path = write_covering(tmp_path, kummer_obj(2, [1], [[0, 0, 1]]))
    code = main(["ramify", "--input", path])
    out = capsys.readouterr().out
    assert code == 2
    assert json.loads(out)["rejected"] == "NonIntegralModel"


def test_oracle_subcommand(tmp_path, capsys):
    path = write_covering(tmp_path, kummer_obj(3, [1], [[0, 1]]))
    code, rep = run(capsys, ["oracle", "--input", path, "--place", "0,1"])
    assert code == 0
    assert rep == {
        "agree": True,
        "command": "oracle",
        "formula": 2,
        "oracle": 2,
        "place": {"kind": "finite", "poly": {"coeffs": [0, 1], "p": 3}},
        "schema_version": 1,
    }
    code, rep = run(capsys, ["oracle", "--input", path, "--place", "infinity"])
    assert code == 0 and rep["agree"]


def test_devissage_subcommand(tmp_path, capsys):
    path = write_covering(tmp_path, kummer_obj(2, [2], [[0, 1]]))
    code, rep = run(capsys, ["devissage", "--input", path, "-m", "1", "--with-oracle"])
    assert code == 0
    assert rep["equal"] and rep["oracle_agrees"]


def test_genus_subcommand(tmp_path, capsys):
    path = write_covering(tmp_path, kummer_obj(2, [2], [[0, 1]]))
    code, rep = run(capsys, ["genus", "--input", path])
    assert code == 0
    assert rep["g_Y"] == 0 and rep["deg_R"] == 6


def test_genus_hypothesis_failure_exit_2(tmp_path, capsys):
    path = write_covering(tmp_path, kummer_obj(2, [1], [[0, 1, 0, 0, 1]]))
    assert main(["genus", "--input", path]) == 2


def test_regress_gln_subcommand(capsys):
    code, rep = run(capsys, ["regress-gln", "-p", "2", "-n", "2", "--beta", "1", "--gamma", "2"])
    assert code == 0
    assert rep["summary"] == "15 != 3 + 6"
    assert not rep["degenerate_height_one"]
    code, rep = run(capsys, ["regress-gln", "-p", "2", "-n", "1", "--beta", "1", "--gamma", "2"])
    assert rep["summary"] == "3 == 1 + 2"
    assert rep["equal"] and rep["degenerate_height_one"]


def test_gorenstein_subcommand(tmp_path, capsys):
    path = write_covering(tmp_path, kummer_obj(2, [2], [[0, 1]]))
    code, rep = run(capsys, ["gorenstein", "--input", path, "--include-infinity"])
    assert code == 0
    assert rep["non_gorenstein_places"] == []
    assert rep["sign"] == 1
    assert {(row["p"], row["n"]): row["sign"] for row in rep["sign_table"]}[(3, 1)] == -1


def test_gorenstein_search(capsys):
    code, rep = run(capsys, ["gorenstein", "--search", "--count", "5", "--seed", "1"])
    assert code == 0
    assert "counterexamples" in rep and rep["checked_places"] >= 0


def test_fuzz_subcommand(capsys):
    code, rep = run(capsys, ["fuzz", "--seed", "2", "--count", "2", "--pn", "2,2"])
    assert code == 0
    assert rep["failures"] == []
    assert rep["checked"]["models"] == 2


def test_internal_invariant_is_exit_3(tmp_path, capsys, monkeypatch):
    from muram import cli
    from muram.errors import InternalInvariant

    def boom(args):
        raise InternalInvariant("forced for the exit-code contract")

    monkeypatch.setitem(cli._HANDLERS, "ramify", boom)
    path = write_covering(tmp_path, kummer_obj(3, [1], [[0, 1]]))
    assert main(["ramify", "--input", path]) == 3


def test_table_format(tmp_path, capsys):
    path = write_covering(tmp_path, kummer_obj(3, [1], [[0, 1]]))
    code = main(["--format", "table", "ramify", "--input", path])
    out = capsys.readouterr().out
    assert code == 0
    assert "degree: 2" in out


def test_cocycle_kind_roundtrip(tmp_path, capsys):
    # the same covering presented as an explicit table
    obj = {
        "group": {"p": 2, "exponents": [1]},
        "kind": "cocycle",
        "entries": [[[0], [0], [1]], [[0], [1], [1]], [[1], [1], [0, 1]]],
    }
    path = write_covering(tmp_path, obj)
    code, rep = run(capsys, ["ramify", "--input", path])
    assert code == 0 and rep["degree"] == 1


def test_infinity_degrees_from_file(tmp_path, capsys):
    obj = kummer_obj(2, [1], [[0, 1]], infinity_degrees=[0, 1])
    path = write_covering(tmp_path, obj)
    code, rep = run(capsys, ["ramify", "--input", path, "--include-infinity"])
    assert code == 0 and rep["degree"] == 2

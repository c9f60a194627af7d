"""Command-line interface: exit codes, formats, determinism."""

import json

from recipgas.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_commutators(capsys):
    code, out = run(capsys, "commutators", "--algebra", "lrt")
    assert code == 0
    assert "X3" in out and "-X3" in out and "-X5" in out


def test_verify_generator_pass(capsys):
    code, out = run(capsys, "verify-generator", "--generator", "X3")
    assert code == 0
    assert "verdict: PASS" in out


def test_verify_generator_from_file(capsys, tmp_path):
    d = {"zeta_rho": "rho", "zeta_u": "0", "zeta_v": "0", "zeta_p": "0",
         "zeta_S": "0", "form": [["0", "0"], ["0", "0"]]}
    path = tmp_path / "g.json"
    path.write_text(json.dumps(d))
    code, out = run(capsys, "verify-generator", "--file", str(path))
    assert code == 1
    assert "verdict: FAIL" in out


def test_verify_map_catalog(capsys):
    code, out = run(capsys, "verify-map", "--catalog", "bateman",
                    "--b1", "1", "--b2", "0", "--b3", "1", "--b4", "0")
    assert code == 0 and "verdict: PASS" in out


def test_verify_map_fail_exit_code(capsys):
    code, out = run(capsys, "verify-map", "--catalog", "mu_minus")
    assert code == 1 and "verdict: FAIL" in out
    assert "witness" in out


def test_verify_map_broken_file(capsys, tmp_path):
    bad = {
        "R": "rho", "U": "u", "V": "v", "P": "p", "H": "S",
        "form": [["1", "0"], ["0", "p"]],
    }
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(bad))
    code, out = run(capsys, "verify-map", "--file", str(path))
    assert code == 1


def test_missing_file_is_usage_error(capsys):
    code = main(["verify-map", "--file", "/no/such/file.json"])
    assert code == 2


def test_verify_point(capsys):
    code, out = run(capsys, "verify-point", "--catalog", "munk_prim")
    assert code == 0 and "verdict: PASS" in out


def test_solve_ansatz_degree0(capsys):
    code, out = run(capsys, "solve-ansatz", "--degree", "0")
    assert code == 0
    assert "dimension: 3" in out


def test_pushforward(capsys):
    code, out = run(capsys, "pushforward", "--catalog", "bateman",
                    "--param", "entropy=identity")
    assert code == 0
    assert "satisfies the automorphism constraints" in out


def test_automorphism(capsys):
    code, out = run(capsys, "automorphism")
    assert code == 0
    assert "a33*a44-a34*a43-a33 = 0" in out


def test_lie_check(capsys):
    code, out = run(capsys, "lie-check", "--family", "one_param_linear",
                    "--points", "20")
    assert code == 0


def test_transform_and_closedness(capsys):
    code, out = run(capsys, "transform", "--flow", "constant",
                    "--catalog", "bateman_simplified", "--nodes", "9")
    assert code == 0
    code, out = run(capsys, "closedness", "--flow", "constant",
                    "--catalog", "bateman_simplified", "--nodes", "5")
    assert code == 0


def test_json_format_and_out_file(capsys, tmp_path):
    path = tmp_path / "rep.json"
    code, _ = run(capsys, "--format", "json", "--out", str(path),
                  "verify-map", "--catalog", "identity")
    assert code == 0
    data = json.loads(path.read_text())
    assert data["schema"] == 1
    assert data["verdict"] == "PASS"


def test_reports_are_deterministic(capsys):
    code1, out1 = run(capsys, "verify-map", "--catalog", "mu_minus",
                      "--seed", "20240801")
    code2, out2 = run(capsys, "verify-map", "--catalog", "mu_minus",
                      "--seed", "20240801")
    assert (code1, out1) == (code2, out2)


def test_seed_after_subcommand_accepted(capsys):
    code, _ = run(capsys, "lie-check", "--family", "one_param_linear",
                  "--points", "5", "--seed", "7")
    assert code == 0

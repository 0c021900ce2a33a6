import json

import pytest

from azumaya import jobs
from azumaya.cli import main
from azumaya.config import CHECKS, load_config, parse_config
from azumaya.errors import ConfigError, TooLargeToPrintError

from builders import CONFIGS

GF4_W_TOML = """
[ring]
p = 2
kind = "extension"
modulus = [1, 1, 1]
sigma = { kind = "frobenius", power = 1 }

[algebra]
m = 2
d = [0, 1]
"""


def write(tmp_path, text, name="job.toml"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


# -- configuration ----------------------------------------------------------------


def test_parse_defaults():
    cfg = parse_config(GF4_W_TOML)
    assert cfg.checks == list(CHECKS)
    assert cfg.mode == "both"
    assert cfg.echo()["ring"]["modulus"] == [1, 1, 1]


def test_reducible_modulus_names_field():
    with pytest.raises(ConfigError) as err:
        parse_config(GF4_W_TOML.replace("[1, 1, 1]", "[1, 0, 1]"))
    assert err.value.field == "ring.modulus"


def test_malformed_modulus_names_field_and_line():
    with pytest.raises(ConfigError) as err:
        parse_config(GF4_W_TOML.replace("[1, 1, 1]", '"x^2+x+1"'))
    assert err.value.field == "ring.modulus"
    assert err.value.line == 5


def test_unknown_check():
    with pytest.raises(ConfigError) as err:
        parse_config(GF4_W_TOML + '\n[checks]\nrun = ["structure", "spectra"]\n')
    assert err.value.field == "checks.run" and "spectra" in str(err.value)


@pytest.mark.parametrize(
    "edit,field",
    [
        (("p = 2", "p = 4"), "ring.modulus"),
        (("m = 2", "m = 1"), "algebra.m"),
        (("d = [0, 1]", "d = [0, 1, 1]"), "algebra.d"),
        (("d = [0, 1]", "d = [0, 0]"), "algebra.d"),
        (('kind = "extension"', 'kind = "quaternion"'), "ring.kind"),
        (('kind = "frobenius"', 'kind = "twist"'), "ring.sigma.kind"),
    ],
)
def test_validation_errors(edit, field):
    with pytest.raises(ConfigError) as err:
        parse_config(GF4_W_TOML.replace(*edit))
    assert err.value.field == field


def test_toml_syntax_error():
    with pytest.raises(ConfigError):
        parse_config("[ring\np = 2")


def test_example_configs_load():
    for path in sorted(CONFIGS.glob("*.toml")):
        load_config(path)


# -- jobs ----------------------------------------------------------------------


def test_run_job_gf4_omega():
    report = jobs.run_job(parse_config(GF4_W_TOML))
    assert report["schema_version"] == "1.0"
    assert report["algebra"]["associative"] is False
    auts = report["checks"]["automorphisms"]["data"]
    assert auts["count_theoretic"] == auts["count_bruteforce"] == 3
    assert report["summary"]["fail"] == 0
    assert not jobs.report_failed(report)


def test_run_job_gf4_one():
    report = jobs.run_job(load_config(CONFIGS / "gf4_one.toml"))
    assert report["algebra"]["associative"] is True
    assert report["checks"]["automorphisms"]["data"]["count_bruteforce"] == 6
    csa = [v for v in report["verdicts"] if v["name"] == "csa-inner-listing"]
    assert [v["status"] for v in csa] == ["pass"]


def test_partial_failure_does_not_abort_siblings():
    cfg = parse_config(GF4_W_TOML.replace("m = 2", "m = 2\n").replace("[algebra]", "[automorphisms]\nbudget = 3\n\n[algebra]"))
    report = jobs.run_job(cfg)
    statuses = {v["name"]: v["status"] for v in report["verdicts"]}
    assert statuses["bruteforce-enumeration"] == "error"
    assert statuses["composition-law"] == "pass"
    assert report["checks"]["structure"]["status"] == "ran"


def test_not_applicable_checks():
    report = jobs.run_job(parse_config(GF4_W_TOML))
    assert report["checks"]["csa-inner-listing"]["status"] == "not-applicable"
    assert report["checks"]["separable-idempotent"]["status"] == "not-applicable"


def test_mul_table_entries():
    from azumaya.config import build_algebra

    A = build_algebra(parse_config(GF4_W_TOML))
    lines = [row.split("\t") for row in jobs.mul_table(A, 64).splitlines()]
    header = lines[0]
    assert header == ["o", "b0t0", "b1t0", "b0t1", "b1t1"]
    table = {(r[0], header[j]): r[j] for r in lines[1:] for j in range(1, 5)}
    assert table[("b0t1", "b0t1")] == "(0,1)"  # t o t = w
    assert all(table[("b0t0", b)] == table[(b, "b0t0")] for b in header[1:])
    assert table[("b0t0", "b1t1")] == "(0,1)*t"
    assert table[("b0t1", "b1t0")] == "(1,1)*t"  # t o w = w^2 t
    with pytest.raises(TooLargeToPrintError):
        jobs.mul_table(A, 3)


# -- command line ------------------------------------------------------------------


def test_cli_construct(tmp_path, capsys):
    assert main(["construct", "--config", write(tmp_path, GF4_W_TOML)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["algebra"]["dimension"] == 4


def test_cli_mul_table_to_file(tmp_path):
    out = tmp_path / "table.tsv"
    assert main(["mul-table", "--config", write(tmp_path, GF4_W_TOML), "--out", str(out)]) == 0
    assert out.read_text().startswith("o\tb0t0")


def test_cli_structure_plain(tmp_path, capsys):
    assert main(["structure", "--config", write(tmp_path, GF4_W_TOML), "--format", "plain"]) == 0
    assert "structure/centralizer-of-C: pass" in capsys.readouterr().out


def test_cli_automorphisms_report(tmp_path, capsys):
    report = tmp_path / "aut.json"
    code = main(["automorphisms", "--config", write(tmp_path, GF4_W_TOML), "--mode", "bruteforce",
                 "--report", str(report), "--format", "table"])
    assert code == 0
    data = json.loads(report.read_text())
    assert data["checks"]["automorphisms"]["data"]["count_bruteforce"] == 3
    assert capsys.readouterr().out.startswith("check\tverdict\tstatus")


def test_cli_hilbert90(tmp_path, capsys):
    path = write(tmp_path, GF4_W_TOML)
    assert main(["hilbert90", "--config", path, "--k", "(0,1)"]) == 0
    assert capsys.readouterr().out == "(0,1)\n"
    assert main(["hilbert90", "--config", path, "--k", "(1,0)"]) == 0
    c = capsys.readouterr().out.strip()
    assert c in {"(1,0)", "(0,1)", "(1,1)"}


def test_cli_hilbert90_norm_not_one(tmp_path, capsys):
    path = str(CONFIGS / "gf9_one.toml")
    # N(1 + x) = (1 + x)(1 - x) = 1 - x^2 = 2 in GF(9) = GF(3)[x]/(x^2 + 1)
    assert main(["hilbert90", "--config", path, "--k", "(1,1)"]) == 2
    assert "NormNotOneError" in capsys.readouterr().err


def test_cli_certify_galois(tmp_path, capsys):
    assert main(["certify-galois", "--config", write(tmp_path, GF4_W_TOML)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert set(out["witness"]) == {"sigma^0", "sigma^1"}


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["check-all", "--config", str(CONFIGS / "gf4_omega.toml")]) == 0
    # GF(9) with d = 1 has automorphisms that move C, so classification verdicts fail
    assert main(["check-all", "--config", str(CONFIGS / "gf9_one.toml")]) == 1
    bad = write(tmp_path, GF4_W_TOML.replace("[1, 1, 1]", "[1, 0, 1]"))
    assert main(["check-all", "--config", bad]) == 2
    assert "ring.modulus" in capsys.readouterr().err
    assert main(["check-all", "--config", str(tmp_path / "missing.toml")]) == 2

"""Command line surface: golden outputs, byte stability across runs,
exit codes and the file-output path."""

import json

import pytest

from nkspectra.cli import main

CP3_TABLE = """\
spectrum  space=cp3  bundle=lambda11  cutoff=12
eigenvalue  irrep   hom_dim  dim  contribution
----------  ------  -------  ---  ------------
0           V(0,0)  1        1    1
8           V(1,0)  1        5    5
12          V(1,1)  2        10   20
entries: 3
"""

CP3_CSV = """\
eigenvalue,irrep,hom_dim,dim,contribution
0,"V(0,0)",1,1,1
8,"V(1,0)",1,5,5
12,"V(1,1)",2,10,20
"""

FLAG_MODULI_TABLE = """\
moduli-bound  space=flag
  eigenspace 12, primitive (1,1)  32
  isometry algebra dim            8
  eigenspace 12, functions        16
  nk moduli upper bound           8
  reported bound                  8
  einstein extras (eig 2, eig 6)  0, 0
  isotropy casimir                -1/3
  scal (unit -B metric)           5/2
"""


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_spectrum_table_golden(capsys):
    code, out = _run(capsys, "spectrum", "--space", "cp3", "--cutoff", "12")
    assert code == 0
    assert out == CP3_TABLE


def test_spectrum_csv_golden(capsys):
    code, out = _run(
        capsys, "spectrum", "--space", "cp3", "--cutoff", "12", "--format", "csv"
    )
    assert code == 0
    assert out == CP3_CSV


def test_moduli_table_golden(capsys):
    code, out = _run(capsys, "moduli-bound", "--space", "flag")
    assert code == 0
    assert out == FLAG_MODULI_TABLE


def test_output_is_byte_stable(capsys):
    runs = []
    for _ in range(2):
        code, out = _run(capsys, "all", "--format", "json")
        assert code == 0
        runs.append(out)
    assert runs[0] == runs[1]


def test_json_round_trip(capsys):
    code, out = _run(
        capsys, "spectrum", "--space", "s3xs3", "--cutoff", "12", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "spectrum"
    assert doc["space"] == "s3xs3"
    assert doc["bundle"] == "lambda11"
    assert doc["cutoff"] == "12"
    total = {}
    for entry in doc["entries"]:
        total[entry["eigenvalue"]] = total.get(entry["eigenvalue"], 0) + entry["contribution"]
    assert total == {"9": 12, "12": 9}


def test_moduli_json_fields(capsys):
    for space, bound in (("s3xs3", 0), ("cp3", 0), ("flag", 8)):
        code, out = _run(capsys, "moduli-bound", "--space", space, "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["reported_bound"] == bound
        assert doc["einstein_extra"] == [0, 0]
        assert doc["isotropy_casimir"] == "-1/3"
        assert doc["scal"] == "5/2"
    flag = json.loads(_run(capsys, "moduli-bound", "--space", "flag", "--format", "json")[1])
    assert flag["dim_eigenspace_12_primitive_11"] == 32
    assert flag["dim_isometry"] == 8
    assert flag["dim_eigenspace_12_functions"] == 16


def test_einstein_check(capsys):
    code, out = _run(capsys, "einstein-check", "--space", "cp3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["multiplicity_at_2"] == 0
    assert doc["multiplicity_at_6"] == 0
    assert doc["einstein_deformations_excluded"] is True


def test_verify_flag_exits_zero(capsys):
    code, out = _run(capsys, "verify-flag", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert all(suite["passed"] for suite in doc["suites"])


def test_verify_flag_table_output(capsys):
    code, out = _run(capsys, "verify-flag")
    assert code == 0
    assert "suite pointwise_identities: PASS" in out
    assert "FAIL" not in out


def test_identities_subcommand(capsys):
    code, out = _run(capsys, "identities", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "identities"
    assert [s["suite"] for s in doc["suites"]] == ["pointwise_identities"]
    assert doc["passed"] is True


def test_all_subcommand_structure(capsys):
    code, out = _run(capsys, "all", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["spectrum"]) == 6
    assert len(doc["moduli"]) == 3
    assert len(doc["einstein"]) == 3
    assert doc["verification"]["passed"] is True
    assert {m["space"]: m["reported_bound"] for m in doc["moduli"]} == {
        "s3xs3": 0,
        "cp3": 0,
        "flag": 8,
    }


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["spectrum", "--space", "cp3"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["spectrum", "--space", "nowhere", "--cutoff", "12"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["spectrum", "--space", "cp3", "--cutoff", "-3"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["spectrum", "--space", "cp3", "--cutoff", "a/b"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["all", "--format", "csv"])
    assert exc.value.code == 2


def test_rational_cutoff_accepted(capsys):
    code, out = _run(
        capsys,
        "spectrum", "--space", "flag", "--cutoff", "16/3", "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["cutoff"] == "16/3"
    # V(1,0) and V(0,1) live at 16/3 but have no primitive (1,1) content
    assert [e["eigenvalue"] for e in doc["entries"]] == ["0"]


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code = main([
        "moduli-bound", "--space", "flag", "--format", "json",
        "--output", str(target),
    ])
    assert code == 0
    assert capsys.readouterr().out == ""
    doc = json.loads(target.read_text())
    assert doc["nk_upper_bound"] == 8

import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from fhseq import cli
from fhseq.published import SEQUENCES
from fhseq.theory import Mismatch, VerificationReport


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _schema(name):
    return json.loads(resources.files("fhseq").joinpath(f"schemas/{name}").read_text())


def test_generate_digits(capsys):
    code, out, _ = run(capsys, "generate", "--p", "5", "--q", "17")
    assert code == 0
    assert out.splitlines() == list(SEQUENCES)


def test_generate_rejects_bad_primes(capsys):
    for argv in (["--p", "9", "--q", "17"], ["--p", "5", "--q", "5"], ["--p", "2", "--q", "5"]):
        code, out, err = run(capsys, "generate", *argv)
        assert code == 2 and out == "" and err.startswith("fhseq:")


def test_generate_json(capsys):
    code, out, _ = run(capsys, "generate", "--p", "5", "--q", "17", "--format", "json")
    data = json.loads(out)
    jsonschema.validate(data, _schema("sequence_set.schema.json"))
    assert (data["g"], data["x"], data["e"]) == (3, 18, 4)
    assert "generated_at" not in data
    _, out, _ = run(capsys, "generate", "--p", "5", "--q", "17", "--format", "json", "--timestamp")
    assert "generated_at" in json.loads(out)


def test_generate_digits_needs_small_alphabet(capsys):
    # e = 12
    code, _, err = run(capsys, "generate", "--p", "13", "--q", "37", "--format", "digits")
    assert code == 2 and "e <= 10" in err
    code, out, _ = run(capsys, "generate", "--p", "13", "--q", "37")
    assert code == 0 and len(out.splitlines()) == 12 and "," in out


def test_generate_text(capsys):
    code, out, _ = run(capsys, "generate", "--p", "3", "--q", "5", "--format", "text")
    assert out.splitlines()[0] == "p=3 q=5 e=2 d=4 f1=1 f2=2 L=15 g=2 x=11"


def test_generate_is_deterministic(capsys):
    _, a, _ = run(capsys, "generate", "--p", "7", "--q", "13", "--format", "csv")
    _, b, _ = run(capsys, "generate", "--p", "7", "--q", "13", "--format", "csv")
    assert a == b


def test_analyze_text(capsys):
    code, out, _ = run(capsys, "analyze", "--p", "5", "--q", "17")
    assert code == 0
    assert "A_a = 473/21, A_c = 5248/255" in out
    assert "H_a = 29, H_c = 24" in out


def test_analyze_csv(capsys):
    code, out, _ = run(capsys, "analyze", "--p", "3", "--q", "5", "--format", "csv")
    lines = out.splitlines()
    assert len(lines) == 1 + 4 * 15
    assert lines[1] == "auto,0,0,0,15"


def test_analyze_gate(capsys, monkeypatch):
    code, _, err = run(capsys, "analyze", "--p", "5", "--q", "17", "--gate", "50")
    assert code == 3 and "--force" in err
    assert run(capsys, "analyze", "--p", "5", "--q", "17", "--gate", "50", "--force")[0] == 0
    monkeypatch.setenv("FHSEQ_GATE", "20")
    assert run(capsys, "analyze", "--p", "5", "--q", "17")[0] == 3
    assert run(capsys, "analyze", "--p", "3", "--q", "5")[0] == 0
    # huge periods are refused before anything is built
    assert run(capsys, "analyze", "--p", "46337", "--q", "46349")[0] == 3


def test_analyze_needs_primes(capsys):
    assert run(capsys, "analyze")[0] == 2


def test_json_round_trip(capsys, tmp_path):
    path = tmp_path / "set.json"
    assert run(capsys, "generate", "--p", "5", "--q", "17", "--format", "json", "-o", str(path))[0] == 0
    code, out, _ = run(capsys, "analyze", "--input", str(path))
    assert code == 0 and "A_a = 473/21" in out
    code, out, _ = run(capsys, "bounds", "-i", str(path))
    assert code == 0 and "average-optimal = yes" in out


def test_input_with_wrong_x_is_rejected(capsys, tmp_path):
    _, out, _ = run(capsys, "generate", "--p", "5", "--q", "17", "--format", "json")
    data = json.loads(out)
    data["x"] = 19
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    assert run(capsys, "analyze", "--input", str(path))[0] == 2
    assert run(capsys, "analyze", "--input", str(tmp_path / "missing.json"))[0] == 2


def test_output_file_uses_lf(capsys, tmp_path):
    path = tmp_path / "out.csv"
    run(capsys, "analyze", "--p", "3", "--q", "5", "--format", "csv", "--output", str(path))
    raw = path.read_bytes()
    assert b"\r\n" not in raw and raw.endswith(b"\n")


def test_verify_reference(capsys):
    code, out, _ = run(capsys, "verify", "--p", "5", "--q", "17")
    assert code == 0
    assert "tau=60: printed 8, computed 18 (known typo" in out
    assert out.rstrip().endswith("=> PASS")


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--p", "7", "--q", "13", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    jsonschema.validate(data["correlation_distribution"], _schema("verification_report.schema.json"))
    for rep in data["lemmas"]:
        jsonschema.validate(rep, _schema("lemma_report.schema.json"))


def test_verify_seed_sweep(capsys):
    code, out, _ = run(capsys, "verify", "--seed-sweep", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["passed"] and len(data["runs"]) == len(cli.SWEEP)


def test_verify_failure_writes_report(capsys, monkeypatch, tmp_path):
    def broken(seqset, tables, profile=None):
        rep = VerificationReport(tables.params, total_checks=1)
        rep.mismatches.append(Mismatch(0, 1, 3, "generic/P", 1, 2))
        return rep

    monkeypatch.setattr(cli, "verify_correlation_distribution", broken)
    monkeypatch.chdir(tmp_path)
    code, out, err = run(capsys, "verify", "--p", "7", "--q", "13")
    assert code == 1
    assert "=> FAIL" in out
    report = tmp_path / "fhseq-verify-report.json"
    assert str(report) in err
    assert json.loads(report.read_text())["passed"] is False


def test_bounds_text(capsys):
    code, out, _ = run(capsys, "bounds", "--p", "5", "--q", "17")
    lines = out.splitlines()
    assert code == 0
    assert lines[0].startswith("Lempel-Greenberger bound 21; achieved per sequence [29, 29, 29, 29]")
    assert "lhs 34224 >= rhs 28560" in lines[1]
    assert "lhs 1/3, rhs 1/3; equality: yes" in lines[2]
    assert lines[-1] == "average-optimal = yes, LG-optimal = no, Peng-Fan-optimal = no"


def test_bounds_json(capsys):
    _, out, _ = run(capsys, "bounds", "--p", "5", "--q", "17", "--format", "json")
    data = json.loads(out)
    jsonschema.validate(data, _schema("bounds_report.schema.json"))
    assert data["verdicts"]["average_optimal"] is True


def test_cyclotomy_text(capsys):
    code, out, _ = run(capsys, "cyclotomy", "--p", "5", "--q", "17")
    assert code == 0
    assert "column sums: 12 11 11 11" in out
    assert "-1 = 84 lies in D2" in out


def test_cyclotomy_column_sums(capsys):
    _, out, _ = run(capsys, "cyclotomy", "--p", "5", "--q", "17", "--format", "json")
    data = json.loads(out)
    sums = [sum(col) for col in zip(*data["cyclotomic_numbers"])]
    assert sorted(set(sums)) == [11, 12]
    assert data["minus_one_class"] == 2
    _, out, _ = run(capsys, "cyclotomy", "--p", "3", "--q", "5", "--format", "json")
    matrix = json.loads(out)["cyclotomic_numbers"]
    assert len(matrix) == 2 and all(len(r) == 2 for r in matrix)


def test_cyclotomy_csv(capsys):
    _, out, _ = run(capsys, "cyclotomy", "--p", "3", "--q", "5", "--format", "csv")
    lines = out.splitlines()
    assert lines[:2] == ["residue,cell", "0,R"]
    assert len(lines) == 16


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fhseq", "generate", "--p", "3", "--q", "5"],
                          capture_output=True, text=True, check=True)
    assert len(proc.stdout.splitlines()) == 2

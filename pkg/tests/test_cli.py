import subprocess
import sys
from pathlib import Path

import pytest

from algca.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_algebra_check_entropic(capsys):
    code, out, _ = run(capsys, "algebra", "check", DATA / "z2.alg", "--entropic")
    assert code == 0
    assert "entropic: true" in out.splitlines()


def test_algebra_check_boolean_witness(capsys):
    code, out, _ = run(capsys, "algebra", "check", DATA / "bool2.alg", "--entropic")
    lines = out.splitlines()
    assert code == 0
    assert "entropic: false" in lines
    assert lines[-1] == "witness: and(or(0, 1), or(1, 0)) = 1 but or(and(0, 1), and(1, 0)) = 0"


def test_malformed_algebra_exits_2(capsys):
    code, _, err = run(capsys, "algebra", "check", DATA / "bad.alg")
    assert code == 2 and err.startswith("error:")
    code, _, _ = run(capsys, "algebra", "check", "no-such-file.alg")
    assert code == 2


def test_group_check(capsys):
    assert run(capsys, "group", "check", DATA / "s3.grp")[1] == "valid: group S3 order 6 nonabelian\n"
    assert run(capsys, "group", "check", "@Z")[1] == "valid: lattice group Z\n"


def test_hom_count(capsys):
    assert run(capsys, "hom", "count", "@2", "@2", "--power", 3)[1] == "3\n"
    assert run(capsys, "hom", "count", DATA / "z2.alg", DATA / "z2.alg", "--power", 3)[1] == "8\n"
    assert run(capsys, "hom", "count", "@2^3", "@2")[1] == "3\n"


def test_hom_list_matches_count(capsys):
    for args in (["@Z3", "@Z3", "--power", 2], ["@2", "@2", "--power", 4], ["@S3mag", "@S3mag"]):
        _, count, _ = run(capsys, "hom", "count", *args)
        _, listing, _ = run(capsys, "hom", "list", *args)
        assert len(listing.splitlines()) == int(count)


def test_hom_cap_exit_3(capsys):
    code, _, err = run(capsys, "hom", "list", "@Z6", "@Z6", "--power", 3, "--cap", 100)
    assert code == 3 and "exceeds cap" in err


def test_ca_commands(capsys):
    assert run(capsys, "ca", "apply", DATA / "rule110.ca", "--period", 4, "--init", "0001")[1] == "0011\n"
    code, out, _ = run(capsys, "ca", "is-endo", DATA / "rule90.ca")
    assert out == "endomorphic: true\n"
    code, out, _ = run(capsys, "ca", "is-endo", DATA / "rule110.ca")
    assert out.startswith("endomorphic: false\nwitness: ")
    code, out, _ = run(capsys, "ca", "minimize", DATA / "rule90.ca")
    assert "memory -1 1\nrule 0 1 1 0\n" in out
    code, out, _ = run(capsys, "ca", "compose", DATA / "rule90.ca", DATA / "rule90.ca", "--minimize")
    # x(-2) + 2x(0) + x(2) over F2
    assert "memory -2 2\nrule 0 1 1 0\n" in out
    code, out, _ = run(capsys, "ca", "apply", DATA / "shift_s3.ca", "--init", "010000", "--steps", 2)
    assert out == "110000\n000000\n"


def test_ca_usage_errors(capsys):
    assert run(capsys, "ca", "apply", DATA / "rule110.ca", "--init", "0001")[0] == 2
    assert run(capsys, "ca", "compose", DATA / "rule90.ca")[0] == 2
    assert run(capsys, "ca", "minimize", DATA / "missing.ca")[0] == 2


def test_endoca(capsys):
    code, out, _ = run(capsys, "endoca", "count", "Z", "Z2", "--memory", "-1 0 1")
    assert (code, out) == (0, "8\n")
    _, out, _ = run(capsys, "endoca", "list", "C4", "Z2", "--memory", "0 1")
    assert out.splitlines() == ["0 0 0 0", "0 0 1 1", "0 1 0 1", "0 1 1 0"]


def test_eca_classify(capsys):
    assert run(capsys, "eca", "classify", "--predicate", "additive")[1] == "0,60,90,102,150,170,204,240\n"
    assert run(capsys, "eca", "classify", "--predicate", "boolean-hom")[1] == "170,204,240\n"
    assert run(capsys, "eca", "classify", "--predicate", "endomorphic-under")[0] == 2


def test_eca_run(capsys):
    code, out, _ = run(capsys, "eca", "run", 204, "--period", 5, "--steps", 3, "--init", "01101")
    assert code == 0 and out.splitlines() == ["01101"] * 4
    assert run(capsys, "eca", "run", 300, "--init", "01")[0] == 2
    assert run(capsys, "eca", "run", 30, "--period", 3, "--init", "01")[0] == 2
    assert run(capsys, "eca", "run", 30, "--init", "0121")[0] == 2


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "boolean-count")
    assert code == 0
    assert all(line.startswith("CHECK boolean-count") and " PASS " in line for line in out.splitlines())
    code, out, _ = run(capsys, "verify", "th-local")
    assert code == 0 and "16 rules" in out
    assert run(capsys, "verify", "bogus")[0] == 2


def test_unknown_flags_rejected(capsys):
    with pytest.raises(SystemExit) as info:
        main(["eca", "classify", "--colour", "red"])
    assert info.value.code == 2


def test_output_is_byte_identical_across_processes():
    cmd = [sys.executable, "-m", "algca", "verify", "direct-limit"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first.count(b"PASS") > 5

import io
import subprocess
import sys

import numpy as np
import pytest

from luequiv import fileio
from luequiv.cli import dispatch
from luequiv.states import ghz_state, w_state


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = dispatch([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def named(tmp_path):
    fileio.write(tmp_path / "w.state", fileio.state_to_doc(w_state()))
    fileio.write(tmp_path / "ghz.state", fileio.state_to_doc(ghz_state()))
    return tmp_path


def test_fingerprint_and_compare(named):
    t = named
    code, _, _ = run("fingerprint", "--state", t / "w.state", "--split", "12-3", "--out", t / "w.fp")
    assert code == 0
    fp = fileio.fingerprint_from_doc(fileio.read(t / "w.fp"))
    assert fp.J[1] == pytest.approx(5 / 9, abs=1e-12)
    run("fingerprint", "--state", t / "ghz.state", "--split", "12-3", "--out", t / "ghz.fp")
    assert run("compare", "--a", t / "ghz.fp", "--b", t / "w.fp")[0] == 1
    assert run("compare", "--a", t / "ghz.fp", "--b", t / "ghz.fp")[0] == 2
    assert run("compare", "--a", t / "w.fp", "--b", t / "w.fp")[0] == 0


def test_counterexample_command():
    code, out, _ = run("counterexample")
    assert code == 0
    assert "NotUnitarilyEquivalent" in out and "0.666666666667" in out


def test_random_state_round_trip(tmp_path):
    t = tmp_path
    assert run("random-state", "--dims", "2,2,2", "--seed", "11", "--out", t / "a.state")[0] == 0
    assert run("fingerprint", "--state", t / "a.state", "--split", "23-1", "--out", t / "a.fp")[0] == 0
    assert run("compare", "--a", t / "a.fp", "--b", t / "a.fp")[0] == 0


def test_lu_workflow(tmp_path):
    t = tmp_path
    run("random-state", "--dims", "2,3,2", "--seed", "5", "--out", t / "psi.state")
    for k, d in enumerate((2, 3, 2)):
        run("random-unitary", "--dim", d, "--seed", 20 + k, "--out", t / f"u{k + 1}.json")
    code, _, _ = run("apply-lu", "--state", t / "psi.state", "--unitaries",
                     t / "u1.json", t / "u2.json", t / "u3.json", "--out", t / "phi.state")
    assert code == 0
    code, out, _ = run("lift-witness", "--psi", t / "psi.state", "--psi-prime", t / "phi.state",
                       "--party", "2", "--witness", t / "u1.json", t / "u3.json", "--out", t / "wit.json")
    assert code == 0
    assert fileio.witness_from_doc(fileio.read(t / "wit.json")).fidelity >= 1 - 1e-9
    code, _, _ = run("search-lu", "--psi", t / "psi.state", "--psi-prime", t / "phi.state",
                     "--budget", "16", "--seed", "3", "--out", t / "s.json")
    assert code == 0
    code, out, _ = run("schmidt", "--state", t / "psi.state", "--split", "1-23")
    assert code == 0 and "Schmidt rank 2" in out
    code, _, _ = run("reduce", "--state", t / "psi.state", "--trace", "1,3", "--out", t / "r.state")
    assert code == 0 and fileio.state_from_doc(fileio.read(t / "r.state")).dims == (3,)


def test_match_purification_command(tmp_path):
    t = tmp_path
    run("random-state", "--dims", "2,2,2", "--seed", "1", "--out", t / "psi.state")
    run("random-unitary", "--dim", "2", "--seed", "2", "--out", t / "u.json")
    i2 = fileio.matrix_to_doc(np.eye(2), "unitary")
    fileio.write(t / "id.json", i2)
    run("apply-lu", "--state", t / "psi.state", "--unitaries", t / "id.json", t / "u.json", t / "id.json",
        "--out", t / "phi.state")
    code, _, _ = run("match-purification", "--psi", t / "psi.state", "--psi-prime", t / "phi.state",
                     "--party", "2", "--out", t / "w.json")
    assert code == 0
    code, out, _ = run("match-purification", "--psi", t / "psi.state", "--psi-prime", t / "phi.state",
                       "--party", "1")
    assert code == 1 and "reduced states differ" in out


def test_exit_codes_for_bad_input(tmp_path, named):
    (tmp_path / "junk.state").write_text("{not json")
    assert run("fingerprint", "--state", tmp_path / "junk.state", "--split", "12-3")[0] == 3
    assert run("fingerprint", "--state", tmp_path / "missing.state", "--split", "12-3")[0] == 3
    assert run("fingerprint", "--state", named / "w.state", "--split", "12-4")[0] == 3
    assert run("random-state", "--dims", "2,x", "--seed", "1")[0] == 3
    assert run("random-state", "--dims", "2,2", "--seed", "0x10")[0] == 3
    assert run("no-such-command")[0] == 3
    assert run("lift-witness", "--psi", named / "w.state", "--psi-prime", named / "ghz.state",
               "--party", "3", "--witness", named / "w.state")[0] == 3


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "luequiv", "counterexample"], capture_output=True, text=True)
    assert proc.returncode == 0 and "NotUnitarilyEquivalent" in proc.stdout

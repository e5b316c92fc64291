import io
import subprocess
import sys


from kurepa.cli import main


def run(*argv, env=None, monkeypatch=None):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_seq():
    assert run("seq", "subfact", "6") == (0, "265\n")
    code, out = run("seq", "subfact", "11562", "--mod", "11563")
    assert code == 0 and out.split()[0] == "2"
    assert run("seq", "leftfact", "0") == (0, "0\n")
    assert run("seq", "bell", "8") == (0, "4140\n")
    code, out = run("seq", "bell", "6", "--mod", "7")
    assert out.split()[0] == "0"
    code, out = run("seq", "leftfact", "10", "--mod", "7")
    assert out.split()[0] == str(sum(__import__("math").factorial(k) for k in range(10)) % 7)


def test_det():
    assert run("det", "7")[1].split()[0] == "15"
    code, out = run("det", "11563", "--mod", "11563", "--via", "derangement")
    assert code == 0 and out.split()[0] == "0"
    assert run("det", "9", "--binary")[1].split()[0] == "-1"
    assert run("det", "3", "--lemma-d")[1].split()[0] == "-1"
    assert run("det", "21", "--mod", "21")[1].split()[0] == "17"
    assert run("det", "21", "--mod", "7", "--via", "derangement")[1].split()[0] == str(17 % 7)
    assert run("det", "13", "--mod", "13", "--via", "exact")[1].split()[0] == str(390249 % 13)


def test_det_errors(capsys):
    assert run("det", "5")[0] == 1
    assert run("det", "500")[0] == 1
    assert "modular path" in capsys.readouterr().err
    assert run("det", "9", "--via", "elim")[0] == 1
    assert run("det", "10", "--mod", "10", "--via", "derangement")[0] == 1


def test_heuristic():
    assert run("heuristic", "event-prob", "--x", "4", "--y", "8388608") == (0, "0.105652\n")
    assert run("heuristic", "expected-count", "--x", "23", "--y", "8388608", "--d", "9", "--mode", "mertens") == (
        0,
        "30.8977\n",
    )
    assert run("heuristic", "expected-count", "--x", "3", "--y", "8388608", "--d", "0", "--mode", "mertens") == (
        0,
        "2.67493\n",
    )
    code, out = run("heuristic", "event-prob", "--x", "4", "--y", "8388608", "--precision", "12")
    assert len(out.strip().replace("0.", "", 1)) >= 11


def test_scan_exit_codes(capsys):
    code, out = run("scan", "strong", "--lo", "9", "--hi", "20000")
    assert code == 2
    assert out.splitlines()[1].startswith("11563,31*373,2,0,")
    assert "counterexample" in capsys.readouterr().err
    code, out = run("scan", "kurepa", "--lo", "3", "--hi", "20000", "--bound", "0")
    assert code == 0
    assert out == "n,factorization,r_signed,s_signed,near_miss,ratio\n"


def test_scan_formats():
    code, out = run("scan", "prime-powers", "--hi", "100", "--format", "json")
    assert code == 0 and len(out.splitlines()) == 4
    code, out = run("scan", "prime-powers", "--hi", "100", "--format", "pretty")
    assert out.splitlines()[0].split()[0] == "n"


def test_scan_checkpoint_resume(tmp_path, capsys):
    ck = str(tmp_path / "ck.jsonl")
    first = run("scan", "table1", "--hi", "5000", "--block-size", "500", "--checkpoint", ck)
    again = run("scan", "table1", "--hi", "5000", "--block-size", "500", "--checkpoint", ck, "--resume")
    assert first == again
    with open(ck, "a") as fh:
        fh.write("garbage\n")
    code, _ = run("scan", "table1", "--hi", "5000", "--block-size", "500", "--checkpoint", ck, "--resume")
    assert code == 1
    assert "hint" in capsys.readouterr().err


def test_scan_jobs_byte_identical():
    a = run("scan", "table1", "--hi", "8000", "--block-size", "1000")
    b = run("scan", "table1", "--hi", "8000", "--block-size", "1000", "--jobs", "2")
    assert a == b


def test_env_defaults(monkeypatch):
    monkeypatch.setenv("KUREPA_FORMAT", "json")
    monkeypatch.setenv("KUREPA_HI", "100")
    code, out = run("scan", "prime-powers")
    assert out.startswith("{")
    code, out = run("scan", "prime-powers", "--format", "csv")
    assert out.startswith("n,")
    monkeypatch.setenv("KUREPA_JOBS", "many")
    assert run("scan", "prime-powers")[0] == 1


def test_verify():
    code, out = run("verify", "table3")
    assert code == 0
    assert "typo" in out and "15 passed, 0 failed" in out
    code, out = run("verify", "prop4", "--max", "301")
    assert code == 0 and "0 failed" in out
    code, out = run("verify", "identities", "--max", "23")
    assert code == 0


def test_usage_errors_exit_1():
    assert run("bogus")[0] == 1
    assert run("seq", "subfact")[0] == 1
    assert run()[0] == 1


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "kurepa.cli", "seq", "subfact", "6"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout == "265\n"
    proc = subprocess.run([sys.executable, "-m", "kurepa.cli", "--help"], capture_output=True, text=True)
    assert "exit" in proc.stdout.lower()

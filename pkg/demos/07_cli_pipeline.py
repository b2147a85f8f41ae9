"""Driving the command-line interface end to end.

Every subcommand writes one JSON record (or CSV rows) to stdout and keeps
timing diagnostics on stderr, so records pipe cleanly into files and back
into later commands.  Exit codes: 0 success, 1 the computation ran but the
contract failed (a verification did not pass, no exact conjugator exists),
2 bad usage.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

PKG = [sys.executable, "-m", "soficperm"]


def run(*args, expect=0):
    proc = subprocess.run(
        [*PKG, *args], capture_output=True, text=True)
    label = " ".join(args[:2])
    print(f"$ soficperm {' '.join(args)}")
    print(f"  -> exit {proc.returncode} (expected {expect})")
    assert proc.returncode == expect, proc.stderr
    return proc.stdout


with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)

    # build an approximation and keep the record
    spec = tmp / "z2.json"
    run("make-approx", "--group", "z2", "--n", "11",
        "--p", "2", "--q", "3", "--out", str(spec))

    # verify it on a small ball; records round-trip as inputs
    out = run("verify", "--spec", str(spec), "--ball", "2",
              "--delta", "1/10")
    rec = json.loads(out)
    print(f"  verified: passed={rec['result']['passed']}, "
          f"checked {rec['result']['elements_checked']} elements")

    # the same spec fails on a deeper ball -- exit code 1, record intact
    out = run("verify", "--spec", str(spec), "--ball", "5",
              "--delta", "1/10", expect=1)
    rec = json.loads(out)
    print(f"  witness: {rec['result']['id_witness']}")

    # exact conjugator search, then measure its defect on a relation pair
    f_file = tmp / "f.json"
    run("search", "--group", "z2", "--n", "13", "--p", "1", "--q", "5",
        "--k", "4", "--algo", "exact", "--out", str(f_file))
    spec13 = tmp / "z2_13.json"
    run("make-approx", "--group", "z2", "--n", "13",
        "--p", "1", "--q", "5", "--out", str(spec13))
    pairs = tmp / "pairs.json"
    pairs.write_text(json.dumps([[[["b", 1]], [["a", 1]]]]))
    out = run("defect", "--spec", str(spec13), "--perm", str(f_file),
              "--pairs", str(pairs))
    print(f"  defect: {json.loads(out)['result']['defect']}")

    # a search with no exact solution: the obstruction reports as exit 1
    run("search", "--group", "z2", "--n", "10", "--p", "1", "--q", "2",
        "--k", "4", "--algo", "exact", expect=1)

    # CSV output for spreadsheets; identical runs are byte-identical
    csv1 = run("heuristic", "--n", "100", "--k", "4", "--format", "csv")
    csv2 = run("heuristic", "--n", "100", "--k", "4", "--format", "csv")
    assert csv1 == csv2
    print("  csv header:", csv1.splitlines()[0])
    print("  csv row:   ", csv1.splitlines()[1][:72], "...")

print()
print("pipeline complete")

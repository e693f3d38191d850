import subprocess
import sys

import pytest

from paths import ROOT


@pytest.mark.parametrize("argv", [
    ["scripts/sweep_theorems.py", "--max-n", "2", "--repeats", "1"],
    ["scripts/random_census.py", "--trials", "20", "--n-max", "5"],
])
def test_script_runs(argv):
    proc = subprocess.run([sys.executable, *argv], cwd=ROOT, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert "violations" not in proc.stdout

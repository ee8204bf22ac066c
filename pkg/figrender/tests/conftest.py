import shutil
import subprocess
import sys

import pytest


def run_cli(args):
    """Invoke the simulator CLI; the renderer only consumes its files."""
    exe = shutil.which("dephnet")
    cmd = [exe] if exe else [sys.executable, "-m", "dephnet.cli"]
    proc = subprocess.run(cmd + args, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="session")
def sim_outputs(tmp_path_factory):
    """A small set of simulator runs covering every output schema."""
    root = tmp_path_factory.mktemp("sim")
    run_cli(["run", "--preset", "fig1c-noiseless", "--out", str(root / "noiseless")])
    run_cli(["run", "--preset", "fig3-separable-boson", "--out", str(root / "boson")])
    run_cli(["run", "--preset", "fig5-two-photon-correlations",
             "--out", str(root / "g2")])
    return root

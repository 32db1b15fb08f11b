import io
import subprocess
import sys

import numpy as np
import pytest

from tensorfractal.cli import main
from tensorfractal.render_io import parse_text, read_pbm, read_ppm, read_voxels

from reference_data import CARPET_2, MENGER


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def report(text):
    return dict(line.split(": ", 1) for line in text.splitlines())


def test_list():
    code, out, err = run("list")
    assert code == 0 and not err
    assert "menger: order=3 base=3 nnz=20 D_F=2.7268" in out
    assert "vicsek3d" in out and "multisponge(d)" in out


def test_generate_text():
    code, out, _ = run("generate", "--fractal", "sierpinski", "-k", "2", "--format", "text")
    assert code == 0
    np.testing.assert_array_equal(parse_text(out), CARPET_2)
    rows = out.splitlines()[1:]
    assert rows[4] == "1 0 1 0 0 0 1 0 1"


@pytest.mark.parametrize("name, k", [("menger", 2), ("cantor", 3), ("multisponge(4)", 1)])
def test_generate_text_round_trip(name, k):
    from tensorfractal.fractal_gen import catalog, iterate
    code, out, _ = run("generate", "--fractal", name, "-k", str(k))
    assert code == 0
    np.testing.assert_array_equal(parse_text(out), iterate(catalog(name), k))


def test_generate_files(tmp_path):
    pbm, vox = tmp_path / "c.pbm", tmp_path / "m.vox"
    assert run("generate", "--fractal", "sierpinski", "-k", "2", "--format", "pbm", "-o", str(pbm))[0] == 0
    np.testing.assert_array_equal(read_pbm(pbm), CARPET_2)
    assert run("generate", "--fractal", "menger", "-k", "1", "--format", "voxels", "-o", str(vox))[0] == 0
    np.testing.assert_array_equal(read_voxels(vox), MENGER)
    strip = tmp_path / "s.pbm"
    assert run("generate", "--fractal", "cantor", "-k", "2", "--format", "pbm",
               "--bar-height", "4", "-o", str(strip), "--binary")[0] == 0
    assert read_pbm(strip).shape == (4, 9)


def test_generate_multisponge_order_flag():
    code, out, _ = run("generate", "--fractal", "multisponge", "-d", "3", "-k", "1")
    assert code == 0
    np.testing.assert_array_equal(parse_text(out), MENGER)


def test_analyze_cantor_k0():
    code, out, _ = run("analyze", "--fractal", "cantor", "-k", "0")
    assert code == 0
    r = report(out)
    assert r["nnz"] == "1" and r["components"] == "1"
    assert r["box_count_dimension"] == "n/a"


def test_analyze_menger():
    r = report(run("analyze", "--fractal", "menger", "-k", "2")[1])
    assert r["nnz"] == "400"
    assert r["connected"] == "true"
    assert r["volume"] == "1, 20/27, 400/729"
    assert float(r["box_count_dimension"]) == pytest.approx(2.7268330279, abs=1e-9)


def test_rgb(tmp_path):
    path = tmp_path / "a.ppm"
    assert run("rgb", "--preset", "a", "--depth", "2", "-o", str(path))[0] == 0
    samples, maxval = read_ppm(path)
    assert samples.shape == (9, 9, 3)
    assert samples[0, 0].tolist() == [64, 143, 255]  # 1/4, 9/16, 1


def test_verify():
    code, out, err = run("verify", "--multisponge-dims", "2..8")
    assert code == 0 and not err
    assert "FAIL" not in out
    assert out.splitlines()[-1] == "34/34 checks passed"


@pytest.mark.parametrize("argv, fragment", [
    (["generate", "--fractal", "koch"], "unknown fractal"),
    (["generate", "--fractal", "menger", "-k", "9"], "budget"),
    (["generate", "--fractal", "multisponge", "-d", "1"], "d >= 2"),
    (["generate", "--fractal", "sierpinski", "-k", "3", "--budget", "100"], "budget"),
    (["generate", "--fractal", "menger", "--format", "pbm"], "order"),
    (["generate", "--fractal", "sierpinski", "--format", "voxels"], "order 3"),
    (["generate", "--fractal", "cantor", "-o", "/nonexistent/dir/x.txt"], "No such file"),
])
def test_errors_are_one_line(argv, fragment):
    code, out, err = run(*argv)
    assert code == 1
    assert out == ""
    assert err.count("\n") == 1 and fragment in err


def test_env_budget(monkeypatch):
    monkeypatch.setenv("TENSORFRACTAL_BUDGET", "80")
    code, _, err = run("generate", "--fractal", "sierpinski", "-k", "2")
    assert code == 1 and "budget is 80" in err


def test_module_entry_point_binary_stdout():
    proc = subprocess.run(
        [sys.executable, "-m", "tensorfractal", "generate", "--fractal", "sierpinski",
         "-k", "2", "--format", "pbm", "--binary"],
        capture_output=True, check=True,
    )
    np.testing.assert_array_equal(read_pbm(proc.stdout), CARPET_2)
    assert proc.stderr == b""

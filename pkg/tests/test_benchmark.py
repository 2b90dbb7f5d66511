import pathlib
import runpy


def test_benchmark_runs(capsys):
    path = pathlib.Path(__file__).parent.parent / "benchmarks" / "bench_theta.py"
    mod = runpy.run_path(str(path))
    mod["main"](["--sizes", "200", "--repeat", "1"])
    out = capsys.readouterr().out
    assert "numpy" in out and "Theta_g" in out

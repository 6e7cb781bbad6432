import runpy
import sys
from pathlib import Path

BENCH = Path(__file__).parents[1] / "benchmarks" / "bench_kernels.py"


def test_benchmark_runs(monkeypatch, capsys):
    monkeypatch.setattr(sys, "argv", ["bench", "--max-atoms", "8", "--repeat", "1", "--programs", "1"])
    runpy.run_path(str(BENCH), run_name="__main__")
    out = capsys.readouterr().out
    assert "numpy eval" in out and "median query" in out and "note:" in out

"""Render every figure kind from real engine artifacts and check stability."""

import shutil
import subprocess
import sys

import pytest

from ptplots import FigureSpec, SchemaError, render
from ptplots.cli import (
    acceptance_main,
    barrier_main,
    index_traces_main,
    logz_main,
    schedule_main,
)


@pytest.fixture(scope="session")
def artifacts(tmp_path_factory):
    """Real CSVs produced through the engine's command-line interface."""
    root = tmp_path_factory.mktemp("artifacts")
    run_dir = root / "run"
    adapt_dir = root / "adapt"
    logz_dir = root / "logz"
    base = [sys.executable, "-m", "ptkit.cli"]
    subprocess.run(base + ["run", "--model", "flat", "--chains", "1",
                           "--scans", "40", "--seed", "1", "--out", str(run_dir),
                           "--trace-index"], check=True)
    subprocess.run(base + ["adapt", "--model", "gaussian:d=1,sigma0=1.0,sigma=0.5",
                           "--cores", "8", "--tune", "256", "--scans", "32",
                           "--seed", "2", "--out", str(adapt_dir)], check=True)
    subprocess.run(base + ["logz", "--model", "gaussian:d=1,sigma0=1.0,sigma=0.5",
                           "--cores", "8", "--tune", "256", "--scans", "32",
                           "--seed", "3", "--out", str(logz_dir)], check=True)
    return {"run": run_dir, "adapt": adapt_dir, "logz": logz_dir}


KIND_TO_ARGS = {
    "index_traces": ("run", "index_trace.csv", index_traces_main),
    "barrier_curve": ("adapt", "barrier.csv", barrier_main),
    "schedule_evolution": ("adapt", "schedule.csv", schedule_main),
    "acceptance_boxes": ("adapt", "rejections.csv", acceptance_main),
    "logz_progression": ("logz", "logz.csv", logz_main),
}


class TestAllFigureKinds:
    @pytest.mark.parametrize("kind", sorted(KIND_TO_ARGS))
    def test_renders_without_error(self, kind, artifacts, tmp_path):
        directory, filename, _ = KIND_TO_ARGS[kind]
        out = tmp_path / f"{kind}.png"
        spec = FigureSpec(kind=kind, inputs=[artifacts[directory] / filename],
                          output=str(out))
        render(spec)
        assert out.stat().st_size > 2000

    @pytest.mark.parametrize("kind", sorted(KIND_TO_ARGS))
    def test_pixel_stable_across_reruns(self, kind, artifacts, tmp_path):
        directory, filename, _ = KIND_TO_ARGS[kind]
        blobs = set()
        for tag in ("a", "b"):
            out = tmp_path / f"{kind}_{tag}.png"
            spec = FigureSpec(kind=kind, inputs=[artifacts[directory] / filename],
                              output=str(out))
            render(spec)
            blobs.add(out.read_bytes())
        assert len(blobs) == 1

    def test_command_line_entry_points(self, artifacts, tmp_path):
        for kind, (directory, filename, entry) in KIND_TO_ARGS.items():
            out = tmp_path / f"{kind}_cli.png"
            code = entry(["--in", str(artifacts[directory] / filename),
                          "--out", str(out)])
            assert code == 0
            assert out.is_file()

    def test_barrier_overlay_from_summary(self, artifacts, tmp_path):
        plain = tmp_path / "plain.png"
        overlay = tmp_path / "overlay.png"
        barrier_main(["--in", str(artifacts["adapt"] / "barrier.csv"),
                      "--out", str(plain)])
        barrier_main(["--in", str(artifacts["adapt"] / "barrier.csv"),
                      "--summary", str(artifacts["adapt"] / "summary.json"),
                      "--out", str(overlay)])
        assert plain.read_bytes() != overlay.read_bytes()


class TestSchemaHandling:
    def test_missing_column_is_schema_error(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("scan,who,index\n1,0,0\n")
        with pytest.raises(SchemaError, match="machine"):
            render(FigureSpec(kind="index_traces", inputs=[bad],
                              output=str(tmp_path / "x.png")))

    def test_missing_file_exit_code(self, tmp_path):
        code = index_traces_main(["--in", str(tmp_path / "nope.csv"),
                                  "--out", str(tmp_path / "x.png")])
        assert code == 2

    def test_empty_input_renders_warning_banner(self, tmp_path):
        empty = tmp_path / "trips.csv"
        empty.write_text("round,pair,beta_lo,beta_hi,rhat\n")
        out = tmp_path / "empty.png"
        code = acceptance_main(["--in", str(empty), "--out", str(out)])
        assert code == 0
        assert out.stat().st_size > 2000

    def test_inputs_never_mutated(self, artifacts, tmp_path):
        src = artifacts["adapt"] / "barrier.csv"
        copy = tmp_path / "barrier.csv"
        shutil.copy(src, copy)
        before = copy.read_bytes()
        render(FigureSpec(kind="barrier_curve", inputs=[copy],
                          output=str(tmp_path / "y.png")))
        assert copy.read_bytes() == before

    def test_unknown_kind_rejected(self, tmp_path):
        with pytest.raises(SchemaError):
            FigureSpec(kind="sparkline", inputs=["x.csv"], output="y.png")


def test_secondary_acceptance_summary(artifacts, tmp_path):
    """All five figure kinds render from real artifacts and are rerun-stable."""
    for kind, (directory, filename, entry) in KIND_TO_ARGS.items():
        blobs = set()
        for tag in ("x", "y"):
            out = tmp_path / f"{kind}_{tag}.png"
            assert entry(["--in", str(artifacts[directory] / filename),
                          "--out", str(out)]) == 0
            blobs.add(out.read_bytes())
        assert len(blobs) == 1, f"{kind} not pixel-stable"
    print("\nPASS criterion 15: five figure kinds render from engine CSVs, "
          "pixel-stable across reruns")

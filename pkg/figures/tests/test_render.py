"""Renderer tests.

Preset CSVs are produced by the steadytherm CLI (the producer side of the
CSV contract) on small grids; everything here treats them as opaque input.
"""

import subprocess
import sys

import numpy as np
import pytest

from sweepfigs import RenderError, SweepData, render
from sweepfigs.csvdata import pivot

SWEEPS = {
    "fig2": ["--preset", "fig2", "--axis1", "T1:0.5:5:4", "--axis2", "T2:0.5:5:4"],
    "fig3": ["--preset", "fig3", "--axis1", "T1:0.5:5:4", "--axis2", "T2:0.5:5:4"],
    "fig4": ["--preset", "fig4a", "--axis1", "T1:0.5:5:4", "--axis2", "J:0:1:4"],
    "fig5": ["--preset", "fig5", "--cutoff", "30", "--axis1", "T1:0.5:2:4", "--axis2", "T2:0.5:2:4"],
    "fig6": ["--preset", "fig6a", "--cutoff", "40", "--axis1", "T1:0.5:10:4", "--axis2", "T2:0.5:10:4"],
    "fig6c": ["--preset", "fig6c", "--cutoff", "40", "--axis1", "T1:0.5:2:5"],
    "fig7": ["--preset", "fig7", "--axis1", "T2:0.5:5:6"],
}


@pytest.fixture(scope="session")
def preset_csvs(tmp_path_factory):
    root = tmp_path_factory.mktemp("csv")
    paths = {}
    for name, args in SWEEPS.items():
        out = root / f"{name}.csv"
        res = subprocess.run(
            [sys.executable, "-m", "steadytherm", "sweep", *args, "--out", str(out)],
            capture_output=True,
            text=True,
        )
        assert res.returncode == 0, f"{name} sweep failed: {res.stderr}"
        paths[name] = out
    return paths


class TestAllFigureAnalogs:
    @pytest.mark.parametrize("figure", ["fig2", "fig3", "fig4", "fig5", "fig6", "fig7"])
    def test_renders_without_error(self, figure, preset_csvs, tmp_path):
        source = preset_csvs["fig6c" if figure == "fig6c" else figure]
        out = tmp_path / f"{figure}.png"
        render(str(source), figure, str(out))
        assert out.exists() and out.stat().st_size > 0

    def test_fig6c_is_a_flat_unit_curve(self, preset_csvs, tmp_path):
        data = SweepData.load(str(preset_csvs["fig6c"]))
        fidelity = data.floats("F_gibbs_T1")
        assert np.all(fidelity >= 1.0 - 1e-6)
        assert fidelity.max() - fidelity.min() <= 1e-6
        out = tmp_path / "fig6c.png"
        render(str(preset_csvs["fig6c"]), "fig6", str(out))
        assert out.exists() and out.stat().st_size > 0

    def test_fig7_populations_sum_to_one_pointwise(self, preset_csvs, tmp_path):
        data = SweepData.load(str(preset_csvs["fig7"]))
        total = sum(data.floats(name) for name in data.population_columns())
        np.testing.assert_allclose(total, 1.0, atol=1e-10)
        out = tmp_path / "fig7.png"
        render(str(preset_csvs["fig7"]), "fig7", str(out))
        assert out.exists() and out.stat().st_size > 0

    def test_deterministic_output(self, preset_csvs, tmp_path):
        first = tmp_path / "a.png"
        second = tmp_path / "b.png"
        render(str(preset_csvs["fig7"]), "fig7", str(first))
        render(str(preset_csvs["fig7"]), "fig7", str(second))
        assert first.read_bytes() == second.read_bytes()


HEADER = "model,T1,T2,J,U,S,C_T1,C_T2,F_gibbs_T1,F_gibbs_T2"


class TestValidation:
    def test_missing_column_named(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("model,T1,T2,J,U\n" + "two_level,1,1,0,0.5\n")
        with pytest.raises(RenderError, match="C_T1"):
            render(str(bad), "fig3", str(tmp_path / "x.png"))

    def test_missing_fidelity_named(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("model,T1,T2,J\n" + "two_level,1,1,0\n")
        with pytest.raises(RenderError, match="F_gibbs_T1"):
            render(str(bad), "fig6", str(tmp_path / "x.png"))

    def test_empty_fields_leave_holes(self, tmp_path):
        rows = [HEADER]
        for t1 in (1.0, 2.0):
            for t2 in (1.0, 2.0):
                rows.append(f"two_level,{t1},{t2},0,0.1,0.2,0.3,0.4,,")
        # One failed grid point: outputs empty.
        rows[2] = "two_level,1,2,0,,,,,,"
        path = tmp_path / "holes.csv"
        path.write_text("\n".join(rows) + "\n")
        out = tmp_path / "holes.png"
        render(str(path), "fig2", str(out))
        assert out.exists() and out.stat().st_size > 0

    def test_1d_grid_rejected_for_surfaces(self, tmp_path):
        rows = [HEADER] + [f"two_level,{t},1,0,0.1,0.2,0.3,0.4,," for t in (1.0, 2.0)]
        path = tmp_path / "line.csv"
        path.write_text("\n".join(rows) + "\n")
        with pytest.raises(RenderError, match="2D"):
            render(str(path), "fig2", str(tmp_path / "x.png"))


class TestPivot:
    def test_row_major_samples(self):
        x = np.array([1.0, 1.0, 2.0, 2.0])
        y = np.array([10.0, 20.0, 10.0, 20.0])
        z = np.array([1.0, 2.0, 3.0, 4.0])
        xs, ys, grid = pivot(x, y, z)
        np.testing.assert_array_equal(xs, [1.0, 2.0])
        np.testing.assert_array_equal(ys, [10.0, 20.0])
        np.testing.assert_array_equal(grid, [[1.0, 3.0], [2.0, 4.0]])

    def test_missing_combination_is_nan(self):
        xs, ys, grid = pivot(np.array([1.0, 2.0]), np.array([10.0, 20.0]), np.array([5.0, 6.0]))
        assert grid[0, 0] == 5.0 and grid[1, 1] == 6.0
        assert np.isnan(grid[0, 1]) and np.isnan(grid[1, 0])


class TestCli:
    def test_render_subcommand(self, preset_csvs, tmp_path):
        out = tmp_path / "cli.png"
        res = subprocess.run(
            [sys.executable, "-m", "sweepfigs", "render", "--csv", str(preset_csvs["fig2"]),
             "--figure", "fig2", "--out", str(out)],
            capture_output=True,
            text=True,
        )
        assert res.returncode == 0, res.stderr
        assert out.exists() and out.stat().st_size > 0

    def test_missing_column_exits_nonzero(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("model,T1,T2,J,U\ntwo_level,1,1,0,0.5\n")
        res = subprocess.run(
            [sys.executable, "-m", "sweepfigs", "render", "--csv", str(bad),
             "--figure", "fig3", "--out", str(tmp_path / "x.png")],
            capture_output=True,
            text=True,
        )
        assert res.returncode != 0
        assert "C_T1" in res.stderr

    def test_unknown_figure_exits_2(self, tmp_path):
        res = subprocess.run(
            [sys.executable, "-m", "sweepfigs", "render", "--csv", "x.csv",
             "--figure", "fig99", "--out", "y.png"],
            capture_output=True,
            text=True,
        )
        assert res.returncode == 2

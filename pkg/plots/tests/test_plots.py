import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

PLOTS_DIR = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(PLOTS_DIR))

import csv_meta  # noqa: E402
import plot_basin  # noqa: E402
import plot_cost  # noqa: E402
import plot_curves  # noqa: E402
import plot_fidelity_gain  # noqa: E402


def cli(*args, out):
    cmd = ["magicforge", *args, "--out", str(out)]
    res = subprocess.run(cmd, capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    return out


@pytest.fixture(scope="session")
def csvs(tmp_path_factory):
    d = tmp_path_factory.mktemp("csvs")
    return {
        "basin": cli("basin", "--fidelity", "0.886", "--nr", "18",
                     "--ntheta", "24", out=d / "basin.csv"),
        "basin_lobes": cli("basin", "--fidelity", "0.8270", "--nr", "18",
                           "--ntheta", "24", out=d / "basin_lobes.csv"),
        "gain_r": cli("gain", "--fidelity", "0.8269", "--sweep", "r",
                      out=d / "gain_r.csv"),
        "gain_theta": cli("gain", "--fidelity", "0.8269", "--sweep", "theta",
                          "--r", "0.3", out=d / "gain_theta.csv"),
        "curve": cli("curve", "--grid", "0.84:0.99:16", out=d / "curve.csv"),
        "cost": cli("cost", "--grid", "0.86:0.985:40", out=d / "cost.csv"),
    }


def run_script(script, csv, png):
    res = subprocess.run([sys.executable, str(PLOTS_DIR / script), str(csv),
                          "-o", str(png)], capture_output=True, text=True)
    return res


class TestScriptsEmitImages:
    @pytest.mark.parametrize("script,key", [
        ("plot_basin.py", "basin"),
        ("plot_basin.py", "basin_lobes"),
        ("plot_fidelity_gain.py", "gain_r"),
        ("plot_fidelity_gain.py", "gain_theta"),
        ("plot_curves.py", "curve"),
        ("plot_cost.py", "cost"),
    ])
    def test_image_written(self, csvs, tmp_path, script, key):
        png = tmp_path / f"{key}.png"
        res = run_script(script, csvs[key], png)
        assert res.returncode == 0, res.stderr
        data = png.read_bytes()
        assert data[:8] == b"\x89PNG\r\n\x1a\n"
        assert len(data) > 2000


class TestSchemaChecks:
    def test_wrong_csv_rejected(self, csvs, tmp_path):
        res = run_script("plot_basin.py", csvs["cost"], tmp_path / "x.png")
        assert res.returncode == 2
        assert "expected 'basin'" in res.stderr

    def test_empty_csv_rejected(self, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("")
        res = run_script("plot_curves.py", empty, tmp_path / "x.png")
        assert res.returncode == 2

    def test_reader_flags_missing_columns(self, csvs):
        with pytest.raises(csv_meta.SchemaError):
            csv_meta.read_csv(str(csvs["basin"]), "basin", ("no_such_column",))


class TestFigureContent:
    def test_basin_color_legend_fixed(self):
        assert plot_basin.CLASS_COLORS["MagicT0"] == "#d62728"       # red
        assert plot_basin.CLASS_COLORS["OrthogonalT1"] == "#f7b6d2"  # pink
        assert plot_basin.CLASS_COLORS["MaximallyMixed"] == "#000000"
        assert plot_basin._color("Corner(+-+)") == plot_basin.CLASS_COLORS["flips1"]
        assert plot_basin._color("Corner(--+)") == plot_basin.CLASS_COLORS["flips2"]
        assert plot_basin._color("Corner(+-+)") != plot_basin._color("Corner(--+)")

    def test_cost_axis_is_logarithmic(self, csvs):
        fig, ax = plot_cost.build_figure(str(csvs["cost"]))
        assert ax.get_yscale() == "log"

    def test_curves_include_diagonal_reference(self, csvs):
        fig, ax = plot_curves.build_figure(str(csvs["curve"]))
        # 4 settings x (one-round + limit) + the diagonal
        assert len(ax.get_lines()) == 9
        xs, ys = ax.get_lines()[-1].get_data()
        assert np.allclose(xs, ys)

    def test_gain_data_crosses_zero_and_is_periodic(self, csvs):
        _, cols = csv_meta.read_csv(str(csvs["gain_r"]), "gain",
                                    ("r", "theta", "d"))
        d = csv_meta.numeric(cols["d"])
        assert d.min() < 0 < d.max()
        _, cols = csv_meta.read_csv(str(csvs["gain_theta"]), "gain",
                                    ("r", "theta", "d"))
        th = csv_meta.numeric(cols["theta"])
        d = csv_meta.numeric(cols["d"])
        third = np.argmin(np.abs(th - (th[0] + 2 * np.pi / 3)))
        assert d[third] == pytest.approx(d[0], abs=1e-9)

    def test_basin_magic_core_is_red(self, csvs):
        _, cols = csv_meta.read_csv(str(csvs["basin"]), "basin",
                                    ("r", "class"))
        r = csv_meta.numeric(cols["r"])
        labels = np.array(cols["class"])
        core = labels[np.abs(r) < 1e-12]
        assert set(core) == {"MagicT0"}
        assert plot_basin._color("MagicT0") == "#d62728"

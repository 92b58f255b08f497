import csv

import numpy as np
import pytest

from nighedge.cli import build_run_config, load_config, main, read_price_csv

FAST_CFG = """
# quick but certified grid: N*eta = 16384 covers the schedule's shortest maturity
n_points = 8192
eta = 2.0
oversample = 2
n_steps = 250
s0 = 2300.0
strikes = 2300,2400
"""


@pytest.fixture()
def cfg_file(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text(FAST_CFG)
    return str(path)


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


class TestConfig:
    def test_defaults_reproduce_reference_setup(self):
        rc = build_run_config({})
        assert rc.params.alpha == pytest.approx(25.61598030765035)
        assert rc.quad.n_points == 65536 and rc.quad.eta == 0.25
        assert rc.quad.a == 1.75 and rc.quad.epsilon == 0.01
        assert rc.horizon == 1.0
        assert rc.strikes == (2300.0, 2350.0, 2400.0)

    def test_load_and_override(self, cfg_file):
        values = load_config(cfg_file)
        assert values["n_points"] == "8192"
        rc = build_run_config({**values, "mode": "simulate"})
        assert rc.mode == "simulate" and rc.n_steps == 250

    def test_unknown_key_reports_line(self, tmp_path):
        bad = tmp_path / "bad.cfg"
        bad.write_text("alpha = 3.0\nnota_key = 1\n")
        with pytest.raises(ValueError, match=r"bad\.cfg:2"):
            load_config(str(bad))

    def test_bad_mode_rejected(self):
        with pytest.raises(ValueError):
            build_run_config({"mode": "price"})

    def test_hedge_needs_strikes(self):
        with pytest.raises(ValueError):
            build_run_config({"strikes": ""})


class TestPriceCsv:
    def test_time_format(self, tmp_path):
        src = tmp_path / "p.csv"
        src.write_text("time,close\n0,100\n0.5,101\n1.0,99\n")
        path = read_price_csv(src, 1.0)
        assert np.allclose(path.times, [0.0, 0.5, 1.0])

    def test_date_format_maps_to_business_fractions(self, tmp_path):
        src = tmp_path / "p.csv"
        src.write_text(
            "date,close\n2016-05-20,100\n2016-05-23,101\n2016-05-24,102\n2016-05-25,99\n"
        )
        path = read_price_csv(src, 1.0)
        assert np.allclose(path.times, [0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0])

    def test_malformed_row_reports_line(self, tmp_path):
        src = tmp_path / "p.csv"
        src.write_text("time,close\n0,100\nnot_a_number,101\n")
        with pytest.raises(ValueError, match=":3"):
            read_price_csv(src, 1.0)

    def test_bad_header_rejected(self, tmp_path):
        src = tmp_path / "p.csv"
        src.write_text("when,price\n0,100\n")
        with pytest.raises(ValueError, match=":1"):
            read_price_csv(src, 1.0)

    def test_unsorted_dates_rejected(self, tmp_path):
        src = tmp_path / "p.csv"
        src.write_text("date,close\n2016-05-23,100\n2016-05-20,101\n")
        with pytest.raises(ValueError, match="increasing"):
            read_price_csv(src, 1.0)


class TestPipeline:
    def test_simulate_hedge_round_trip(self, cfg_file, tmp_path, capsys):
        prices = tmp_path / "path.csv"
        hedge = tmp_path / "hedge.csv"
        assert main(["--config", cfg_file, "--mode", "simulate", "--seed", "42",
                     "--output", str(prices)]) == 0
        assert main(["--config", cfg_file, "--mode", "hedge", "--input", str(prices),
                     "--output", str(hedge)]) == 0
        out = capsys.readouterr().out
        assert "parameter gate: PASS" in out

        rows = read_rows(hedge)
        assert len(rows) == 2 * 250  # strikes x rebalance dates
        assert list(rows[0]) == ["t", "strike", "xi", "theta", "H", "E"]
        keys = [(float(r["strike"]), float(r["t"])) for r in rows]
        assert keys == sorted(keys)
        assert all(np.isfinite(float(r["xi"])) for r in rows)

    def test_hedge_output_byte_identical(self, cfg_file, tmp_path):
        prices = tmp_path / "path.csv"
        out_a = tmp_path / "a.csv"
        out_b = tmp_path / "b.csv"
        main(["--config", cfg_file, "--mode", "simulate", "--seed", "4",
              "--output", str(prices)])
        main(["--config", cfg_file, "--mode", "hedge", "--input", str(prices),
              "--output", str(out_a)])
        main(["--config", cfg_file, "--mode", "hedge", "--input", str(prices),
              "--output", str(out_b)])
        assert out_a.read_bytes() == out_b.read_bytes()

    def test_validate_mode_exit_codes(self, tmp_path):
        assert main(["--mode", "validate"]) == 0
        bad = tmp_path / "bad.cfg"
        bad.write_text("alpha = 2.0\nbeta = -1.0\ndelta = 0.4\n")
        assert main(["--config", str(bad), "--mode", "validate"]) == 1
        assert main(["--config", str(bad), "--mode", "validate", "--math-mode"]) == 0

    def test_truncation_report_modes(self, cfg_file, tmp_path):
        assert main(["--config", cfg_file, "--mode", "truncation-report"]) == 0
        short = tmp_path / "short.cfg"
        short.write_text("n_points = 2048\neta = 0.25\nn_steps = 40\n")
        assert main(["--config", str(short), "--mode", "truncation-report"]) == 2

    def test_hedge_certificate_failure_exits_nonzero(self, tmp_path, capsys):
        cfg = tmp_path / "short.cfg"
        cfg.write_text("n_points = 2048\neta = 0.25\nn_steps = 40\nstrikes = 2300\n")
        prices = tmp_path / "path.csv"
        main(["--config", str(cfg), "--mode", "simulate", "--seed", "2",
              "--output", str(prices)])
        code = main(["--config", str(cfg), "--mode", "hedge", "--input", str(prices),
                     "--output", str(tmp_path / "h.csv")])
        assert code == 2
        assert "truncation certificate failed" in capsys.readouterr().out

    def test_report_mode_renders_figures(self, cfg_file, tmp_path):
        prices = tmp_path / "path.csv"
        hedge = tmp_path / "hedge.csv"
        figures = tmp_path / "figs"
        main(["--config", cfg_file, "--mode", "simulate", "--seed", "11",
              "--output", str(prices)])
        main(["--config", cfg_file, "--mode", "hedge", "--input", str(prices),
              "--output", str(hedge)])
        assert main(["--mode", "report", "--input", str(hedge),
                     "--output", str(figures)]) == 0
        rendered = sorted(p.name for p in figures.glob("*.png"))
        assert rendered == ["hedge_strike_2300.png", "hedge_strike_2400.png"]

    def test_hedge_with_plot_dir(self, cfg_file, tmp_path):
        prices = tmp_path / "path.csv"
        figures = tmp_path / "figs"
        main(["--config", cfg_file, "--mode", "simulate", "--seed", "11",
              "--output", str(prices)])
        assert main(["--config", cfg_file, "--mode", "hedge", "--input", str(prices),
                     "--output", str(tmp_path / "h.csv"),
                     "--plot-dir", str(figures)]) == 0
        assert len(list(figures.glob("*.png"))) == 2

    def test_missing_input_is_an_error(self, cfg_file, capsys):
        assert main(["--config", cfg_file, "--mode", "hedge"]) == 2
        assert "requires --input" in capsys.readouterr().err

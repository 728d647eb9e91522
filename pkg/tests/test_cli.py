"""Command-line interface: exit codes, output formats, round-trips."""

import json
import time

import numpy as np
import pytest

from udwharvest import concurrence_values, transition_probability
from udwharvest.cli import main, read_data_file

FOUR_PI = 4.0 * np.pi


def run(argv):
    return main(argv)


def manifest_and_data(path):
    """Split an emitted file into header lines and raw data lines."""
    header, data = [], []
    with open(path) as fh:
        for line in fh:
            (header if line.startswith("#") else data).append(line)
    return header, data


class TestEval:
    def test_zero_gap_probabilities(self, tmp_path):
        out = tmp_path / "eval.json"
        code = run(
            [
                "eval", "--omega-a", "0", "--delta-omega", "0", "--l", "1",
                "--lambda", "1", "--format", "record", "--out", str(out),
            ]
        )
        assert code == 0
        rec = json.loads(out.read_text())["result"]
        assert rec["p_a"] == pytest.approx(1.0 / FOUR_PI, rel=1e-14)
        assert rec["p_b"] == rec["p_a"]

    def test_omega_b_below_omega_a_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as err:
            run(["eval", "--omega-a", "0.5", "--omega-b", "0.4", "--l", "1"])
        assert err.value.code == 2

    def test_requires_one_gap_flag(self):
        with pytest.raises(SystemExit) as err:
            run(["eval", "--omega-a", "0.5", "--l", "1"])
        assert err.value.code == 2

    def test_matches_library_to_full_precision(self, tmp_path):
        out = tmp_path / "eval.json"
        assert run(
            [
                "eval", "--omega-a", "0.5", "--delta-omega", "0.5", "--l", "2",
                "--format", "record", "--out", str(out),
            ]
        ) == 0
        rec = json.loads(out.read_text())["result"]
        expected = concurrence_values(0.5, 0.5, 2.0, 0.1)
        assert rec["concurrence"] == expected
        assert rec["concurrence_over_lambda2"] == expected / 0.1**2

    def test_domain_error_exit_code(self):
        assert run(["eval", "--omega-a", "0.5", "--delta-omega", "0", "--l", "0"]) == 3

    def test_omega_b_accepted(self, tmp_path):
        out = tmp_path / "eval.json"
        assert run(
            [
                "eval", "--omega-a", "0.5", "--omega-b", "0.75", "--l", "2",
                "--format", "record", "--out", str(out),
            ]
        ) == 0
        rec = json.loads(out.read_text())["result"]
        assert rec["p_b"] == transition_probability(0.75, 0.1)


class TestVerify:
    def test_single_scenario_smoke(self, tmp_path):
        t0 = time.perf_counter()
        code = run(["verify", "--grid", "1", "--out", str(tmp_path / "v.txt")])
        elapsed = time.perf_counter() - t0
        assert code == 0
        assert elapsed < 2.0
        text = (tmp_path / "v.txt").read_text()
        assert "all checks passed" in text
        assert "FAIL" not in text.replace("FAILED", "")

    def test_unreachable_tolerance_fails(self, tmp_path):
        code = run(
            [
                "verify", "--grid", "1", "--tolerance", "1e-15",
                "--out", str(tmp_path / "v.txt"),
            ]
        )
        assert code == 1
        assert "FAIL" in (tmp_path / "v.txt").read_text()

    def test_record_format(self, tmp_path):
        out = tmp_path / "v.json"
        assert run(["verify", "--grid", "1", "--format", "record", "--out", str(out)]) == 0
        rec = json.loads(out.read_text())
        assert rec["failures"] == 0
        assert all(c["passed"] for c in rec["checks"])


class TestSearchCommands:
    def test_lmax_large_gap(self, tmp_path):
        out = tmp_path / "lmax.json"
        assert run(
            [
                "lmax", "--omega-a", "4", "--delta-omega", "0",
                "--format", "record", "--out", str(out),
            ]
        ) == 0
        loc = json.loads(out.read_text())["result"]["location"]
        assert abs(loc - 8.0) <= 0.8

    def test_lmax_no_harvest_exit(self):
        code = run(
            [
                "lmax", "--omega-a", "0.2", "--delta-omega", "0",
                "--scan-bound", "20", "--scan-step", "5",
            ]
        )
        assert code == 4

    def test_lmax_lower_bound_report(self, tmp_path):
        out = tmp_path / "lmax.json"
        code = run(
            [
                "lmax", "--omega-a", "0.5", "--delta-omega", "0", "--scan-bound", "1",
                "--format", "record", "--out", str(out),
            ]
        )
        assert code == 0
        rec = json.loads(out.read_text())["result"]
        assert rec["location"] == 1.0
        assert "lower bound" in rec["note"]

    def test_peak_boundary_flag(self, tmp_path):
        out = tmp_path / "peak.json"
        assert run(
            [
                "peak", "--omega-a", "0.5", "--l", "0.5",
                "--format", "record", "--out", str(out),
            ]
        ) == 0
        rec = json.loads(out.read_text())["result"]
        assert rec["location"] == 0.0
        assert "boundary" in rec["note"]

    def test_crossover_ordering(self, tmp_path):
        locs = []
        for d in ("0.05", "0.3"):
            out = tmp_path / f"c{d}.json"
            assert run(
                [
                    "crossover", "--omega-a", "0.5", "--delta-omega", d,
                    "--format", "record", "--out", str(out),
                ]
            ) == 0
            locs.append(json.loads(out.read_text())["result"]["location"])
        assert locs[0] < locs[1]

    def test_crossover_not_found_exit(self):
        code = run(
            ["crossover", "--omega-a", "0.5", "--delta-omega", "0.25", "--scan-bound", "1"]
        )
        assert code == 5


class TestFigure:
    def test_unknown_name_is_usage_error(self):
        with pytest.raises(SystemExit) as err:
            run(["figure", "fig9"])
        assert err.value.code == 2

    def test_fig1a_emission_and_roundtrip(self, tmp_path):
        out = tmp_path / "fig1a.csv"
        assert run(["figure", "fig1a", "--points", "48", "--out", str(out)]) == 0
        meta, columns, data = read_data_file(out)
        assert columns[0] == "l_over_sigma"
        assert data.shape == (48, 6)
        # identical-gap curve dominates nearest the detectors
        assert data[0, 1] == max(data[0, 1:])
        # parsed values recompute bitwise at the recorded parameters
        a = float(meta["omega_a_sigma"])
        recomputed = concurrence_values(a, 0.2 * a, data[:, 0], 1.0)
        assert recomputed.tolist() == data[:, 2].tolist()

    def test_fig5_small_gap_column_increases(self, tmp_path):
        out = tmp_path / "fig5.csv"
        assert run(["figure", "fig5", "--points", "16", "--out", str(out)]) == 0
        _, columns, data = read_data_file(out)
        col = columns.index("lmax_a_0.2")
        assert np.all(np.diff(data[:, col]) > 0)

    def test_fig3_excess_column_consistent(self, tmp_path):
        out = tmp_path / "fig3.csv"
        assert run(["figure", "fig3", "--points", "32", "--out", str(out)]) == 0
        _, columns, data = read_data_file(out)
        assert columns == ["dw_over_wa", "abs_x", "sqrt_pa_pb", "excess"]
        assert np.max(np.abs(data[:, 1] - data[:, 2] - data[:, 3])) == 0.0

    def test_fig3_peak_matches_fig2a_marker(self, tmp_path):
        f2, f3 = tmp_path / "fig2a.csv", tmp_path / "fig3.csv"
        assert run(["figure", "fig2a", "--points", "600", "--out", str(f2)]) == 0
        assert run(["figure", "fig3", "--points", "600", "--out", str(f3)]) == 0
        meta2, _, _ = read_data_file(f2)
        marker = dict(
            kv.split("=") for kv in meta2["peak[l=2]"].split() if "=" in kv
        )
        _, columns, data = read_data_file(f3)
        ratios = data[:, 0]
        excess_peak = ratios[np.argmax(data[:, columns.index("excess")])]
        grid_step = ratios[1] - ratios[0]
        assert abs(excess_peak - float(marker["dw_over_wa"])) <= grid_step

    def test_byte_identical_data_sections(self, tmp_path):
        f1, f2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run(["figure", "fig2a", "--points", "40", "--out", str(f1)]) == 0
        assert run(["figure", "fig2a", "--points", "40", "--out", str(f2)]) == 0
        h1, d1 = manifest_and_data(f1)
        h2, d2 = manifest_and_data(f2)
        assert d1 == d2
        differing = [(a, b) for a, b in zip(h1, h2) if a != b]
        assert all(a.startswith("# timestamp:") for a, _ in differing)


class TestSweepCommand:
    ARGS = [
        "sweep", "--axis", "l", "--start", "0.5", "--stop", "3.0", "--points", "40",
        "--omega-a", "0.5", "--delta-omega", "0.25",
    ]

    def test_roundtrip(self, tmp_path):
        out = tmp_path / "sweep.csv"
        assert run(self.ARGS + ["--out", str(out)]) == 0
        meta, columns, data = read_data_file(out)
        assert columns[0] == "l_over_sigma"
        # the sweep evaluates per point, so recompute point by point (whole-
        # array kernels may differ from scalar ones in the last ulp)
        from udwharvest import DetectorPairConfig, concurrence

        recomputed = [
            concurrence(DetectorPairConfig(0.5, 0.25, float(l), 0.1)).concurrence
            for l in data[:, 0]
        ]
        assert recomputed == data[:, 1].tolist()

    def test_thread_flag_does_not_change_output(self, tmp_path):
        f1, f2 = tmp_path / "s1.csv", tmp_path / "s2.csv"
        assert run(self.ARGS + ["--out", str(f1)]) == 0
        assert run(self.ARGS + ["--threads", "4", "--out", str(f2)]) == 0
        assert manifest_and_data(f1)[1] == manifest_and_data(f2)[1]

    def test_env_var_thread_cap(self, tmp_path, monkeypatch):
        monkeypatch.setenv("UDWHARVEST_THREADS", "2")
        out = tmp_path / "s.csv"
        assert run(self.ARGS + ["--out", str(out)]) == 0
        _, _, data = read_data_file(out)
        assert data.shape[0] == 40

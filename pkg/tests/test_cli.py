"""CLI and sweep-layer tests: parsing, schemas, determinism, exit codes."""
import json
import math
import subprocess
import sys

import jsonschema
import numpy as np
import pytest

from diracinfo.cli import STATE_REPORT_SCHEMA, main
from diracinfo.errors import DomainError
from diracinfo.hydrogenic import PhysicalContext, QuantumState
from diracinfo.measures import measure_set
from diracinfo.sweeps import (
    MEASURE_COLUMNS,
    PLANE_COLUMNS,
    PROFILE_COLUMNS,
    SweepSpec,
    enumerate_states,
    measure_set_cached,
    parse_state_token,
    rows_to_csv,
    sweep_measure_rows,
)


class TestStateTokens:
    def test_basic(self):
        st = parse_state_token("2s")
        assert (st.n, st.l, st.j, st.m_j) == (2, 0, 0.5, 0.5)

    def test_lower_branch(self):
        st = parse_state_token("3p-")
        assert (st.n, st.l, st.j, st.kappa) == (3, 1, 0.5, 1)

    def test_default_mj_is_stretched(self):
        st = parse_state_token("4d")
        assert st.j == 2.5 and st.m_j == 2.5

    def test_explicit_mj(self):
        assert parse_state_token("4d:1.5").m_j == 1.5
        assert parse_state_token("4d:-0.5").m_j == -0.5
        assert parse_state_token("4d:3/2").m_j == 1.5

    @pytest.mark.parametrize("token", ["2x", "0s", "2p+", "s2", "2", "3d:9.5"])
    def test_invalid(self, token):
        with pytest.raises(DomainError):
            parse_state_token(token)


class TestCatalog:
    def test_full_count_matches_degeneracy(self):
        # sum over n <= 6 of 2 n^2
        assert len(enumerate_states(6)) == 2 * sum(n * n for n in range(1, 7))

    def test_stretched_count(self):
        assert len(enumerate_states(6, mj="stretched")) == sum(2 * n - 1 for n in range(1, 7))

    def test_canonical_order(self):
        states = enumerate_states(3)
        keys = [(s.n, s.l, s.j, s.m_j) for s in states]
        assert keys == sorted(keys)

    def test_cached_equals_direct(self):
        st = QuantumState.from_nlj(3, 1, 1.5, 0.5)
        ctx = PhysicalContext.for_state(19.0, st)
        direct = measure_set(ctx, st, "dirac")
        cached = measure_set_cached(19.0, st, "dirac")
        assert cached.s == pytest.approx(direct.s, rel=1e-14)
        assert cached.c_fs == pytest.approx(direct.c_fs, rel=1e-14)


class TestStateCommand:
    def run_json(self, capsys, args):
        code = main(args)
        out = capsys.readouterr().out
        return code, json.loads(out)

    def test_schrodinger_ground_report(self, capsys):
        code, report = self.run_json(capsys, [
            "state", "--Z", "1", "--n", "1", "--l", "0", "--j", "0.5",
            "--mj", "0.5", "--framework", "schrodinger"])
        assert code == 0
        jsonschema.validate(report, STATE_REPORT_SCHEMA)
        c_lmc = report["results"]["schrodinger"]["C_LMC"]
        assert c_lmc == pytest.approx(math.exp(3.0) / 8.0, rel=1e-6)

    def test_both_frameworks_with_ratios(self, capsys):
        code, report = self.run_json(capsys, [
            "state", "--Z", "19", "--n", "2", "--l", "1", "--j", "1.5"])
        assert code == 0
        jsonschema.validate(report, STATE_REPORT_SCHEMA)
        assert set(report["results"]) == {"dirac", "schrodinger"}
        assert report["ratios"]["zeta_LMC"] > 0.0

    def test_klein_regime_exit_code(self, capsys):
        code = main(["state", "--Z", "200", "--n", "1", "--l", "0", "--j", "0.5"])
        assert code == 2
        assert "137" in capsys.readouterr().err

    def test_invalid_state_exit_code(self, capsys):
        code = main(["state", "--Z", "10", "--n", "2", "--l", "2", "--j", "2.5"])
        assert code == 2

    def test_divergent_fisher_reported_as_null(self, capsys):
        code, report = self.run_json(capsys, [
            "state", "--Z", "119", "--n", "1", "--l", "0", "--j", "0.5",
            "--framework", "dirac"])
        assert code == 0
        jsonschema.validate(report, STATE_REPORT_SCHEMA)
        res = report["results"]["dirac"]
        assert res["fisher_divergent"] is True
        assert res["I"] is None and res["C_FS"] is None
        assert res["C_LMC"] > 1.0


class TestSweepZ:
    def test_csv_structure_and_trends(self, capsys):
        code = main(["sweep-z", "--z-from", "1", "--z-to", "100", "--z-steps", "5",
                     "--states", "1s", "--jobs", "1"])
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == ",".join(MEASURE_COLUMNS)
        rows = [dict(zip(MEASURE_COLUMNS, ln.split(","))) for ln in lines[1:]]
        assert len(rows) == 10
        schr = [float(r["C_LMC"]) for r in rows if r["framework"] == "schrodinger"]
        dirac = [float(r["C_LMC"]) for r in rows if r["framework"] == "dirac"]
        assert np.ptp(schr) / schr[0] < 1e-8
        assert all(a < b for a, b in zip(dirac, dirac[1:]))
        assert all(r["status"] == "ok" for r in rows)

    def test_divergent_rows_marked(self, capsys):
        code = main(["sweep-z", "--z-from", "118", "--z-to", "119", "--z-steps", "2",
                     "--states", "1s", "--framework", "dirac", "--jobs", "1"])
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        rows = [dict(zip(MEASURE_COLUMNS, ln.split(","))) for ln in lines[1:]]
        assert rows[0]["status"] == "ok"
        assert rows[1]["status"] == "fisher_divergent"
        assert rows[1]["I"] == "divergent" and rows[1]["C_FS"] == "divergent"
        assert "e" in rows[1]["S"]  # S still numeric

    def test_no_silent_nans(self, capsys):
        main(["sweep-z", "--z-from", "1", "--z-to", "119", "--z-steps", "3",
              "--n-max", "1", "--jobs", "1"])
        out = capsys.readouterr().out
        assert "nan" not in out.lower()


class TestSweepStates:
    def test_row_count_and_columns(self, capsys):
        code = main(["sweep-states", "--Z", "19", "--n-max", "2", "--jobs", "1"])
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        # 2 * sum(2 n^2) rows: both frameworks
        assert len(lines) - 1 == 2 * 2 * (1 + 4)
        idx = MEASURE_COLUMNS.index("zeta_LMC")
        vals = {ln.split(",")[idx] for ln in lines[1:]}
        assert all(v not in ("", "nan") for v in vals)

    def test_lmc_j_ordering_at_z19(self, capsys):
        main(["sweep-states", "--Z", "19", "--n-max", "3", "--jobs", "1"])
        lines = capsys.readouterr().out.strip().splitlines()
        rows = [dict(zip(MEASURE_COLUMNS, ln.split(","))) for ln in lines[1:]]
        by_state = {}
        for r in rows:
            if r["framework"] != "dirac":
                continue
            key = (int(r["n"]), int(r["l"]), float(r["j"]))
            by_state[key] = float(r["zeta_LMC"])
        for (n, l, j), z in by_state.items():
            if l >= 1 and j == l - 0.5:
                assert z > by_state[(n, l, l + 0.5)]


class TestProfileCommand:
    def test_columns_and_node_structure(self, capsys):
        code = main(["profile", "--Z", "50", "--n", "5", "--l", "2", "--j", "1.5",
                     "--r-min", "0.001", "--r-max", "1.2", "--points", "800",
                     "--spacing", "log"])
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == ",".join(PROFILE_COLUMNS)
        data = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
        d_s = data[:, 1]
        d_d = data[:, 2]
        assert float(np.min(d_s)) < 1e-6 * float(np.max(d_s))  # touches zero
        assert float(np.min(d_d)) > 0.0
        r2f2 = data[:, 6]
        assert float(np.max(r2f2)) < 0.1 * float(np.max(data[:, 5]))

    def test_bad_grid_rejected(self, capsys):
        assert main(["profile", "--Z", "50", "--n", "5", "--l", "2", "--j", "1.5",
                     "--r-min", "-1", "--r-max", "2"]) == 2


class TestPlaneCommand:
    def test_bounds_hold(self, capsys):
        code = main(["plane", "--Z", "90", "--n-max", "4", "--jobs", "1"])
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == ",".join(PLANE_COLUMNS)
        for ln in lines[1:]:
            row = dict(zip(PLANE_COLUMNS, ln.split(",")))
            assert row["mj"] == row["j"]
            d_exp_s = float(row["D"]) * float(row["exp_S"])
            assert d_exp_s >= 1.0
            if row["I"] != "divergent":
                assert float(row["I"]) * float(row["J"]) >= 3.0
            assert row["lmc_bound"] == "1.00000000000e+00"
            assert row["fs_bound"] == "3.00000000000e+00"


class TestDeterminism:
    def test_jobs_do_not_change_bytes(self, tmp_path):
        out1 = tmp_path / "a.csv"
        out8 = tmp_path / "b.csv"
        base = ["sweep-states", "--Z", "50", "--n-max", "3"]
        assert main(base + ["--jobs", "1", "--out", str(out1)]) == 0
        assert main(base + ["--jobs", "8", "--out", str(out8)]) == 0
        assert out1.read_bytes() == out8.read_bytes()

    def test_repeated_runs_identical(self, tmp_path):
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        base = ["sweep-z", "--z-from", "1", "--z-to", "90", "--z-steps", "4",
                "--states", "1s,2p,3d-", "--jobs", "2"]
        assert main(base + ["--out", str(out1)]) == 0
        assert main(base + ["--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()


class TestEntryPoint:
    def test_installed_script_runs(self):
        proc = subprocess.run(
            [sys.executable, "-m", "diracinfo.cli", "state", "--Z", "1", "--n", "1",
             "--l", "0", "--j", "0.5", "--framework", "schrodinger"],
            capture_output=True, text=True, timeout=120)
        assert proc.returncode == 0
        report = json.loads(proc.stdout)
        assert report["results"]["schrodinger"]["I"] == pytest.approx(4.0, rel=1e-8)

    def test_json_format_sweep(self, capsys):
        code = main(["sweep-z", "--z-from", "1", "--z-to", "2", "--z-steps", "2",
                     "--states", "1s", "--jobs", "1", "--format", "json"])
        assert code == 0
        rows = json.loads(capsys.readouterr().out)
        assert len(rows) == 4
        assert rows[0]["framework"] in ("dirac", "schrodinger")


class TestSweepSpecValidation:
    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            SweepSpec(z_values=(), states=(QuantumState(1, -1, 0.5),))
        with pytest.raises(DomainError):
            SweepSpec(z_values=(1.0,), states=())

    def test_csv_writer_round_trip(self):
        spec = SweepSpec(z_values=(5.0,), states=(QuantumState(1, -1, 0.5),),
                         frameworks=("schrodinger",), jobs=1)
        rows = sweep_measure_rows(spec)
        text = rows_to_csv(MEASURE_COLUMNS, rows)
        lines = text.strip().splitlines()
        assert len(lines) == 2
        assert text.endswith("\n")

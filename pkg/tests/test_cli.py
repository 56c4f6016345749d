import json
import math

import pytest

from kgheun.cli import EXIT_CONFIG, EXIT_DOMAIN, main
from kgheun import ModelConfig, ground_state_coulomb


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestGroundState:
    def test_csv_row(self, capsys):
        code, out = run_cli(capsys, "ground-state", "--mass", "1", "--f", "0.2", "--l", "1")
        assert code == 0
        header, row = out.strip().split("\n")
        assert header == "variant,n,l,f,nu,omega,energy,branch,method,residual"
        fields = row.split(",")
        gs = ground_state_coulomb(ModelConfig(mass=1.0, coulomb_f=0.2, angular_l=1))
        assert float(fields[5]) == pytest.approx(gs.omega, rel=1e-15)
        assert float(fields[6]) == pytest.approx(gs.energy, rel=1e-15)

    def test_degenerate_f_zero_domain_error(self, capsys):
        code, out = run_cli(capsys, "ground-state", "--mass", "1", "--f", "0", "--l", "1")
        assert code == EXIT_DOMAIN
        err = json.loads(out)["error"]
        assert err["type"] == "DegenerateCoupling"
        assert "unconstrained" in err["message"]

    def test_missing_mass_config_error(self, capsys):
        code, out = run_cli(capsys, "ground-state", "--f", "0.2", "--l", "1")
        assert code == EXIT_CONFIG
        assert json.loads(out)["error"]["kind"] == "config"


class TestDeterminism:
    def test_repeated_runs_byte_identical(self, capsys):
        args = ("spectrum", "--mass", "1", "--f", "0.2", "--l", "1", "--n-max", "2",
                "--omega-max", "50")
        _, out1 = run_cli(capsys, *args)
        _, out2 = run_cli(capsys, *args)
        assert out1 == out2

    def test_json_round_trip_fixed_point(self, capsys, tmp_path):
        args = ("spectrum", "--mass", "1", "--f", "0.2", "--l", "1", "--n-max", "2",
                "--omega-max", "50", "--format", "json")
        code, out1 = run_cli(capsys, *args)
        assert code == 0
        cfg_file = tmp_path / "rerun.json"
        cfg_file.write_text(out1)
        code, out2 = run_cli(capsys, "--config", str(cfg_file))
        assert code == 0
        assert out1 == out2


class TestVerifyCommand:
    def test_matched_column(self, capsys):
        code, out = run_cli(capsys, "verify", "--mass", "1", "--f", "0.2", "--l", "1",
                            "--n-max", "1")
        assert code == 0
        header, row = out.strip().split("\n")
        assert header.endswith("oracle_energy,energy_delta,nodes,l2_delta,matched")
        assert row.endswith("true")


class TestWavefunctionCommand:
    def test_samples_with_metadata(self, capsys):
        code, out = run_cli(capsys, "wavefunction", "--mass", "1", "--f", "0.2", "--l", "1")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0].startswith("# ")
        meta = json.loads(lines[0][2:])
        assert meta["n"] == 1
        assert lines[1] == "rho,R"
        first = lines[2].split(",")
        assert float(first[0]) == 0.0
        norm = 0.0
        rows = [tuple(map(float, ln.split(","))) for ln in lines[2:]]
        for (r1, v1), (r2, v2) in zip(rows, rows[1:]):
            norm += 0.5 * (v1**2 * r1 + v2**2 * r2) * (r2 - r1)
        assert 2.0 * math.pi * norm == pytest.approx(1.0, abs=1e-6)


class TestSweep:
    def test_grid_rows_in_order(self, capsys):
        code, out = run_cli(capsys, "sweep", "--mass", "1", "--l", "1", "--n-max", "1",
                            "--f-grid", "0.1,0.2,0.3", "--omega-max", "10")
        assert code == 0
        lines = out.strip().split("\n")
        assert len(lines) == 4
        fs = [float(ln.split(",")[3]) for ln in lines[1:]]
        assert fs == [0.1, 0.2, 0.3]

    def test_sweep_requires_grid(self, capsys):
        code, out = run_cli(capsys, "sweep", "--mass", "1", "--l", "1")
        assert code == EXIT_CONFIG

    def test_out_file(self, capsys, tmp_path):
        out_path = tmp_path / "rows.csv"
        code, _ = run_cli(capsys, "ground-state", "--mass", "1", "--f", "0.2", "--l", "1",
                          "--out", str(out_path))
        assert code == 0
        assert out_path.read_text().startswith("variant,")

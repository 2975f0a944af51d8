"""Tests for the config format, sweep engine, CSV output, and the
command-line interface (derive / sweep / verify)."""

import math
from fractions import Fraction

import pytest

from jpocoupler import circuit, cli
from jpocoupler import derivation as dv
from jpocoupler.config import ConfigError, loads_config, parse_quantity
from jpocoupler.sweep import (
    ALPHA_MARGIN,
    PRESETS,
    SweepSpec,
    format_csv,
    preset_spec,
    run_sweep,
    write_csv,
)

TWO_PI = 2.0 * math.pi

REFERENCE_CONFIG = """\
# reference operating point
C_J   = 500 fF
C     = 0.5 fF
C_g   = 100 fF
n     = 1
alpha = 0.0
omega = 2pi*10 GHz
Omega = 20 MHz
"""


class TestParseQuantity:
    def test_capacitance_units(self):
        assert parse_quantity("500 fF", "capacitance") == 5e-13
        assert parse_quantity("1.5 pF", "capacitance") == 1.5e-12
        assert parse_quantity("2e-15 F", "capacitance") == 2e-15

    def test_frequencies_are_angular(self):
        assert parse_quantity("10 GHz", "frequency") == pytest.approx(
            TWO_PI * 1e10, rel=1e-15
        )
        assert parse_quantity("20 MHz", "frequency") == pytest.approx(
            TWO_PI * 2e7, rel=1e-15
        )

    def test_fused_angular_prefix_is_identity(self):
        assert parse_quantity("2pi*10 GHz", "frequency") == parse_quantity(
            "10 GHz", "frequency"
        )

    def test_angular_prefix_restricted_to_frequencies(self):
        with pytest.raises(ConfigError):
            parse_quantity("2pi*500 fF", "capacitance")

    def test_current_and_dimensionless(self):
        assert parse_quantity("0.134 uA", "current") == pytest.approx(
            1.34e-7, rel=1e-15
        )
        assert parse_quantity("0.25", "dimensionless") == 0.25

    def test_unknown_unit_reports_line(self):
        with pytest.raises(ConfigError) as err:
            parse_quantity("10 parsec", "capacitance", line=7)
        assert err.value.line == 7


class TestLoadsConfig:
    def test_reference_point(self):
        cfg = loads_config(REFERENCE_CONFIG)
        p = cfg.params
        assert p.C_J == 500e-15 and p.C == 0.5e-15 and p.C_g == 100e-15
        assert p.n == 1 and p.alpha == 0.0
        d = circuit.derived_constants(p)
        assert d.omega == pytest.approx(TWO_PI * 10e9, rel=1e-12)
        assert d.Omega == pytest.approx(TWO_PI * 20e6, rel=1e-12)
        assert p.E_Jg == pytest.approx(4.413233477725043e-23, rel=1e-12)
        assert cfg.sweep is None

    def test_critical_current_input_converts_to_energy(self):
        cfg = loads_config(
            "C_J = 500 fF\nC = 0.5 fF\nC_g = 100 fF\n"
            "omega = 10 GHz\nI_cg = 0.13409763925191679 uA\n"
        )
        assert cfg.params.E_Jg == pytest.approx(
            4.413233477725043e-23, rel=1e-12
        )

    def test_critical_current_and_energy_are_exclusive(self):
        with pytest.raises(ConfigError):
            loads_config(
                "C_J = 500 fF\nC = 0.5 fF\nC_g = 100 fF\n"
                "omega = 10 GHz\nI_cg = 0.1 uA\nE_Jg = 4e-23 J\n"
            )

    def test_duplicate_key_reports_line(self):
        with pytest.raises(ConfigError) as err:
            loads_config("C_J = 500 fF\nC_J = 400 fF\n")
        assert err.value.line == 2

    def test_unknown_key_reports_line(self):
        with pytest.raises(ConfigError) as err:
            loads_config("C_J = 500 fF\nwibble = 3\n")
        assert err.value.line == 2

    def test_missing_required_key_is_named(self):
        with pytest.raises(ConfigError, match="C_J"):
            loads_config("C = 0.5 fF\nC_g = 100 fF\nomega = 10 GHz\n"
                         "Omega = 20 MHz\n")

    def test_malformed_line_reports_line(self):
        with pytest.raises(ConfigError) as err:
            loads_config("C_J = 500 fF\nnot a key value pair\n")
        assert err.value.line == 2

    def test_pump_frequencies_all_or_none(self):
        with pytest.raises(ConfigError):
            loads_config(REFERENCE_CONFIG + "omega_p1 = 20 GHz\n")

    def test_unbalanced_pump_constraint_is_config_error(self):
        text = REFERENCE_CONFIG + (
            "omega_p1 = 20 GHz\nomega_p2 = 20 GHz\n"
            "omega_p3 = 20 GHz\nomega_p4 = 21 GHz\n"
        )
        with pytest.raises(ConfigError):
            loads_config(text)

    def test_sweep_block(self):
        text = REFERENCE_CONFIG + (
            "sweep_axis = C_g\nsweep_start = 50 fF\nsweep_stop = 500 fF\n"
            "sweep_points = 11\n"
        )
        cfg = loads_config(text)
        assert cfg.sweep is not None
        assert cfg.sweep.axis == "C_g"
        assert cfg.sweep.points == 11
        assert cfg.sweep.start == 50e-15 and cfg.sweep.stop == 500e-15


class TestSweepSpec:
    def base(self):
        return loads_config(REFERENCE_CONFIG).params

    def test_invariants(self):
        base = self.base()
        good = dict(base=base, axis="C_g", start=5e-14, stop=5e-13,
                    points=5)
        SweepSpec(**good)
        with pytest.raises(ValueError):
            SweepSpec(**dict(good, points=1))
        with pytest.raises(ValueError):
            SweepSpec(**dict(good, start=5e-13, stop=5e-14))
        with pytest.raises(ValueError):
            SweepSpec(**dict(good, scale="cubic"))
        with pytest.raises(ValueError):
            SweepSpec(**dict(good, axis="frobnicate"))
        with pytest.raises(ValueError):
            SweepSpec(**dict(good, axis="alpha", start=-1.0, stop=0.5,
                             scale="log"))
        with pytest.raises(ValueError):
            SweepSpec(**dict(good, n_list=(1, 2)))
        with pytest.raises(ValueError):
            SweepSpec(
                base=base, axis="omega_minus", start=TWO_PI * 10e9,
                stop=TWO_PI * 10.2e9, points=5, fixed_Omega=TWO_PI * 20e6,
            )

    def test_rows_and_determinism(self):
        base = self.base()
        spec = SweepSpec(base=base, axis="C_g", start=80e-15,
                         stop=120e-15, points=3, fixed_Omega=TWO_PI * 20e6)
        rows = run_sweep(spec)
        assert len(rows) == 3
        middle = rows[1]
        assert middle.axis_value == pytest.approx(100e-15, rel=1e-12)
        assert middle.gamma4_over_2pi == pytest.approx(
            2392247.9749438236, rel=1e-12
        )
        assert middle.flags == ()
        assert format_csv(spec, rows) == format_csv(spec, run_sweep(spec))

    def test_quarton_pole_sentinel_and_no_solution_flags(self):
        base = self.base()
        spec = SweepSpec(base=base, axis="alpha", start=0.0,
                         stop=1.0 - ALPHA_MARGIN, points=40,
                         fixed_Omega=TWO_PI * 20e6, n_list=(2,))
        rows = run_sweep(spec)
        assert len(rows) == 41  # clipped grid plus the pole sentinel
        sentinel = rows[-1]
        assert sentinel.axis_value == pytest.approx(0.5, rel=1e-12)
        assert sentinel.flags == ("quarton_pole",)
        assert math.isnan(sentinel.gamma4_over_2pi)
        flagged = {f for r in rows for f in r.flags}
        assert "no_solution" in flagged
        for row in rows:
            if not math.isfinite(row.gamma4_over_2pi):
                assert row.flags

    def test_warning_flags_are_recorded(self):
        base = self.base()
        spec = SweepSpec(base=base, axis="C_g", start=30e-15,
                         stop=50e-15, points=3, fixed_Omega=TWO_PI * 20e6)
        rows = run_sweep(spec)
        assert all(
            "perturbative_warning_g_prime" in r.flags for r in rows
        )
        assert all(math.isfinite(r.gamma4_over_2pi) for r in rows)

    def test_error_flag_mapping_is_exhaustive(self):
        from jpocoupler.sweep import _ERROR_FLAGS

        classes = [exc for exc, _ in _ERROR_FLAGS]
        assert classes == [
            circuit.QuartonPoleError,
            circuit.ResonanceSingularityError,
            circuit.UnphysicalBranchError,
            circuit.NoSolutionError,
            circuit.SingularCapacitanceError,
            circuit.UnphysicalParameterError,
        ]
        for exc in classes:
            assert issubclass(exc, circuit.CircuitError)

    def test_presets_are_frozen(self):
        assert set(PRESETS) == {"fig2a", "fig2b", "fig2c", "fig3a",
                                "fig3b"}
        base = self.base()
        fig2a = preset_spec("fig2a", base)
        assert (fig2a.axis, fig2a.points, fig2a.scale) == ("C_g", 91,
                                                           "linear")
        assert fig2a.start == 50e-15 and fig2a.stop == 500e-15
        assert fig2a.fixed_Omega == pytest.approx(TWO_PI * 20e6)
        fig2b = preset_spec("fig2b", base)
        assert fig2b.axis == "omega_minus" and fig2b.fixed_Omega is None
        assert fig2b.start == pytest.approx(TWO_PI * 10.00e9)
        assert fig2b.stop == pytest.approx(TWO_PI * 10.25e9)
        fig2c = preset_spec("fig2c", base)
        assert fig2c.axis == "omega"
        assert fig2c.start == pytest.approx(TWO_PI * 9.90e9)
        fig3a = preset_spec("fig3a", base)
        assert fig3a.axis == "alpha" and fig3a.n_list == (1, 2, 3, 5, 10)
        assert fig3a.points == 400
        assert preset_spec("fig3b", base) == fig3a
        with pytest.raises(ValueError):
            preset_spec("fig9z", base)


class TestCSV:
    def test_layout_and_round_trip(self, tmp_path):
        base = loads_config(REFERENCE_CONFIG).params
        spec = SweepSpec(base=base, axis="C_g", start=80e-15,
                         stop=120e-15, points=3, fixed_Omega=TWO_PI * 20e6)
        rows = run_sweep(spec)
        text = format_csv(spec, rows)
        lines = text.splitlines()
        meta = [ln for ln in lines if ln.startswith("#")]
        header = next(ln for ln in lines if not ln.startswith("#"))
        assert header.split(",")[:3] == [
            "axis_C_g_F", "n", "gamma4_over_2pi_Hz"
        ]
        assert header.split(",")[-1] == "flags"
        data = [ln for ln in lines if not ln.startswith("#")][1:]
        assert len(data) == 3
        for ln in data:
            fields = ln.split(",")
            float(fields[0])
            assert fields[1] == "1"
        assert any("fixed_Omega_over_2pi_Hz" in ln for ln in meta)
        path = tmp_path / "out.csv"
        write_csv(str(path), spec, rows)
        assert path.read_text() == text

    def test_byte_identical_reruns(self):
        base = loads_config(REFERENCE_CONFIG).params
        spec = preset_spec("fig2a", base)
        a = format_csv(spec, run_sweep(spec), preset="fig2a")
        b = format_csv(spec, run_sweep(spec), preset="fig2a")
        assert a == b


@pytest.fixture()
def config_file(tmp_path):
    path = tmp_path / "point.cfg"
    path.write_text(REFERENCE_CONFIG)
    return str(path)


class TestCLI:
    def test_derive_prints_headline_constants(self, config_file, capsys):
        assert cli.main(["derive", config_file]) == cli.EXIT_OK
        out = capsys.readouterr().out
        assert "gamma4" in out
        assert "2.3922479749e+06" in out
        assert "2.8067345110e-01" in out  # g'_-
        assert "1.3409763925e-07" in out  # I_cg

    def test_sweep_writes_csv(self, config_file, tmp_path, capsys):
        out_path = tmp_path / "fig2a.csv"
        rc = cli.main(["sweep", config_file, "--preset", "fig2a",
                       "--out", str(out_path)])
        assert rc == cli.EXIT_OK
        text = out_path.read_text()
        data = [ln for ln in text.splitlines()
                if ln and not ln.startswith("#")]
        assert len(data) == 1 + 91  # header + points

    def test_sweep_requires_axis_or_preset(self, config_file, capsys):
        rc = cli.main(["sweep", config_file])
        assert rc == cli.EXIT_VALIDATION
        assert "error:" in capsys.readouterr().err

    def test_sweep_block_from_config(self, tmp_path, capsys):
        path = tmp_path / "sweep.cfg"
        path.write_text(
            REFERENCE_CONFIG
            + "sweep_axis = C_g\nsweep_start = 80 fF\n"
            + "sweep_stop = 120 fF\nsweep_points = 3\n"
        )
        out_path = tmp_path / "out.csv"
        rc = cli.main(["sweep", str(path), "--out", str(out_path)])
        assert rc == cli.EXIT_OK
        assert out_path.exists()

    def test_missing_config_is_validation_error(self, capsys, tmp_path):
        rc = cli.main(["derive", str(tmp_path / "nope.cfg")])
        assert rc == cli.EXIT_VALIDATION
        assert "error:" in capsys.readouterr().err

    def test_bad_config_reports_line(self, tmp_path, capsys):
        path = tmp_path / "bad.cfg"
        path.write_text("C_J = 500 furlongs\n")
        rc = cli.main(["derive", str(path)])
        assert rc == cli.EXIT_VALIDATION
        err = capsys.readouterr().err
        assert "error:" in err

    def test_verify_fast_passes(self, config_file, capsys):
        rc = cli.main(["verify", config_file, "--level", "fast"])
        out = capsys.readouterr().out
        assert rc == cli.EXIT_OK
        assert "verify: PASS" in out
        assert "check golden_regression: PASS" in out
        assert "check analytic_inverse: PASS" in out
        assert "check gamma4_routes: PASS" in out

    def test_verify_reports_corrupted_table(self, config_file, capsys,
                                            monkeypatch):
        golden = dv.load_golden()
        corrupted = dict(golden)
        corrupted["K_prime"] = golden["K_prime"].scale(Fraction(2))
        monkeypatch.setattr(dv, "load_golden",
                            lambda path=None: corrupted)
        rc = cli.main(["verify", config_file, "--level", "fast"])
        out = capsys.readouterr().out
        assert rc == cli.EXIT_VERIFICATION
        assert "verify: FAIL" in out
        assert "K_prime" in out

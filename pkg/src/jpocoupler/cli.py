"""``jpocoupler`` command line: single-point derivations, figure-preset
and custom parameter sweeps, and the verification suite.

Exit codes: 0 success, 1 configuration/validation error, 2 verification
failure.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
import warnings

import numpy as np

from . import __version__, circuit
from .config import ConfigError, LoadedConfig, load_config
from .sweep import PRESETS, format_csv, preset_spec, run_sweep

TWO_PI = 2.0 * math.pi

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_VERIFICATION = 2


def _fmt(name: str, value, unit: str = "") -> str:
    if isinstance(value, float):
        body = f"{value: .10e}"
    else:
        body = f" {value}"
    suffix = f" {unit}" if unit else ""
    return f"  {name:<26s}{body}{suffix}"


def _freq(name: str, rad_per_s: float) -> str:
    return _fmt(f"{name}/2pi", rad_per_s / TWO_PI, "Hz")


def cmd_derive(cfg: LoadedConfig, out=None) -> int:
    """Print the full constants chain for one operating point."""
    out = out if out is not None else sys.stdout
    p = cfg.params
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        d = circuit.derived_constants(p)
        eff = circuit.effective_constants(p)
        value, phase = circuit.gamma4(p)

    lines = [f"jpocoupler {__version__} derive", "", "circuit parameters"]
    lines += [
        _fmt("C_J", p.C_J, "F"),
        _fmt("C", p.C, "F"),
        _fmt("C_g", p.C_g, "F"),
        _fmt("n", p.n),
        _fmt("alpha", float(p.alpha)),
        _fmt("E_J_sigma", p.E_J_sigma, "J"),
        _fmt("delta_E_J", p.delta_E_J, "J"),
        _fmt("E_Jg", p.E_Jg, "J"),
    ]
    lines += ["", "derived constants"]
    lines += [
        _fmt("E_C", d.E_C, "J"),
        _fmt("E_Cg_prime", d.E_Cg_prime, "J"),
        _fmt("E_Jg2", d.E_Jg2, "J"),
        _fmt("E_Jg4", d.E_Jg4, "J"),
        _freq("omega", d.omega),
        _freq("K", d.K),
        _freq("p", d.p),
        _freq("omega_plus", d.omega_plus),
        _freq("omega_minus", d.omega_minus),
        _freq("K_minus", d.K_minus),
        _freq("g_plus", d.g_plus),
        _freq("g_minus", d.g_minus),
        _fmt("g_prime_plus", d.g_prime_plus),
        _fmt("g_prime_minus", d.g_prime_minus),
        _freq("Omega", d.Omega),
        _fmt("I_cg", d.I_cg, "A"),
    ]
    lines += ["", "effective constants (reference polynomials)"]
    for k in range(4):
        lines.append(_freq(f"Delta_{k + 1}", eff.Delta_k[k]))
    lines += [
        _freq("K_prime", eff.K_prime),
        _freq("gamma4", eff.gamma4),
        _freq("chi_12", eff.chi_12),
        _freq("chi_13", eff.chi_13),
        _freq("chi_14", eff.chi_14),
        _freq("chi_23", eff.chi_23),
        _freq("chi_24", eff.chi_24),
        _freq("chi_34", eff.chi_34),
        _freq("Delta_plus", eff.Delta_plus),
        _freq("Delta_minus", eff.Delta_minus),
        _freq("K_prime_plus", eff.K_prime_plus),
        _freq("K_prime_minus", eff.K_prime_minus),
        _freq("gamma2_Jplus", eff.gamma2_Jplus),
        _freq("gamma2_Jminus", eff.gamma2_Jminus),
        _freq("gamma2_plusminus", eff.gamma2_plusminus),
        _fmt("fourbody_phase", eff.fourbody_phase, "rad"),
    ]
    lines += ["", "four-body coupling (constants chain)"]
    lines += [
        _freq("gamma4", value),
        _fmt("pump_phase", phase, "rad"),
    ]
    if p.C == 0.0:
        lines.append(
            "  note: C = 0 decouples the oscillators from the coupler; "
            "gamma4 = 0 exactly"
        )
    for rec in caught:
        lines.append(f"warning: {rec.message}")
    print("\n".join(lines), file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _check_golden_regression() -> tuple[bool, str]:
    from .derivation import COEFFICIENT_NAMES, derive_effective_hamiltonian

    try:
        derive_effective_hamiltonian(check_golden=True)
    except Exception as exc:  # regression errors name the coefficient
        return False, str(exc)
    return True, (
        f"{len(COEFFICIENT_NAMES)} coefficient polynomials match the "
        "stored table"
    )


def _check_analytic_inverse(params) -> tuple[bool, str]:
    import dataclasses

    worst = 0.0
    variants = [params]
    for scale_C, scale_Cg in ((0.5, 1.0), (1.0, 2.0), (4.0, 0.25)):
        variants.append(
            dataclasses.replace(
                params, C=max(params.C, 1e-16) * scale_C,
                C_g=params.C_g * scale_Cg,
            )
        )
    try:
        for v in variants:
            analytic = circuit.inverse_capacitance_matrix(v)
            numeric = np.linalg.inv(circuit.capacitance_matrix(v))
            dev = float(
                np.max(np.abs(analytic - numeric) / np.max(np.abs(numeric)))
            )
            worst = max(worst, dev)
    except circuit.SingularCapacitanceError as exc:
        return False, str(exc)
    ok = worst < 1e-10
    return ok, (
        f"max relative deviation {worst:.3e} over {len(variants)} "
        "capacitance sets"
    )


def _check_gamma4_routes(params) -> tuple[bool, str]:
    comp, circ = circuit.gamma4_routes(params)
    scale = max(abs(comp), abs(circ))
    rel = abs(comp - circ) / scale if scale > 0.0 else 0.0
    return rel < 1e-10, f"composition vs circuit route: rel diff {rel:.3e}"


def _note_reference_comparison() -> str:
    from .derivation import compare_to_reference, load_golden

    records = compare_to_reference(load_golden())
    matching = sorted(r.name for r in records if r.matches)
    differing = sorted(r.name for r in records if not r.matches)
    return (
        f"{len(matching)} coefficients match the published reference forms "
        f"({', '.join(matching)}); {len(differing)} differ as documented "
        f"({', '.join(differing)})"
    )


def _check_symbolic_engine() -> tuple[bool, str]:
    from .fock import verify_symbolic_engine

    report = verify_symbolic_engine(seed=20260815, trials=25)
    worst = max(report.max_multiply_deviation,
                report.max_commutator_deviation)
    ok = not report.failures and worst < 1e-12
    return ok, (
        f"{report.trials} random product/commutator trials, "
        f"max deviation {worst:.3e}"
    )


def _check_four_body(params) -> tuple[bool, str]:
    from .fock import FockError, verify_four_body

    dc = circuit.derived_constants(params)
    if dc.g_prime_minus == 0.0:
        return True, "skipped: decoupled operating point (g'_- = 0)"
    try:
        rep = verify_four_body(params)
    except (FockError, circuit.CircuitError) as exc:
        return False, str(exc)
    exps = "/".join(f"{e:.2f}" for e in rep.scaling_exponents)
    ok = all(abs(e - 2.0) < 0.3 for e in rep.scaling_exponents)
    return ok, (
        f"relative deviation {rep.relative_deviation:+.3e}, scaling "
        f"exponents {exps}, d-shift {rep.d_convergence_shift:.1e}, "
        f"fit residual {rep.fit_residual:.1e}"
    )


def _check_coherent_residual() -> tuple[bool, str]:
    from .fock import TruncationError, coherent_residual_check

    try:
        r1 = coherent_residual_check(1.0, 25)
        r4 = coherent_residual_check(4.0, 40)
    except TruncationError as exc:
        return False, str(exc)
    worst = max(r1, r4)
    return worst < 1e-8, (
        f"steady-state operator residual {worst:.3e} (p/K = 1 and 4)"
    )


def cmd_verify(cfg: LoadedConfig, level: str, out=None) -> int:
    """Run the verification suite; returns 0 (pass) or 2 (failure)."""
    out = out if out is not None else sys.stdout
    params = cfg.params
    checks: list[tuple[str, object]] = [
        ("golden_regression", _check_golden_regression),
        ("analytic_inverse", lambda: _check_analytic_inverse(params)),
        ("gamma4_routes", lambda: _check_gamma4_routes(params)),
    ]
    if level == "full":
        checks += [
            ("symbolic_engine", _check_symbolic_engine),
            ("four_body_oracle", lambda: _check_four_body(params)),
            ("coherent_residual", _check_coherent_residual),
        ]
    t0 = time.monotonic()
    all_ok = True
    print(f"jpocoupler {__version__} verify (level={level})", file=out)
    for name, fn in checks:
        ok, detail = fn()
        all_ok &= ok
        print(f"check {name}: {'PASS' if ok else 'FAIL'} ({detail})",
              file=out)
    print(f"note reference_comparison: {_note_reference_comparison()}",
          file=out)
    elapsed = time.monotonic() - t0
    verdict = "PASS" if all_ok else "FAIL"
    print(f"verify: {verdict} (level={level}, {elapsed:.1f}s)", file=out)
    return EXIT_OK if all_ok else EXIT_VERIFICATION


def cmd_sweep(
    cfg: LoadedConfig,
    preset: str | None,
    out_path: str | None,
    out=None,
) -> int:
    out = out if out is not None else sys.stdout
    if preset is not None:
        spec = preset_spec(preset, cfg.params)
    elif cfg.sweep is not None:
        spec = cfg.sweep
    else:
        raise ConfigError(
            "config has no sweep block and no --preset was given"
        )
    rows = run_sweep(spec)
    path = out_path or f"sweep_{preset or spec.axis}.csv"
    text = format_csv(spec, rows, preset=preset, config_echo=cfg.raw)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)
    flagged = sum(1 for r in rows if r.flags)
    print(
        f"wrote {path}: {len(rows)} rows ({flagged} flagged), axis "
        f"{spec.axis}, scale {spec.scale}",
        file=out,
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jpocoupler",
        description=(
            "Analytic pipeline for the four-body coupling of Josephson "
            "parametric oscillators: single-point derivations, parameter "
            "sweeps, and self-verification."
        ),
    )
    parser.add_argument("--version", action="version",
                        version=f"jpocoupler {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_derive = sub.add_parser(
        "derive", help="print the full constants chain for one config"
    )
    p_derive.add_argument("config", help="path to a key = value config file")

    p_sweep = sub.add_parser(
        "sweep", help="run a parameter sweep and write CSV"
    )
    p_sweep.add_argument("config", help="path to a key = value config file")
    p_sweep.add_argument(
        "--preset", choices=sorted(PRESETS), default=None,
        help="figure preset overriding the config's sweep block",
    )
    p_sweep.add_argument(
        "--out", default=None, help="output CSV path (default: derived name)"
    )

    p_verify = sub.add_parser(
        "verify", help="run the verification suite"
    )
    p_verify.add_argument("config", help="path to a key = value config file")
    p_verify.add_argument(
        "--level", choices=("fast", "full"), default="fast",
        help="fast: symbolic regression + analytic checks; "
             "full: adds the Fock-space oracle runs",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.command == "derive":
            return cmd_derive(cfg)
        if args.command == "sweep":
            return cmd_sweep(cfg, args.preset, args.out)
        return cmd_verify(cfg, args.level)
    except (ConfigError, ValueError, circuit.CircuitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())

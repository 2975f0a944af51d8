"""Parameter sweeps over the constants chain, with figure presets and
deterministic CSV output.

A sweep varies one axis (``C_g``, ``omega_minus``, ``omega``, ``alpha``,
``C`` or ``n``) of a base parameter set, optionally re-solving ``E_Jg``
at every point to hold the detuning ``Omega`` fixed, and records one
:class:`SweepRow` per grid point. Typed circuit errors and perturbative
warnings become row flags instead of aborting the sweep, so grids may
cross the quarton pole and the resonance singularities.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import circuit
from .circuit import (
    CircuitParams,
    NoSolutionError,
    PerturbativeRegimeWarning,
    QuartonPoleError,
    ResonanceSingularityError,
    SingularCapacitanceError,
    UnphysicalBranchError,
    UnphysicalParameterError,
)

__all__ = [
    "PRESETS",
    "SWEEP_AXES",
    "SweepRow",
    "SweepSpec",
    "format_csv",
    "preset_spec",
    "run_sweep",
    "write_csv",
]

TWO_PI = 2.0 * math.pi

SWEEP_AXES = ("C_g", "omega_minus", "omega", "alpha", "C", "n")

# quarton-pole standoff for alpha sweeps: grids stop at 1/n - ALPHA_MARGIN
# and the pole itself is appended as a flagged sentinel row
ALPHA_MARGIN = 1e-3

_AXIS_UNITS = {
    "C_g": "F",
    "C": "F",
    "omega_minus": "rad_per_s",
    "omega": "rad_per_s",
    "alpha": "1",
    "n": "1",
}


@dataclass(frozen=True)
class SweepSpec:
    """One-axis sweep description.

    ``fixed_Omega`` (rad/s), when given, re-solves ``E_Jg`` at every
    point so the detuning stays pinned; ``n_list`` repeats an ``alpha``
    sweep for several junction counts (each series clipped below its own
    quarton pole at 1/n).
    """

    base: CircuitParams
    axis: str
    start: float
    stop: float
    points: int
    scale: str = "linear"
    fixed_Omega: float | None = None
    n_list: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.axis not in SWEEP_AXES:
            raise ValueError(
                f"axis must be one of {', '.join(SWEEP_AXES)}; "
                f"got {self.axis!r}"
            )
        if self.points < 2:
            raise ValueError(f"points must be >= 2 (got {self.points})")
        if not self.start < self.stop:
            raise ValueError(
                f"start must be < stop (got {self.start!r} >= {self.stop!r})"
            )
        if self.scale not in ("linear", "log"):
            raise ValueError(
                f"scale must be 'linear' or 'log' (got {self.scale!r})"
            )
        if self.scale == "log" and self.start <= 0.0:
            raise ValueError("log scale requires a positive start")
        if self.n_list is not None:
            if self.axis != "alpha":
                raise ValueError("n_list is only meaningful for alpha sweeps")
            if not self.n_list or any(n < 1 for n in self.n_list):
                raise ValueError(f"invalid n_list {self.n_list!r}")
        if self.axis == "omega_minus" and self.fixed_Omega is not None:
            raise ValueError(
                "omega_minus sweeps already determine E_Jg; "
                "fixed_Omega would over-constrain the point"
            )


@dataclass(frozen=True)
class SweepRow:
    """One grid point: the axis value (SI), the junction count in use,
    plotted quantities, and singularity/warning flags. Non-finite
    numeric fields always come with at least one flag."""

    axis_value: float
    n: int
    gamma4_over_2pi: float
    g_prime_minus: float
    g_prime_plus: float
    omega_minus_over_2pi: float
    Omega_over_2pi: float
    E_Jg: float
    I_cg: float
    flags: tuple[str, ...]


_ERROR_FLAGS = (
    (QuartonPoleError, "quarton_pole"),
    (ResonanceSingularityError, "resonance_singularity"),
    (UnphysicalBranchError, "unphysical_branch"),
    (NoSolutionError, "no_solution"),
    (SingularCapacitanceError, "singular_capacitance"),
    (UnphysicalParameterError, "unphysical_parameter"),
)


def _warning_flag(message: str) -> str:
    if "g'" in message:
        return "perturbative_warning_g_prime"
    if "C/C_J" in message:
        return "perturbative_warning_C_ratio"
    if "delta_E_J" in message:
        return "perturbative_warning_drive"
    return "perturbative_warning"


def _point_kwargs(spec: SweepSpec, axis_value: float, n: int) -> dict:
    base = spec.base
    kw: dict = {
        "C_J": base.C_J,
        "C": base.C,
        "C_g": base.C_g,
        "n": n,
        "alpha": base.alpha,
        "E_J_sigma": base.E_J_sigma,
        "E_Jg": base.E_Jg,
        "delta_E_J": base.delta_E_J,
        "pump_freqs": base.pump_freqs,
        "pump_phases": base.pump_phases,
    }
    axis = spec.axis
    if axis == "omega":
        kw.pop("E_J_sigma")
        kw["omega"] = axis_value
    elif axis == "omega_minus":
        kw.pop("E_Jg")
        kw["omega_minus"] = axis_value
    elif axis == "n":
        kw["n"] = int(round(axis_value))
    else:
        kw[axis] = axis_value
    if spec.fixed_Omega is not None:
        kw.pop("E_Jg", None)
        kw["Omega"] = spec.fixed_Omega
    return kw


def evaluate_point(spec: SweepSpec, axis_value: float, n: int) -> SweepRow:
    """Evaluate one grid point, converting typed circuit errors and
    perturbative warnings into row flags."""
    flags: set[str] = set()
    nan = math.nan
    gamma = g_m = g_p = w_m = big_omega = e_jg = i_cg = nan
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            params = circuit.make_params(**_point_kwargs(spec, axis_value, n))
            dc = circuit.derived_constants(params)
            value, _phase = circuit.gamma4(params)
            gamma = value / TWO_PI
            g_m = dc.g_prime_minus
            g_p = dc.g_prime_plus
            w_m = dc.omega_minus / TWO_PI
            big_omega = dc.Omega / TWO_PI
            e_jg = params.E_Jg
            i_cg = dc.I_cg
        except circuit.CircuitError as err:
            for exc_type, flag in _ERROR_FLAGS:
                if isinstance(err, exc_type):
                    flags.add(flag)
                    break
            else:
                raise  # internal-consistency failures are bugs, not flags
    for rec in caught:
        if issubclass(rec.category, PerturbativeRegimeWarning):
            flags.add(_warning_flag(str(rec.message)))
    return SweepRow(
        axis_value=axis_value,
        n=n,
        gamma4_over_2pi=gamma,
        g_prime_minus=g_m,
        g_prime_plus=g_p,
        omega_minus_over_2pi=w_m,
        Omega_over_2pi=big_omega,
        E_Jg=e_jg,
        I_cg=i_cg,
        flags=tuple(sorted(flags)),
    )


def _grid(spec: SweepSpec, start: float, stop: float) -> np.ndarray:
    if spec.scale == "log":
        return np.geomspace(start, stop, spec.points)
    return np.linspace(start, stop, spec.points)


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Evaluate the whole grid; rows come back ordered by (n, axis value).

    ``alpha`` sweeps are clipped per series to ``1/n - 1e-3`` and end
    with a sentinel row at the quarton pole ``alpha = 1/n`` itself,
    flagged ``quarton_pole``.
    """
    rows: list[SweepRow] = []
    n_values = spec.n_list if spec.n_list is not None else (spec.base.n,)
    for n in n_values:
        if spec.axis == "alpha":
            pole = 1.0 / n
            stop = min(spec.stop, pole - ALPHA_MARGIN)
            if not spec.start < stop:
                raise ValueError(
                    f"alpha range [{spec.start}, {spec.stop}] collapses "
                    f"below the n={n} pole standoff"
                )
            values = list(_grid(spec, spec.start, stop))
        elif spec.axis == "n":
            seen: set[int] = set()
            values = []
            for v in _grid(spec, spec.start, spec.stop):
                iv = int(round(v))
                if iv not in seen:
                    seen.add(iv)
                    values.append(float(iv))
        else:
            values = list(_grid(spec, spec.start, spec.stop))
        for value in values:
            rows.append(evaluate_point(spec, float(value), n))
        if spec.axis == "alpha" and spec.stop >= pole - ALPHA_MARGIN:
            rows.append(_pole_sentinel(pole, n))
    return rows


def _pole_sentinel(pole: float, n: int) -> SweepRow:
    """Sentinel row at alpha = 1/n, flagged from the circuit model's own
    typed pole report."""
    try:
        circuit.nonlinearity_ratio(n, pole)
        raise AssertionError(f"alpha = 1/{n} did not report the pole")
    except QuartonPoleError:
        pass
    nan = math.nan
    return SweepRow(
        axis_value=pole, n=n, gamma4_over_2pi=nan, g_prime_minus=nan,
        g_prime_plus=nan, omega_minus_over_2pi=nan, Omega_over_2pi=nan,
        E_Jg=nan, I_cg=nan, flags=("quarton_pole",),
    )


# ---------------------------------------------------------------------------
# Figure presets
# ---------------------------------------------------------------------------

# name -> (axis, start, stop, points, scale, fixed_Omega, n_list, note)
PRESETS: dict[str, tuple] = {
    "fig2a": (
        "C_g", 50e-15, 500e-15, 91, "linear", TWO_PI * 20e6, None,
        "coupling vs coupler capacitance at pinned detuning",
    ),
    "fig2b": (
        "omega_minus", TWO_PI * 10.00e9, TWO_PI * 10.25e9, 101, "linear",
        None, None,
        "coupling vs coupler-mode frequency (detuning varies)",
    ),
    "fig2c": (
        "omega", TWO_PI * 9.90e9, TWO_PI * 10.20e9, 101, "linear",
        None, None,
        "coupling vs oscillator frequency (detuning varies)",
    ),
    "fig3a": (
        "alpha", 0.0, 1.0 - ALPHA_MARGIN, 400, "linear", TWO_PI * 20e6,
        (1, 2, 3, 5, 10),
        "coupling vs junction area ratio at pinned detuning",
    ),
    "fig3b": (
        "alpha", 0.0, 1.0 - ALPHA_MARGIN, 400, "linear", TWO_PI * 20e6,
        (1, 2, 3, 5, 10),
        "required critical current vs junction area ratio at pinned detuning",
    ),
}


def preset_spec(name: str, base: CircuitParams) -> SweepSpec:
    """Build the SweepSpec for a named figure preset on top of ``base``."""
    if name not in PRESETS:
        raise ValueError(
            f"unknown preset {name!r} (choose from {', '.join(PRESETS)})"
        )
    axis, start, stop, points, scale, fixed_Omega, n_list, _note = (
        PRESETS[name]
    )
    return SweepSpec(
        base=base, axis=axis, start=start, stop=stop, points=points,
        scale=scale, fixed_Omega=fixed_Omega, n_list=n_list,
    )


# ---------------------------------------------------------------------------
# CSV output
# ---------------------------------------------------------------------------

_COLUMNS = (
    "n",
    "gamma4_over_2pi_Hz",
    "g_prime_minus",
    "g_prime_plus",
    "omega_minus_over_2pi_Hz",
    "Omega_over_2pi_Hz",
    "E_Jg_J",
    "I_cg_A",
    "flags",
)


def format_csv(
    spec: SweepSpec,
    rows: list[SweepRow],
    preset: str | None = None,
    config_echo: tuple[tuple[str, str], ...] | None = None,
) -> str:
    """Render rows as a self-describing CSV string.

    The output is byte-identical for identical inputs: floats are
    rendered with ``repr`` (shortest round-trip form), flags are sorted,
    and metadata lines are emitted in a fixed order.
    """
    from . import __version__

    lines = [f"# jpocoupler {__version__} sweep"]
    if preset is not None:
        note = PRESETS[preset][7]
        lines.append(f"# preset: {preset} ({note})")
    lines.append(
        f"# axis: {spec.axis} scale={spec.scale} "
        f"range=[{spec.start!r}, {spec.stop!r}] points={spec.points}"
    )
    if spec.axis == "alpha":
        lines.append(
            f"# alpha series are clipped to 1/n - {ALPHA_MARGIN!r}; the "
            "final row of each series is the quarton-pole sentinel"
        )
    if spec.fixed_Omega is not None:
        lines.append(
            f"# fixed_Omega_over_2pi_Hz: {spec.fixed_Omega / TWO_PI!r} "
            "(E_Jg re-solved at every point)"
        )
    if spec.n_list is not None:
        lines.append(f"# n_list: {','.join(str(n) for n in spec.n_list)}")
    if config_echo:
        echo = "; ".join(f"{k} = {v}" for k, v in config_echo)
        lines.append(f"# config: {echo}")
    axis_col = f"axis_{spec.axis}_{_AXIS_UNITS[spec.axis]}"
    lines.append(",".join((axis_col,) + _COLUMNS))
    for row in rows:
        fields = [
            repr(row.axis_value),
            str(row.n),
            repr(row.gamma4_over_2pi),
            repr(row.g_prime_minus),
            repr(row.g_prime_plus),
            repr(row.omega_minus_over_2pi),
            repr(row.Omega_over_2pi),
            repr(row.E_Jg),
            repr(row.I_cg),
            ";".join(row.flags),
        ]
        lines.append(",".join(fields))
    return "\n".join(lines) + "\n"


def write_csv(
    path: str,
    spec: SweepSpec,
    rows: list[SweepRow],
    preset: str | None = None,
    config_echo: tuple[tuple[str, str], ...] | None = None,
) -> None:
    """Write :func:`format_csv` output to ``path`` (newline-normalized)."""
    text = format_csv(spec, rows, preset=preset, config_echo=config_echo)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)

"""Line-oriented ``key = value`` configuration files for the CLI.

Grammar (one statement per line)::

    # comment
    C_J   = 500 fF
    omega = 2pi*10 GHz          # same as "10 GHz": frequencies are
                                # quoted as ordinary frequency and
                                # converted to angular (rad/s) internally
    sweep_axis   = C_g
    sweep_start  = 50 fF
    sweep_stop   = 500 fF
    sweep_points = 91

Unit suffixes are mandatory for dimensionful keys (``fF``/``pF``/``F``,
``Hz``/``kHz``/``MHz``/``GHz``, ``J``, ``A``/``uA``/``nA``, ``rad``).
Unknown keys, duplicate keys, malformed numbers and wrong units are all
rejected with the offending line number.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from . import circuit
from .circuit import CircuitParams, make_params
from .sweep import SWEEP_AXES, SweepSpec

__all__ = [
    "ConfigError",
    "LoadedConfig",
    "load_config",
    "loads_config",
    "parse_quantity",
]

TWO_PI = 6.283185307179586

_CAPACITANCE_UNITS = {"fF": 1e-15, "pF": 1e-12, "F": 1.0}
_FREQUENCY_UNITS = {"Hz": 1.0, "kHz": 1e3, "MHz": 1e6, "GHz": 1e9}
_CURRENT_UNITS = {"nA": 1e-9, "uA": 1e-6, "A": 1.0}
_ENERGY_UNITS = {"J": 1.0}
_PHASE_UNITS = {"rad": 1.0}

# kind -> (unit table, angular factor applied after unit conversion)
_KINDS = {
    "capacitance": (_CAPACITANCE_UNITS, 1.0),
    "frequency": (_FREQUENCY_UNITS, TWO_PI),
    "current": (_CURRENT_UNITS, 1.0),
    "energy": (_ENERGY_UNITS, 1.0),
    "phase": (_PHASE_UNITS, 1.0),
    "dimensionless": (None, 1.0),
    "integer": (None, 1.0),
}

_PARAM_KEYS: dict[str, str] = {
    "C_J": "capacitance",
    "C": "capacitance",
    "C_g": "capacitance",
    "n": "integer",
    "alpha": "dimensionless",
    "omega": "frequency",
    "omega_minus": "frequency",
    "Omega": "frequency",
    "E_Jg": "energy",
    "E_J_sigma": "energy",
    "delta_E_J": "energy",
    "I_cg": "current",
    "omega_p1": "frequency",
    "omega_p2": "frequency",
    "omega_p3": "frequency",
    "omega_p4": "frequency",
    "theta_p1": "phase",
    "theta_p2": "phase",
    "theta_p3": "phase",
    "theta_p4": "phase",
}

_SWEEP_KEYS: dict[str, str] = {
    "sweep_axis": "name",
    "sweep_start": "axis-quantity",
    "sweep_stop": "axis-quantity",
    "sweep_points": "integer",
    "sweep_scale": "name",
    "sweep_n_list": "int-list",
    "sweep_fixed_Omega": "frequency",
}

_AXIS_KIND = {
    "C_g": "capacitance",
    "C": "capacitance",
    "omega": "frequency",
    "omega_minus": "frequency",
    "alpha": "dimensionless",
    "n": "integer",
}


class ConfigError(ValueError):
    """Malformed or invalid configuration; carries the 1-based line
    number when the problem is attributable to a single line."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class LoadedConfig:
    """Validated configuration: circuit parameters, the optional sweep
    block, and the raw key/value text in file order (for CSV echo)."""

    params: CircuitParams
    sweep: SweepSpec | None
    raw: tuple[tuple[str, str], ...]


def parse_quantity(text: str, kind: str, line: int | None = None) -> float:
    """Parse ``"<number> [unit]"`` (with optional fused ``2pi*`` prefix)
    into SI units; frequencies come back angular (rad/s)."""
    if kind not in _KINDS:
        raise ValueError(f"unknown quantity kind {kind!r}")
    units, angular = _KINDS[kind]
    body = text.strip()
    if body.startswith("2pi*"):
        if kind != "frequency":
            raise ConfigError(
                f"'2pi*' prefix is only meaningful for frequencies: {text!r}",
                line,
            )
        body = body[len("2pi*"):].strip()
    parts = body.split()
    if not parts or len(parts) > 2:
        raise ConfigError(f"expected '<number> [unit]', got {text!r}", line)
    try:
        value = float(parts[0])
    except ValueError:
        raise ConfigError(f"invalid number {parts[0]!r}", line) from None
    if kind == "integer":
        if len(parts) == 2:
            raise ConfigError(f"integer value takes no unit: {text!r}", line)
        if value != int(value):
            raise ConfigError(f"expected an integer, got {parts[0]!r}", line)
        return float(int(value))
    if units is None:
        if len(parts) == 2:
            raise ConfigError(
                f"dimensionless value takes no unit: {text!r}", line
            )
        return value
    if len(parts) == 1:
        raise ConfigError(
            f"missing unit for {kind} value {text!r} "
            f"(expected one of {', '.join(units)})",
            line,
        )
    unit = parts[1]
    if unit not in units:
        raise ConfigError(
            f"bad unit {unit!r} for {kind} value "
            f"(expected one of {', '.join(units)})",
            line,
        )
    return value * units[unit] * angular


def _parse_lines(text: str) -> list[tuple[int, str, str]]:
    entries: list[tuple[int, str, str]] = []
    seen: dict[str, int] = {}
    for lineno, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", lineno)
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key or not value:
            raise ConfigError(f"expected 'key = value', got {line!r}", lineno)
        if key not in _PARAM_KEYS and key not in _SWEEP_KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key in seen:
            raise ConfigError(
                f"duplicate key {key!r} (first set on line {seen[key]})",
                lineno,
            )
        seen[key] = lineno
        entries.append((lineno, key, value))
    return entries


def _build_sweep(
    values: dict[str, tuple[int, str]], base: CircuitParams
) -> SweepSpec | None:
    if not any(k in values for k in _SWEEP_KEYS):
        return None
    if "sweep_axis" not in values:
        raise ConfigError(
            "sweep keys present but 'sweep_axis' is missing",
            min(ln for ln, _ in (values[k] for k in _SWEEP_KEYS if k in values)),
        )
    line, text = values["sweep_axis"]
    axis = text.strip()
    if axis not in SWEEP_AXES:
        raise ConfigError(
            f"sweep_axis must be one of {', '.join(SWEEP_AXES)}; got {axis!r}",
            line,
        )
    kind = _AXIS_KIND[axis]
    for required in ("sweep_start", "sweep_stop", "sweep_points"):
        if required not in values:
            raise ConfigError(f"sweep block is missing {required!r}", line)
    start = parse_quantity(values["sweep_start"][1], kind,
                           values["sweep_start"][0])
    stop = parse_quantity(values["sweep_stop"][1], kind,
                          values["sweep_stop"][0])
    points = int(parse_quantity(values["sweep_points"][1], "integer",
                                values["sweep_points"][0]))
    scale = "linear"
    if "sweep_scale" in values:
        sline, stext = values["sweep_scale"]
        scale = stext.strip()
        if scale not in ("linear", "log"):
            raise ConfigError(
                f"sweep_scale must be 'linear' or 'log'; got {scale!r}", sline
            )
    n_list = None
    if "sweep_n_list" in values:
        nline, ntext = values["sweep_n_list"]
        try:
            n_list = tuple(int(tok) for tok in ntext.split(",") if tok.strip())
        except ValueError:
            raise ConfigError(
                f"sweep_n_list must be comma-separated integers, got {ntext!r}",
                nline,
            ) from None
        if not n_list:
            raise ConfigError("sweep_n_list is empty", nline)
    fixed_Omega = None
    if "sweep_fixed_Omega" in values:
        fixed_Omega = parse_quantity(
            values["sweep_fixed_Omega"][1], "frequency",
            values["sweep_fixed_Omega"][0],
        )
    try:
        return SweepSpec(
            base=base, axis=axis, start=start, stop=stop, points=points,
            scale=scale, fixed_Omega=fixed_Omega, n_list=n_list,
        )
    except ValueError as exc:
        raise ConfigError(str(exc), line) from None


def loads_config(text: str) -> LoadedConfig:
    """Parse configuration text; see :func:`load_config`."""
    entries = _parse_lines(text)
    values: dict[str, tuple[int, str]] = {
        key: (line, value) for line, key, value in entries
    }

    for required in ("C_J", "C", "C_g"):
        if required not in values:
            raise ConfigError(f"missing required key {required!r}")
    if "I_cg" in values and "E_Jg" in values:
        raise ConfigError(
            "give either I_cg or E_Jg, not both", values["I_cg"][0]
        )

    kwargs: dict = {}
    pump_freqs = {}
    pump_phases = {}
    for key, (line, text_value) in values.items():
        if key in _SWEEP_KEYS:
            continue
        kind = _PARAM_KEYS[key]
        parsed = parse_quantity(text_value, kind, line)
        if key == "n":
            kwargs["n"] = int(parsed)
        elif key == "I_cg":
            # critical current <-> Josephson energy: E_Jg = hbar*I_cg/(2e)
            kwargs["E_Jg"] = circuit.HBAR * parsed / (2.0 * circuit.E_CHARGE)
        elif key.startswith("omega_p"):
            pump_freqs[int(key[-1]) - 1] = parsed
        elif key.startswith("theta_p"):
            pump_phases[int(key[-1]) - 1] = parsed
        else:
            kwargs[key] = parsed
    if pump_freqs:
        freqs = [None] * 4
        for idx, val in pump_freqs.items():
            freqs[idx] = val
        if any(f is None for f in freqs):
            raise ConfigError(
                "either give all four omega_p1..omega_p4 or none"
            )
        kwargs["pump_freqs"] = tuple(freqs)
    if pump_phases:
        phases = [0.0] * 4
        for idx, val in pump_phases.items():
            phases[idx] = val
        kwargs["pump_phases"] = tuple(phases)

    try:
        params = make_params(**kwargs)
    except circuit.CircuitError as exc:
        raise ConfigError(str(exc)) from exc

    sweep = _build_sweep(values, params)
    raw = tuple((key, value) for _, key, value in entries)
    return LoadedConfig(params=params, sweep=sweep, raw=raw)


def load_config(path: str) -> LoadedConfig:
    """Read and validate a configuration file.

    Returns the circuit parameters, the optional sweep block and the raw
    statements. Raises :class:`ConfigError` (with a line number where
    possible) for syntax errors, unknown or duplicate keys, missing
    required keys, bad units and constraint violations.
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from exc
    return loads_config(text)

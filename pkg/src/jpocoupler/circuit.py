"""Closed-form constants chain for four Josephson parametric oscillators
(JPOs) coupled through an asymmetric-junction (SNAIL/quarton) coupler.

The module maps raw circuit parameters (capacitances, junction count ``n``
and area ratio ``alpha``, Josephson energies, pump frequencies/phases) to

* the 6-node capacitance matrix and its analytic inverse,
* every intermediate oscillator constant (charging energies, mode
  frequencies, Kerr coefficients, couplings ``g_+``/``g_-`` and the
  dimensionless perturbation parameters ``g'_+``/``g'_-``),
* the effective-Hamiltonian coefficients (detunings, renormalized Kerr
  constants, cross-Kerr couplings and the four-body coupling ``gamma4``),
* tuning helpers: back-solving the coupler Josephson energy ``E_Jg`` so
  that the composite detuning ``Omega = omega - omega_minus - K + K_minus``
  hits a requested value.

Conventions: SI units throughout (F, J, A); every frequency-like quantity
is an angular frequency in rad/s (human-facing reports divide by 2*pi).
Node order for matrices is (phi_1, phi_2, phi_3, phi_4, phi_g1, phi_g2);
JPOs 1 and 2 attach to gate node g1, JPOs 3 and 4 to g2, with the sign
pattern ``s = (+1, +1, -1, -1)`` selecting the antisymmetric coupler mode.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np
from scipy.constants import e as E_CHARGE, hbar as HBAR

S_SIGNS = (1, 1, -1, -1)

# Soft-warning thresholds (perturbative validity is qualitative, so these
# warn instead of raising).
C_RATIO_WARN = 0.05
G_PRIME_WARN = 0.35
DELTA_EJ_RATIO_WARN = 0.1

# Relative tolerance for the pump-frequency constraint
# omega_p1 + omega_p2 = omega_p3 + omega_p4.
PUMP_CONSTRAINT_RTOL = 1e-12

# Internal cross-check tolerance for the two gamma4 evaluation routes.
GAMMA4_ROUTE_RTOL = 1e-10


class CircuitError(Exception):
    """Base class for circuit-parameter and evaluation errors."""


class UnphysicalParameterError(CircuitError):
    """A raw parameter lies outside its physical domain."""


class SingularCapacitanceError(CircuitError):
    """The capacitance matrix cannot be inverted (C = 0 frees the
    symmetric coupler mode)."""


class QuartonPoleError(CircuitError):
    """alpha = 1/n: the quadratic coupler potential vanishes and the
    nonlinearity ratio diverges."""


class UnphysicalBranchError(CircuitError):
    """1/n - alpha <= 0: omega_minus would be zero or imaginary."""


class NoSolutionError(CircuitError):
    """A tuning target admits no physical solution."""


class ResonanceSingularityError(CircuitError):
    """A g'_+- denominator vanishes; the names the message carries
    identify which one."""


class InternalConsistencyError(CircuitError):
    """Two supposedly equivalent evaluation routes disagree."""


class PerturbativeRegimeWarning(UserWarning):
    """Parameters leave the perturbative regime the closed forms assume."""


@dataclass(frozen=True)
class CircuitParams:
    """Raw circuit inputs, fully resolved (see :func:`make_params`).

    All fields are SI: capacitances in F, energies in J, pump frequencies
    in rad/s, phases in rad. ``n`` is the series-junction count of the
    coupler and ``alpha`` the shunt-junction area ratio.
    """

    C_J: float
    C: float
    C_g: float
    n: int
    alpha: float
    E_J_sigma: float
    delta_E_J: float
    E_Jg: float
    pump_freqs: tuple[float, float, float, float]
    pump_phases: tuple[float, float, float, float]


@dataclass(frozen=True)
class DerivedConstants:
    """Every intermediate constant of the oscillator chain.

    Energies in J, angular frequencies in rad/s, ``g_prime_plus`` and
    ``g_prime_minus`` dimensionless, ``I_cg`` in A. ``Omega`` is the
    composite detuning ``omega - omega_minus - K + K_minus``.
    """

    E_C: float
    E_Cg_prime: float
    E_Jg2: float
    E_Jg4: float
    omega: float
    K: float
    p: float
    omega_plus: float
    omega_minus: float
    K_minus: float
    g_plus: float
    g_minus: float
    g_prime_plus: float
    g_prime_minus: float
    Omega: float
    I_cg: float


@dataclass(frozen=True)
class EffectiveConstants:
    """Coefficients of the effective (post-transformation) Hamiltonian,
    evaluated from the stored reference polynomials in g'_+-.

    All rates in rad/s; ``fourbody_phase`` in rad. ``Delta_k`` is ordered
    by JPO index. Cross-Kerr constants are symmetric, chi_kl = chi_lk.
    """

    Delta_k: tuple[float, float, float, float]
    K_prime: float
    gamma4: float
    chi_12: float
    chi_13: float
    chi_14: float
    chi_23: float
    chi_24: float
    chi_34: float
    Delta_plus: float
    Delta_minus: float
    K_prime_plus: float
    K_prime_minus: float
    gamma2_Jplus: float
    gamma2_Jminus: float
    gamma2_plusminus: float
    fourbody_phase: float


# ---------------------------------------------------------------------------
# Parameter construction and validation
# ---------------------------------------------------------------------------


def _coupler_charging_energy(C_J: float, C: float, C_g: float) -> float:
    """E'_Cg = (e^2/2C_J) [ C_J/(C_g+C) + (C/(C_g+C))^2 ]."""
    u = C_g + C
    return (E_CHARGE**2 / (2.0 * C_J)) * (C_J / u + (C / u) ** 2)


def _ratio_24(n: int, alpha: float) -> float:
    """(1/n^3 - alpha)/(1/n - alpha) = E_Jg4/E_Jg2, the quartic-to-quadratic
    coupler nonlinearity ratio."""
    denom = 1.0 / n - alpha
    if denom == 0.0:
        raise QuartonPoleError(
            f"alpha = 1/n = {alpha!r}: quadratic coupler term vanishes "
            "(quarton point); E_Jg2 = 0"
        )
    return (1.0 / n**3 - alpha) / denom


def _solve_EJg_from_omega_minus(
    C_J: float, C: float, C_g: float, n: int, alpha: float, omega_minus: float
) -> float:
    """Invert omega_minus = sqrt(8 E'_Cg E_Jg2)/hbar for E_Jg."""
    branch = 1.0 / n - alpha
    if branch <= 0.0:
        raise UnphysicalBranchError(
            f"1/n - alpha = {branch!r} <= 0: omega_minus would be imaginary"
        )
    if omega_minus <= 0.0:
        raise NoSolutionError(
            f"target omega_minus = {omega_minus!r} rad/s is not positive"
        )
    E_Cg_prime = _coupler_charging_energy(C_J, C, C_g)
    return (HBAR * omega_minus) ** 2 / (8.0 * E_Cg_prime * branch)


def make_params(
    C_J: float,
    C: float,
    C_g: float,
    n: int = 1,
    alpha: float = 0.0,
    omega: float | None = None,
    E_J_sigma: float | None = None,
    E_Jg: float | None = None,
    omega_minus: float | None = None,
    Omega: float | None = None,
    delta_E_J: float | None = None,
    pump_freqs: tuple[float, float, float, float] | None = None,
    pump_phases: tuple[float, float, float, float] | None = None,
) -> CircuitParams:
    """Build a validated :class:`CircuitParams`.

    Exactly one of ``omega`` (JPO angular frequency) or ``E_J_sigma``
    (total SQUID Josephson energy) must be given; the other is derived via
    omega = sqrt(8 E_C E_J_sigma)/hbar.

    Exactly one of ``E_Jg`` (raw coupler Josephson energy),
    ``omega_minus`` (target antisymmetric-mode frequency) or ``Omega``
    (target composite detuning) must be given; the latter two back-solve
    E_Jg in closed form.

    ``delta_E_J`` defaults to 0.05 * E_J_sigma; ``pump_freqs`` default to
    2*omega each (which satisfies the constraint
    omega_p1 + omega_p2 = omega_p3 + omega_p4 trivially); ``pump_phases``
    default to zero.
    """
    if C_J <= 0.0 or C_g <= 0.0:
        raise UnphysicalParameterError(
            f"C_J and C_g must be positive (got C_J={C_J!r}, C_g={C_g!r})"
        )
    if C < 0.0:
        raise UnphysicalParameterError(f"C must be non-negative (got {C!r})")
    if C >= C_J:
        raise UnphysicalParameterError(
            f"coupling capacitance C={C!r} must be smaller than C_J={C_J!r}"
        )
    if C / C_J > C_RATIO_WARN:
        warnings.warn(
            f"C/C_J = {C / C_J:.3g} exceeds {C_RATIO_WARN}; the analytic "
            "chain assumes C << C_J",
            PerturbativeRegimeWarning,
            stacklevel=2,
        )
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise UnphysicalParameterError(f"n must be a positive integer (got {n!r})")
    if not 0.0 <= alpha < 1.0:
        raise UnphysicalParameterError(f"alpha must lie in [0, 1) (got {alpha!r})")

    if (omega is None) == (E_J_sigma is None):
        raise UnphysicalParameterError(
            "exactly one of omega or E_J_sigma must be given"
        )
    E_C = E_CHARGE**2 / (2.0 * C_J)
    if E_J_sigma is None:
        if omega <= 0.0:
            raise UnphysicalParameterError(f"omega must be positive (got {omega!r})")
        E_J_sigma = (HBAR * omega) ** 2 / (8.0 * E_C)
    if E_J_sigma <= 0.0:
        raise UnphysicalParameterError(
            f"E_J_sigma must be positive (got {E_J_sigma!r})"
        )
    omega_val = math.sqrt(8.0 * E_C * E_J_sigma) / HBAR

    n_given = sum(x is not None for x in (E_Jg, omega_minus, Omega))
    if n_given != 1:
        raise UnphysicalParameterError(
            "exactly one of E_Jg, omega_minus or Omega must be given "
            f"(got {n_given})"
        )
    if Omega is not None:
        # K_minus does not depend on the magnitude of E_Jg (only on n and
        # alpha through the quartic/quadratic ratio), so the relation
        # Omega = omega - omega_minus - K + K_minus is closed.
        K = E_C / HBAR
        K_minus = (
            _coupler_charging_energy(C_J, C, C_g) / HBAR * _ratio_24(n, alpha)
        )
        omega_minus = omega_val - K + K_minus - Omega
        if omega_minus <= 0.0:
            raise NoSolutionError(
                f"Omega target {Omega!r} rad/s requires omega_minus = "
                f"{omega_minus!r} rad/s <= 0"
            )
    if omega_minus is not None:
        E_Jg = _solve_EJg_from_omega_minus(C_J, C, C_g, n, alpha, omega_minus)
    if E_Jg <= 0.0:
        raise UnphysicalParameterError(f"E_Jg must be positive (got {E_Jg!r})")

    if delta_E_J is None:
        delta_E_J = 0.05 * E_J_sigma
    if delta_E_J < 0.0:
        raise UnphysicalParameterError(
            f"delta_E_J must be non-negative (got {delta_E_J!r})"
        )
    if delta_E_J / E_J_sigma > DELTA_EJ_RATIO_WARN:
        warnings.warn(
            f"delta_E_J/E_J_sigma = {delta_E_J / E_J_sigma:.3g} exceeds "
            f"{DELTA_EJ_RATIO_WARN}; the pump is assumed a small modulation",
            PerturbativeRegimeWarning,
            stacklevel=2,
        )

    if pump_freqs is None:
        pump_freqs = (2.0 * omega_val,) * 4
    pump_freqs = tuple(float(f) for f in pump_freqs)
    if len(pump_freqs) != 4 or any(f <= 0.0 for f in pump_freqs):
        raise UnphysicalParameterError(
            f"pump_freqs must be 4 positive angular frequencies (got {pump_freqs!r})"
        )
    mismatch = abs(pump_freqs[0] + pump_freqs[1] - pump_freqs[2] - pump_freqs[3])
    if mismatch > PUMP_CONSTRAINT_RTOL * max(pump_freqs):
        raise UnphysicalParameterError(
            "pump constraint omega_p1 + omega_p2 = omega_p3 + omega_p4 "
            f"violated by {mismatch!r} rad/s"
        )

    if pump_phases is None:
        pump_phases = (0.0, 0.0, 0.0, 0.0)
    pump_phases = tuple(float(t) for t in pump_phases)
    if len(pump_phases) != 4:
        raise UnphysicalParameterError(
            f"pump_phases must have 4 entries (got {pump_phases!r})"
        )

    return CircuitParams(
        C_J=float(C_J),
        C=float(C),
        C_g=float(C_g),
        n=int(n),
        alpha=float(alpha),
        E_J_sigma=float(E_J_sigma),
        delta_E_J=float(delta_E_J),
        E_Jg=float(E_Jg),
        pump_freqs=pump_freqs,
        pump_phases=pump_phases,
    )


# ---------------------------------------------------------------------------
# Capacitance network
# ---------------------------------------------------------------------------


def capacitance_matrix(params: CircuitParams) -> np.ndarray:
    """6x6 symmetric capacitance matrix in node order
    (phi_1..phi_4, phi_g1, phi_g2).

    Each JPO node carries C_J plus the coupling capacitor C to its gate
    node; each gate node carries C_g to the other gate node plus its two
    coupling capacitors.
    """
    C_J, C, C_g = params.C_J, params.C, params.C_g
    M = np.array(
        [
            [C_J + C, 0.0, 0.0, 0.0, -C, 0.0],
            [0.0, C_J + C, 0.0, 0.0, -C, 0.0],
            [0.0, 0.0, C_J + C, 0.0, 0.0, -C],
            [0.0, 0.0, 0.0, C_J + C, 0.0, -C],
            [-C, -C, 0.0, 0.0, C_g + 2.0 * C, -C_g],
            [0.0, 0.0, -C, -C, -C_g, C_g + 2.0 * C],
        ]
    )
    return M


def inverse_capacitance_analytic(params: CircuitParams) -> dict[str, float]:
    """Closed-form elements of the inverse capacitance matrix.

    Returns the independent elements {"11", "12", "13", "15", "16", "55",
    "56"}; all others follow from the symmetries
    11=22=33=44, 12=34, 13=14=23=24, 15=25=36=46, 16=26=35=45, 55=66
    (indices 1-based in the node order of :func:`capacitance_matrix`).

    Requires C > 0: at C = 0 the symmetric gate mode is free and the
    matrix is singular.
    """
    C_J, C, C_g = params.C_J, params.C, params.C_g
    if C == 0.0:
        raise SingularCapacitanceError(
            "C = 0: capacitance matrix is singular (free symmetric gate mode)"
        )
    D = C_J * C + C * C_g + C_g * C_J
    return {
        "11": (1.0 + C / (4.0 * C_J) + C**2 / (4.0 * D)) / (C_J + C),
        "12": C / (C_J + C) * (1.0 / (4.0 * C_J) + C / (4.0 * D)),
        "13": C * C_g / (4.0 * C_J * D),
        "15": 1.0 / (4.0 * C_J) + C / (4.0 * D),
        "16": 1.0 / (4.0 * C_J) - C / (4.0 * D),
        "55": 1.0 / (4.0 * C) + 1.0 / (4.0 * C_J) + (C_J + C) / (4.0 * D),
        "56": 1.0 / (4.0 * C) + 1.0 / (4.0 * C_J) - (C_J + C) / (4.0 * D),
    }


# 0-based (row, col) -> element name, upper triangle including diagonal.
_INVERSE_SYMMETRY = {
    (0, 0): "11", (1, 1): "11", (2, 2): "11", (3, 3): "11",
    (0, 1): "12", (2, 3): "12",
    (0, 2): "13", (0, 3): "13", (1, 2): "13", (1, 3): "13",
    (0, 4): "15", (1, 4): "15", (2, 5): "15", (3, 5): "15",
    (0, 5): "16", (1, 5): "16", (2, 4): "16", (3, 4): "16",
    (4, 4): "55", (5, 5): "55",
    (4, 5): "56",
}


def inverse_capacitance_matrix(params: CircuitParams) -> np.ndarray:
    """Full 6x6 inverse capacitance matrix assembled from the analytic
    elements and their symmetries."""
    elems = inverse_capacitance_analytic(params)
    M = np.empty((6, 6))
    for (i, j), name in _INVERSE_SYMMETRY.items():
        M[i, j] = elems[name]
        M[j, i] = elems[name]
    return M


# ---------------------------------------------------------------------------
# Derived constants
# ---------------------------------------------------------------------------


def derived_constants(params: CircuitParams) -> DerivedConstants:
    """Evaluate the full constants chain.

    At C = 0 the JPOs decouple: omega_plus diverges (reported as inf) and
    g_minus, g'_+ and g'_- are exactly zero.

    Raises :class:`ResonanceSingularityError` when a g'_+- denominator
    vanishes, :class:`QuartonPoleError` at alpha = 1/n and
    :class:`UnphysicalBranchError` for 1/n - alpha < 0.
    """
    C_J, C, C_g = params.C_J, params.C, params.C_g
    n, alpha = params.n, params.alpha

    E_C = E_CHARGE**2 / (2.0 * C_J)
    E_Cg_prime = _coupler_charging_energy(C_J, C, C_g)

    branch = 1.0 / n - alpha
    if branch == 0.0:
        raise QuartonPoleError(
            f"alpha = 1/n = {alpha!r}: E_Jg2 = 0 (quarton point)"
        )
    if branch < 0.0:
        raise UnphysicalBranchError(
            f"1/n - alpha = {branch!r} < 0: omega_minus would be imaginary"
        )
    E_Jg2 = branch * params.E_Jg
    E_Jg4 = (1.0 / n**3 - alpha) * params.E_Jg

    omega = math.sqrt(8.0 * E_C * params.E_J_sigma) / HBAR
    K = E_C / HBAR
    p = params.delta_E_J * omega / (4.0 * params.E_J_sigma)

    omega_minus = math.sqrt(8.0 * E_Cg_prime * E_Jg2) / HBAR
    K_minus = E_Cg_prime * E_Jg4 / (HBAR * E_Jg2)
    g_plus = (math.sqrt(omega * omega_minus) / 4.0) * math.sqrt(E_C / E_Cg_prime)

    if C == 0.0:
        omega_plus = math.inf
        g_minus = 0.0
        g_prime_plus = 0.0
        g_prime_minus = 0.0
    else:
        omega_plus = 4.0 * K * (C_J / C + 1.0) * math.sqrt(
            E_Jg2 / (8.0 * E_Cg_prime)
        )
        g_minus = C / (C_g + C) * g_plus
        denom_plus = omega - omega_plus - K
        if denom_plus == 0.0:
            raise ResonanceSingularityError(
                "omega - omega_plus - K = 0: g'_+ diverges"
            )
        denom_minus = omega - omega_minus - K + K_minus
        if denom_minus == 0.0:
            raise ResonanceSingularityError(
                "omega - omega_minus - K + K_minus = 0: g'_- diverges"
            )
        g_prime_plus = g_plus / denom_plus
        g_prime_minus = g_minus / denom_minus

    Omega = omega - omega_minus - K + K_minus
    I_cg = 2.0 * E_CHARGE * params.E_Jg / HBAR

    if max(abs(g_prime_plus), abs(g_prime_minus)) > G_PRIME_WARN:
        warnings.warn(
            f"|g'_+| = {abs(g_prime_plus):.3g}, |g'_-| = "
            f"{abs(g_prime_minus):.3g}: beyond the soft perturbative "
            f"threshold {G_PRIME_WARN}",
            PerturbativeRegimeWarning,
            stacklevel=2,
        )

    return DerivedConstants(
        E_C=E_C,
        E_Cg_prime=E_Cg_prime,
        E_Jg2=E_Jg2,
        E_Jg4=E_Jg4,
        omega=omega,
        K=K,
        p=p,
        omega_plus=omega_plus,
        omega_minus=omega_minus,
        K_minus=K_minus,
        g_plus=g_plus,
        g_minus=g_minus,
        g_prime_plus=g_prime_plus,
        g_prime_minus=g_prime_minus,
        Omega=Omega,
        I_cg=I_cg,
    )


def solve_EJg_for_Omega(
    params: CircuitParams, Omega_target: float
) -> tuple[float, float]:
    """Back-solve the coupler Josephson energy that realizes a composite
    detuning ``Omega_target`` (rad/s), returning ``(E_Jg, I_cg)``.

    Closed form: Omega = omega - omega_minus - K + K_minus is linear in
    omega_minus (K_minus depends only on n and alpha), so
    omega_minus = omega - K + K_minus - Omega_target and
    E_Jg = (hbar*omega_minus)^2 / (8 E'_Cg (1/n - alpha)).

    Raises :class:`UnphysicalBranchError` when 1/n - alpha <= 0 and
    :class:`NoSolutionError` when the implied omega_minus is not positive.
    """
    E_C = E_CHARGE**2 / (2.0 * params.C_J)
    omega = math.sqrt(8.0 * E_C * params.E_J_sigma) / HBAR
    K = E_C / HBAR
    branch = 1.0 / params.n - params.alpha
    if branch == 0.0:
        raise QuartonPoleError(
            f"alpha = 1/n = {params.alpha!r}: E_Jg diverges (quarton point)"
        )
    if branch < 0.0:
        raise UnphysicalBranchError(
            f"1/n - alpha = {branch!r} < 0: no real omega_minus"
        )
    K_minus = (
        _coupler_charging_energy(params.C_J, params.C, params.C_g)
        / HBAR
        * _ratio_24(params.n, params.alpha)
    )
    omega_minus = omega - K + K_minus - Omega_target
    if omega_minus <= 0.0:
        raise NoSolutionError(
            f"Omega target {Omega_target!r} rad/s requires omega_minus = "
            f"{omega_minus!r} rad/s <= 0"
        )
    E_Jg = _solve_EJg_from_omega_minus(
        params.C_J, params.C, params.C_g, params.n, params.alpha, omega_minus
    )
    I_cg = 2.0 * E_CHARGE * E_Jg / HBAR
    return E_Jg, I_cg


def retune_to_Omega(params: CircuitParams, Omega_target: float) -> CircuitParams:
    """Return a copy of ``params`` with E_Jg replaced so that the derived
    Omega equals ``Omega_target``."""
    E_Jg, _ = solve_EJg_for_Omega(params, Omega_target)
    return replace(params, E_Jg=E_Jg)


# ---------------------------------------------------------------------------
# Four-body coupling
# ---------------------------------------------------------------------------


def gamma4_routes(params: CircuitParams) -> tuple[float, float]:
    """Evaluate gamma4 along both algebraic routes.

    Route 1 (composition): 2 g'_-^4 K_minus from the derived constants.

    Route 2 (circuit form): the algebraically identical expression written
    directly in circuit parameters,

        gamma4 = (omega*omega_minus)^2 C^4 e^2 r
                 / (256 Omega^4 S hbar C_J u^2),

    with u = C_g + C, S = C_J*u + C^2 and r = (1/n^3-alpha)/(1/n-alpha).
    Exact capacitance factors are kept (no C << C_J truncation) so the two
    routes agree to float roundoff.
    """
    d = derived_constants(params)
    route_composition = 2.0 * d.g_prime_minus**4 * d.K_minus

    C_J, C, C_g = params.C_J, params.C, params.C_g
    u = C_g + C
    S = C_J * u + C**2
    r = _ratio_24(params.n, params.alpha)
    if d.Omega == 0.0:
        raise ResonanceSingularityError(
            "Omega = omega - omega_minus - K + K_minus = 0: gamma4 diverges"
        )
    route_circuit = (
        (d.omega * d.omega_minus) ** 2
        * C**4
        * E_CHARGE**2
        * r
        / (256.0 * d.Omega**4 * S * HBAR * C_J * u**2)
    )
    return route_composition, route_circuit


def gamma4(params: CircuitParams) -> tuple[float, float]:
    """Four-body coupling constant (rad/s) and its pump phase (rad).

    Evaluates both routes of :func:`gamma4_routes`, checks their relative
    agreement to 1e-10 and returns the composition-route value together
    with the phase sum(s_k * theta_pk / 2).
    """
    comp, circ = gamma4_routes(params)
    scale = max(abs(comp), abs(circ))
    if scale > 0.0 and abs(comp - circ) > GAMMA4_ROUTE_RTOL * scale:
        raise InternalConsistencyError(
            f"gamma4 routes disagree: composition {comp!r} vs circuit {circ!r}"
        )
    phase = fourbody_phase(params.pump_phases)
    return comp, phase


def fourbody_phase(pump_phases: tuple[float, float, float, float]) -> float:
    """Pump phase of the four-body term: sum_k s_k theta_pk / 2."""
    return sum(s * t for s, t in zip(S_SIGNS, pump_phases)) / 2.0


def nonlinearity_ratio(n: int, alpha: float) -> float:
    """Signed coupler nonlinearity ratio E_Jg4/E_Jg2 =
    (1 - n^3 alpha)/(n^2 (1 - n alpha)).

    Raises :class:`QuartonPoleError` at alpha = 1/n.
    """
    if n < 1:
        raise UnphysicalParameterError(f"n must be a positive integer (got {n!r})")
    return _ratio_24(n, alpha)


def nonlinearity_ratio_abs(n: int, alpha: float) -> float:
    """Absolute value of :func:`nonlinearity_ratio`."""
    return abs(nonlinearity_ratio(n, alpha))


# ---------------------------------------------------------------------------
# Effective-Hamiltonian coefficients (reference polynomial evaluation)
# ---------------------------------------------------------------------------


def effective_constants(params: CircuitParams) -> EffectiveConstants:
    """Evaluate the effective-Hamiltonian coefficients from the stored
    reference polynomials in g'_+ and g'_- (see
    :mod:`jpocoupler.reference`).

    The pump term -omega_pk/2 enters Delta_k; chi_12 = chi_34 and
    chi_13 = chi_14 = chi_23 = chi_24 by the s_k s_l structure.
    """
    from . import reference

    d = derived_constants(params)
    values = {
        "omega": d.omega,
        "K": d.K,
        "p": d.p,
        "omega_plus": d.omega_plus,
        "omega_minus": d.omega_minus,
        "K_minus": d.K_minus,
        "omega_p1": params.pump_freqs[0],
        "omega_p2": params.pump_freqs[1],
        "omega_p3": params.pump_freqs[2],
        "omega_p4": params.pump_freqs[3],
    }
    gp, gm = d.g_prime_plus, d.g_prime_minus

    def ev(name: str) -> float:
        return reference.evaluate(reference.REFERENCE_COEFFICIENTS[name], gp, gm, values)

    return EffectiveConstants(
        Delta_k=tuple(ev(f"Delta_{k}") for k in (1, 2, 3, 4)),
        K_prime=ev("K_prime"),
        gamma4=ev("gamma4"),
        chi_12=ev("chi_12"),
        chi_13=ev("chi_13"),
        chi_14=ev("chi_14"),
        chi_23=ev("chi_23"),
        chi_24=ev("chi_24"),
        chi_34=ev("chi_34"),
        Delta_plus=ev("Delta_plus"),
        Delta_minus=ev("Delta_minus"),
        K_prime_plus=ev("K_prime_plus"),
        K_prime_minus=ev("K_prime_minus"),
        gamma2_Jplus=ev("gamma2_Jplus"),
        gamma2_Jminus=ev("gamma2_Jminus"),
        gamma2_plusminus=ev("gamma2_plusminus"),
        fourbody_phase=fourbody_phase(params.pump_phases),
    )

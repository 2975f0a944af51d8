"""Reference polynomial table for the effective-Hamiltonian coefficients.

Each coefficient is a polynomial in the dimensionless perturbation
parameters g'_+ and g'_- (grade <= 4), linear in the parameter symbols
{omega, K, p, omega_plus, omega_minus, K_minus, omega_p1..omega_p4}. The
entries here are the previously tabulated closed forms that
:func:`jpocoupler.circuit.effective_constants` evaluates and that the
mechanical re-derivation in :mod:`jpocoupler.derivation` is compared
against.

Representation: ``{name: {(i, j, sym): Fraction}}`` meaning
``sum Fraction * g'_+^i * g'_-^j * sym`` with ``sym`` a parameter-symbol
name or ``"1"`` for a pure number. All coefficients are exact rationals.

Note: the machine-derived table (see
``jpocoupler/data/derived_coefficients.txt``) does not agree with every
entry here; the per-coefficient comparison and the numerical evidence for
each difference live in the test suite (``tests/test_derivation.py`` and
``tests/test_acceptance.py``).
"""

from __future__ import annotations

from fractions import Fraction as F

# s_k s_l for each unordered JPO pair: +1 for pairs on the same gate node,
# -1 across nodes.
CHI_PAIR_SIGN = {
    (1, 2): 1,
    (3, 4): 1,
    (1, 3): -1,
    (1, 4): -1,
    (2, 3): -1,
    (2, 4): -1,
}

PARAM_SYMBOLS = (
    "omega",
    "K",
    "p",
    "omega_plus",
    "omega_minus",
    "K_minus",
    "omega_p1",
    "omega_p2",
    "omega_p3",
    "omega_p4",
)


def _delta_k(k: int) -> dict:
    return {
        (0, 0, "omega"): F(1),
        (2, 0, "omega"): F(1),
        (0, 2, "omega"): F(1),
        (4, 0, "omega"): F(-4),
        (0, 4, "omega"): F(-4),
        (0, 0, "K"): F(1),
        (2, 0, "K"): F(-5),
        (0, 2, "K"): F(-5),
        (4, 0, "K"): F(6),
        (0, 4, "K"): F(6),
        (2, 2, "K"): F(1),
        (2, 0, "omega_plus"): F(-1),
        (4, 0, "omega_plus"): F(4),
        (0, 2, "omega_minus"): F(-1),
        (0, 4, "omega_minus"): F(4),
        (0, 2, "K_minus"): F(1),
        (0, 4, "K_minus"): F(-2),
        (0, 0, f"omega_p{k}"): F(-1, 2),
    }


def _chi_kl(sign: int) -> dict:
    return {
        (4, 0, "K"): F(2),
        (0, 4, "K"): F(2),
        (2, 2, "K"): F(4 * sign),
        (0, 4, "K_minus"): F(2),
    }


REFERENCE_COEFFICIENTS: dict[str, dict[tuple[int, int, str], F]] = {
    "Delta_1": _delta_k(1),
    "Delta_2": _delta_k(2),
    "Delta_3": _delta_k(3),
    "Delta_4": _delta_k(4),
    "K_prime": {
        (0, 0, "K"): F(1),
        (2, 0, "K"): F(-2),
        (0, 2, "K"): F(-2),
        (4, 0, "K"): F(13, 6),
        (0, 4, "K"): F(13, 6),
        (2, 2, "K"): F(3),
        (0, 4, "K_minus"): F(1, 2),
    },
    "Delta_plus": {
        (2, 0, "omega"): F(-4),
        (4, 0, "omega"): F(16),
        (2, 0, "K"): F(4),
        (4, 0, "K"): F(-52, 3),
        (2, 2, "K"): F(-4),
        (2, 0, "omega_plus"): F(4),
        (4, 0, "omega_plus"): F(-16),
    },
    "Delta_minus": {
        (0, 2, "omega"): F(-4),
        (0, 4, "omega"): F(16),
        (0, 2, "K"): F(4),
        (0, 4, "K"): F(-52, 3),
        (2, 2, "K"): F(-4),
        (0, 2, "omega_minus"): F(4),
        (0, 4, "omega_minus"): F(-16),
        (0, 0, "K_minus"): F(1),
        (0, 2, "K_minus"): F(-20),
        (0, 4, "K_minus"): F(208, 3),
    },
    "K_prime_plus": {
        (4, 0, "K"): F(4),
    },
    "K_prime_minus": {
        (0, 4, "K"): F(4),
        (0, 0, "K_minus"): F(1),
        (0, 2, "K_minus"): F(-8),
        (0, 4, "K_minus"): F(80, 3),
    },
    "gamma4": {
        (0, 4, "K_minus"): F(2),
    },
    "chi_12": _chi_kl(CHI_PAIR_SIGN[(1, 2)]),
    "chi_13": _chi_kl(CHI_PAIR_SIGN[(1, 3)]),
    "chi_14": _chi_kl(CHI_PAIR_SIGN[(1, 4)]),
    "chi_23": _chi_kl(CHI_PAIR_SIGN[(2, 3)]),
    "chi_24": _chi_kl(CHI_PAIR_SIGN[(2, 4)]),
    "chi_34": _chi_kl(CHI_PAIR_SIGN[(3, 4)]),
    "gamma2_Jplus": {
        (2, 0, "K"): F(2),
    },
    "gamma2_Jminus": {
        (0, 2, "K"): F(2),
        (0, 2, "K_minus"): F(2),
        (0, 4, "K_minus"): F(-8, 3),
    },
    "gamma2_plusminus": {
        (2, 2, "K"): F(2),
    },
}


def evaluate(
    entry: dict[tuple[int, int, str], F],
    g_prime_plus: float,
    g_prime_minus: float,
    values: dict[str, float],
) -> float:
    """Evaluate one polynomial entry at numeric g'_+- and parameter values.

    Terms with a zero g'-power product are skipped before the parameter
    symbol is touched, so decoupled limits (g'_+ = 0 with
    omega_plus = inf) evaluate cleanly.
    """
    total = 0.0
    for (i, j, sym), frac in entry.items():
        gfac = g_prime_plus**i * g_prime_minus**j
        if gfac == 0.0:
            continue
        term = float(frac) * gfac
        if sym != "1":
            term *= values[sym]
        total += term
    return total

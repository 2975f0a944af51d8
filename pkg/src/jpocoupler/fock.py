"""Truncated-Fock-space numerical oracle.

Represents symbolic operator expressions as dense matrices on a
truncated multimode Fock space, conjugates them by the exact matrix
exponential of the beam-splitter generator, and fits normal-ordered
monomial coefficients on a safe low-occupation block.

Why the block fit is truncation-exact: the generator conserves total
occupation, so e^S is block-diagonal in the total-occupation sectors and
its restriction to the sector of total occupation N is exact whenever
N <= d - 1 (no state in the sector touches the per-mode cutoff).
Matrix elements <Um| M |Un> with bra and ket in such sectors are then
exact as well: the clipped high-occupation components of M|Un> are
orthogonal to the bra. Fitted coefficients on the total-occupation <= 2
block therefore do not depend on d (for d >= 3), which the d -> d+1
convergence check verifies empirically.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .algebra import (
    JPO_MODES,
    MODE_MINUS,
    GradedCoefficient,
    OperatorExpr,
    S_SIGNS,
    monomial,
)

DEFAULT_MEMORY_BOUND = 20_000

ALL_MODES = (0, 1, 2, 3, 4, 5)
FIVE_MODES = (0, 1, 2, 3, 5)  # four JPOs and the "-" coupler mode


class FockError(Exception):
    """Base class for oracle errors."""


class MissingParameterError(FockError):
    """A symbolic coefficient had no numeric substitution."""


class ValidationError(FockError):
    """A matrix failed a structural check (anti-Hermiticity, unitarity)."""


class TruncationError(FockError):
    """The requested computation is not resolved at this truncation."""


class IllPosedFitError(FockError):
    """The fit basis is rank-deficient on the chosen subspace."""


@dataclass(frozen=True)
class FockConfig:
    """Truncation configuration.

    ``levels_per_mode`` is the per-mode dimension d (occupations
    0..d-1); ``active_modes`` the modes represented (algebra indices,
    0..3 = JPOs, 4 = "+", 5 = "-"); ``safe_occupation`` the total
    occupation bound of the safe fitting block.
    """

    levels_per_mode: int = 4
    active_modes: tuple = FIVE_MODES
    safe_occupation: int | None = None
    memory_bound: int = DEFAULT_MEMORY_BOUND

    def __post_init__(self):
        d = self.levels_per_mode
        if d < 3:
            raise FockError(f"levels_per_mode must be >= 3, got {d}")
        if self.safe_occupation is None:
            object.__setattr__(self, "safe_occupation", max(d - 3, 0))
        if self.safe_occupation > d - 2:
            raise FockError(
                f"safe_occupation {self.safe_occupation} exceeds d-2 = {d - 2}"
            )
        if not self.active_modes or any(
            m not in ALL_MODES for m in self.active_modes
        ):
            raise FockError(f"invalid active_modes {self.active_modes!r}")
        if self.dimension > self.memory_bound:
            raise FockError(
                f"total dimension {self.dimension} exceeds memory bound "
                f"{self.memory_bound}"
            )

    @property
    def dimension(self) -> int:
        return self.levels_per_mode ** len(self.active_modes)


def _ladder(d: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1.0, d)), 1)


def _mono_matrix(mono: tuple, config: FockConfig) -> np.ndarray:
    """Dense matrix of one normal-ordered monomial: per-mode
    (a^dag)^c a^q, Kronecker-multiplied over the active modes."""
    d = config.levels_per_mode
    a = _ladder(d)
    ad = a.T
    out = None
    for m in config.active_modes:
        c, q = mono[2 * m], mono[2 * m + 1]
        block = (
            np.linalg.matrix_power(ad, c) @ np.linalg.matrix_power(a, q)
            if (c or q)
            else np.eye(d)
        )
        out = block if out is None else np.kron(out, block)
    return out


def represent(
    expr: OperatorExpr,
    values: dict[str, float],
    config: FockConfig,
    g_prime: tuple[float, float] = (0.0, 0.0),
    thetas: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0),
) -> np.ndarray:
    """Dense-matrix representation of ``expr`` at numeric parameter
    values, with phase tags frozen at t = 0 (the pump-phase part
    contributes e^{i t.theta}).

    Modes outside ``config.active_modes`` must not appear in ``expr``.
    """
    dim = config.dimension
    out = np.zeros((dim, dim), dtype=complex)
    gp, gm = g_prime
    for (mono, tag), coeff in expr.terms.items():
        for m in ALL_MODES:
            if m not in config.active_modes and (mono[2 * m] or mono[2 * m + 1]):
                raise FockError(
                    f"expression uses mode {m} outside active_modes"
                )
        try:
            val = coeff.evaluate(gp, gm, values)
        except KeyError as exc:
            raise MissingParameterError(
                f"no numeric value for parameter symbol {exc.args[0]!r}"
            ) from exc
        phase = math.fsum(
            float(tj) * th for tj, th in zip(tag.t, thetas)
        )
        if phase:
            val *= complex(math.cos(phase), math.sin(phase))
        if val == 0:
            continue
        out += val * _mono_matrix(mono, config)
    return out


def matrix_exponential(s_matrix: np.ndarray, rtol: float = 1e-10
                       ) -> np.ndarray:
    """e^S for an anti-Hermitian S, computed spectrally: iS is Hermitian,
    so e^S = V e^{-i diag(lam)} V^dag with (lam, V) the eigensystem of
    iS. Falls back to the Pade exponential for small matrices."""
    scale = max(np.linalg.norm(s_matrix), 1.0)
    if np.linalg.norm(s_matrix + s_matrix.conj().T) > rtol * scale:
        raise ValidationError("generator matrix is not anti-Hermitian")
    if s_matrix.shape[0] <= 64:
        return expm(s_matrix)
    lam, vec = np.linalg.eigh(1j * s_matrix)
    return (vec * np.exp(-1j * lam)) @ vec.conj().T


def conjugate_exact(
    s_matrix: np.ndarray, a_matrix: np.ndarray, rtol: float = 1e-10
) -> np.ndarray:
    """e^{-S} A e^{S} via the exact matrix exponential.

    S must be anti-Hermitian to within ``rtol`` (relative to its norm);
    unitarity of e^S is verified to the same tolerance.
    """
    u = matrix_exponential(s_matrix, rtol)
    dev = np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0]))
    if dev > rtol * u.shape[0]:
        raise ValidationError(f"exponential is not unitary: deviation {dev:g}")
    return u.conj().T @ a_matrix @ u


def block_states(config: FockConfig, max_total: int | None = None) -> list:
    """Product basis states (occupation tuples over active modes) with
    total occupation bounded by ``max_total`` (default: the config's
    safe occupation)."""
    if max_total is None:
        max_total = config.safe_occupation
    d = config.levels_per_mode
    states = []
    for occ in itertools.product(range(min(d, max_total + 1)),
                                 repeat=len(config.active_modes)):
        if sum(occ) <= max_total:
            states.append(occ)
    states.sort(key=lambda s: (sum(s), s))
    return states


def state_index(occ: tuple, config: FockConfig) -> int:
    d = config.levels_per_mode
    idx = 0
    for n in occ:
        idx = idx * d + n
    return idx


def fit_basis(config: FockConfig, max_raise: int = 2, max_lower: int = 2
              ) -> list:
    """Normal-ordered monomials visible on the safe block: total
    creation power <= max_raise and total annihilation power <=
    max_lower."""
    modes = config.active_modes
    combos = []
    for c_tot in range(max_raise + 1):
        for cs in itertools.product(range(c_tot + 1), repeat=len(modes)):
            if sum(cs) != c_tot:
                continue
            for q_tot in range(max_lower + 1):
                for qs in itertools.product(range(q_tot + 1),
                                            repeat=len(modes)):
                    if sum(qs) != q_tot:
                        continue
                    combos.append(
                        monomial(
                            {m: (cs[i], qs[i]) for i, m in enumerate(modes)}
                        )
                    )
    return combos


def _falling(n: int, k: int) -> int:
    out = 1
    for j in range(k):
        out *= n - j
    return out


def _mono_block_column(mono: tuple, states: list, config: FockConfig
                       ) -> np.ndarray:
    """Exact matrix elements <bra| (a^dag)^c a^q |ket> of a normal-ordered
    monomial over all (bra, ket) pairs of block states, flattened
    row-major. These are the same numbers the truncated dense
    representation gives on the block (the bra caps the reachable
    occupation), but cost nothing in the full dimension."""
    modes = config.active_modes
    col = np.zeros(len(states) * len(states))
    for i, bra in enumerate(states):
        for j, ket in enumerate(states):
            val = 1.0
            for pos, m in enumerate(modes):
                c, q = mono[2 * m], mono[2 * m + 1]
                n = ket[pos]
                if n < q or bra[pos] != n - q + c:
                    val = 0.0
                    break
                if c or q:
                    val *= math.sqrt(_falling(n, q) * _falling(n - q + c, c))
            else:
                col[i * len(states) + j] = val
                continue
    return col


def coefficient_fit(
    matrix: np.ndarray,
    basis: list,
    config: FockConfig,
    states: list | None = None,
) -> tuple[dict, float]:
    """Least-squares fit of ``matrix``'s elements on the safe block
    against the representations of ``basis`` monomials.

    Returns (coefficient map, absolute fit residual). Raises
    :class:`IllPosedFitError` when the basis is rank-deficient on the
    block.
    """
    if states is None:
        states = block_states(config)
    idx = np.array([state_index(s, config) for s in states])
    target = matrix[np.ix_(idx, idx)].ravel()
    columns = np.empty((target.size, len(basis)), dtype=complex)
    for j, mono in enumerate(basis):
        columns[:, j] = _mono_block_column(mono, states, config)
    coeffs, _, rank, _ = np.linalg.lstsq(columns, target, rcond=None)
    if rank < len(basis):
        raise IllPosedFitError(
            f"fit basis rank {rank} < {len(basis)} on the safe block"
        )
    residual = float(np.linalg.norm(columns @ coeffs - target))
    return {m: complex(c) for m, c in zip(basis, coeffs)}, residual


# ---------------------------------------------------------------------------
# Four-body oracle
# ---------------------------------------------------------------------------


def _minus_generator_expr() -> OperatorExpr:
    """S_- = -g'_- sum_k s_k (a_k^dag a_- - a_k a_-^dag) with g'_- as the
    formal grade symbol."""
    S = OperatorExpr.zero()
    for k in JPO_MODES:
        up = OperatorExpr.from_mono(monomial({k: (1, 0), MODE_MINUS: (0, 1)}))
        down = OperatorExpr.from_mono(monomial({k: (0, 1), MODE_MINUS: (1, 0)}))
        S = S + (up - down).scale(
            GradedCoefficient.g_power(0, 1, value=-S_SIGNS[k])
        )
    return S


def _minus_quartic_expr() -> OperatorExpr:
    """-(K_-/12)(a_- + a_-^dag)^4, normal-ordered."""
    x = OperatorExpr.creation(MODE_MINUS) + OperatorExpr.annihilation(
        MODE_MINUS
    )
    x4 = x.multiply(x).multiply(x).multiply(x)
    from fractions import Fraction

    return x4.scale(GradedCoefficient.sym("K_minus", value=Fraction(-1, 12)))


FOURBODY_MONO = monomial({0: (1, 0), 1: (1, 0), 2: (0, 1), 3: (0, 1)})


def fitted_four_body(g_prime_minus: float, config: FockConfig) -> tuple[float, float]:
    """Conjugate the minus-mode quartic (with K_- = 1) by the exact e^S
    at numeric g'_- and fit the four-body channel coefficient.

    Returns (gamma4_fitted_in_units_of_K_minus, fit residual); the
    effective-Hamiltonian convention is gamma4 = -(coefficient of
    a1^dag a2^dag a3 a4).
    """
    s_mat = represent(
        _minus_generator_expr(), {}, config, g_prime=(0.0, g_prime_minus)
    )
    m_in = represent(_minus_quartic_expr(), {"K_minus": 1.0}, config)
    m_out = conjugate_exact(s_mat, m_in)
    states = block_states(config, max_total=2)
    coeffs, residual = coefficient_fit(
        m_out, fit_basis(config), config, states=states
    )
    return -coeffs[FOURBODY_MONO].real, residual


@dataclass
class FourBodyReport:
    """Oracle-vs-analytic comparison of the four-body coupling, with the
    deviation's scaling under coupling-capacitance halving and the
    truncation-convergence shift."""

    analytic_gamma4: float
    fitted_gamma4: float
    relative_deviation: float
    g_prime_minus: float
    scaling_g_primes: tuple
    scaling_deviations: tuple
    scaling_exponents: tuple
    d_convergence_shift: float
    fit_residual: float


def verify_four_body(
    params,
    config: FockConfig | None = None,
    scaling_tolerance: float = 0.35,
    d_shift_tolerance: float = 0.01,
) -> FourBodyReport:
    """Validate the analytic four-body coupling against the truncated-
    Fock conjugation oracle at the given circuit operating point.

    The fit runs on the total-occupation <= 2 block of the 5-mode space
    (the "+" mode does not enter the minus-quartic conjugation). The
    deviation's scaling exponent is measured by halving the coupling
    capacitance twice at fixed net detuning; the d -> d+1 coefficient
    shift must stay below ``d_shift_tolerance``.
    """
    import dataclasses

    from . import circuit

    if config is None:
        config = FockConfig(levels_per_mode=4, active_modes=FIVE_MODES,
                            safe_occupation=2)

    dc = circuit.derived_constants(params)
    gm = dc.g_prime_minus

    fitted, residual = fitted_four_body(gm, config)
    analytic = 2.0 * gm**4
    rel_dev = (fitted - analytic) / analytic if analytic else 0.0
    if abs(rel_dev) > scaling_tolerance:
        raise ValidationError(
            f"four-body coefficient deviates by {rel_dev:+.3e} "
            f"(beyond {scaling_tolerance}) at g'_- = {gm:.4g}; the "
            "truncated expansion does not describe this operating point"
        )

    config_up = dataclasses.replace(
        config, levels_per_mode=config.levels_per_mode + 1
    )
    fitted_up, _ = fitted_four_body(gm, config_up)
    d_shift = abs(fitted_up - fitted) / max(abs(fitted), 1e-300)
    if d_shift > d_shift_tolerance:
        raise TruncationError(
            f"four-body coefficient shifts by {d_shift:.3e} from d="
            f"{config.levels_per_mode} to {config.levels_per_mode + 1}"
        )

    g_list = [gm]
    dev_list = [rel_dev]
    p = params
    for _ in range(2):
        p = circuit.retune_to_Omega(
            dataclasses.replace(p, C=p.C / 2), dc.Omega
        )
        dci = circuit.derived_constants(p)
        fi, _ = fitted_four_body(dci.g_prime_minus, config)
        ai = 2.0 * dci.g_prime_minus**4
        g_list.append(dci.g_prime_minus)
        dev_list.append((fi - ai) / ai)
    exponents = tuple(
        math.log(abs(dev_list[i] / dev_list[i + 1]))
        / math.log(abs(g_list[i] / g_list[i + 1]))
        for i in range(2)
    )

    return FourBodyReport(
        analytic_gamma4=analytic * dc.K_minus,
        fitted_gamma4=fitted * dc.K_minus,
        relative_deviation=rel_dev,
        g_prime_minus=gm,
        scaling_g_primes=tuple(g_list),
        scaling_deviations=tuple(dev_list),
        scaling_exponents=exponents,
        d_convergence_shift=d_shift,
        fit_residual=residual,
    )


# ---------------------------------------------------------------------------
# Coherent-state residual
# ---------------------------------------------------------------------------


def coherent_residual_check(
    p_over_K: float, d: int, weight_tolerance: float = 1e-8
) -> float:
    """|<alpha0| (K a^dag^2 - p) a |alpha0>| with alpha0 = sqrt(p/K) and
    K = 1, evaluated with truncated coherent-state vectors.

    The analytic value is exactly zero; the return value is
    truncation-limited. Raises :class:`TruncationError` when |alpha0>
    has more than ``weight_tolerance`` weight beyond the cutoff.
    """
    alpha = math.sqrt(p_over_K)
    n = np.arange(d)
    log_amp = n * math.log(alpha) - 0.5 * np.cumsum(
        np.log(np.maximum(n, 1))
    ) - alpha**2 / 2.0
    vec = np.exp(log_amp)
    lost = 1.0 - float(vec @ vec)
    if lost > weight_tolerance:
        raise TruncationError(
            f"coherent state alpha={alpha:g} loses {lost:.2e} weight at d={d}"
        )
    a = _ladder(d)
    op = a.T @ a.T @ a - p_over_K * a
    return float(abs(vec @ (op @ vec)))


# ---------------------------------------------------------------------------
# Engine cross-validation
# ---------------------------------------------------------------------------


@dataclass
class EngineReport:
    trials: int
    max_multiply_deviation: float
    max_commutator_deviation: float
    failures: tuple = field(default_factory=tuple)


def random_expression(
    rng: np.random.Generator,
    config: FockConfig,
    n_terms: int = 4,
    max_mode_degree: int = 3,
) -> OperatorExpr:
    """Random low-degree tag-free expression with small integer
    coefficients, for engine cross-validation."""
    from fractions import Fraction

    expr = OperatorExpr.zero()
    modes = config.active_modes
    for _ in range(n_terms):
        spread = {}
        total = 0
        for m in rng.permutation(modes)[: rng.integers(1, 3)]:
            c = int(rng.integers(0, max_mode_degree + 1))
            q = int(rng.integers(0, max_mode_degree + 1 - c))
            if c or q:
                spread[int(m)] = (c, q)
                total += c + q
        if total == 0 or total > max_mode_degree:
            continue
        num = int(rng.integers(-4, 5)) or 1
        den = int(rng.integers(1, 4))
        expr = expr + OperatorExpr.from_mono(
            monomial(spread), Fraction(num, den)
        )
    return expr


def verify_symbolic_engine(
    seed: int, trials: int, config: FockConfig | None = None,
    tolerance: float = 1e-12,
) -> EngineReport:
    """Cross-validate symbolic multiply/commutator against dense matrix
    arithmetic on the safe block. Any mismatch beyond ``tolerance``
    (relative to the matrix scale) is recorded with its trial seed."""
    if config is None:
        config = FockConfig(levels_per_mode=6, active_modes=(0, 1),
                            safe_occupation=2)
    states = block_states(config)
    idx = np.array([state_index(s, config) for s in states])
    max_mul = 0.0
    max_comm = 0.0
    failures = []
    for trial in range(trials):
        rng = np.random.default_rng(seed + trial)
        a = random_expression(rng, config)
        b = random_expression(rng, config)
        ma = represent(a, {}, config)
        mb = represent(b, {}, config)
        scale = max(np.abs(ma).max() * max(np.abs(mb).max(), 1.0), 1.0)
        m_mul = represent(a.multiply(b), {}, config)
        dev_mul = np.abs((ma @ mb - m_mul)[np.ix_(idx, idx)]).max() / scale
        from .algebra import commutator

        m_comm = represent(commutator(a, b), {}, config)
        dev_comm = (
            np.abs((ma @ mb - mb @ ma - m_comm)[np.ix_(idx, idx)]).max()
            / scale
        )
        max_mul = max(max_mul, dev_mul)
        max_comm = max(max_comm, dev_comm)
        if dev_mul > tolerance or dev_comm > tolerance:
            failures.append((seed + trial, dev_mul, dev_comm))
    return EngineReport(
        trials=trials,
        max_multiply_deviation=max_mul,
        max_commutator_deviation=max_comm,
        failures=tuple(failures),
    )

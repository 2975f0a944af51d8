"""Exact symbolic engine for normal-ordered bosonic polynomials on six
modes (four JPOs and the two coupler modes "+" and "-").

Expressions are sums of terms

    coefficient * a1^dag^c1 a1^q1 ... a-^dag^c6 a-^q6 * e^{i(f.w t + t.theta)}

where

* the monomial is stored as a flat tuple of 12 small integers
  (c0, q0, c1, q1, ..., c5, q5) -- creation/annihilation powers per mode
  in the order (JPO1, JPO2, JPO3, JPO4, plus, minus); normal ordering is
  enforced by construction,
* the phase tag carries a frequency vector ``f`` of 6 exact rationals over
  the basis (omega_p1, omega_p2, omega_p3, omega_p4, omega_plus,
  omega_minus) and a pump-phase vector ``t`` of 4 rationals over
  (theta_p1..theta_p4),
* the coefficient is a polynomial in the formal grading symbols g'_+ and
  g'_- whose coefficients are complex-rational combinations of parameter
  symbols (omega, K, p, omega_plus, omega_minus, K_minus, g_plus, g_minus,
  omega_p1..omega_p4); occurrences of g_plus/g_minus count toward the
  grade, and grades above the configured order (default 4) are truncated
  at every multiplication.

All arithmetic is exact (Fractions); no floating point enters the
symbolic pipeline. The rotating-frame step shifts phase tags by the net
creation-annihilation counts; the rotating-wave filter keeps a term iff
its frequency vector is a rational multiple of the pump-constraint
direction (1, 1, -1, -1, 0, 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

N_MODES = 6
MODE_PLUS = 4
MODE_MINUS = 5
JPO_MODES = (0, 1, 2, 3)
S_SIGNS = (1, 1, -1, -1)

DEFAULT_G_ORDER = 4
DEFAULT_DEGREE_CAP = 8

GRADE_SYMBOLS = ("g_plus", "g_minus")
PARAM_SYMBOLS = (
    "omega",
    "K",
    "p",
    "omega_plus",
    "omega_minus",
    "K_minus",
    "g_plus",
    "g_minus",
    "omega_p1",
    "omega_p2",
    "omega_p3",
    "omega_p4",
)

Mono = tuple  # flat 12-tuple of ints
IDENTITY_MONO: Mono = (0,) * 12


class AlgebraError(Exception):
    """Base class for symbolic-engine errors."""


class DegreeOverflowError(AlgebraError):
    """A product exceeded the configured monomial degree cap."""


class InternalConsistencyError(AlgebraError):
    """The pipeline reached a state its invariants forbid."""


# ---------------------------------------------------------------------------
# Complex rationals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QC:
    """Exact complex-rational scalar."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __add__(self, other: "QC") -> "QC":
        return QC(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "QC") -> "QC":
        return QC(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "QC") -> "QC":
        return QC(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "QC":
        return QC(-self.re, -self.im)

    def conj(self) -> "QC":
        return QC(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def to_complex(self) -> complex:
        return float(self.re) + 1j * float(self.im)


QC_ZERO = QC()
QC_ONE = QC(Fraction(1))
QC_I = QC(Fraction(0), Fraction(1))


def qc(re=0, im=0) -> QC:
    return QC(Fraction(re), Fraction(im))


# ---------------------------------------------------------------------------
# Graded coefficients
# ---------------------------------------------------------------------------

CoeffKey = tuple  # (gp: int, gm: int, syms: tuple[str, ...] sorted)


def _key_grade(key: CoeffKey) -> int:
    gp, gm, syms = key
    return gp + gm + sum(1 for s in syms if s in GRADE_SYMBOLS)


class GradedCoefficient:
    """Polynomial in the grading symbols g'_+, g'_- with complex-rational
    parameter-symbol coefficients.

    ``terms`` maps ``(gp, gm, syms)`` to :class:`QC`, meaning
    ``QC * g'_+^gp * g'_-^gm * prod(syms)``. Grade = gp + gm + (number of
    g_plus/g_minus occurrences in syms).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "GradedCoefficient":
        return cls()

    @classmethod
    def number(cls, value) -> "GradedCoefficient":
        v = value if isinstance(value, QC) else QC(Fraction(value))
        return cls({(0, 0, ()): v})

    @classmethod
    def sym(cls, name: str, value=1) -> "GradedCoefficient":
        if name not in PARAM_SYMBOLS:
            raise AlgebraError(f"unknown parameter symbol {name!r}")
        v = value if isinstance(value, QC) else QC(Fraction(value))
        return cls({(0, 0, (name,)): v})

    @classmethod
    def g_power(cls, gp: int, gm: int, value=1) -> "GradedCoefficient":
        v = value if isinstance(value, QC) else QC(Fraction(value))
        return cls({(gp, gm, ()): v})

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "GradedCoefficient") -> "GradedCoefficient":
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, QC_ZERO) + v
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        res = GradedCoefficient.__new__(GradedCoefficient)
        res.terms = out
        return res

    def __sub__(self, other: "GradedCoefficient") -> "GradedCoefficient":
        return self + (-other)

    def __neg__(self) -> "GradedCoefficient":
        res = GradedCoefficient.__new__(GradedCoefficient)
        res.terms = {k: -v for k, v in self.terms.items()}
        return res

    def mul(self, other: "GradedCoefficient", g_order: int = DEFAULT_G_ORDER
            ) -> "GradedCoefficient":
        out: dict = {}
        for (gp1, gm1, s1), v1 in self.terms.items():
            for (gp2, gm2, s2), v2 in other.terms.items():
                key = (gp1 + gp2, gm1 + gm2, tuple(sorted(s1 + s2)))
                if _key_grade(key) > g_order:
                    continue
                s = out.get(key, QC_ZERO) + v1 * v2
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        res = GradedCoefficient.__new__(GradedCoefficient)
        res.terms = out
        return res

    def scale(self, value) -> "GradedCoefficient":
        v = value if isinstance(value, QC) else QC(Fraction(value))
        if v.is_zero():
            return GradedCoefficient.zero()
        res = GradedCoefficient.__new__(GradedCoefficient)
        res.terms = {k: c * v for k, c in self.terms.items()}
        return res

    def conjugate(self) -> "GradedCoefficient":
        """Complex conjugate (all symbols are real)."""
        res = GradedCoefficient.__new__(GradedCoefficient)
        res.terms = {k: v.conj() for k, v in self.terms.items()}
        return res

    def truncate(self, g_order: int) -> "GradedCoefficient":
        return GradedCoefficient(
            {k: v for k, v in self.terms.items() if _key_grade(k) <= g_order}
        )

    def max_grade(self) -> int:
        return max((_key_grade(k) for k in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, GradedCoefficient) and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for (gp, gm, syms), v in sorted(self.terms.items()):
            parts = []
            if v.im == 0:
                parts.append(str(v.re))
            elif v.re == 0:
                parts.append(f"{v.im}*i")
            else:
                parts.append(f"({v.re}{'+' if v.im > 0 else ''}{v.im}*i)")
            if gp:
                parts.append(f"gp^{gp}" if gp > 1 else "gp")
            if gm:
                parts.append(f"gm^{gm}" if gm > 1 else "gm")
            parts.extend(syms)
            bits.append("*".join(parts))
        return " + ".join(bits)

    def evaluate(self, gp: float, gm: float, values: dict[str, float]) -> complex:
        """Numeric evaluation with g'_+- and parameter substitutions."""
        total = 0.0 + 0.0j
        for (i, j, syms), v in self.terms.items():
            gfac = gp**i * gm**j
            if gfac == 0.0:
                continue
            term = v.to_complex() * gfac
            for s in syms:
                if s in ("g_plus", "g_minus"):
                    term *= values[s]
                else:
                    term *= values[s]
            total += term
        return total


# ---------------------------------------------------------------------------
# Phase tags
# ---------------------------------------------------------------------------

_F0 = (Fraction(0),) * 6
_T0 = (Fraction(0),) * 4


@dataclass(frozen=True)
class PhaseTag:
    """Rotating-frame bookkeeping: a term carries e^{i(f.w t + t.theta)}
    with f over (omega_p1..omega_p4, omega_plus, omega_minus) and t over
    (theta_p1..theta_p4)."""

    f: tuple = _F0
    t: tuple = _T0

    def __add__(self, other: "PhaseTag") -> "PhaseTag":
        return PhaseTag(
            tuple(a + b for a, b in zip(self.f, other.f)),
            tuple(a + b for a, b in zip(self.t, other.t)),
        )

    def __neg__(self) -> "PhaseTag":
        return PhaseTag(tuple(-a for a in self.f), tuple(-a for a in self.t))

    def is_stationary(self) -> bool:
        """True iff f is a rational multiple of (1, 1, -1, -1, 0, 0), the
        only direction the pump constraint annihilates."""
        f = self.f
        return (
            f[4] == 0
            and f[5] == 0
            and f[0] == f[1]
            and f[2] == f[3]
            and f[0] == -f[2]
        )


ZERO_TAG = PhaseTag()


def pump_tag(k: int, sign: int) -> PhaseTag:
    """Tag of e^{+-i(omega_pk t + theta_pk)} for JPO index k in 1..4."""
    f = [Fraction(0)] * 6
    t = [Fraction(0)] * 4
    f[k - 1] = Fraction(sign)
    t[k - 1] = Fraction(sign)
    return PhaseTag(tuple(f), tuple(t))


# ---------------------------------------------------------------------------
# Operator expressions
# ---------------------------------------------------------------------------


def _mono_degree(mono: Mono) -> int:
    return sum(mono)


def monomial(pairs: dict[int, tuple[int, int]]) -> Mono:
    """Build a monomial from {mode: (creation_power, annihilation_power)}."""
    m = [0] * 12
    for mode, (c, q) in pairs.items():
        m[2 * mode] = c
        m[2 * mode + 1] = q
    return tuple(m)


def mono_str(mono: Mono) -> str:
    names = ("a1", "a2", "a3", "a4", "a+", "a-")
    bits = []
    for mode in range(N_MODES):
        c, q = mono[2 * mode], mono[2 * mode + 1]
        if c:
            bits.append(f"{names[mode]}†" + (f"^{c}" if c > 1 else ""))
        if q:
            bits.append(f"{names[mode]}" + (f"^{q}" if q > 1 else ""))
    return " ".join(bits) if bits else "1"


class OperatorExpr:
    """Sum of (monomial, phase-tag) terms with graded coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {
            k: v for k, v in (terms or {}).items() if not v.is_zero()
        }

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "OperatorExpr":
        return cls()

    @classmethod
    def from_mono(cls, mono: Mono, coeff=None, tag: PhaseTag = ZERO_TAG
                  ) -> "OperatorExpr":
        if coeff is None:
            coeff = GradedCoefficient.number(1)
        elif not isinstance(coeff, GradedCoefficient):
            coeff = GradedCoefficient.number(coeff)
        return cls({(mono, tag): coeff})

    @classmethod
    def identity(cls, coeff=None) -> "OperatorExpr":
        return cls.from_mono(IDENTITY_MONO, coeff)

    @classmethod
    def creation(cls, mode: int) -> "OperatorExpr":
        return cls.from_mono(monomial({mode: (1, 0)}))

    @classmethod
    def annihilation(cls, mode: int) -> "OperatorExpr":
        return cls.from_mono(monomial({mode: (0, 1)}))

    @classmethod
    def number_op(cls, mode: int) -> "OperatorExpr":
        return cls.from_mono(monomial({mode: (1, 1)}))

    # -- linear structure ---------------------------------------------------

    def __add__(self, other: "OperatorExpr") -> "OperatorExpr":
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        res = OperatorExpr.__new__(OperatorExpr)
        res.terms = out
        return res

    def __sub__(self, other: "OperatorExpr") -> "OperatorExpr":
        return self + (-other)

    def __neg__(self) -> "OperatorExpr":
        res = OperatorExpr.__new__(OperatorExpr)
        res.terms = {k: -v for k, v in self.terms.items()}
        return res

    def scale(self, value) -> "OperatorExpr":
        """Multiply by a scalar (number, QC or GradedCoefficient)."""
        if isinstance(value, GradedCoefficient):
            out = {}
            for k, v in self.terms.items():
                s = v.mul(value)
                if not s.is_zero():
                    out[k] = s
            return OperatorExpr(out)
        res = OperatorExpr.__new__(OperatorExpr)
        res.terms = {
            k: v.scale(value) for k, v in self.terms.items()
        }
        res.terms = {k: v for k, v in res.terms.items() if not v.is_zero()}
        return res

    # -- products -----------------------------------------------------------

    def multiply(
        self,
        other: "OperatorExpr",
        g_order: int = DEFAULT_G_ORDER,
        degree_cap: int = DEFAULT_DEGREE_CAP,
        on_overflow: str = "error",
    ) -> "OperatorExpr":
        """Normal-ordered product, phase tags added component-wise,
        coefficients g'-truncated at every term.

        ``on_overflow`` is "error" (raise :class:`DegreeOverflowError`) or
        "drop" (silently discard monomials beyond ``degree_cap``).
        """
        out: dict = {}
        for (m1, tag1), c1 in self.terms.items():
            for (m2, tag2), c2 in other.terms.items():
                c = c1.mul(c2, g_order)
                if c.is_zero():
                    continue
                tag = tag1 + tag2
                for factor, mono in _mono_product(m1, m2):
                    if _mono_degree(mono) > degree_cap:
                        if on_overflow == "drop":
                            continue
                        raise DegreeOverflowError(
                            f"product degree {_mono_degree(mono)} exceeds "
                            f"cap {degree_cap} for {mono_str(mono)}"
                        )
                    key = (mono, tag)
                    add = c.scale(factor)
                    s = out.get(key)
                    s = add if s is None else s + add
                    if s.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = s
        res = OperatorExpr.__new__(OperatorExpr)
        res.terms = out
        return res

    def dagger(self) -> "OperatorExpr":
        """Hermitian conjugate: swap creation/annihilation powers, negate
        phase tags, conjugate coefficients."""
        out = {}
        for (mono, tag), c in self.terms.items():
            swapped = []
            for mode in range(N_MODES):
                swapped.extend((mono[2 * mode + 1], mono[2 * mode]))
            out[(tuple(swapped), -tag)] = c.conjugate()
        return OperatorExpr(out)

    def is_hermitian(self) -> bool:
        return self.dagger().terms == self.terms

    # -- frame and filtering -------------------------------------------------

    def rotate_frame(self) -> "OperatorExpr":
        """Apply the rotating-frame substitution: each JPO creation
        operator picks up e^{+i(omega_pk t + theta_pk)/2} (annihilation
        the conjugate), each coupler +-/minus creation picks up
        e^{+i omega_+- t}."""
        out = {}
        for (mono, tag), c in self.terms.items():
            f = list(tag.f)
            t = list(tag.t)
            for k in JPO_MODES:
                net = mono[2 * k] - mono[2 * k + 1]
                if net:
                    f[k] += Fraction(net, 2)
                    t[k] += Fraction(net, 2)
            f[4] += Fraction(mono[2 * MODE_PLUS] - mono[2 * MODE_PLUS + 1])
            f[5] += Fraction(mono[2 * MODE_MINUS] - mono[2 * MODE_MINUS + 1])
            key = (mono, PhaseTag(tuple(f), tuple(t)))
            s = out.get(key)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return OperatorExpr(out)

    def rwa_filter(self) -> "OperatorExpr":
        """Keep only terms whose frequency vector is stationary under the
        pump constraint."""
        return OperatorExpr(
            {k: v for k, v in self.terms.items() if k[1].is_stationary()}
        )

    def extract(self, mono: Mono, tag: PhaseTag = ZERO_TAG) -> GradedCoefficient:
        """Coefficient of one (monomial, tag) key; zero when absent."""
        return self.terms.get((mono, tag), GradedCoefficient.zero())

    def truncate_grade(self, g_order: int) -> "OperatorExpr":
        out = {}
        for k, v in self.terms.items():
            t = v.truncate(g_order)
            if not t.is_zero():
                out[k] = t
        return OperatorExpr(out)

    def grade_slice(self, grade: int) -> "OperatorExpr":
        """Terms whose coefficient keys have exactly the given grade."""
        out = {}
        for k, v in self.terms.items():
            kept = GradedCoefficient(
                {ck: cv for ck, cv in v.terms.items() if _key_grade(ck) == grade}
            )
            if not kept.is_zero():
                out[k] = kept
        return OperatorExpr(out)

    def drop_identity(self) -> "OperatorExpr":
        """Remove pure-identity (constant) terms."""
        return OperatorExpr(
            {k: v for k, v in self.terms.items() if k[0] != IDENTITY_MONO}
        )

    def substitute_symbol(
        self,
        name: str,
        gp_shift: int,
        gm_shift: int,
        multiplier: "GradedCoefficient",
        g_order: int = DEFAULT_G_ORDER,
    ) -> "OperatorExpr":
        """Replace every occurrence of parameter symbol ``name`` with
        g'_+^gp_shift g'_-^gm_shift * multiplier (applied once per
        occurrence)."""
        out = OperatorExpr.zero()
        for key, coeff in self.terms.items():
            new_coeff = GradedCoefficient.zero()
            for (gp, gm, syms), v in coeff.terms.items():
                count = sum(1 for s in syms if s == name)
                if count == 0:
                    new_coeff = new_coeff + GradedCoefficient({(gp, gm, syms): v})
                    continue
                rest = tuple(s for s in syms if s != name)
                base = GradedCoefficient(
                    {(gp + count * gp_shift, gm + count * gm_shift, rest): v}
                )
                for _ in range(count):
                    base = base.mul(multiplier, g_order)
                new_coeff = new_coeff + base
            new_coeff = new_coeff.truncate(g_order)
            if not new_coeff.is_zero():
                out = out + OperatorExpr({key: new_coeff})
        return out

    # -- misc ----------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, OperatorExpr) and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def max_degree(self) -> int:
        return max((_mono_degree(m) for m, _ in self.terms), default=0)

    def __repr__(self) -> str:
        if not self.terms:
            return "OperatorExpr(0)"
        bits = []
        ordered = sorted(
            self.terms.items(),
            key=lambda kv: (kv[0][0], kv[0][1].f, kv[0][1].t),
        )
        for (mono, tag), c in ordered[:12]:
            tagbit = ""
            if tag != ZERO_TAG:
                tagbit = f" @f={tuple(str(x) for x in tag.f)},t={tuple(str(x) for x in tag.t)}"
            bits.append(f"({c!r}) {mono_str(mono)}{tagbit}")
        more = "" if len(self.terms) <= 12 else f" ... +{len(self.terms) - 12} terms"
        return "OperatorExpr[" + "; ".join(bits) + more + "]"


@lru_cache(maxsize=None)
def _mono_product(m1: Mono, m2: Mono) -> tuple:
    """Normal-ordered expansion of the product of two monomials.

    Per mode, a^q a†^p = sum_j j! C(q,j) C(p,j) a†^{p-j} a^{q-j}; modes
    are independent so contractions multiply. Returns (integer factor,
    monomial) pairs. Cached: the derivation pipeline hits the same
    monomial pairs many times across commutator levels.
    """
    results = [(1, [0] * 12)]
    for mode in range(N_MODES):
        p1, q1 = m1[2 * mode], m1[2 * mode + 1]
        p2, q2 = m2[2 * mode], m2[2 * mode + 1]
        jmax = min(q1, p2)
        new = []
        for j in range(jmax + 1):
            factor = factorial(j) * comb(q1, j) * comb(p2, j)
            for f0, mono in results:
                m = list(mono)
                m[2 * mode] = p1 + p2 - j
                m[2 * mode + 1] = q1 + q2 - j
                new.append((f0 * factor, m))
        results = new
    return tuple((f, tuple(m)) for f, m in results)


# ---------------------------------------------------------------------------
# Commutators and BCH conjugation
# ---------------------------------------------------------------------------


def multiply(a: OperatorExpr, b: OperatorExpr, **kw) -> OperatorExpr:
    return a.multiply(b, **kw)


def commutator(a: OperatorExpr, b: OperatorExpr, **kw) -> OperatorExpr:
    """[a, b] = ab - ba in canonical normal-ordered form."""
    return a.multiply(b, **kw) - b.multiply(a, **kw)


def bch_conjugate(
    S: OperatorExpr,
    A: OperatorExpr,
    order: int,
    g_order: int = DEFAULT_G_ORDER,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> OperatorExpr:
    """e^{-S} A e^{S} = sum_{m<=order} (1/m!) ad-power terms, computed as
    A + [A,S] + [[A,S],S]/2 + ... with grade truncation at every step."""
    result = A
    term = A
    for m in range(1, order + 1):
        term = commutator(term, S, g_order=g_order, degree_cap=degree_cap)
        term = term.scale(Fraction(1, m))
        if not term.terms:
            break
        result = result + term
    return result


# ---------------------------------------------------------------------------
# Canonical text serialization (golden-file regression format)
# ---------------------------------------------------------------------------


def to_text(expr: OperatorExpr) -> str:
    """Canonical text: one line per (monomial, tag, coefficient-key),
    sorted; exact rationals as p/q. Empty expression serializes to the
    single line '(empty)'."""
    rows = []
    for (mono, tag), coeff in expr.terms.items():
        for (gp, gm, syms), v in coeff.terms.items():
            rows.append((mono, tag.f, tag.t, gp, gm, syms, v.re, v.im))
    rows.sort()
    lines = []
    for mono, f, t, gp, gm, syms, re, im in rows:
        lines.append(
            " | ".join(
                [
                    " ".join(str(x) for x in mono),
                    " ".join(str(x) for x in f),
                    " ".join(str(x) for x in t),
                    f"{gp} {gm}",
                    ",".join(syms) if syms else "-",
                    str(re),
                    str(im),
                ]
            )
        )
    return "\n".join(lines) + "\n" if lines else "(empty)\n"


def from_text(text: str) -> OperatorExpr:
    """Inverse of :func:`to_text`."""
    terms: dict = {}
    for line in text.strip().splitlines():
        line = line.strip()
        if not line or line == "(empty)" or line.startswith("#"):
            continue
        mono_s, f_s, t_s, g_s, syms_s, re_s, im_s = [
            p.strip() for p in line.split("|")
        ]
        mono = tuple(int(x) for x in mono_s.split())
        f = tuple(Fraction(x) for x in f_s.split())
        t = tuple(Fraction(x) for x in t_s.split())
        gp, gm = (int(x) for x in g_s.split())
        syms = () if syms_s == "-" else tuple(syms_s.split(","))
        key = (mono, PhaseTag(f, t))
        coeff = terms.setdefault(key, GradedCoefficient.zero())
        terms[key] = coeff + GradedCoefficient(
            {(gp, gm, syms): QC(Fraction(re_s), Fraction(im_s))}
        )
    return OperatorExpr(terms)

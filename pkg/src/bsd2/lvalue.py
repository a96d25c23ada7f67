"""Real periods and central L-values.

Periods come from AGM iteration on the roots of the 2-division cubic; the
central value uses the standard exponentially convergent sum
L(E,1) = sum a_n/n (exp(-2 pi n t / sqrt(C)) + eps exp(-2 pi n /(t sqrt(C)))),
valid for every t > 0, which also pins the functional-equation sign
numerically.  Exact rationals are recovered by certified continued-fraction
reconstruction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp, mpf

from .arith import rational_reconstruct, val2
from .config import DEFAULT_CONFIG
from .counting import an_coefficients
from .curves import CurveModel, minimal_model
from .errors import NoRationalInRange, SignMinusOne
from .tate import conductor, tamagawa_product


@dataclass(frozen=True)
class PeriodData:
    omega_plus: mpf
    omega_minus: mpf
    real_components: int
    omega_bsd: mpf  # omega_plus, doubled when E(R) has two components


@dataclass(frozen=True)
class RationalLValue:
    value: Fraction
    ord2: float  # integer, or +inf when the value is 0
    numeric_estimate: float
    tolerance: float
    terms_used: int

    def __repr__(self):
        return f"RationalLValue({self.value}, ord2={self.ord2})"


def periods(E: CurveModel, config=DEFAULT_CONFIG) -> PeriodData:
    """Least positive real period (and imaginary counterpart) of a Neron
    differential on the minimal model, to the configured precision."""
    Emin = minimal_model(E)[0]
    disc = Emin.discriminant
    with mp.workprec(config.precision_bits + 64):
        roots = mpmath.polyroots(
            [4, Emin.b2, 2 * Emin.b4, Emin.b6], extraprec=120, maxsteps=200
        )
        if disc > 0:
            # rectangular lattice [omega+, i omega-]
            e1, e2, e3 = sorted((r.real for r in roots), reverse=True)
            om_p = mpmath.pi / mpmath.agm(mpmath.sqrt(e1 - e3), mpmath.sqrt(e1 - e2))
            om_m = mpmath.pi / mpmath.agm(mpmath.sqrt(e1 - e3), mpmath.sqrt(e2 - e3))
            components = 2
        else:
            # lattice [omega+, (omega+ + i omega-)/2]; one real root e1,
            # complex pair beta +- i gamma, z = |e1 - e2|
            e1 = next(r.real for r in roots if abs(r.imag) < mpf(2) ** (-20))
            cplx = next(r for r in roots if r.imag > mpf(2) ** (-20))
            beta, gamma = cplx.real, abs(cplx.imag)
            c = e1 - beta
            z = mpmath.sqrt(c * c + gamma**2)
            om_p = mpmath.pi / mpmath.agm(mpmath.sqrt(z), mpmath.sqrt((z + c) / 2))
            om_m = mpmath.pi / mpmath.agm(mpmath.sqrt(z), mpmath.sqrt((z - c) / 2))
            components = 1
        om_p = +om_p
        om_m = +om_m
        return PeriodData(om_p, om_m, components, +(components * om_p))


def lattice_basis(E: CurveModel, config=DEFAULT_CONFIG):
    """Z-basis (w1, w2) of the period lattice, w2 in the upper half plane."""
    pd = periods(E, config)
    with mp.workprec(config.precision_bits + 64):
        if pd.real_components == 2:
            return pd.omega_plus, mpmath.mpc(0, 1) * pd.omega_minus
        return pd.omega_plus, (pd.omega_plus + mpmath.mpc(0, 1) * pd.omega_minus) / 2


# ---------------------------------------------------------------------------
# L-series machinery
# ---------------------------------------------------------------------------


def _truncation_for(C: int, delta: float, target: float) -> int:
    """T with certified tail 2 x^{T+1}/(1-x) <= target for x = exp(-2 pi delta/sqrt C).

    The bound uses |a_n| <= d(n) sqrt(n) < n for n > 1260, so T is floored
    at 2600.
    """
    lam = 2 * math.pi * delta / math.sqrt(C)
    one_minus_x = -math.expm1(-lam)
    T = int(math.log(2.0 / (one_minus_x * target)) / lam) + 8
    return max(T, 2600)


def _partial_sum(an, C: int, delta, T: int) -> mpf:
    """sum_{n<=T} a_n/n x^n at the working precision."""
    x = mpmath.exp(-2 * mpmath.pi * delta / mpmath.sqrt(C))
    acc = mpf(0)
    xn = mpf(1)
    for n in range(1, T + 1):
        xn *= x
        a = int(an[n])
        if a:
            acc += mpf(a) * xn / n
    return acc


def _tail_bound(C: int, delta, T: int) -> mpf:
    x = mpmath.exp(-2 * mpmath.pi * delta / mpmath.sqrt(C))
    return 2 * x ** (T + 1) / (1 - x)


@dataclass(frozen=True)
class LValueNumeric:
    value: mpf
    abs_error: mpf
    terms_used: int
    sign: int


def l_value_at_1(
    E: CurveModel,
    target_abs_error: float = 1e-20,
    config=DEFAULT_CONFIG,
    an_provider=None,
    skip_sign_check: bool = False,
) -> LValueNumeric:
    """Central value L(E, 1), certified to the requested absolute error.

    The functional-equation sign is detected numerically: the completed sum
    with the correct sign is independent of the splitting parameter t, the
    wrong one is not.  SignMinusOne is raised when the minus branch is the
    consistent one (the central value then vanishes).
    """
    Emin = minimal_model(E)[0]
    C = conductor(Emin)
    if an_provider is None:
        an_provider = lambda bound: an_coefficients(Emin, bound, config)

    with mp.workprec(config.precision_bits + 32):
        if not skip_sign_check:
            _assert_sign_plus(Emin, C, config, an_provider)
        T = _truncation_for(C, 1.0, target_abs_error / 2)
        an = an_provider(T)
        val = 2 * _partial_sum(an, C, 1, T)
        err = 2 * _tail_bound(C, 1, T)
        if not err <= mpf(target_abs_error):
            # pathological rounding in the float estimate; extend once
            T = int(1.2 * T) + 16
            an = an_provider(T)
            val = 2 * _partial_sum(an, C, 1, T)
            err = 2 * _tail_bound(C, 1, T)
        return LValueNumeric(+val, +err, T, +1)


_SIGN_TARGET = 1e-6


def _assert_sign_plus(Emin, C, config, an_provider) -> None:
    delta = 1.2
    s = _SIGN_TARGET
    T1 = _truncation_for(C, 1.0, s)
    Td = _truncation_for(C, delta, s)
    Ti = _truncation_for(C, 1 / delta, s)
    an = an_provider(max(T1, Td, Ti))
    F1 = _partial_sum(an, C, 1, T1)
    Fd = _partial_sum(an, C, mpf(delta), Td)
    Fi = _partial_sum(an, C, 1 / mpf(delta), Ti)
    plus_consistent = abs(2 * F1 - (Fd + Fi)) <= 6 * s
    minus_consistent = abs(Fd - Fi) <= 6 * s
    if plus_consistent and not minus_consistent:
        return
    if minus_consistent and not plus_consistent:
        raise SignMinusOne(f"functional equation sign is -1 for {Emin.ainvs()}")
    if plus_consistent and minus_consistent:
        raise SignMinusOne(
            f"central value numerically indistinguishable from 0 for {Emin.ainvs()}"
        )
    raise ArithmeticError("sign detection inconsistent; raise precision")


def default_denominator_bound(E: CurveModel) -> int:
    from .torsion import torsion_subgroup

    Emin = minimal_model(E)[0]
    tors = torsion_subgroup(Emin).order
    return tors * tors * tamagawa_product(Emin) * 2**10


def algebraic_l_value(
    E: CurveModel,
    denominator_bound: int | None = None,
    config=DEFAULT_CONFIG,
    an_provider=None,
    period_data: PeriodData | None = None,
) -> RationalLValue:
    """Exact L(E,1)/Omega_E with its 2-adic valuation.

    Omega_E is the real period, doubled when E(R) is disconnected.  The
    rational value is certified by the uniqueness window of continued
    fraction reconstruction; on failure the precision is raised once.
    """
    Emin = minimal_model(E)[0]
    if denominator_bound is None:
        denominator_bound = default_denominator_bound(Emin)
    pd = period_data if period_data is not None else periods(Emin, config)
    tol = Fraction(1, 4 * denominator_bound * denominator_bound)

    for attempt in range(2):
        cfg = config if attempt == 0 else config.replace(
            precision_bits=config.precision_bits + 64
        )
        with mp.workprec(cfg.precision_bits + 32):
            omega = pd.omega_bsd
            target = float(tol) / 4 * min(1.0, float(omega))
            lnum = l_value_at_1(Emin, target, cfg, an_provider)
            ratio = lnum.value / omega
            # total error on the ratio: series tail plus negligible period error
            ratio_err = float(lnum.abs_error / omega) + math.ldexp(
                abs(float(ratio)), -(cfg.precision_bits - 8)
            )
        if ratio_err > float(tol):
            continue
        try:
            value = rational_reconstruct(ratio, denominator_bound, tol)
        except NoRationalInRange:
            if attempt == 1:
                raise
            continue
        return RationalLValue(
            value=value,
            ord2=val2(value),
            numeric_estimate=float(ratio),
            tolerance=float(tol),
            terms_used=lnum.terms_used,
        )
    raise NoRationalInRange("reconstruction failed after precision retry")

"""Rational torsion subgroups.

Strategy: an upper bound for the order from injectivity of reduction at good
odd primes (gcd of several point counts), explicit generators from the
2-division cubic, small division polynomials, and point halving/tripling
preimages, then a certificate that the group found matches the bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import divisors, primes_up_to
from .counting import ap_table
from .curves import CurveModel, minimal_model, two_division_cubic_roots
from .points import ec_add, ec_mul, on_curve, point_order

MAZUR_ORDERS = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 16}


@dataclass(frozen=True)
class TorsionGroup:
    """Invariant factors (d1, d2) with d1 | d2; (1,) is the trivial group."""

    structure: tuple[int, ...]
    points: tuple = ()

    @property
    def order(self) -> int:
        return math.prod(self.structure)

    def __repr__(self):
        if self.structure == (1,):
            return "TorsionGroup(trivial)"
        return "TorsionGroup(" + " x ".join(f"Z/{d}" for d in self.structure) + ")"


def _reduction_bound(E: CurveModel, prime_budget: int = 40) -> int:
    """gcd of #E(F_q) over good odd q; the torsion order divides this."""
    disc = E.discriminant
    table = ap_table(E)
    bound = 0
    used = 0
    for q in primes_up_to(3000):
        if q == 2 or disc % q == 0:
            continue
        bound = math.gcd(bound, q + 1 - table[q])
        used += 1
        if bound == 1 or used >= prime_budget:
            break
        if used >= 10 and bound in MAZUR_ORDERS:
            break
    return bound


def _y_coords(E: CurveModel, x: Fraction) -> list[Fraction]:
    """Rational y with (x, y) on E."""
    a1, _, a3, _, _ = E.ainvs()
    b = a1 * x + a3
    disc = b * b + 4 * E.rhs(x)
    if disc < 0:
        return []
    num, den = disc.numerator, disc.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        return []
    r = Fraction(rn, rd)
    return sorted({(-b + r) / 2, (-b - r) / 2})


# ---------------------------------------------------------------------------
# division polynomials (univariate pieces; coefficients low -> high)
# ---------------------------------------------------------------------------


def _psi2_squared(E: CurveModel) -> list[int]:
    return [E.b6, 2 * E.b4, E.b2, 4]


def _f3(E: CurveModel) -> list[int]:
    return [E.b8, 3 * E.b6, 3 * E.b4, E.b2, 3]


def _f4(E: CurveModel) -> list[int]:
    b2, b4, b6, b8 = E.b2, E.b4, E.b6, E.b8
    return [
        b4 * b8 - b6 * b6,
        b2 * b8 - b4 * b6,
        10 * b8,
        10 * b6,
        5 * b4,
        b2,
        2,
    ]


def _division_poly(E: CurveModel, ell: int) -> list[int]:
    """psi_ell as a univariate polynomial, for odd ell in {3, 5, 7}."""
    if ell == 3:
        return _f3(E)
    F, f3, f4 = _psi2_squared(E), _f3(E), _f4(E)
    if ell == 5:
        return _poly_sub(_poly_mul(_poly_mul(F, F), f4), _poly_mul(_poly_mul(f3, f3), f3))
    if ell == 7:
        f5 = _division_poly(E, 5)
        lhs = _poly_mul(f5, _poly_mul(_poly_mul(f3, f3), f3))
        rhs = _poly_mul(_poly_mul(F, F), _poly_mul(_poly_mul(f4, f4), f4))
        return _poly_sub(lhs, rhs)
    raise ValueError(f"unsupported division polynomial index {ell}")


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def _rational_roots(coeffs) -> list[Fraction]:
    """Rational roots of an integer polynomial (coeffs low -> high)."""
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return []
    roots = set()
    while coeffs[0] == 0:
        roots.add(Fraction(0))
        coeffs = coeffs[1:]
    lead, const = coeffs[-1], coeffs[0]

    def ev(x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    for qd in divisors(lead):
        for pn in divisors(const):
            for x in (Fraction(pn, qd), Fraction(-pn, qd)):
                if ev(x) == 0:
                    roots.add(x)
    return sorted(roots)


def _points_of_x(E: CurveModel, xs) -> list:
    return [(x, y) for x in xs for y in _y_coords(E, x)]


def _clear_denominators(coeffs) -> list[int]:
    lcm = 1
    for c in coeffs:
        c = Fraction(c)
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return [int(Fraction(c) * lcm) for c in coeffs]


def _halve_points(E: CurveModel, Q) -> list:
    """All rational P with 2P = Q, via x(2P) = x_Q."""
    b2, b4, b6, b8 = E.b2, E.b4, E.b6, E.b8
    xq = Fraction(Q[0])
    quart = [
        -b8 - xq * b6,
        -2 * b6 - 2 * xq * b4,
        -b4 - xq * b2,
        -4 * xq,
        Fraction(1),
    ]
    out = []
    for x in _rational_roots(_clear_denominators(quart)):
        for y in _y_coords(E, x):
            P = (x, y)
            if ec_mul(2, P, E.ainvs()) == Q:
                out.append(P)
    return sorted(out)


def _triple_preimages(E: CurveModel, Q) -> list:
    """All rational P with 3P = Q, via x(3P) = (x f3^2 - F f4)/f3^2 = x_Q."""
    F, f3, f4 = _psi2_squared(E), _f3(E), _f4(E)
    xq = Fraction(Q[0])
    f3sq = _poly_mul(f3, f3)
    num = _poly_sub(_poly_mul([0, 1], f3sq), _poly_mul(F, f4))
    eqn = _poly_sub(num, [xq * c for c in f3sq])
    out = []
    for x in _rational_roots(_clear_denominators(eqn)):
        for y in _y_coords(E, x):
            P = (x, y)
            if ec_mul(3, P, E.ainvs()) == Q:
                out.append(P)
    return sorted(out)


def _subgroup_closure(E: CurveModel, gens) -> set:
    ain = E.ainvs()
    group = {None}
    frontier = [None]
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = ec_add(cur, g, ain)
            if nxt not in group:
                group.add(nxt)
                frontier.append(nxt)
                if len(group) > 32:
                    raise ArithmeticError("torsion closure exceeded the Mazur bound")
    return group


def torsion_subgroup(E: CurveModel) -> TorsionGroup:
    """Certified rational torsion subgroup.

    Generated by explicitly found points and certified against the reduction
    bound at good odd primes; a mismatch raises rather than guessing.
    """
    Emin = minimal_model(E)[0]
    ain = Emin.ainvs()
    bound = _reduction_bound(Emin)

    gens = []
    two_tors = _points_of_x(Emin, two_division_cubic_roots(Emin))
    gens.extend(two_tors)
    for T in list(two_tors):
        Q, k = T, 2
        while bound % (2 * k) == 0 and k <= 8:
            halves = _halve_points(Emin, Q)
            if not halves:
                break
            Q = halves[0]
            gens.append(Q)
            k *= 2
    for ell in (3, 5, 7):
        if bound % ell == 0:
            xs = _rational_roots(_division_poly(Emin, ell))
            pts = [P for P in _points_of_x(Emin, xs) if point_order(P, ain, ell) == ell]
            gens.extend(pts)
            if pts and ell == 3 and bound % 9 == 0:
                for Q in list(pts):
                    gens.extend(_triple_preimages(Emin, Q))

    gens = [P for P in gens if on_curve(P, ain)]
    group = _subgroup_closure(Emin, gens)
    order = len(group)

    if order != bound:
        bound = _reduction_bound(Emin, prime_budget=300)
        if order != bound:
            raise ArithmeticError(
                f"torsion certification failed: found order {order}, bound {bound}"
            )

    if order == 1:
        return TorsionGroup((1,), ())
    d2 = max(point_order(P, ain) for P in group if P is not None)
    d1 = order // d2
    structure = (d2,) if d1 == 1 else (d1, d2)
    pts = tuple(sorted(P for P in group if P is not None))
    return TorsionGroup(structure, pts)

"""Elliptic curve models over Q.

Integral Weierstrass quintuples with their standard invariants, change of
variables, global minimal models (Laska-Kraus-Connell), quadratic twists,
the curve y^2 = x^3 + Ax^2 + Bx attached to a rational 2-torsion point, the
degree-2 isogenous curve, and 2-division fields.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import divisors, factorint, squarefree_factor, valp
from .errors import Degree6Field, NoRationalTwoTorsion, SingularCurve


@dataclass(frozen=True, order=True)
class CurveModel:
    """Integral Weierstrass model [a1, a2, a3, a4, a6] with nonzero discriminant."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            v = getattr(self, name)
            if not isinstance(v, int):
                raise TypeError(f"{name} must be an integer, got {type(v).__name__}")
        if self.discriminant == 0:
            raise SingularCurve(f"singular model {self.ainvs()}")

    def ainvs(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b2(self) -> int:
        return self.a1 * self.a1 + 4 * self.a2

    @property
    def b4(self) -> int:
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self) -> int:
        return self.a3 * self.a3 + 4 * self.a6

    @property
    def b8(self) -> int:
        return (
            self.a1 * self.a1 * self.a6
            + 4 * self.a2 * self.a6
            - self.a1 * self.a3 * self.a4
            + self.a2 * self.a3 * self.a3
            - self.a4 * self.a4
        )

    @property
    def c4(self) -> int:
        return self.b2 * self.b2 - 24 * self.b4

    @property
    def c6(self) -> int:
        return -self.b2**3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def j_invariant(self) -> Fraction:
        return Fraction(self.c4**3, self.discriminant)

    def rhs(self, x: Fraction) -> Fraction:
        """x^3 + a2 x^2 + a4 x + a6."""
        return ((x + self.a2) * x + self.a4) * x + self.a6

    def __repr__(self):
        return f"CurveModel{self.ainvs()}"


def transform(E: CurveModel, u, r, s, t) -> CurveModel:
    """Change of variables x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.

    The result must again be integral; raises if it is not.
    """
    u, r, s, t = Fraction(u), Fraction(r), Fraction(s), Fraction(t)
    a1, a2, a3, a4, a6 = E.ainvs()
    na1 = (a1 + 2 * s) / u
    na2 = (a2 - s * a1 + 3 * r - s * s) / u**2
    na3 = (a3 + r * a1 + 2 * t) / u**3
    na4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u**4
    na6 = (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1) / u**6
    coeffs = (na1, na2, na3, na4, na6)
    if any(c.denominator != 1 for c in coeffs):
        raise ValueError(f"transform (u={u}, r={r}, s={s}, t={t}) is not integral")
    return CurveModel(*(int(c) for c in coeffs))


def transformation_between(E: CurveModel, F: CurveModel) -> tuple[Fraction, ...]:
    """The (u, r, s, t) with transform(E, u, r, s, t) == F, if one exists."""
    ratio = Fraction(E.discriminant, F.discriminant)
    u = _fraction_root(ratio, 12)
    if u is None:
        raise ValueError("curves are not isomorphic (discriminant ratio)")
    s = (u * F.a1 - E.a1) / 2
    r = (u**2 * F.a2 - E.a2 + s * E.a1 + s * s) / 3
    t = (u**3 * F.a3 - E.a3 - r * E.a1) / 2
    if transform(E, u, r, s, t) != F:
        raise ValueError("curves are not isomorphic")
    return (u, r, s, t)


def _fraction_root(x: Fraction, n: int) -> Fraction | None:
    """Positive exact n-th root of a positive rational, or None."""
    if x <= 0:
        return None
    pn = _int_root(x.numerator, n)
    pd = _int_root(x.denominator, n)
    if pn is None or pd is None:
        return None
    return Fraction(pn, pd)


def _int_root(m: int, n: int) -> int | None:
    r = round(m ** (1.0 / n))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**n == m:
            return cand
    return None


# ---------------------------------------------------------------------------
# minimal models (Laska-Kraus-Connell)
# ---------------------------------------------------------------------------


def kraus_conditions_hold(c4: int, c6: int) -> bool:
    """Whether (c4, c6) arise from some integral Weierstrass model."""
    disc_num = c4**3 - c6 * c6
    if disc_num % 1728 != 0 or disc_num == 0:
        return False
    # at 3: v3(c6) != 2
    if c6 % 9 == 0 and c6 % 27 != 0:
        return False
    # at 2: c6 = -1 mod 4, or 16 | c4 and c6 = 0, 8 mod 32
    if c6 % 4 == 3:
        return True
    return c4 % 16 == 0 and c6 % 32 in (0, 8)


def curve_from_c4c6(c4: int, c6: int) -> CurveModel:
    """The reduced integral model (a1, a3 in {0,1}, a2 in {-1,0,1}) with given c4, c6."""
    for a1 in (0, 1):
        for a2 in (-1, 0, 1):
            for a3 in (0, 1):
                b2 = a1 + 4 * a2  # a1^2 == a1
                num = b2 * b2 - c4
                if num % 24 != 0:
                    continue
                b4 = num // 24
                if (b4 - a1 * a3) % 2 != 0:
                    continue
                a4 = (b4 - a1 * a3) // 2
                num = -(b2**3) + 36 * b2 * b4 - c6
                if num % 216 != 0:
                    continue
                b6 = num // 216
                if (b6 - a3) % 4 != 0:  # a3^2 == a3
                    continue
                a6 = (b6 - a3) // 4
                E = CurveModel(a1, a2, a3, a4, a6)
                if E.c4 == c4 and E.c6 == c6:
                    return E
    raise ValueError(f"no integral model with c4={c4}, c6={c6}")


def _minimal_c4c6(c4: int, c6: int) -> tuple[int, int, int]:
    """Largest u with (c4/u^4, c6/u^6) still a valid curve pair; returns (c4', c6', u)."""
    if c4 == 0:
        support = factorint(c6)
    elif c6 == 0:
        support = factorint(c4)
    else:
        support = factorint(math.gcd(abs(c4), abs(c6)))
    u = 1
    for p in sorted(support):
        ep = min(
            valp(c4, p) // 4 if c4 else 10**9,
            valp(c6, p) // 6 if c6 else 10**9,
        )
        if p >= 5:
            e = ep
        else:
            e = ep
            while e > 0 and not kraus_conditions_hold(
                c4 // p ** (4 * e), c6 // p ** (6 * e)
            ):
                e -= 1
        c4 //= p ** (4 * e)
        c6 //= p ** (6 * e)
        u *= p**e
    return c4, c6, u


@lru_cache(maxsize=None)
def minimal_model(E: CurveModel) -> tuple[CurveModel, tuple[Fraction, ...]]:
    """Global minimal model and the transformation (u, r, s, t) from E to it."""
    c4m, c6m, _ = _minimal_c4c6(E.c4, E.c6)
    Emin = curve_from_c4c6(c4m, c6m)
    return Emin, transformation_between(E, Emin)


def is_minimal(E: CurveModel) -> bool:
    return minimal_model(E)[0] == E


def quadratic_twist(E: CurveModel, m: int) -> CurveModel:
    """Minimal model of the twist of E by Q(sqrt(m)); m squarefree, nonzero."""
    if m == 0:
        raise ValueError("twist by 0")
    s, _ = squarefree_factor(m)
    if s != m:
        raise ValueError(f"twist discriminant must be squarefree: {m}")
    if m == 1:
        return minimal_model(E)[0]
    c4, c6 = E.c4, E.c6
    raw = CurveModel(0, 0, 0, -27 * c4 * m * m, -54 * c6 * m**3)
    return minimal_model(raw)[0]


# ---------------------------------------------------------------------------
# rational 2-torsion
# ---------------------------------------------------------------------------


def two_division_cubic_roots(E: CurveModel) -> list[Fraction]:
    """Rational roots of 4x^3 + b2 x^2 + 2 b4 x + b6 (x-coords of 2-torsion).

    Computed through the monic integer cubic X^3 + b2 X^2 + 8 b4 X + 16 b6
    with X = 4x, whose rational roots are integers dividing the constant term.
    """
    b2, b4, b6 = E.b2, E.b4, E.b6
    const = 16 * b6

    def value(X: int) -> int:
        return ((X + b2) * X + 8 * b4) * X + const

    roots = set()
    if const == 0:
        roots.add(0)
        # remaining quadratic X^2 + b2 X + 8 b4
        disc = b2 * b2 - 32 * b4
        sq = math.isqrt(disc) if disc >= 0 else -1
        if disc >= 0 and sq * sq == disc:
            for X in ((-b2 + sq) // 2, (-b2 - sq) // 2):
                if value(X) == 0:
                    roots.add(X)
    else:
        for d in divisors(const):
            for X in (d, -d):
                if value(X) == 0:
                    roots.add(X)
    return sorted(Fraction(X, 4) for X in roots)


def two_division_field(E: CurveModel):
    """Q(E[2]) when it is at most quadratic.

    Returns the squarefree D with Q(E[2]) = Q(sqrt(D)) when the 2-division
    cubic has exactly one rational root, the marker "trivial" for full
    rational 2-torsion, and the marker "degree>2" for an irreducible cubic
    with square discriminant (cyclic cubic field).  An irreducible cubic
    with non-square discriminant raises Degree6Field.
    """
    roots = two_division_cubic_roots(E)
    b2, b4, b6 = E.b2, E.b4, E.b6
    if len(roots) == 3:
        return "trivial"
    if len(roots) == 1:
        X0 = int(roots[0] * 4)
        # X^3 + b2 X^2 + 8 b4 X + 16 b6 = (X - X0)(X^2 + beta X + gamma)
        beta = b2 + X0
        gamma = 8 * b4 + X0 * beta
        disc = beta * beta - 4 * gamma
        s, _ = squarefree_factor(disc)
        return s
    # irreducible cubic: disc of monic cubic X^3 + aX^2 + bX + c
    a, b, c = b2, 8 * b4, 16 * b6
    disc = 18 * a * b * c - 4 * a**3 * c + a * a * b * b - 4 * b**3 - 27 * c * c
    if disc > 0:
        sq = math.isqrt(disc)
        if sq * sq == disc:
            return "degree>2"
    raise Degree6Field(f"2-division field of {E.ainvs()} has degree 6")


@dataclass(frozen=True)
class TwoTorsionForm:
    """Model y^2 = x^3 + A x^2 + B x with the chosen 2-torsion point at (0,0)."""

    A: int
    B: int
    transform: tuple[Fraction, Fraction, Fraction, Fraction]
    source: CurveModel

    def __post_init__(self):
        if self.B * (self.A * self.A - 4 * self.B) == 0:
            raise SingularCurve("degenerate two-torsion form")

    def curve(self) -> CurveModel:
        return CurveModel(0, self.A, 0, self.B, 0)

    def dual_form_coefficients(self) -> tuple[int, int]:
        """(A', B') of the curve isogenous through the kernel {O, (0,0)}."""
        return (-2 * self.A, self.A * self.A - 4 * self.B)


def to_two_torsion_form(E: CurveModel) -> TwoTorsionForm:
    """Translate the smallest rational 2-torsion x-coordinate to the origin.

    Uses the unscaled coefficients when they are already integral, otherwise
    the standard u = 1/2 rescaling.
    """
    roots = two_division_cubic_roots(E)
    if not roots:
        raise NoRationalTwoTorsion(f"{E.ainvs()} has no rational 2-torsion")
    x0 = roots[0]
    b2, b4 = E.b2, E.b4
    A = 3 * x0 + Fraction(b2, 4)
    B = 3 * x0 * x0 + Fraction(b2, 2) * x0 + Fraction(b4, 2)
    if A.denominator == 1 and B.denominator == 1:
        u = Fraction(1)
    else:
        u, A, B = Fraction(1, 2), 4 * A, 16 * B
    form_curve = CurveModel(0, int(A), 0, int(B), 0)
    urst = transformation_between(E, form_curve)
    return TwoTorsionForm(int(A), int(B), urst, E)


def two_isogenous_curve(E: CurveModel) -> CurveModel:
    """Minimal model of E/<T> for the rational 2-torsion point T chosen as in
    to_two_torsion_form; the composed dual isogeny is multiplication by 2,
    which is spot-checked on finite-field samples.
    """
    form = to_two_torsion_form(E)
    A2, B2 = form.dual_form_coefficients()
    iso = minimal_model(CurveModel(0, A2, 0, B2, 0))[0]
    for p in (5, 7, 11, 13):
        if E.discriminant % p and B2 % p and (form.A**2 - 4 * form.B) % p:
            _check_velu_pair(form.A, form.B, p)
            break
    return iso


def _check_velu_pair(A: int, B: int, p: int) -> None:
    """Verify dual(phi(P)) = 2P on E_{A,B}(F_p) for a few sample points."""
    from .points import ec_add_mod, ec_double_mod

    found = 0
    for x in range(p):
        rhs = (x * x * x + A * x * x + B * x) % p
        y = next((y for y in range(p) if y * y % p == rhs), None)
        if y is None or x == 0:
            continue
        # phi(x, y) = (y^2/x^2, y(x^2 - B)/x^2) on y^2 = x^3 - 2A x^2 + (A^2-4B) x
        inv_x2 = pow(x * x, -1, p)
        X = y * y * inv_x2 % p
        Y = y * (x * x - B) * inv_x2 % p
        if X == 0:
            continue
        # dual: (X, Y) -> (Y^2/(4X^2), Y(X^2 - (A^2-4B))/(8X^2)), back on E_{A,B}
        inv_X2 = pow(4 * X * X, -1, p)
        xx = Y * Y * inv_X2 % p
        yy = Y * (X * X - (A * A - 4 * B)) % p * pow(8 * X * X, -1, p) % p
        dbl = ec_double_mod((x, y), (0, A, 0, B, 0), p)
        if dbl is None or (xx, yy) != dbl:
            raise ValueError("2-isogeny verification failed")
        found += 1
        if found >= 3:
            return

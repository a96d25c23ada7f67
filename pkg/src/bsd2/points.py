"""Affine group law on long Weierstrass models, over Q and over F_p.

Points are (x, y) tuples; None is the point at infinity.  The exact versions
use Fractions and are meant for torsion-scale work, not height machinery.
"""

from __future__ import annotations

from fractions import Fraction


def ec_negate(P, ainvs):
    if P is None:
        return None
    a1, _, a3, _, _ = ainvs
    x, y = P
    return (x, -y - a1 * x - a3)


def ec_add(P, Q, ainvs):
    """P + Q with exact rational coordinates."""
    if P is None:
        return Q
    if Q is None:
        return P
    a1, a2, a3, a4, a6 = ainvs
    x1, y1 = Fraction(P[0]), Fraction(P[1])
    x2, y2 = Fraction(Q[0]), Fraction(Q[1])
    if x1 == x2:
        if y1 + y2 + a1 * x2 + a3 == 0:
            return None
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = lam * (x1 - x3) - y1 - a1 * x3 - a3
    return (x3, y3)


def ec_mul(n: int, P, ainvs):
    if n < 0:
        return ec_mul(-n, ec_negate(P, ainvs), ainvs)
    R = None
    Q = P
    while n:
        if n & 1:
            R = ec_add(R, Q, ainvs)
        Q = ec_add(Q, Q, ainvs)
        n >>= 1
    return R


def on_curve(P, ainvs) -> bool:
    if P is None:
        return True
    a1, a2, a3, a4, a6 = ainvs
    x, y = P
    return y * y + a1 * x * y + a3 * y == ((x + a2) * x + a4) * x + a6


def point_order(P, ainvs, bound: int = 16) -> int | None:
    """Order of P if it is at most bound, else None."""
    R = P
    for n in range(1, bound + 1):
        if R is None:
            return n
        R = ec_add(R, P, ainvs)
    return None


# ---------------------------------------------------------------------------
# mod-p versions (p an odd prime not dividing the discriminant)
# ---------------------------------------------------------------------------


def ec_add_mod(P, Q, ainvs, p: int):
    if P is None:
        return Q
    if Q is None:
        return P
    a1, a2, a3, a4, a6 = (a % p for a in ainvs)
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2 and (y1 + y2 + a1 * x2 + a3) % p == 0:
        return None
    if x1 == x2:
        num = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) % p
        den = (2 * y1 + a1 * x1 + a3) % p
    else:
        num = (y2 - y1) % p
        den = (x2 - x1) % p
    lam = num * pow(den, -1, p) % p
    x3 = (lam * lam + a1 * lam - a2 - x1 - x2) % p
    y3 = (lam * (x1 - x3) - y1 - a1 * x3 - a3) % p
    return (x3, y3)


def ec_double_mod(P, ainvs, p: int):
    return ec_add_mod(P, P, ainvs, p)


def ec_mul_mod(n: int, P, ainvs, p: int):
    if n < 0:
        a1, _, a3, _, _ = ainvs
        P = (P[0], (-P[1] - a1 * P[0] - a3) % p)
        n = -n
    R = None
    Q = P
    while n:
        if n & 1:
            R = ec_add_mod(R, Q, ainvs, p)
        Q = ec_add_mod(Q, Q, ainvs, p)
        n >>= 1
    return R

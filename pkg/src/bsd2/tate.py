"""Tate's algorithm: Kodaira type, Tamagawa number, reduction kind, conductor.

Follows the classical step structure (Tate; see also Silverman, Advanced
Topics IV.9 and Cremona, Algorithms for Modular Elliptic Curves ch. 3).
All arithmetic is exact; the algorithm restarts after the non-minimality
step, so any integral model may be fed in.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arith import factorint, valp
from .curves import CurveModel, minimal_model, transform

GOOD = "good"
SPLIT = "split-multiplicative"
NONSPLIT = "nonsplit-multiplicative"
ADDITIVE = "additive"


@dataclass(frozen=True)
class ReductionData:
    prime: int
    kodaira_type: str
    tamagawa: int
    reduction_kind: str
    conductor_exponent: int
    discriminant_valuation: int

    def __repr__(self):
        return (
            f"ReductionData(p={self.prime}, {self.kodaira_type}, "
            f"c={self.tamagawa}, {self.reduction_kind}, f={self.conductor_exponent})"
        )


def _vp(n: int, p: int) -> int:
    if n == 0:
        return 10**9
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _quad_roots_mod(a: int, b: int, c: int, p: int) -> list[int]:
    """Roots of a x^2 + b x + c over F_p (a may vanish mod p)."""
    a, b, c = a % p, b % p, c % p
    if a == 0:
        if b == 0:
            return list(range(p)) if c == 0 else []
        return [(-c) * pow(b, -1, p) % p]
    if p == 2:
        return [x for x in (0, 1) if (a * x * x + b * x + c) % 2 == 0]
    disc = (b * b - 4 * a * c) % p
    if disc == 0:
        return [(-b) * pow(2 * a, -1, p) % p]
    if pow(disc, (p - 1) // 2, p) != 1:
        return []
    r = _sqrt_mod(disc, p)
    inv2a = pow(2 * a, -1, p)
    return sorted({(-b + r) * inv2a % p, (-b - r) * inv2a % p})


def _sqrt_mod(a: int, p: int) -> int:
    """Tonelli-Shanks; a must be a QR mod odd prime p."""
    a %= p
    if a == 0:
        return 0
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # write p-1 = q 2^s
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _cubic_root_multiplicities(b: int, c: int, d: int, p: int) -> tuple[int, list[int]]:
    """For T^3 + b T^2 + c T + d over F_p: (#distinct roots in F_pbar as
    3=separable / 2=one double / 1=triple, rational roots)."""
    b, c, d = b % p, c % p, d % p
    roots = [t for t in range(p) if ((t + b) * t % p + c) * t % p == (-d) % p]
    # discriminant of the cubic
    disc = (
        18 * b * c * d - 4 * b**3 * d + b * b * c * c - 4 * c**3 - 27 * d * d
    ) % p
    if disc != 0:
        return 3, roots
    # inseparable or repeated: distinguish double vs triple root
    # triple root r satisfies 3r = -b, 3r^2 = c, r^3 = -d
    triple = None
    if p == 3:
        # T^3 + bT^2 + cT + d; triple iff b = c = 0 mod 3 (then root = cube root of -d)
        if b % 3 == 0 and c % 3 == 0:
            triple = (-d) % 3  # cube root is identity on F_3
    else:
        inv3 = pow(3, -1, p)
        r = (-b) * inv3 % p
        if (3 * r * r - c) % p == 0 and (r**3 + d) % p == 0:
            triple = r
    if triple is not None:
        return 1, roots
    return 2, roots


def _tate_single(E: CurveModel, p: int) -> ReductionData:
    a1, a2, a3, a4, a6 = E.ainvs()

    while True:
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        n = _vp(disc, p)

        if n == 0:
            return ReductionData(p, "I0", 1, GOOD, 0, 0)

        # ---- move the singular point to (0, 0) ----
        if p == 2:
            r0 = t0 = None
            for x in range(2):
                for y in range(2):
                    fx = (a1 * y - 3 * x * x - 2 * a2 * x - a4) % 2
                    fy = (2 * y + a1 * x + a3) % 2
                    f = (
                        y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6
                    ) % 2
                    if f == 0 and fx == 0 and fy == 0:
                        r0, t0 = x, y
            assert r0 is not None, "no singular point found mod 2"
        else:
            # x0: common root of psi = 4x^3+b2x^2+2b4x+b6 and its derivative
            r0 = None
            for x in range(p):
                psi = ((4 * x + b2) * x % p + 2 * b4) * x % p
                psi = (psi + b6) % p
                dpsi = ((12 * x + 2 * b2) * x + 2 * b4) % p
                if psi == 0 and dpsi == 0:
                    r0 = x
                    break
            assert r0 is not None, f"no multiple root mod {p}"
            t0 = (-(a1 * r0 + a3)) * pow(2, -1, p) % p
        a1, a2, a3, a4, a6 = _translate(a1, a2, a3, a4, a6, r0, t0)
        assert a3 % p == 0 and a4 % p == 0 and a6 % p == 0

        b2 = a1 * a1 + 4 * a2

        # ---- step 3: multiplicative reduction ----
        if b2 % p != 0:
            roots = _quad_roots_mod(1, a1, -a2, p)
            split = len(roots) > 0
            if split:
                c = n
                kind = SPLIT
            else:
                c = 2 if n % 2 == 0 else 1
                kind = NONSPLIT
            return ReductionData(p, f"I{n}", c, kind, 1, n)

        # ---- steps 4-6: types II, III, IV ----
        if _vp(a6, p) < 2:
            return ReductionData(p, "II", 1, ADDITIVE, n, n)
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        if _vp(b8, p) < 3:
            return ReductionData(p, "III", 2, ADDITIVE, n - 1, n)
        b6 = a3 * a3 + 4 * a6
        if _vp(b6, p) < 3:
            roots = _quad_roots_mod(1, a3 // p, -(a6 // (p * p)), p)
            c = 3 if roots else 1
            return ReductionData(p, "IV", c, ADDITIVE, n - 2, n)

        # ---- step 7 normalization: p|a1,a2, p^2|a3,a4, p^3|a6 ----
        if p == 2:
            s = a2 % 2
            a1, a2, a3, a4, a6 = _s_shift(a1, a2, a3, a4, a6, s)
            assert a3 % 4 == 0, "a3 should be divisible by 4 here"
            tau = (a6 // 4) % 2
            a1, a2, a3, a4, a6 = _translate(a1, a2, a3, a4, a6, 0, 2 * tau)
        else:
            s = (-a1) * pow(2, -1, p) % p
            a1, a2, a3, a4, a6 = _s_shift(a1, a2, a3, a4, a6, s)
            t = (-a3) * pow(2, -1, p * p) % (p * p)
            a1, a2, a3, a4, a6 = _translate(a1, a2, a3, a4, a6, 0, t)
        assert a1 % p == 0 and a2 % p == 0
        assert a3 % (p * p) == 0 and a4 % (p * p) == 0 and a6 % (p**3) == 0

        # ---- cubic P(T) = T^3 + (a2/p) T^2 + (a4/p^2) T + a6/p^3 ----
        bb, cc, dd = a2 // p, a4 // (p * p), a6 // p**3
        kind_count, rational = _cubic_root_multiplicities(bb, cc, dd, p)

        if kind_count == 3:
            return ReductionData(p, "I0*", 1 + len(rational), ADDITIVE, n - 4, n)

        if kind_count == 2:
            # double root; translate it to T = 0, then run the I_nu* subloop
            dbl = _double_root(bb, cc, dd, p)
            a1, a2, a3, a4, a6 = _translate(a1, a2, a3, a4, a6, p * dbl, 0)
            return _in_star_loop(a1, a2, a3, a4, a6, p, n)

        # triple root: translate to T = 0
        tri = _triple_root(bb, cc, dd, p)
        a1, a2, a3, a4, a6 = _translate(a1, a2, a3, a4, a6, p * tri, 0)
        assert a2 % (p * p) == 0 and a4 % p**3 == 0 and a6 % p**4 == 0

        # ---- step 8: type IV* ----
        a3t, a6t = a3 // (p * p), a6 // p**4
        if (a3t * a3t + 4 * a6t) % p != 0:
            roots = _quad_roots_mod(1, a3t, -a6t, p)
            c = 3 if roots else 1
            return ReductionData(p, "IV*", c, ADDITIVE, n - 6, n)
        # double root of Y^2 + a3t Y - a6t: shift y by p^2 * root
        y3 = _quad_double_root(a3t, -a6t, p)
        a1, a2, a3, a4, a6 = _translate(a1, a2, a3, a4, a6, 0, p * p * y3)
        assert a3 % p**3 == 0 and a6 % p**5 == 0

        # ---- steps 9-10: III*, II* ----
        if _vp(a4, p) < 4:
            return ReductionData(p, "III*", 2, ADDITIVE, n - 7, n)
        if _vp(a6, p) < 6:
            return ReductionData(p, "II*", 1, ADDITIVE, n - 8, n)

        # ---- step 11: not minimal at p; rescale and restart ----
        a1, a2, a3, a4, a6 = (
            a1 // p,
            a2 // (p * p),
            a3 // p**3,
            a4 // p**4,
            a6 // p**6,
        )


def _translate(a1, a2, a3, a4, a6, r, t):
    """(x, y) -> (x + r, y + t)."""
    na1 = a1
    na2 = a2 + 3 * r
    na3 = a3 + r * a1 + 2 * t
    na4 = a4 + 2 * r * a2 - t * a1 + 3 * r * r
    na6 = a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1
    return na1, na2, na3, na4, na6


def _s_shift(a1, a2, a3, a4, a6, s):
    """(x, y) -> (x, y + s x)."""
    na1 = a1 + 2 * s
    na2 = a2 - s * a1 - s * s
    na3 = a3
    na4 = a4 - s * a3
    na6 = a6
    return na1, na2, na3, na4, na6


def _double_root(b, c, d, p):
    """Double root of T^3 + bT^2 + cT + d over F_p (exists by assumption)."""
    for t in range(p):
        f = (((t + b) * t + c) * t + d) % p
        df = ((3 * t + 2 * b) * t + c) % p
        if f == 0 and df == 0:
            return t
    if p == 3:
        # derivative may vanish identically; scan for any repeated factor
        for t in range(3):
            if (((t + b) * t + c) * t + d) % 3 == 0:
                return t
    raise AssertionError("double root not found")


def _triple_root(b, c, d, p):
    if p == 3:
        return (-d) % 3
    return (-b) * pow(3, -1, p) % p


def _quad_double_root(b, c, p):
    """Double root of Y^2 + bY + c over F_p, given disc = 0 mod p."""
    if p == 2:
        # Y^2 + bY + c with b even: (Y + sqrt(c))^2
        return c % 2
    return (-b) * pow(2, -1, p) % p


def _in_star_loop(a1, a2, a3, a4, a6, p, n) -> ReductionData:
    """Subloop for types I_nu* (nu >= 1), after the double root is at T=0."""
    assert a2 % p == 0 and a2 % (p * p) != 0
    assert a4 % p**3 == 0 and a6 % p**4 == 0
    ix, iy = 3, 3
    mx, my = p * p, p * p
    while True:
        a2t = a2 // p
        a3t = a3 // my
        a4t = a4 // (p * mx)
        a6t = a6 // (mx * my)
        # quadratic in Y: Y^2 + a3t Y - a6t
        if (a3t * a3t + 4 * a6t) % p != 0:
            nu = ix + iy - 5
            roots = _quad_roots_mod(1, a3t, -a6t, p)
            c = 4 if roots else 2
            return ReductionData(p, f"I{nu}*", c, ADDITIVE, n - 4 - nu, n)
        y_r = _quad_double_root(a3t, -a6t, p)
        a1, a2, a3, a4, a6 = _translate(a1, a2, a3, a4, a6, 0, my * y_r)
        iy += 1
        my *= p
        a2t = a2 // p
        a4t = a4 // (p * mx)
        a6t = a6 // (mx * my)
        # quadratic in X: a2t X^2 + a4t X + a6t  (a2t is a unit mod p)
        if (a4t * a4t - 4 * a2t * a6t) % p != 0:
            nu = ix + iy - 5
            roots = _quad_roots_mod(a2t, a4t, a6t, p)
            c = 4 if roots else 2
            return ReductionData(p, f"I{nu}*", c, ADDITIVE, n - 4 - nu, n)
        if p == 2:
            x_r = (a6t * a2t) % 2
        else:
            x_r = (-a4t) * pow(2 * a2t, -1, p) % p
        a1, a2, a3, a4, a6 = _translate(a1, a2, a3, a4, a6, mx * x_r, 0)
        ix += 1
        mx *= p


@lru_cache(maxsize=None)
def reduction_data(E: CurveModel, p: int) -> ReductionData:
    """Kodaira type, Tamagawa number and reduction kind of E at p.

    The input is replaced by its global minimal model first, so the returned
    data refers to the minimal model.
    """
    Emin = minimal_model(E)[0]
    return _tate_single(Emin, p)


@lru_cache(maxsize=None)
def conductor(E: CurveModel) -> int:
    Emin = minimal_model(E)[0]
    N = 1
    for p in sorted(factorint(Emin.discriminant)):
        N *= p ** reduction_data(Emin, p).conductor_exponent
    return N


def bad_primes(E: CurveModel) -> list[int]:
    Emin = minimal_model(E)[0]
    return sorted(factorint(Emin.discriminant))


def tamagawa_table(E: CurveModel) -> list[ReductionData]:
    return [reduction_data(E, p) for p in bad_primes(E)]


def tamagawa_product(E: CurveModel) -> int:
    prod = 1
    for rd in tamagawa_table(E):
        prod *= rd.tamagawa
    return prod


KODAIRA_COMPONENTS = {
    "I0": 1,
    "II": 1,
    "III": 2,
    "IV": 3,
    "I0*": 5,
    "IV*": 7,
    "III*": 8,
    "II*": 9,
}


def component_count(kodaira_type: str) -> int:
    """Number of irreducible components of the special fiber (multiplicity-free)."""
    if kodaira_type in KODAIRA_COMPONENTS:
        return KODAIRA_COMPONENTS[kodaira_type]
    if kodaira_type.endswith("*"):
        return int(kodaira_type[1:-1]) + 5
    return int(kodaira_type[1:])  # I_n, n >= 1

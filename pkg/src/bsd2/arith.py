"""Exact integer and rational arithmetic utilities.

Everything here is pure and deterministic: 2-adic valuations, Kronecker
symbols, real primitive quadratic characters, certified rational
reconstruction from high-precision reals, and bounded integer factorization
(trial division then Brent's variant of Pollard rho).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import NoRationalInRange

Rat = Union[int, Fraction]

INF = math.inf


def val2(x: Rat) -> Union[int, float]:
    """2-adic valuation, normalized so val2(2) = 1 and val2(0) = +inf."""
    if x == 0:
        return INF
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    v = 0
    while num % 2 == 0:
        num //= 2
        v += 1
    while den % 2 == 0:
        den //= 2
        v -= 1
    return v


def valp(x: Rat, p: int) -> Union[int, float]:
    """p-adic valuation of a rational, +inf at 0."""
    if x == 0:
        return INF
    x = Fraction(x)
    num, den = abs(x.numerator), x.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), the standard extension of the Jacobi symbol."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    k = 1
    if n < 0:
        n = -n
        if a < 0:
            k = -1
    # factor out twos of n
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            k = -k
    a %= n
    # Jacobi loop on odd n > 0
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                k = -k
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            k = -k
        a %= n
    return k if n == 1 else 0


@dataclass(frozen=True)
class QuadChar:
    """Real primitive quadratic character modulo an odd squarefree m = 1 mod 4.

    Totally even (chi(-1) = 1) and multiplicative over the prime factors of
    the modulus; values are the Jacobi symbol (k|m).
    """

    modulus: int

    def __post_init__(self):
        m = self.modulus
        if m <= 0 or m % 2 == 0 or m % 4 != 1:
            raise ValueError(f"modulus must be odd, positive, 1 mod 4: {m}")
        s, _ = squarefree_factor(m)
        if s != m:
            raise ValueError(f"modulus must be squarefree: {m}")

    def __call__(self, k: int) -> int:
        return kronecker(k, self.modulus)


def chi_value(chi: QuadChar, k: int) -> int:
    return chi(k)


def rational_reconstruct(x, denominator_bound: int, abs_tolerance) -> Fraction:
    """Recover the unique p/q with q <= bound and |x - p/q| <= tolerance.

    ``x`` may be a float, Fraction, or mpmath mpf; it is converted exactly to
    a Fraction first.  The precondition tolerance < 1/(2 bound^2) makes the
    answer unique and guarantees it appears among the continued-fraction
    convergents of x.
    """
    if denominator_bound < 1:
        raise ValueError("denominator bound must be >= 1")
    tol = Fraction(abs_tolerance) if not isinstance(abs_tolerance, Fraction) else abs_tolerance
    if tol < 0 or 2 * tol * denominator_bound * denominator_bound >= 1:
        raise ValueError("tolerance must satisfy tol < 1/(2*bound^2)")
    xf = _to_fraction(x)
    # walk the continued-fraction convergents of xf
    p0, q0 = 1, 0
    p1, q1 = int(math.floor(xf)), 1
    a = Fraction(int(math.floor(xf)))
    rem = xf - a
    while True:
        if q1 > denominator_bound:
            break
        if abs(xf - Fraction(p1, q1)) <= tol:
            return Fraction(p1, q1)
        if rem == 0:
            break
        rem = 1 / rem
        ai = int(math.floor(rem))
        rem -= ai
        p0, p1 = p1, ai * p1 + p0
        q0, q1 = q1, ai * q1 + q0
    raise NoRationalInRange(
        f"no rational with denominator <= {denominator_bound} within "
        f"{float(tol):.3e} of the input"
    )


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    # mpmath mpf: exact binary value
    try:
        from mpmath import mpmathify
        from mpmath.libmp import to_rational

        num, den = to_rational(mpmathify(x)._mpf_)
        return Fraction(int(num), int(den))
    except Exception as exc:  # pragma: no cover
        raise TypeError(f"cannot convert {type(x)} to Fraction") from exc


# ---------------------------------------------------------------------------
# primality and factorization
# ---------------------------------------------------------------------------

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24 (fixed base set)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """Brent's cycle-finding variant of Pollard rho; n odd composite > 1."""
    if n % 2 == 0:
        return 2
    seed = 1
    while True:
        seed += 1
        y, c, m = seed % n, seed * 2 + 1, 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


_TRIAL_BOUND = 1_000_000


def factorint(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}; 0 and +-1 give {}."""
    n = abs(n)
    if n <= 1:
        return {}
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 7
    inc = (4, 2, 4, 2, 4, 6, 2, 6)  # wheel mod 30
    i = 0
    while d * d <= n and d <= _TRIAL_BOUND:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out[d] = e
        d += inc[i]
        i = (i + 1) % 8
    if n == 1:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        root = math.isqrt(m)
        if root * root == m:
            stack.extend([root, root])
            continue
        g = _pollard_brent(m)
        stack.extend([g, m // g])
    return out


def squarefree_factor(n: int) -> tuple[int, int]:
    """Write n = s * t^2 with s squarefree; returns (s, t), sign carried by s."""
    if n == 0:
        raise ValueError("n must be nonzero")
    sign = -1 if n < 0 else 1
    s, t = 1, 1
    for p, e in factorint(n).items():
        if e % 2:
            s *= p
        t *= p ** (e // 2)
    return sign * s, t


def primes_up_to(n: int) -> list[int]:
    """All primes <= n by a plain sieve of Eratosthenes."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = b"\x00" * len(range(i * i, n + 1, i))
    return [i for i in range(2, n + 1) if sieve[i]]


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of |n|."""
    ds = [1]
    for p, e in factorint(n).items():
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def gcd_fractions(values: Iterable[Fraction]) -> Fraction:
    """Generator of the Z-module spanned by finitely many rationals (0 if empty)."""
    vals = [Fraction(v) for v in values if v != 0]
    if not vals:
        return Fraction(0)
    lcm_den = 1
    for v in vals:
        lcm_den = lcm_den * v.denominator // math.gcd(lcm_den, v.denominator)
    g = 0
    for v in vals:
        g = math.gcd(g, v.numerator * (lcm_den // v.denominator))
    return Fraction(g, lcm_den)

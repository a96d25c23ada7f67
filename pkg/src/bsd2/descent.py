"""Descent through a rational 2-isogeny.

The phi-Selmer group of E is computed as the set of squarefree d for which
the quartic torsor d w^2 = d^2 u^4 + A' d u^2 v^2 + B' v^4 (coefficients of
the isogeny target) has points in every completion.  Local solvability is a
certified search: residue classes are refined p-adically and accepted or
pruned only on Hensel-sound criteria; classes still undecided at the depth
derived from the quartic discriminant raise PrecisionExhausted rather than
guessing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .arith import factorint, squarefree_factor
from .config import DEFAULT_CONFIG
from .curves import CurveModel, TwoTorsionForm, minimal_model, to_two_torsion_form, two_isogenous_curve
from .errors import PrecisionExhausted
from .torsion import torsion_subgroup

INFINITY = math.inf

_NODE_BUDGET = 500_000


@dataclass(frozen=True)
class SelmerResult:
    phi_selmer_generators: tuple[int, ...]
    phi_hat_selmer_generators: tuple[int, ...]
    dim_phi: int
    dim_phi_hat: int
    sel2_lower: int
    sel2_upper: int
    sel2_dim_exact: int | None
    sha2_conclusion: str  # "trivial" or "unknown"
    analytic_rank_zero: bool | None


def _vp(n: int, p: int) -> int:
    v = 0
    while n and n % p == 0:
        n //= p
        v += 1
    return v


def homogeneous_space_locally_solvable(A: int, B: int, d: int, p, config=DEFAULT_CONFIG) -> bool:
    """Solvability of d w^2 = d^2 u^4 + A d u^2 v^2 + B v^4 over Q_p (or R).

    For p = infinity this is exact sign analysis.  For finite p the torsor
    is projected to z^2 = P(t) with P(t) = d^3 t^4 + A d^2 t^2 + B d (t = u/v)
    together with the v = 0 point, which exists iff d is a p-adic square.
    """
    s, _ = squarefree_factor(d)
    if s != d:
        raise ValueError(f"d must be squarefree: {d}")
    if p == INFINITY or p == "infinity":
        if d > 0:
            return True
        return B <= 0 or (A >= 0 and A * A >= 4 * B)
    p = int(p)
    if d > 0 and _is_square_qp(d, p):
        return True
    # certified search depth from the quartic discriminant
    disc_core = 16 * B * (A * A - 4 * B) ** 2
    v = _vp(disc_core, p) + 12 * _vp(abs(d), p)
    level = max(1, (2 * v + 3 + 1) // 2)
    if p == 2:
        level += config.descent_extra_depth
    coeffs = (B * d, 0, A * d * d, 0, d**3)  # low -> high in t
    if _square_value_search(coeffs, p, level, start_depth=0):
        return True
    rev = (d**3, 0, A * d * d, 0, B * d)  # t -> 1/t chart, s in pZ_p
    return _square_value_search(rev, p, level + 4, start_depth=1)


def _is_square_qp(n: int, p: int) -> bool:
    if n == 0:
        return True
    v = _vp(n, p)
    if v % 2:
        return False
    u = n // p**v
    if p == 2:
        return u % 8 == 1
    return pow(u % p, (p - 1) // 2, p) == 1


def _square_value_search(coeffs, p: int, max_depth: int, start_depth: int) -> bool:
    """Does z^2 = f(t) have a solution with t in Z_p (t = 0 mod p^start_depth)?

    BFS over residue classes t = t0 mod p^k.  A class decides when the value
    valuation is pinned below the class level: odd valuation or non-residue
    unit prunes, residue unit accepts (Hensel).  Exact integer zeros accept.
    Exhausting the depth raises PrecisionExhausted.
    """

    def f(t: int) -> int:
        acc = 0
        for c in reversed(coeffs):
            acc = acc * t + c
        return acc

    stack = [(0, start_depth)]
    nodes = 0
    undecided_at_cap = False
    while stack:
        t0, k = stack.pop()
        nodes += 1
        if nodes > _NODE_BUDGET:
            raise PrecisionExhausted(0, p, "node budget exceeded")
        val = f(t0)
        if val == 0:
            return True
        e = _vp(val, p)
        if e < k:
            if e % 2:
                continue
            u = val // p**e
            if p == 2:
                if k - e >= 3:
                    if u % 8 == 1:
                        return True
                    continue
            else:
                if pow(u % p, (p - 1) // 2, p) == 1:
                    return True
                continue
        # value undetermined at this level: refine
        if k >= max_depth:
            undecided_at_cap = True
            continue
        base = p**k
        for j in range(p):
            stack.append((t0 + j * base, k + 1))
    if undecided_at_cap:
        raise PrecisionExhausted(0, p, f"undecided class at depth {max_depth}")
    return False


def _support_primes(A: int, B: int) -> list[int]:
    core = 2 * B * (A * A - 4 * B)
    return sorted(factorint(core))


def selmer_support(form: TwoTorsionForm) -> list[int]:
    A2, B2 = form.dual_form_coefficients()
    return _support_primes(A2, B2)


def phi_selmer_group(form: TwoTorsionForm, config=DEFAULT_CONFIG) -> list[int]:
    """Squarefree class representatives of Sel_phi for the isogeny with
    kernel (0,0) on y^2 = x^3 + A x^2 + B x.

    Classes d run over the subgroup of Q*/Q*^2 generated by -1 and the
    primes dividing 2 B' (A'^2 - 4 B') where (A', B') are the coefficients
    of the isogeny target; d is kept when the torsor has points everywhere.
    """
    A2, B2 = form.dual_form_coefficients()
    return _selmer_from_quartic(A2, B2, config)


def _selmer_from_quartic(A: int, B: int, config) -> list[int]:
    primes = _support_primes(A, B)
    gens = [-1] + primes
    classes = [1]
    for g in gens:
        classes += [c * g for c in classes]
    selmer = []
    places = [INFINITY] + primes
    failures = {}
    for d in sorted(classes, key=abs):
        ok = True
        for v in places:
            try:
                if not homogeneous_space_locally_solvable(A, B, d, v, config):
                    ok = False
                    break
            except PrecisionExhausted as exc:
                failures[(d, v)] = exc
                raise PrecisionExhausted(d, exc.p, "while testing the class group") from exc
        if ok:
            selmer.append(d)
    assert 1 in selmer
    return sorted(selmer, key=lambda x: (abs(x), x < 0))


def local_image_size(A: int, B: int, p, config=DEFAULT_CONFIG) -> int:
    """#L_v: number of local square classes d with a solvable torsor at v."""
    if p == INFINITY:
        reps = [1, -1]
    elif p == 2:
        reps = [1, 3, 5, 7, 2, 6, 10, 14]
    else:
        r = _least_nonresidue(p)
        reps = [1, r, p, r * p]
    count = 0
    for d in reps:
        s, _ = squarefree_factor(d)
        if homogeneous_space_locally_solvable(A, B, s, p, config):
            count += 1
    return count


def _least_nonresidue(p: int) -> int:
    r = 2
    while pow(r, (p - 1) // 2, p) == 1:
        r += 1
    return r


def selmer_ratio_check(form: TwoTorsionForm, config=DEFAULT_CONFIG) -> bool:
    """|Sel_phi(E)| / |Sel_phihat(E')| = prod_v |L_v(E)|/2 over the support."""
    from fractions import Fraction

    A2, B2 = form.dual_form_coefficients()
    sel_phi = _selmer_from_quartic(A2, B2, config)
    # dual isogeny: target coefficients are those of E itself scaled by 4
    A4, B4 = -2 * A2, A2 * A2 - 4 * B2
    sel_phihat = _selmer_from_quartic(A4, B4, config)
    lhs = Fraction(len(sel_phi), len(sel_phihat))
    rhs = Fraction(1)
    for v in [INFINITY, 2] + [q for q in _support_primes(A2, B2) if q != 2]:
        rhs *= Fraction(local_image_size(A2, B2, v, config), 2)
    return lhs == rhs


def sel2_bound(
    E: CurveModel,
    config=DEFAULT_CONFIG,
    analytic_rank_zero: bool | None = None,
) -> SelmerResult:
    """Both isogeny descents on E, with the implied Sel_2 and Sha[2] bounds.

    The exact sequence
    0 -> E'(Q)[dual]/phi(E(Q)[2]) -> Sel_phi(E) -> Sel_2(E)
      -> Sel_dual(E') -> Sha(E')[dual]/phi(Sha(E)[2]) -> 0
    gives dim Sel_2 <= dim Sel_phi + dim Sel_dual - 1 in the rational
    2-torsion regime; Sha[2] triviality additionally uses the square-order
    consequence of the Cassels-Tate pairing, which needs the finiteness
    certificate (analytic rank 0 through the usual chain of theorems).
    """
    Emin = minimal_model(E)[0]
    form = to_two_torsion_form(Emin)
    Eiso = two_isogenous_curve(Emin)
    form_iso = to_two_torsion_form(Eiso)

    sel_phi = phi_selmer_group(form, config)
    sel_hat = phi_selmer_group(form_iso, config)

    dim_phi = len(sel_phi).bit_length() - 1
    dim_hat = len(sel_hat).bit_length() - 1
    assert 2**dim_phi == len(sel_phi) and 2**dim_hat == len(sel_hat)

    tors2 = torsion_subgroup(Emin).order % 2 == 0
    lower = 1 if tors2 else 0
    upper = dim_phi + dim_hat
    refined = dim_phi + dim_hat - 1 if tors2 else upper
    exact = refined if refined == lower else None

    sha_bound = max(refined - lower, 0)
    if sha_bound == 0:
        sha = "trivial"
    elif sha_bound == 1 and analytic_rank_zero:
        sha = "trivial"  # square order forces even dimension <= 1, hence 0
    else:
        sha = "unknown"

    return SelmerResult(
        phi_selmer_generators=tuple(sel_phi),
        phi_hat_selmer_generators=tuple(sel_hat),
        dim_phi=dim_phi,
        dim_phi_hat=dim_hat,
        sel2_lower=lower,
        sel2_upper=upper,
        sel2_dim_exact=exact,
        sha2_conclusion=sha,
        analytic_rank_zero=analytic_rank_zero,
    )

"""The quadratic twist family pipeline.

Sieve the admissible prime set, enumerate twist discriminants, verify the
predicted 2-adic valuation of each algebraic central value, assemble the
Tamagawa/torsion/Selmer data, and balance the 2-part valuation ledger.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction

from .arith import factorint, kronecker, primes_up_to, rational_reconstruct, val2
from .config import DEFAULT_CONFIG
from .counting import an_coefficients_twist, ap_table
from .curves import CurveModel, minimal_model, quadratic_twist, two_division_field, two_isogenous_curve
from .descent import SelmerResult, sel2_bound
from .errors import LedgerMismatch, NoRationalInRange, PrecisionExhausted
from .lvalue import RationalLValue, algebraic_l_value, periods
from .tate import ReductionData, conductor, tamagawa_table
from .torsion import TorsionGroup, torsion_subgroup

VERIFIED = "verified"
MISMATCH = "mismatch"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class SieveSpec:
    curve: CurveModel
    bound: int = DEFAULT_CONFIG.sieve_bound
    require_aq_nonzero: bool = False

    def __post_init__(self):
        if self.bound < 5:
            raise ValueError("sieve bound must be at least 5")


def sieve_S(spec: SieveSpec, config=DEFAULT_CONFIG) -> list[int]:
    """Primes q <= bound with q = 1 mod 4, q coprime to the conductor, and
    point count N_q exactly divisible by 2 (plus the optional a_q != 0 cut).

    Every member and non-member is cross-checked against the equivalent
    criterion that q is inert in the 2-division fields of both the curve
    and its 2-isogenous curve; any disagreement raises CriteriaDisagree.
    """
    from .errors import CriteriaDisagree

    E = minimal_model(spec.curve)[0]
    C = conductor(E)
    D1 = two_division_field(E)
    D2 = two_division_field(two_isogenous_curve(E))
    if not isinstance(D1, int) or not isinstance(D2, int):
        raise ValueError("sieve requires curves with quadratic 2-division fields")
    table = ap_table(E, config)
    table.extend(spec.bound)
    out = []
    for q in primes_up_to(spec.bound):
        if q % 4 != 1 or C % q == 0:
            continue
        aq = table[q]
        nq = 1 + q - aq
        member = nq % 2 == 0 and nq % 4 != 0
        inert_both = kronecker(D1, q) == -1 and kronecker(D2, q) == -1
        if member != inert_both:
            raise CriteriaDisagree(q, f"ord2(N_q)=1 is {member}, inert-in-both is {inert_both}")
        if member and spec.require_aq_nonzero and aq == 0:
            continue
        if member:
            out.append(q)
    return out


def enumerate_M(primes: list[int], r: int, product_bound: int | None) -> list[int]:
    """All squarefree products of r distinct sieve primes, at most the bound."""
    if r < 1:
        raise ValueError("r must be at least 1")
    prods = [1]
    primes = sorted(primes)
    for _ in range(r):
        nxt = set()
        for m in prods:
            for q in primes:
                if m % q == 0:
                    continue
                mq = m * q
                if product_bound is None or mq <= product_bound:
                    nxt.add(mq)
        prods = sorted(nxt)
    return [m for m in prods if len(factorint(m)) == r]


@dataclass(frozen=True)
class LedgerRecord:
    lhs_ord2: float
    sha_ord2: int
    tamagawa_ord2: int
    torsion_ord2: int
    rhs_ord2: int
    balanced: bool
    sha_source: str  # "descent" or "hypothesis"


@dataclass(frozen=True)
class TwistReport:
    M: int
    r: int
    ord2_predicted: int
    ord2_computed: float | None
    lvalue: RationalLValue | None
    twist_curve: CurveModel
    tamagawa_table: tuple[ReductionData, ...]
    torsion: TorsionGroup | None
    selmer: SelmerResult | None
    split_conditions: dict | None
    period_ratio: Fraction | None
    period_ratio_ok: bool | None
    modsym_ord2: float | None
    status: str
    failure: str = ""
    ledger: LedgerRecord | None = None


def admissible_twist(E: CurveModel, M: int, config=DEFAULT_CONFIG) -> list[int]:
    """The prime factorization of an admissible M; raises ValueError if M is
    not a squarefree product of sieve primes."""
    if M < 5:
        raise ValueError(f"twist discriminant must be at least 5: {M}")
    fac = factorint(M)
    if any(e > 1 for e in fac.values()):
        raise ValueError(f"twist discriminant must be squarefree: {M}")
    qs = sorted(fac)
    sieve = set(sieve_S(SieveSpec(E, bound=max(qs)), config))
    outside = [q for q in qs if q not in sieve]
    if outside:
        raise ValueError(f"primes {outside} are not in the sieve set of the curve")
    return qs


def verify_twist(
    E: CurveModel,
    M: int,
    with_selmer: bool = False,
    with_modsym: bool = False,
    config=DEFAULT_CONFIG,
) -> TwistReport:
    """Full verification of one twist: exact algebraic L-value against the
    predicted 2-adic valuation r - 1, plus the local and torsion data."""
    Emin = minimal_model(E)[0]
    qs = admissible_twist(Emin, M, config)
    r = len(qs)
    predicted = r - 1
    Etw = quadratic_twist(Emin, M)

    tam = tuple(tamagawa_table(Etw))
    tors = torsion_subgroup(Etw)
    split = check_split_conditions(Emin, M, config)

    pd_base = periods(Emin, config)
    pd_tw = periods(Etw, config)
    ratio, ratio_ok = _period_twist_ratio(pd_base, pd_tw, M, config)

    status = VERIFIED
    failure = ""
    lv = None
    ord2_computed = None
    try:
        lv = algebraic_l_value(
            Etw,
            config=config,
            an_provider=lambda b: an_coefficients_twist(Emin, M, b, config),
            period_data=pd_tw,
        )
        ord2_computed = lv.ord2
        if lv.value == 0 or ord2_computed != predicted:
            status = MISMATCH
            failure = f"ord2 {ord2_computed} != predicted {predicted}"
    except (NoRationalInRange, PrecisionExhausted) as exc:
        status = UNDECIDED
        failure = str(exc)

    selmer = None
    if with_selmer:
        try:
            selmer = sel2_bound(
                Etw,
                config,
                analytic_rank_zero=(status == VERIFIED and lv.value != 0),
            )
        except PrecisionExhausted as exc:
            if status == VERIFIED:
                status = UNDECIDED
                failure = str(exc)

    modsym_ord2 = None
    if with_modsym:
        from .modsym import build_space, eigen_functional, twisted_l_from_symbols

        space = build_space(conductor(Emin), config.modsym_level_cap)
        psi = eigen_functional(space, Emin, +1, config)
        t_exact, _ = twisted_l_from_symbols(psi, M, config)
        # bridge T_m/Of+ to the L^(alg) normalization of the twist
        comps = 2 if Etw.discriminant > 0 else 1
        modsym_ord2 = val2(t_exact) - (comps - 1)
        if status == VERIFIED and modsym_ord2 != ord2_computed:
            status = MISMATCH
            failure = f"modsym ord2 {modsym_ord2} != numeric {ord2_computed}"

    if not ratio_ok and status == VERIFIED:
        status = MISMATCH
        failure = f"period twist ratio {ratio} has ord2 != 0"

    report = TwistReport(
        M=M,
        r=r,
        ord2_predicted=predicted,
        ord2_computed=ord2_computed,
        lvalue=lv,
        twist_curve=Etw,
        tamagawa_table=tam,
        torsion=tors,
        selmer=selmer,
        split_conditions=split,
        period_ratio=ratio,
        period_ratio_ok=ratio_ok,
        modsym_ord2=modsym_ord2,
        status=status,
        failure=failure,
    )
    if status == VERIFIED:
        sha_hyp = None if with_selmer else True
        ledger = bsd2_ledger(Emin, report, sha2_trivial_hypothesis=sha_hyp, config=config)
        report = dataclasses.replace(report, ledger=ledger)
    return report


def _period_twist_ratio(pd_base, pd_tw, M: int, config):
    """Reconstruct sqrt(M) Omega+(twist) / Omega+(E) as an exact rational;
    its 2-adic valuation must vanish for the two normalizations to agree."""
    import mpmath
    from mpmath import mp

    with mp.workprec(config.precision_bits + 32):
        x = mpmath.sqrt(M) * pd_tw.omega_plus / pd_base.omega_plus
        try:
            ratio = rational_reconstruct(x, 1 << 12, Fraction(1, 1 << 30))
        except NoRationalInRange:
            return None, False
    return ratio, val2(ratio) == 0


def check_split_conditions(E: CurveModel, M: int, config=DEFAULT_CONFIG) -> dict:
    """Splitting of every prime of 2C in Q(sqrt(M)); the transfer theorem
    for the 2-part of the ledger applies only when all of them split."""
    Emin = minimal_model(E)[0]
    C = conductor(Emin)
    out = {}
    for ell in sorted(factorint(2 * C)):
        if ell == 2:
            out[2] = M % 8 == 1
        else:
            out[ell] = kronecker(M, ell) == 1
    return {"per_prime": out, "all_split": all(out.values())}


def bsd2_ledger(
    E: CurveModel,
    report: TwistReport,
    sha2_trivial_hypothesis: bool | None = None,
    config=DEFAULT_CONFIG,
) -> LedgerRecord:
    """Balance ord2(L^alg) = ord2(#Sha[2^oo]) + ord2(prod c_l) - 2 ord2(#tors).

    The Sha term is 0 when the descent concluded Sha[2] = 0 (or when that is
    supplied as a hypothesis, which is flagged in the record).
    """
    if report.status != VERIFIED:
        raise ValueError("ledger requires a verified report")
    if report.selmer is not None and report.selmer.sha2_conclusion == "trivial":
        sha_ord2, source = 0, "descent"
    elif sha2_trivial_hypothesis:
        sha_ord2, source = 0, "hypothesis"
    else:
        raise ValueError("no Sha[2] conclusion available; pass the hypothesis explicitly")

    tam_ord2 = 0
    for rd in report.tamagawa_table:
        tam_ord2 += int(val2(rd.tamagawa))
    tors_ord2 = int(val2(report.torsion.order))
    lhs = report.lvalue.ord2
    rhs = sha_ord2 + tam_ord2 - 2 * tors_ord2
    if lhs != rhs:
        raise LedgerMismatch(
            f"M={report.M}: ord2(L^alg)={lhs} but sha+tam-2tors = "
            f"{sha_ord2}+{tam_ord2}-2*{tors_ord2} = {rhs}"
        )
    return LedgerRecord(
        lhs_ord2=lhs,
        sha_ord2=sha_ord2,
        tamagawa_ord2=tam_ord2,
        torsion_ord2=tors_ord2,
        rhs_ord2=rhs,
        balanced=True,
        sha_source=source,
    )


def base_curve_ledger(E: CurveModel, config=DEFAULT_CONFIG) -> LedgerRecord:
    """The same valuation ledger for the base curve itself, with the Sha term
    from its own descent."""
    Emin = minimal_model(E)[0]
    lv = algebraic_l_value(Emin, config=config)
    sel = sel2_bound(Emin, config, analytic_rank_zero=(lv.value != 0))
    if sel.sha2_conclusion != "trivial":
        raise ValueError("descent did not settle Sha[2] for the base curve")
    tam_ord2 = sum(int(val2(rd.tamagawa)) for rd in tamagawa_table(Emin))
    tors_ord2 = int(val2(torsion_subgroup(Emin).order))
    lhs = lv.ord2
    rhs = tam_ord2 - 2 * tors_ord2
    if lhs != rhs:
        raise LedgerMismatch(f"base curve {Emin.ainvs()}: {lhs} != {rhs}")
    return LedgerRecord(lhs, 0, tam_ord2, tors_ord2, rhs, True, "descent")


def run_family(
    E: CurveModel,
    r: int,
    product_bound: int | None = None,
    count: int | None = None,
    with_selmer: bool = False,
    with_modsym: bool = False,
    sieve_bound: int | None = None,
    jobs: int = 1,
    config=DEFAULT_CONFIG,
) -> list[TwistReport]:
    """Verify every admissible twist with r prime factors up to the bound.

    The map over twists may run in a process pool; results are always
    reduced in ascending order of M, so reports are deterministic.
    """
    Emin = minimal_model(E)[0]
    sieve = sieve_S(SieveSpec(Emin, bound=sieve_bound or config.sieve_bound), config)
    Ms = enumerate_M(sieve, r, product_bound)
    if count is not None:
        Ms = Ms[:count]
    if jobs > 1 and len(Ms) > 1:
        import concurrent.futures as cf

        with cf.ProcessPoolExecutor(max_workers=jobs) as ex:
            futures = {
                M: ex.submit(verify_twist, Emin, M, with_selmer, with_modsym, config)
                for M in Ms
            }
            return [futures[M].result() for M in sorted(Ms)]
    return [
        verify_twist(Emin, M, with_selmer, with_modsym, config) for M in sorted(Ms)
    ]

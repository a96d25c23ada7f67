"""Exception hierarchy for the toolkit.

Every failure mode that a caller may want to branch on gets its own class;
anything else is a plain ValueError.
"""


class Bsd2Error(Exception):
    """Base class for all toolkit errors."""


class SingularCurve(Bsd2Error):
    """Weierstrass coefficients with vanishing discriminant."""


class NoRationalInRange(Bsd2Error):
    """Rational reconstruction found no fraction within the certified window.

    Signals insufficient numeric precision upstream, never a wrong answer.
    """


class NoRationalTwoTorsion(Bsd2Error):
    """The 2-division cubic has no rational root."""


class Degree6Field(Bsd2Error):
    """2-division cubic is irreducible with non-square discriminant."""


class SignMinusOne(Bsd2Error):
    """Functional-equation sign is -1, so the central value vanishes."""


class EigenspaceNotFound(Bsd2Error):
    """No one-dimensional rational eigenline matches the a_p sequence."""


class CalibrationMismatch(Bsd2Error):
    """Symbol-side and L-value-side normalizations disagree."""


class IdentityViolated(Bsd2Error):
    """An exact rational identity failed; carries both sides."""

    def __init__(self, name, lhs, rhs):
        super().__init__(f"{name}: lhs={lhs} != rhs={rhs}")
        self.name = name
        self.lhs = lhs
        self.rhs = rhs


class IntegralityViolated(Bsd2Error):
    """A certified-integer quantity came out non-integral."""


class CrossCheckFailed(Bsd2Error):
    """Exact and numeric evaluations of the same quantity disagree."""


class PrecisionExhausted(Bsd2Error):
    """A local solvability search ended undecided at its certified depth."""

    def __init__(self, d, p, detail=""):
        super().__init__(f"undecided torsor d={d} at p={p} {detail}".rstrip())
        self.d = d
        self.p = p


class CriteriaDisagree(Bsd2Error):
    """The two equivalent sieve membership criteria disagree at a prime."""

    def __init__(self, q, detail=""):
        super().__init__(f"sieve criteria disagree at q={q} {detail}".rstrip())
        self.q = q


class LedgerMismatch(Bsd2Error):
    """The 2-part valuation ledger does not balance."""

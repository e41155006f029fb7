# --------------------------------------------------------------------------
                    # LinCodeProver: non-existence proofs for linear codes
# --------------------------------------------------------------------------

"""
Weight distributions, the exact MacWilliams transform and the binary power
moments.

For a linear [n, k] code C over F_q with weight distribution A_0, ..., A_n the
dual distribution is

    A_j^dual = q^(-k) * sum_i K_j(i) A_i

and in the binary case the first three power moments read

    (1) sum_j A_j       = 2^k
    (2) sum_j j A_j     = 2^(k-1) (n - A_1^dual)
    (3) sum_j j^2 A_j   = 2^(k-2) (n(n+1) - 2n A_1^dual + 2 A_2^dual)

Every number in this module is an int or a fractions.Fraction; integrality of a
dual coefficient is reported as a flag and never obtained by rounding.

Classes:
--------
WeightDistribution; sparse weight -> count map of a (hypothetical) code.
DualSpectrum; exact rational dual coefficients with integrality/sign flags.
MomentVerdict; outcome of the symbolic moment analysis for at most two weights.

Functions:
---------
macwilliams_dual(A, k: int, q: int = 2, strict: bool = False) -> DualSpectrum
pless_residuals(A, k: int, a1_dual: int, a2_dual: int) -> tuple
moment_solve_small(n: int, k: int, weights) -> MomentVerdict
read_spectrum(source, n: int) -> WeightDistribution
write_spectrum(A: WeightDistribution, stream) -> None
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType

from LinCodeProver.exactCombinatorics import get_context
from LinCodeProver.utils import (ContractViolation, FormatError, PreconditionError,
                                 _fractionToText, _readRecords)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=True)
class WeightDistribution:
    """
    Sparse weight distribution. Zero counts are dropped; use code_spectrum() to get
    the implied A_0 = 1 entry added.

    Class instance attributes
    ----------
    self.n: int, code length;
    self.entries: read-only mapping weight -> count, sorted by weight.
    """
    n: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 0:
            raise ContractViolation(f"length must be nonnegative, got {self.n}")
        cleaned = {}
        for weight, count in sorted(dict(self.entries).items()):
            if not 0 <= weight <= self.n:
                raise ContractViolation(f"weight {weight} outside [0, {self.n}]")
            if int(count) != count or count < 0:
                raise ContractViolation(f"count for weight {weight} must be a nonnegative integer, got {count}")
            if count:
                cleaned[int(weight)] = int(count)
        object.__setattr__(self, "entries", MappingProxyType(cleaned))

    __hash__ = None

    @classmethod
    def code_spectrum(cls, n: int, counts: dict) -> "WeightDistribution":
        merged = dict(counts)
        merged.setdefault(0, 1)
        return cls(n, merged)

    def count(self, weight: int) -> int:
        return self.entries.get(weight, 0)

    def items(self):
        return self.entries.items()

    def total(self) -> int:
        return sum(self.entries.values())

    def support(self) -> tuple:
        """Nonzero weights that occur."""
        return tuple(w for w in self.entries if w > 0)

    def is_code_spectrum(self, k: int, q: int = 2) -> bool:
        return self.count(0) == 1 and self.total() == q ** k

    def as_dict(self) -> dict:
        return dict(self.entries)


@dataclass(frozen=True)
class DualSpectrum:
    """
    Exact dual coefficients A_j^dual, j = 0..n, stored sparsely (zero entries omitted).

    Class instance attributes
    ----------
    self.n: int, code length;
    self.k: int, dimension of the dual code (n minus the primal dimension);
    self.q: int, alphabet size;
    self.entries: read-only mapping j -> Fraction.

    Methods
    -------
    value(j) -> Fraction; is_integral(j) -> bool; is_nonnegative(j) -> bool;
    flags() -> dict j -> (integral, nonnegative); total() -> Fraction;
    first_violation(upper=None) -> tuple or None.
    """
    n: int
    k: int
    q: int
    entries: dict

    def __post_init__(self):
        object.__setattr__(self, "entries",
                           MappingProxyType({j: Fraction(v) for j, v in sorted(dict(self.entries).items()) if v}))

    __hash__ = None

    def value(self, j: int) -> Fraction:
        return self.entries.get(j, Fraction(0))

    def items(self):
        return self.entries.items()

    def is_integral(self, j: int) -> bool:
        return self.value(j).denominator == 1

    def is_nonnegative(self, j: int) -> bool:
        return self.value(j) >= 0

    def flags(self) -> dict:
        return {j: (v.denominator == 1, v >= 0) for j, v in self.entries.items()}

    @property
    def all_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.entries.values())

    @property
    def all_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.entries.values())

    def total(self) -> Fraction:
        return sum(self.entries.values(), Fraction(0))

    def first_violation(self, upper=None):
        """
        Scans j = 0..n in order and returns (j, reason) for the first coefficient
        that is not an integer, is negative, or exceeds `upper`; None when all pass.
        """
        for j, v in self.entries.items():
            if v.denominator != 1:
                return j, f"A_{j}^dual = {_fractionToText(v)} is not an integer"
            if v < 0:
                return j, f"A_{j}^dual = {v} is negative"
            if upper is not None and v > upper:
                return j, f"A_{j}^dual = {v} exceeds {upper}"
        return None

    def as_weight_distribution(self) -> WeightDistribution:
        if not (self.all_integral and self.all_nonnegative):
            raise ContractViolation("dual spectrum is not a nonnegative integer distribution")
        return WeightDistribution(self.n, {j: int(v) for j, v in self.entries.items()})


def macwilliams_dual(A, k: int, q: int = 2, strict: bool = False) -> DualSpectrum:
    """
    Exact MacWilliams transform.

    Parameters:
    -----------
    A: WeightDistribution or DualSpectrum (anything exposing .n and .items() of exact
        counts), the distribution to transform;
    k: int, dimension; the transform divides by q^k;
    q: int, alphabet size, default 2;
    strict: bool, when set the input must be a code spectrum (A_0 = 1, total q^k);

    Returns:
    --------
    DualSpectrum with every j = 0..n evaluated exactly.
    """
    if k < 0:
        raise ContractViolation(f"dimension must be nonnegative, got {k}")
    items = [(i, Fraction(a)) for i, a in A.items() if a]
    if strict:
        if dict(items).get(0) != 1:
            raise ContractViolation("a code spectrum needs A_0 = 1")
        total = sum(a for _, a in items)
        if total != q ** k:
            raise ContractViolation(f"total count {total} differs from {q}^{k}")

    n = A.n
    ctx = get_context(n, q)
    columns = [(ctx.column(i), a) for i, a in items]
    size = Fraction(q) ** k
    dual = {}
    for j in range(n + 1):
        acc = sum((column[j] * a for column, a in columns), Fraction(0))
        if acc:
            dual[j] = acc / size
    return DualSpectrum(n=n, k=n - k, q=q, entries=dual)


def _moments(A) -> tuple:
    s0 = sum(Fraction(a) for _, a in A.items())
    s1 = sum(i * Fraction(a) for i, a in A.items())
    s2 = sum(i * i * Fraction(a) for i, a in A.items())
    return s0, s1, s2


def pless_residuals(A, k: int, a1_dual: int, a2_dual: int) -> tuple:
    """
    Left-hand side minus right-hand side of the binary moments (1), (2), (3) for
    given A_1^dual and A_2^dual. All three are zero iff the moments hold.
    """
    n = A.n
    s0, s1, s2 = _moments(A)
    two = Fraction(2)
    r0 = s0 - two ** k
    r1 = s1 - two ** (k - 1) * (n - a1_dual)
    r2 = s2 - two ** (k - 2) * (n * (n + 1) - 2 * n * a1_dual + 2 * a2_dual)
    return r0, r1, r2


@dataclass(frozen=True)
class MomentVerdict:
    """
    Outcome of moment_solve_small.

    counts maps each weight to (constant, coefficient) meaning
    A_w = constant + coefficient * A_1^dual. relation is (c, r) for the linear
    relation c * A_1^dual + A_2^dual = r obtained from moment (3). a1_value is set
    when moment (2) alone determines A_1^dual (at most one weight).
    """
    status: str
    n: int
    k: int
    weights: tuple
    counts: dict
    relation: tuple
    a1_value: Fraction = None
    reason: str = ""
    derivation: tuple = ()

    __hash__ = None

    @property
    def infeasible(self) -> bool:
        return self.status == "infeasible"

    def count_expression(self, w: int) -> str:
        const, coef = self.counts[w]
        if coef == 0:
            return f"A_{w} = {_fractionToText(const)}"
        sign = "-" if coef < 0 else "+"
        return f"A_{w} = {_fractionToText(const)} {sign} {_fractionToText(abs(coef))}*A1"

    def relation_expression(self) -> str:
        c, r = self.relation
        return f"{_fractionToText(c)}*A1 + A2 = {_fractionToText(r)}"


def moment_solve_small(n: int, k: int, weights) -> MomentVerdict:
    """
    Symbolic analysis of the moments for at most two nonzero weights.

    Moments (1) and (2) determine the counts as affine functions of A_1^dual,
    moment (3) then gives c * A_1^dual + A_2^dual = r. The verdict is infeasible
    when no integer 0 <= A_1^dual <= n makes every count a nonnegative integer and
    A_2^dual a nonnegative integer.

    Parameters:
    -----------
    n: int, length;
    k: int, dimension;
    weights: iterable of at most two distinct nonzero weights;

    Returns:
    --------
    MomentVerdict
    """
    W = tuple(sorted(set(weights)))
    if len(W) > 2:
        raise PreconditionError(f"moment analysis handles at most 2 weights, got {len(W)}; use the feasibility search")
    if any(not 0 < w <= n for w in W):
        raise PreconditionError(f"weights must lie in [1, {n}]: {W}")

    two = Fraction(2)
    M = 2 ** k - 1
    half = two ** (k - 1)
    derivation = []

    if len(W) == 0:
        counts = {}
        if M != 0:
            reason = f"moment (1) needs 1 = 2^{k}"
            return MomentVerdict("infeasible", n, k, W, counts, (Fraction(-n), Fraction(0)), None, reason, (reason,))
        a1_fixed = Fraction(n)
    elif len(W) == 1:
        w = W[0]
        counts = {w: (Fraction(M), Fraction(0))}
        a1_fixed = n - w * M / half
        derivation.append(f"(1): A_{w} = {M}")
        derivation.append(f"(2): {w}*{M} = 2^{k - 1}*({n} - A1)  =>  A1 = {_fractionToText(a1_fixed)}")
    else:
        w1, w2 = W
        P = (half * n - w1 * M) / (w2 - w1)
        Q = -half / (w2 - w1)
        counts = {w1: (M - P, -Q), w2: (P, Q)}
        a1_fixed = None
        derivation.append(f"(1): A_{w1} + A_{w2} = {M}")
        derivation.append(f"(2): {w1}*A_{w1} + {w2}*A_{w2} = 2^{k - 1}*({n} - A1)")

    # moment (3) as an affine function of A1: L0 + L1*A1 = 2^(k-2)(n(n+1) - 2n A1 + 2 A2)
    L0 = sum(w * w * const for w, (const, _) in counts.items())
    L1 = sum(w * w * coef for w, (_, coef) in counts.items())
    c = -(L1 + half * n) / half
    r = (L0 - two ** (k - 2) * n * (n + 1)) / half
    relation = (c, r)

    verdict = MomentVerdict("undetermined", n, k, W, counts, relation, a1_fixed, "", ())
    for w in W:
        derivation.append(verdict.count_expression(w))
    derivation.append(f"(3): {verdict.relation_expression()}")

    if a1_fixed is not None:
        if a1_fixed.denominator != 1:
            reason = f"moment (2) forces A1 = {_fractionToText(a1_fixed)}, not an integer"
        elif not 0 <= a1_fixed <= n:
            reason = f"moment (2) forces A1 = {a1_fixed} outside [0, {n}]"
        else:
            reason = None
        if reason is not None:
            return MomentVerdict("infeasible", n, k, W, counts, relation, a1_fixed, reason, tuple(derivation + [reason]))
        candidates = [int(a1_fixed)]
    else:
        candidates = [a1 for a1 in range(n + 1)
                      if all(_is_count(const + coef * a1, M) for const, coef in counts.values())]
        if not candidates:
            reason = "no integer A1 in [0, n] makes both counts nonnegative integers"
            return MomentVerdict("infeasible", n, k, W, counts, relation, None, reason, tuple(derivation + [reason]))

    for a1 in candidates:
        a2 = r - c * a1
        if a2.denominator == 1 and a2 >= 0:
            derivation.append(f"A1 = {a1}, A2 = {a2} satisfies (1)-(3)")
            logger.debug("moment analysis n=%d k=%d W=%s undetermined (A1=%d)", n, k, W, a1)
            return MomentVerdict("undetermined", n, k, W, counts, relation, a1_fixed,
                                 "moments (1)-(3) admit a nonnegative integer solution", tuple(derivation))

    if c >= 0 and all(r - c * a1 < 0 for a1 in candidates):
        reason = f"{verdict.relation_expression()} has no solution in nonnegative A1, A2"
    else:
        reason = f"{verdict.relation_expression()} has no nonnegative integer solution for admissible A1"
    logger.debug("moment analysis n=%d k=%d W=%s infeasible: %s", n, k, W, reason)
    return MomentVerdict("infeasible", n, k, W, counts, relation, a1_fixed, reason, tuple(derivation + [reason]))


def _is_count(value: Fraction, upper: int) -> bool:
    return value.denominator == 1 and 0 <= value <= upper


def read_spectrum(source, n: int) -> WeightDistribution:
    """
    Reads `weight,count` lines ('#' comments allowed). A_0 = 1 is implied when the
    file has no weight 0 line. Malformed or duplicate lines raise FormatError naming
    the line.
    """
    records, problems = _readRecords(source, (2,))
    if problems:
        line_no, message = problems[0]
        raise FormatError(f"line {line_no}: {message}")
    counts = {}
    for line_no, (weight_text, count_text) in records:
        try:
            weight, count = int(weight_text), int(count_text)
        except ValueError as err:
            raise FormatError(f"line {line_no}: {err}") from err
        if weight in counts:
            raise FormatError(f"line {line_no}: duplicate weight {weight}")
        counts[weight] = count
    try:
        return WeightDistribution.code_spectrum(n, counts)
    except ContractViolation as err:
        raise FormatError(str(err)) from err


def write_spectrum(A: WeightDistribution, stream) -> None:
    stream.write(f"# weight distribution, n={A.n}\n")
    for weight, count in A.items():
        stream.write(f"{weight},{count}\n")

# --------------------------------------------------------------------------
                    # LinCodeProver: non-existence proofs for linear codes
# --------------------------------------------------------------------------

"""
Exact integer feasibility of the MacWilliams system over a restricted set of
nonzero weights.

The unknowns are the counts A_w, w in W. A_0 = 1, and the dual coefficients

    A_j^dual = 2^(-k) * (K_j(0) + sum_w K_j(w) A_w)

must be integers in [0, 2^(n-k)], with A_1^dual either fixed or enumerated as a
bounded unknown (one partition per value).

Enumeration strategy:
    - the two largest weights u < v are pivots, solved from moments (1) and (2);
    - the remaining weights are free variables, enumerated in ascending order of
      weight and value, so the first witness found is the lexicographically least;
    - every pivot count and every dual row in `nonnegativity_rows` is an affine
      form in the free variables; its maximum over the simplex of the unassigned
      variables bounds the current variable from one side;
    - at the last free variable integrality of the pivot counts reduces the range
      to an arithmetic progression;
    - complete candidates are tested against `congruence_rows` modulo 2^k and the
      survivors are fully transformed.

Classes:
--------
SearchConfig, FeasibilityProblem, FeasibilityVerdict, CheckResult.

Functions:
---------
build_problem(p: CodeParams, W, a1_dual_known: int = None) -> FeasibilityProblem
search(prob: FeasibilityProblem, cfg: SearchConfig = None) -> FeasibilityVerdict
check_distribution(A: WeightDistribution, k: int) -> CheckResult
"""

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from LinCodeProver.boundsTables import CodeParams
from LinCodeProver.exactCombinatorics import get_context
from LinCodeProver.spectra import DualSpectrum, WeightDistribution, macwilliams_dual
from LinCodeProver.utils import BudgetExhausted, PreconditionError

logger = logging.getLogger(__name__)

ELIMINATION_RULES = ("moment", "mass", "nonnegativity", "integrality", "congruence", "transform")
_CLOCK_EVERY = 1024


@dataclass(frozen=True)
class SearchConfig:
    """
    Parameters of the feasibility search.

    congruence_rows: dual indices j whose numerator must vanish modulo 2^k;
    nonnegativity_rows: dual indices j used as nonnegative affine forms while enumerating;
    time_budget: seconds, None for unbounded;
    node_budget: enumeration nodes, None for unbounded (per partition when workers > 1);
    workers: processes; more than one runs the partitions in a process pool;
    audit_rate: fraction of pruned candidates that are fully transformed to confirm the pruning;
    audit_seed: seed of the audit sample.
    """
    congruence_rows: tuple = tuple(range(1, 13))
    nonnegativity_rows: tuple = tuple(range(1, 13))
    time_budget: float = None
    node_budget: int = None
    workers: int = 1
    audit_rate: float = 0.0
    audit_seed: int = 0

    def to_dict(self) -> dict:
        data = asdict(self)
        data["congruence_rows"] = list(self.congruence_rows)
        data["nonnegativity_rows"] = list(self.nonnegativity_rows)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "SearchConfig":
        data = dict(data)
        for key in ("congruence_rows", "nonnegativity_rows"):
            if key in data:
                data[key] = tuple(data[key])
        return cls(**data)


@dataclass(frozen=True)
class FeasibilityProblem:
    """
    Class instance attributes
    ----------
    self.params: CodeParams, the hypothetical code;
    self.weights: tuple, candidate nonzero weights in ascending order;
    self.a1_dual: int or None, fixed A_1^dual or None for a bounded unknown 0..n;
    self.primal_upper: int, 2^k - 1, bound of every A_w;
    self.dual_upper: int, 2^(n-k), bound of every A_j^dual.
    """
    params: CodeParams
    weights: tuple
    a1_dual: int = None

    @property
    def primal_upper(self) -> int:
        return 2 ** self.params.k - 1

    @property
    def dual_upper(self) -> int:
        return 2 ** (self.params.n - self.params.k)

    def a1_values(self) -> tuple:
        if self.a1_dual is not None:
            return (self.a1_dual,)
        return tuple(range(self.params.n + 1))

    def to_dict(self) -> dict:
        return {"params": self.params.to_dict(), "weights": list(self.weights), "a1_dual": self.a1_dual}

    @classmethod
    def from_dict(cls, data: dict) -> "FeasibilityProblem":
        return cls(CodeParams.from_dict(data["params"]), tuple(data["weights"]), data.get("a1_dual"))

    def __str__(self) -> str:
        a1 = "free" if self.a1_dual is None else self.a1_dual
        return f"{self.params} over W={list(self.weights)}, A1dual={a1}"


def build_problem(p: CodeParams, W, a1_dual_known: int = None) -> FeasibilityProblem:
    """
    Parameters:
    -----------
    p: CodeParams, binary [n, k, d];
    W: iterable of candidate nonzero weights, all within [d, n];
    a1_dual_known: int or None, fixes A_1^dual when given;

    Returns:
    --------
    FeasibilityProblem
    """
    p.validate()
    if p.q != 2:
        raise PreconditionError(f"{p}: the feasibility search is binary only")
    weights = tuple(sorted(set(W)))
    if not weights:
        raise PreconditionError("the candidate weight set is empty")
    outside = [w for w in weights if not p.d <= w <= p.n]
    if outside:
        raise PreconditionError(f"{p}: weights outside [{p.d}, {p.n}]: {outside}")
    if a1_dual_known is not None and not 0 <= a1_dual_known <= p.n:
        raise PreconditionError(f"A_1^dual = {a1_dual_known} outside [0, {p.n}]")
    return FeasibilityProblem(p, weights, a1_dual_known)


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    condition: str = None
    detail: str = ""
    dual: DualSpectrum = None

    def __bool__(self) -> bool:
        return self.passed


def check_distribution(A: WeightDistribution, k: int) -> CheckResult:
    """
    Checks, in this order: A_0 = 1, sum of counts = 2^k, then for j = 0..n
    integrality, nonnegativity and A_j^dual <= 2^(n-k), then sum of the dual
    coefficients = 2^(n-k). Returns the first failing condition.
    """
    if A.count(0) != 1:
        return CheckResult(False, "A_0", f"A_0 = {A.count(0)}")
    if A.total() != 2 ** k:
        return CheckResult(False, "total", f"sum of counts {A.total()} differs from 2^{k}")
    dual = macwilliams_dual(A, k)
    upper = 2 ** (A.n - k)
    for j, value in dual.items():
        if value.denominator != 1:
            return CheckResult(False, f"A_{j}^dual integrality", f"A_{j}^dual = {value}", dual)
        if value < 0:
            return CheckResult(False, f"A_{j}^dual nonnegativity", f"A_{j}^dual = {value}", dual)
        if value > upper:
            return CheckResult(False, f"A_{j}^dual upper bound", f"A_{j}^dual = {value} > {upper}", dual)
    if dual.total() != upper:
        return CheckResult(False, "dual total", f"sum of dual coefficients {dual.total()} differs from {upper}", dual)
    return CheckResult(True, None, "all conditions hold", dual)


@dataclass(frozen=True)
class FeasibilityVerdict:
    """
    status is 'feasible' (witness and dual set) or 'infeasible' (record describes
    the exhausted domain: pivots, free weights, A_1^dual values, rows used,
    node and leaf counts and the eliminations per rule).
    """
    status: str
    problem: FeasibilityProblem
    witness: WeightDistribution = None
    dual: DualSpectrum = None
    record: dict = field(default_factory=dict)

    __hash__ = None

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"

    def summary(self) -> str:
        if self.feasible:
            return f"feasible: witness {self.witness.as_dict()}"
        return (f"infeasible: {self.record.get('nodes', 0)} nodes, {self.record.get('leaves', 0)} leaves, "
                f"eliminated {self.record.get('eliminated', {})}")


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _new_counters() -> dict:
    return {"nodes": 0, "leaves": 0, "eliminated": {rule: 0 for rule in ELIMINATION_RULES},
            "audit": {"sampled": 0, "confirmed": 0}}


def _merge_counters(total: dict, part: dict) -> None:
    total["nodes"] += part["nodes"]
    total["leaves"] += part["leaves"]
    for rule, count in part["eliminated"].items():
        total["eliminated"][rule] += count
    for key, count in part["audit"].items():
        total["audit"][key] += count


@dataclass(frozen=True)
class _Partition:
    index: int
    a1: int
    low: int = None
    high: int = None


class _Enumerator:
    """
    Depth-first enumeration for one value of A_1^dual.

    Class instance attributes
    ----------
    self.free: tuple, weights enumerated directly (ascending);
    self.pivots: tuple (u, v) or (v,) for a single weight;
    self.forms: list of (rule, constant, coefficients), every form equals a positive
        multiple of a quantity that must be nonnegative: D*A_u, D*A_v and
        2^k*D*A_j^dual for the nonnegativity rows, where D = v - u;
    self._suffix: per form, max(0, max of the coefficients from level t on).
    """
    def __init__(self, problem: FeasibilityProblem, cfg: SearchConfig, a1: int, counters: dict,
                 deadline: float = None, rng=None):
        n, k = problem.params.n, problem.params.k
        self.problem = problem
        self.cfg = cfg
        self.a1 = a1
        self.counters = counters
        self.deadline = deadline
        self.rng = rng
        self.n, self.k = n, k
        self.M = 2 ** k - 1
        self.S = 2 ** (k - 1) * (n - a1)
        self.modulus = 2 ** k
        W = problem.weights

        ctx = get_context(n)
        self.columns = {w: ctx.column(w) for w in (0,) + W}
        self.congruence_rows = tuple(j for j in cfg.congruence_rows if 1 <= j <= n)
        self.kmod = {j: {w: self.columns[w][j] % self.modulus for w in (0,) + W} for j in self.congruence_rows}

        if len(W) == 1:
            self.free, self.pivots, self.D = (), W, 1
            self.forms = []
        else:
            self.free, self.pivots = W[:-2], W[-2:]
            u, v = self.pivots
            self.D = v - u
            self.forms = self._build_forms()
        self._suffix = []
        for _, _, coefs in self.forms:
            suffix = [0] * (len(coefs) + 1)
            for t in range(len(coefs) - 1, -1, -1):
                suffix[t] = max(suffix[t + 1], coefs[t])
            self._suffix.append(suffix)

    def _build_forms(self) -> list:
        u, v = self.pivots
        M, S, D = self.M, self.S, self.D
        forms = [("mass", S - u * M, [u - w for w in self.free]),
                 ("mass", v * M - S, [-(v - w) for w in self.free])]
        for j in self.cfg.nonnegativity_rows:
            if not 1 <= j <= self.n:
                continue
            Ku, Kv = self.columns[u][j], self.columns[v][j]
            constant = D * self.columns[0][j] + Ku * (v * M - S) + Kv * (S - u * M)
            coefs = [D * self.columns[w][j] - Ku * (v - w) + Kv * (u - w) for w in self.free]
            forms.append(("nonnegativity", constant, coefs))
        return forms

    def _tick(self) -> None:
        counters = self.counters
        counters["nodes"] += 1
        budget = self.cfg.node_budget
        if budget is not None and counters["nodes"] > budget:
            raise BudgetExhausted(f"node budget {budget} exhausted", counters)
        if self.deadline is not None and counters["nodes"] % _CLOCK_EVERY == 0 and time.monotonic() > self.deadline:
            raise BudgetExhausted(f"time budget {self.cfg.time_budget} s exhausted", counters)

    def level_range(self, level: int, constants: list, remaining: int) -> tuple:
        """
        Range [low, high] for the free variable at `level`, or None when empty.
        Candidate values cut away are added to the elimination counters.
        """
        low, high = 0, remaining
        low_rule = high_rule = None
        for index, (rule, _, coefs) in enumerate(self.forms):
            rest = self._suffix[index][level + 1]
            base = constants[index] + remaining * rest
            slope = coefs[level] - rest
            if slope > 0:
                bound = _ceil_div(-base, slope)
                if bound > low:
                    low, low_rule = bound, rule
            elif slope < 0:
                bound = base // -slope
                if bound < high:
                    high, high_rule = bound, rule
            elif base < 0:
                self.counters["eliminated"][rule] += remaining + 1
                return None
        eliminated = self.counters["eliminated"]
        if low_rule is not None:
            eliminated[low_rule] += min(low, remaining + 1)
        if high_rule is not None:
            eliminated[high_rule] += max(0, remaining - max(high, low - 1))
        if low > high:
            return None
        return low, high

    def run(self, low: int = None, high: int = None):
        """Returns the least witness vector (counts in ascending weight order) or None."""
        if not self.free:
            return self._pivot_leaf([])
        return self._descend(0, [form[1] for form in self.forms], self.M, [], low, high)

    def _descend(self, level: int, constants: list, remaining: int, assigned: list, low=None, high=None):
        span = self.level_range(level, constants, remaining)
        if span is None:
            return None
        first, last = span
        if low is not None:
            first = max(first, low)
        if high is not None:
            last = min(last, high)
        if first > last:
            return None
        last_level = level == len(self.free) - 1
        step = 1
        if last_level:
            first, step = self._progression(constants[0], self.forms[0][2][level], first, last)
            if first is None:
                return None
            self._audit_cut(remaining, span, assigned)
        for x in range(first, last + 1, step):
            self._tick()
            assigned.append(x)
            if last_level:
                hit = self._pivot_leaf(assigned)
            else:
                shifted = [c + coefs[level] * x for c, (_, _, coefs) in zip(constants, self.forms)]
                hit = self._descend(level + 1, shifted, remaining - x, assigned)
            assigned.pop()
            if hit is not None:
                return hit
        return None

    def _progression(self, constant: int, coefficient: int, first: int, last: int) -> tuple:
        """
        Values x in [first, last] with constant + coefficient * x divisible by D.
        Returns (start, step) or (None, None).
        """
        D = self.D
        g = math.gcd(coefficient, D)
        if constant % g:
            self.counters["eliminated"]["integrality"] += last - first + 1
            return None, None
        step = D // g
        if step == 1:
            return first, 1
        x0 = (-(constant // g) * pow(coefficient // g, -1, step)) % step
        start = first + (x0 - first) % step
        kept = 0 if start > last else (last - start) // step + 1
        self.counters["eliminated"]["integrality"] += (last - first + 1) - kept
        if start > last:
            return None, None
        return start, step

    def _counts(self, assigned: list) -> dict:
        """Counts for a complete assignment as Fractions (pivots may be non-integral)."""
        counts = {w: Fraction(x) for w, x in zip(self.free, assigned)}
        mass = self.M - sum(assigned)
        weighted = self.S - sum(w * x for w, x in zip(self.free, assigned))
        if len(self.pivots) == 1:
            counts[self.pivots[0]] = Fraction(mass)
        else:
            u, v = self.pivots
            a_v = Fraction(weighted - u * mass, v - u)
            counts[u], counts[v] = mass - a_v, a_v
        return counts

    def _pivot_leaf(self, assigned: list):
        self.counters["leaves"] += 1
        counts = self._counts(assigned)
        if len(self.pivots) == 1:
            w = self.pivots[0]
            if w * self.M != self.S:
                self.counters["eliminated"]["moment"] += 1
                return None
        if any(c.denominator != 1 or c < 0 for c in counts.values()):
            self.counters["eliminated"]["mass"] += 1
            return None
        counts = {w: int(c) for w, c in counts.items()}
        for j in self.congruence_rows:
            residues = self.kmod[j]
            if (residues[0] + sum(residues[w] * c for w, c in counts.items())) % self.modulus:
                self.counters["eliminated"]["congruence"] += 1
                if self._sampled():
                    self._confirm({w: Fraction(c) for w, c in counts.items()})
                return None
        if not self._transform_passes(counts):
            self.counters["eliminated"]["transform"] += 1
            return None
        return tuple(counts[w] for w in self.problem.weights)

    def _transform_passes(self, counts: dict) -> bool:
        spectrum = WeightDistribution.code_spectrum(self.n, counts)
        dual = macwilliams_dual(spectrum, self.k)
        if dual.value(1) != self.a1:
            return False
        return dual.first_violation(2 ** (self.n - self.k)) is None

    def _sampled(self) -> bool:
        return self.rng is not None and self.rng.random() < self.cfg.audit_rate

    def _confirm(self, counts: dict) -> None:
        self.counters["audit"]["sampled"] += 1
        if all(c.denominator == 1 and c >= 0 for c in counts.values()):
            assert not self._transform_passes({w: int(c) for w, c in counts.items()}), \
                f"pruned candidate {counts} passes the full transform"
        self.counters["audit"]["confirmed"] += 1

    def _audit_cut(self, remaining: int, span: tuple, assigned: list) -> None:
        """Fully transforms one value removed from the last level by the affine bounds."""
        if not self._sampled():
            return
        cut = [(0, span[0] - 1)] if span[0] > 0 else []
        if span[1] < remaining:
            cut.append((span[1] + 1, remaining))
        if not cut:
            return
        first, last = cut[int(self.rng.integers(0, len(cut)))]
        x = int(self.rng.integers(first, last + 1))
        self._confirm(self._counts(assigned + [x]))


def _partitions(problem: FeasibilityProblem, cfg: SearchConfig) -> list:
    """
    One partition per A_1^dual value; with several workers the first free variable
    range of each value is cut into chunks.
    """
    partitions = []
    for a1 in problem.a1_values():
        if cfg.workers <= 1 or len(problem.weights) < 3:
            partitions.append(_Partition(len(partitions), a1))
            continue
        probe = _Enumerator(problem, cfg, a1, _new_counters())
        span = probe.level_range(0, [form[1] for form in probe.forms], probe.M)
        if span is None:
            continue
        low, high = span
        size = max(1, _ceil_div(high - low + 1, 4 * cfg.workers))
        for start in range(low, high + 1, size):
            partitions.append(_Partition(len(partitions), a1, start, min(start + size - 1, high)))
    return partitions


def _run_partition(problem: FeasibilityProblem, cfg: SearchConfig, partition: _Partition,
                   deadline: float = None, counters: dict = None) -> tuple:
    counters = _new_counters() if counters is None else counters
    rng = np.random.default_rng([cfg.audit_seed, partition.index]) if cfg.audit_rate > 0 else None
    enumerator = _Enumerator(problem, cfg, partition.a1, counters, deadline, rng)
    witness = enumerator.run(partition.low, partition.high)
    logger.debug("partition %d (A1dual=%d, %s..%s): %s", partition.index, partition.a1,
                 partition.low, partition.high, "hit" if witness else "exhausted")
    return witness, counters


def search(prob: FeasibilityProblem, cfg: SearchConfig = None) -> FeasibilityVerdict:
    """
    Decides the feasibility problem exactly.

    Parameters:
    -----------
    prob: FeasibilityProblem;
    cfg: SearchConfig, defaults to SearchConfig();

    Returns:
    --------
    FeasibilityVerdict; raises BudgetExhausted when a budget runs out first.
    """
    cfg = cfg or SearchConfig()
    started = time.monotonic()
    deadline = None if cfg.time_budget is None else started + cfg.time_budget
    partitions = _partitions(prob, cfg)
    logger.info("search %s: %d partitions", prob, len(partitions))

    counters = _new_counters()
    best = None
    if cfg.workers <= 1:
        for partition in partitions:
            witness, _ = _run_partition(prob, cfg, partition, deadline, counters)
            if witness is not None and (best is None or witness < best):
                best = witness
    else:
        best = _run_pool(prob, cfg, partitions, deadline, counters)

    W = prob.weights
    record = {"pivots": list(W[-2:]) if len(W) > 1 else list(W),
              "free": list(W[:-2]) if len(W) > 1 else [],
              "a1_values": [prob.a1_values()[0], prob.a1_values()[-1]],
              "congruence_rows": list(cfg.congruence_rows),
              "nonnegativity_rows": list(cfg.nonnegativity_rows),
              "partitions": len(partitions)}
    if best is not None:
        witness = WeightDistribution.code_spectrum(prob.params.n, dict(zip(W, best)))
        dual = macwilliams_dual(witness, prob.params.k)
        logger.info("search %s: feasible, witness %s", prob, witness.as_dict())
        return FeasibilityVerdict("feasible", prob, witness, dual, record)

    record.update(mode="exhaustive", nodes=counters["nodes"], leaves=counters["leaves"],
                  eliminated=counters["eliminated"], audit=counters["audit"])
    logger.info("search %s: infeasible after %d nodes (%.1f s)", prob, counters["nodes"], time.monotonic() - started)
    return FeasibilityVerdict("infeasible", prob, None, None, record)


def _run_pool(prob: FeasibilityProblem, cfg: SearchConfig, partitions: list, deadline: float,
              counters: dict):
    best = None
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        futures = [(partition, pool.submit(_run_partition, prob, cfg, partition, deadline)) for partition in partitions]
        for partition, future in futures:
            if best is not None and partition.low is not None and partition.low > best[0]:
                future.cancel()
                continue
            witness, part = future.result()
            _merge_counters(counters, part)
            if witness is not None and (best is None or witness < best):
                best = witness
    return best


# debugging and testing
if __name__ == "__main__":
    problem = build_problem(CodeParams(7, 4, 3), {3, 4, 7})
    print(search(problem).summary())
    print(check_distribution(WeightDistribution.code_spectrum(324, {160: 1023}), 10))

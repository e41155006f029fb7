# --------------------------------------------------------------------------
                    # LinCodeProver: non-existence proofs for linear codes
# --------------------------------------------------------------------------

"""
Exclusion of codeword weights for a hypothetical binary linear [n, k, d] code.

candidate_weights() runs the rules in a fixed order and records, for every
weight 1..n, whether it stays possible or which rule removed it:

    below-minimum      w < d
    odd-parity         d even: some code with these parameters has a basis of
                       minimum weight words, so all of its weights are even
    descent-table /    d <= w < 2d: the residual descent started with w hits a
    descent-griesmer   table entry or the Griesmer bound
    shortening-2d      w = 2d: all minimum weight words would lie inside the
                       support of the weight 2d word, leaving a [2d, k, d] code
    sum-argument       w > 2d: adding a minimum weight word to a weight w word
                       must land on a possible weight
    sublemma           the descent for w reaches parameters that a recursive
                       proof (the sub-lemma oracle) shows to be impossible

Classes:
--------
WeightVerdict, ParityRule, DualA1Verdict, CandidateReport, StaticOracle.

Functions:
---------
even_weight_restriction(p: CodeParams) -> ParityRule
exclude_by_descent(p: CodeParams, w: int, table: BoundsTable) -> WeightVerdict
exclude_by_sum(w: int, p: CodeParams, candidates) -> WeightVerdict
containment_interval(p: CodeParams) -> tuple
exclude_2d_shortening(p: CodeParams, candidates=None) -> WeightVerdict
dual_a1_zero(p: CodeParams, table: BoundsTable) -> DualA1Verdict
node_distance_range(node: CodeParams, table: BoundsTable) -> tuple
candidate_weights(p, table, sublemma_oracle=None, sublemma_steps=2) -> CandidateReport
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Protocol

from LinCodeProver.boundsTables import (BoundsTable, CodeParams, descent_chain, griesmer_dmax,
                                        griesmer_length)
from LinCodeProver.utils import PreconditionError

logger = logging.getLogger(__name__)

RULES = ("below-minimum", "odd-parity", "descent-table", "descent-griesmer",
         "shortening-2d", "sum-argument", "sublemma")
STAGES = ("parity", "descent", "shortening-2d", "sum-argument", "sublemma")


@dataclass(frozen=True)
class WeightVerdict:
    weight: int
    status: str
    rule: Optional[str] = None
    justification: dict = field(default_factory=dict)

    __hash__ = None

    @property
    def excluded(self) -> bool:
        return self.status == "excluded"

    def to_dict(self) -> dict:
        return {"weight": self.weight, "status": self.status, "rule": self.rule,
                "justification": self.justification}


def _possible(w: int, **justification) -> WeightVerdict:
    return WeightVerdict(w, "possible", None, justification)


def _excluded(w: int, rule: str, **justification) -> WeightVerdict:
    assert rule in RULES, f"unknown rule {rule}"
    return WeightVerdict(w, "excluded", rule, justification)


def _require_binary(p: CodeParams) -> None:
    if p.q != 2:
        raise PreconditionError(f"{p}: the weight exclusion rules are binary only")


class ParityRule:
    """
    Predicate produced by even_weight_restriction: allowed(w) is False for odd w
    when the rule is active (d even) and always True otherwise.
    """
    def __init__(self, active: bool):
        self.active = active

    def __call__(self, w: int) -> bool:
        return not (self.active and w % 2)

    def __repr__(self) -> str:
        return "ParityRule(odd weights impossible)" if self.active else "ParityRule(no restriction)"


def even_weight_restriction(p: CodeParams) -> ParityRule:
    _require_binary(p)
    return ParityRule(p.d % 2 == 0)


def exclude_by_descent(p: CodeParams, w: int, table: BoundsTable) -> WeightVerdict:
    _require_binary(p)
    if not p.d <= w < 2 * p.d:
        raise PreconditionError(f"{p}: descent needs {p.d} <= w < {2 * p.d}, got {w}")
    chain = descent_chain(p, w, table)
    if chain.verdict == "contradiction-by-table":
        return _excluded(w, "descent-table", chain=chain.to_dict())
    if chain.verdict == "contradiction-by-griesmer":
        return _excluded(w, "descent-griesmer", chain=chain.to_dict())
    return _possible(w, chain=chain.to_dict())


def sum_interval(w: int, p: CodeParams) -> tuple:
    """
    Weights a weight-w word plus a minimum weight word can have: the overlap t of
    the supports satisfies max(0, w + d - n) <= t <= d.
    """
    return w - p.d, min(w + p.d, 2 * p.n - w - p.d)


def exclude_by_sum(w: int, p: CodeParams, candidates) -> WeightVerdict:
    """
    Parameters:
    -----------
    w: int, weight above 2d;
    p: CodeParams;
    candidates: iterable of weights still considered possible;

    Returns:
    --------
    WeightVerdict, excluded iff no candidate of the parity of w + d lies in the
    interval of achievable sum weights.
    """
    _require_binary(p)
    if w <= 2 * p.d:
        raise PreconditionError(f"{p}: the sum argument needs w > {2 * p.d}, got {w}")
    low, high = sum_interval(w, p)
    hits = sorted(c for c in set(candidates) if low <= c <= high and c > 0 and (c - w - p.d) % 2 == 0)
    if hits:
        return _possible(w, interval=[low, high], hits=hits[:3])
    return _excluded(w, "sum-argument", interval=[low, high])


def containment_interval(p: CodeParams) -> tuple:
    """
    Weights a weight-2d word plus a minimum weight word can have when the minimum
    weight word is not inside the support of the weight-2d word: 3d - 2t for the
    overlap t in [max(0, 3d - n), d - 1].
    """
    return p.d + 2, min(3 * p.d, 2 * p.n - 3 * p.d)


def exclude_2d_shortening(p: CodeParams, candidates=None) -> WeightVerdict:
    """
    Parameters:
    -----------
    p: CodeParams;
    candidates: iterable of weights still considered possible, or None when the
        containment of every minimum weight support in the weight-2d word is taken
        as given;

    Returns:
    --------
    WeightVerdict, excluded iff the minimum weight supports are forced inside the
    weight-2d word and the shortened [2d, k, d] code violates the Griesmer bound.
    """
    _require_binary(p)
    w = 2 * p.d
    length = griesmer_length(p.k, p.d, 2)
    hits = []
    if candidates is not None:
        low, high = containment_interval(p)
        hits = sorted(c for c in set(candidates) if low <= c <= high and (c - p.d) % 2 == 0)
    if hits:
        return _possible(w, griesmer_length=length, hits=hits[:3])
    if length > w:
        return _excluded(w, "shortening-2d", griesmer_length=length)
    return _possible(w, griesmer_length=length)


@dataclass(frozen=True)
class DualA1Verdict:
    """
    proven is True when A_1^dual = 0 is established: a code with a zero coordinate
    could be punctured there to [n-1, k, d], and those parameters are impossible.
    """
    proven: bool
    punctured: CodeParams
    reason: str
    chain: dict = None

    __hash__ = None

    def to_dict(self) -> dict:
        return {"proven": self.proven, "punctured": self.punctured.to_dict(),
                "reason": self.reason, "chain": self.chain}


def dual_a1_zero(p: CodeParams, table: BoundsTable) -> DualA1Verdict:
    _require_binary(p)
    punctured = CodeParams(max(p.n - 1, 0), p.k, p.d)
    length = griesmer_length(p.k, p.d, 2)
    if length > punctured.n:
        return DualA1Verdict(True, punctured, f"Griesmer length {length} exceeds {punctured.n}")
    dmax = table.lookup(punctured.n, punctured.k)
    if dmax is not None and p.d > dmax:
        return DualA1Verdict(True, punctured, f"table bound dmax({punctured.n},{punctured.k}) = {dmax}")
    if p.k >= 2:
        chain = descent_chain(punctured, p.d, table)
        if chain.contradiction:
            return DualA1Verdict(True, punctured, f"descent {chain.verdict}", chain.to_dict())
        return DualA1Verdict(False, punctured, "punctured descent finds no contradiction", chain.to_dict())
    return DualA1Verdict(False, punctured, "no contradiction for the punctured parameters")


class SublemmaOracle(Protocol):
    """
    Answers whether parameters are known to be impossible. Both methods return a
    reference (the sub-certificate identifier) or None. known() must be cheap;
    attempt() may run a recursive proof.
    """
    def known(self, params: CodeParams) -> Optional[str]: ...

    def attempt(self, params: CodeParams) -> Optional[str]: ...


class StaticOracle:
    """Oracle backed by a fixed collection of parameter sets proved impossible elsewhere."""
    def __init__(self, proved=()):
        self._proved = {}
        for params in proved:
            params = params if isinstance(params, CodeParams) else CodeParams(*params)
            self._proved[params] = str(params)

    def known(self, params: CodeParams) -> Optional[str]:
        return self._proved.get(params)

    attempt = known


@dataclass(frozen=True)
class CandidateReport:
    """
    Verdicts for all weights 1..n of a hypothetical code.

    Class instance attributes
    ----------
    self.params: CodeParams;
    self.verdicts: dict weight -> WeightVerdict for every weight in [1, n];
    self.stages: dict stage name -> tuple of weights still possible after the stage,
        in the order of STAGES;
    self.parity_active: bool.
    """
    params: CodeParams
    verdicts: dict
    stages: dict
    parity_active: bool

    __hash__ = None

    @property
    def possible(self) -> tuple:
        return tuple(w for w, v in self.verdicts.items() if not v.excluded)

    def excluded_by(self, rule: str) -> tuple:
        return tuple(w for w, v in self.verdicts.items() if v.rule == rule)

    def sublemma_exclusions(self) -> dict:
        return {w: v.justification for w, v in self.verdicts.items() if v.rule == "sublemma"}

    def possible_below(self, bound: int) -> tuple:
        return tuple(w for w in self.possible if w < bound)


def node_distance_range(node: CodeParams, table: BoundsTable) -> tuple:
    """
    Distances a descent node [n, k, >= d] can actually have: d up to the smaller of
    the Griesmer maximum and the table bound.
    """
    high = griesmer_dmax(node.n, node.k, node.q)
    bound = table.lookup(node.n, node.k)
    if bound is not None:
        high = min(high, bound)
    return node.d, high


def _proved_node(node: CodeParams, table: BoundsTable, ask) -> Optional[dict]:
    """
    Asks the oracle about every distance in node_distance_range and returns the
    justification when all of them are impossible.
    """
    _, high = node_distance_range(node, table)
    if high < node.d:
        return None
    references = []
    for d in range(node.d, high + 1):
        reference = ask(node.with_d(d))
        if reference is None:
            return None
        references.append(reference)
    return {"node": node.to_dict(), "d_range": [node.d, high], "lemmas": references}


def candidate_weights(p: CodeParams, table: BoundsTable, sublemma_oracle: SublemmaOracle = None,
                      sublemma_steps: int = 2) -> CandidateReport:
    """
    Derives the possible nonzero weights of a binary [n, k, d] code.

    Parameters:
    -----------
    p: CodeParams, binary parameters;
    table: BoundsTable, consulted by the descent chains;
    sublemma_oracle: object with known()/attempt() or None to skip the sub-lemma stage;
    sublemma_steps: int, how many leading nodes of each descent are offered to the oracle;

    Returns:
    --------
    CandidateReport
    """
    _require_binary(p)
    n, d = p.n, p.d
    verdicts = {}
    stages = {}

    for w in range(1, min(d, n + 1)):
        verdicts[w] = _excluded(w, "below-minimum")

    parity = even_weight_restriction(p)
    for w in range(d, n + 1):
        verdicts[w] = _possible(w) if parity(w) else _excluded(w, "odd-parity")
    stages["parity"] = _still_possible(verdicts)

    # a one dimensional code has no residual; its weights stay possible
    chains = {}
    for w in range(d, min(2 * d, n + 1)):
        if verdicts[w].excluded or p.k < 2:
            continue
        verdicts[w] = exclude_by_descent(p, w, table)
        chains[w] = verdicts[w].justification["chain"]
    stages["descent"] = _still_possible(verdicts)
    logger.info("%s: %d weights left after descent", p, len(stages["descent"]))

    if 2 * d <= n and not verdicts[2 * d].excluded:
        verdicts[2 * d] = exclude_2d_shortening(p, stages["descent"])
    stages["shortening-2d"] = _still_possible(verdicts)

    candidates = set(stages["shortening-2d"])
    for w in range(2 * d + 1, n + 1):
        if not verdicts[w].excluded:
            verdicts[w] = exclude_by_sum(w, p, candidates)
    stages["sum-argument"] = _still_possible(verdicts)

    if sublemma_oracle is not None and p.k >= 2:
        for w in range(d, min(2 * d, n + 1)):
            if verdicts[w].excluded or w not in chains:
                continue
            nodes = [CodeParams.from_dict(node) for node in chains[w]["nodes"][:sublemma_steps]]
            justification = None
            for ask in (sublemma_oracle.known, sublemma_oracle.attempt):
                for node in nodes:
                    justification = _proved_node(node, table, ask)
                    if justification is not None:
                        break
                if justification is not None:
                    break
            if justification is not None:
                logger.debug("%s: weight %d excluded through %s", p, w, justification["lemmas"])
                verdicts[w] = _excluded(w, "sublemma", **justification)
    stages["sublemma"] = _still_possible(verdicts)
    logger.info("%s: possible weights %s", p, list(stages["sublemma"]))

    ordered = {w: verdicts[w] for w in range(1, n + 1)}
    return CandidateReport(p, ordered, stages, parity.active)


def _still_possible(verdicts: dict) -> tuple:
    return tuple(sorted(w for w, v in verdicts.items() if not v.excluded))


# debugging and testing
if __name__ == "__main__":
    from LinCodeProver.boundsTables import load_fixture
    report = candidate_weights(CodeParams(1988, 12, 992), load_fixture())
    print(report.stages["descent"])
    print(report.possible)

# --------------------------------------------------------------------------
                    # LinCodeProver: non-existence proofs for linear codes
# --------------------------------------------------------------------------

"""
The non-existence pipeline for a binary [n, k, d] code and the replay of its
certificates.

Pipeline of prove():
    1. Griesmer bound and table lookup (terminal when violated);
    2. parity restriction;
    3. candidate_weights, with descent nodes offered to a sub-lemma oracle that
       proves them recursively (depth limited, memoised per invocation);
    4. terminal if the minimum weight d itself was excluded;
    5. dual_a1_zero;
    6. at most two weights left: moment_solve_small;
    7. otherwise (or when the moments leave a solution) the feasibility search,
       with A_1^dual = 0 when proven and as a bounded unknown when not.

Classes:
--------
ProverConfig, Prover, VerifyResult.

Functions:
---------
prove(p: CodeParams, table: BoundsTable, cfg: ProverConfig = None) -> ProofCertificate
verify(cert: ProofCertificate, table: BoundsTable) -> VerifyResult
implied_bound(cert: ProofCertificate) -> int or None
"""

import logging
import math
from dataclasses import dataclass, field

from LinCodeProver.boundsTables import BoundsTable, CodeParams, descent_chain, griesmer_length
from LinCodeProver.exclusionEngine import (RULES, candidate_weights, dual_a1_zero, even_weight_restriction,
                                           node_distance_range)
from LinCodeProver.feasibilitySearch import FeasibilityProblem, SearchConfig, build_problem, search
from LinCodeProver.proofCertificate import ProofCertificate, ProofStep, _canonical
from LinCodeProver.spectra import moment_solve_small
from LinCodeProver.utils import (TOOL_VERSION, BudgetExhausted, CertificateError, FingerprintMismatch,
                                 PreconditionError)

logger = logging.getLogger(__name__)

DAY = 24 * 3600.0


@dataclass(frozen=True)
class ProverConfig:
    """
    recurse: depth of recursive sub-lemma proofs;
    sublemma_steps: leading descent nodes of each weight offered to the sub-lemma oracle;
    sublemma_max_weights: a node with more possible weights below 2d is left undecided
        without a recursive attempt;
    sublemma_search: whether recursive proofs may run the feasibility search;
    search_unknown_a1: run the final search with A_1^dual unknown when A_1^dual = 0
        is not proven;
    search: SearchConfig of the final search.
    """
    recurse: int = 3
    sublemma_steps: int = 2
    sublemma_max_weights: int = 4
    sublemma_search: bool = False
    search_unknown_a1: bool = True
    search: SearchConfig = field(default_factory=lambda: SearchConfig(time_budget=DAY))

    def to_dict(self) -> dict:
        return {"recurse": self.recurse, "sublemma_steps": self.sublemma_steps,
                "sublemma_max_weights": self.sublemma_max_weights, "sublemma_search": self.sublemma_search,
                "search_unknown_a1": self.search_unknown_a1, "search": self.search.to_dict()}

    @classmethod
    def from_dict(cls, data: dict) -> "ProverConfig":
        data = dict(data)
        if "search" in data:
            data["search"] = SearchConfig.from_dict(data["search"])
        return cls(**data)


class _ProverOracle:
    """Sub-lemma oracle of one _prove call; attempts recurse one level deeper."""
    def __init__(self, prover: "Prover", depth: int):
        self.prover = prover
        self.depth = depth

    def known(self, params: CodeParams):
        return self.prover._known(params)

    def attempt(self, params: CodeParams):
        if self.depth <= 0:
            return None
        return self.prover._attempt(params, self.depth - 1)


class Prover:
    """
    Runs the pipeline against one bounds table.

    Class instance attributes
    ----------
    self.table: BoundsTable, consulted by every rule;
    self.cfg: ProverConfig;
    self.implied: BoundsTable, self.table overlaid with the bounds proved lemmas imply
        (provenance = lemma identifier);
    self.lemmas: dict identifier -> ProofCertificate of every proved lemma;
    self._undecided: dict CodeParams -> deepest recursion depth tried without success.

    Methods
    -------
    prove(self, p: CodeParams) -> ProofCertificate
        Fresh memo per call; the certificate embeds the lemmas it cites.
    candidate_report(self, p: CodeParams) -> CandidateReport
    """
    def __init__(self, table: BoundsTable, cfg: ProverConfig = None):
        self.table = table
        self.cfg = cfg or ProverConfig()
        self._fingerprint = table.fingerprint()
        self._reset()

    def _reset(self) -> None:
        self.implied = self.table
        self.lemmas = {}
        self._undecided = {}

    def prove(self, p: CodeParams) -> ProofCertificate:
        self._reset()
        cert = self._prove(p, self.cfg.recurse, search_allowed=True)
        cert = cert.with_lemmas(self._cited_lemmas(cert))
        logger.info("%s: %s (%s)", p, cert.verdict, cert.reason)
        return cert

    def candidate_report(self, p: CodeParams):
        """candidate_weights with the recursive sub-lemma oracle at the configured depth."""
        self._reset()
        return candidate_weights(p, self.table, _ProverOracle(self, self.cfg.recurse), self.cfg.sublemma_steps)

    def _cited_lemmas(self, cert: ProofCertificate) -> dict:
        cited, pending = {}, [cert]
        while pending:
            current = pending.pop()
            for step in current.steps:
                for citation in step.citations:
                    if isinstance(citation, str) and citation not in cited:
                        cited[citation] = self.lemmas[citation]
                        pending.append(cited[citation])
        return cited

    def _known(self, params: CodeParams):
        entry = self.implied.entry(params.n, params.k)
        if entry is not None and entry.provenance in self.lemmas and params.d > entry.dmax:
            return entry.provenance
        return None

    def _attempt(self, params: CodeParams, depth: int):
        known = self._known(params)
        if known is not None:
            return known
        tried = self._undecided.get(params)
        if tried is not None and tried >= depth:
            return None
        cheap = candidate_weights(params, self.table)
        below = cheap.possible_below(2 * params.d)
        if len(below) > self.cfg.sublemma_max_weights:
            logger.debug("sub-lemma %s skipped: %d weights below 2d", params, len(below))
            self._undecided[params] = math.inf
            return None
        logger.debug("sub-lemma %s attempted at depth %d", params, depth)
        cert = self._prove(params, depth, search_allowed=self.cfg.sublemma_search)
        if not cert.nonexistent:
            self._undecided[params] = depth
            return None
        self.lemmas[cert.id] = cert
        self.implied = self.implied.overlay(params.n, params.k, params.d - 1, cert.id)
        logger.info("lemma %s proved: %s", cert.id, cert.reason)
        return cert.id

    def _certificate(self, p: CodeParams, verdict: str, steps: list, reason: str) -> ProofCertificate:
        return ProofCertificate(p, verdict, tuple(steps), reason, {}, self.cfg.to_dict(), self._fingerprint,
                                TOOL_VERSION)

    def _prove(self, p: CodeParams, depth: int, search_allowed: bool) -> ProofCertificate:
        p.validate()
        if p.q != 2:
            raise PreconditionError(f"{p}: the prover handles binary codes only")
        steps = []
        inputs = {"params": p.to_dict()}

        length = griesmer_length(p.k, p.d)
        if length > p.n:
            steps.append(ProofStep("griesmer", inputs, {"contradiction": True, "griesmer_length": length,
                                                        "summary": f"Griesmer length {length} > {p.n}"}))
            return self._certificate(p, "nonexistent", steps, "Griesmer bound")
        entry = self.table.entry(p.n, p.k)
        if entry is not None and p.d > entry.dmax:
            steps.append(ProofStep("table", inputs, {"contradiction": True, "dmax": entry.dmax,
                                                     "provenance": entry.provenance,
                                                     "summary": f"dmax({p.n},{p.k}) = {entry.dmax}"}))
            return self._certificate(p, "nonexistent", steps, f"table bound ({entry.provenance})")

        parity = even_weight_restriction(p)
        steps.append(ProofStep("parity", inputs, {"odd_weights_excluded": parity.active, "summary": repr(parity)}))

        report = candidate_weights(p, self.table, _ProverOracle(self, depth), self.cfg.sublemma_steps)
        sublemmas = report.sublemma_exclusions()
        references = sorted({ref for justification in sublemmas.values() for ref in justification["lemmas"]})
        possible = list(report.possible)
        steps.append(ProofStep(
            "candidate-weights",
            {"params": p.to_dict(), "sublemma_steps": self.cfg.sublemma_steps},
            {"possible": possible,
             "excluded": {rule: len(report.excluded_by(rule)) for rule in RULES},
             "sublemma": [dict(justification, weight=w) for w, justification in sorted(sublemmas.items())],
             "summary": f"possible weights {possible}"},
            (len(steps) - 1,) + tuple(references)))
        weights_step = len(steps) - 1

        if p.d not in report.possible:
            rule = report.verdicts[p.d].rule
            steps.append(ProofStep("minimum-weight-excluded", inputs,
                                   {"contradiction": True, "rule": rule, "summary": f"weight {p.d} excluded by {rule}"},
                                   (weights_step,)))
            return self._certificate(p, "nonexistent", steps, f"minimum weight excluded ({rule})")

        dual = dual_a1_zero(p, self.table)
        steps.append(ProofStep("dual-a1-zero", inputs, {"proven": dual.proven, "reason": dual.reason,
                                                        "summary": dual.reason}))
        dual_step = len(steps) - 1

        if len(possible) <= 2:
            verdict = moment_solve_small(p.n, p.k, possible)
            steps.append(ProofStep(
                "moment", {"n": p.n, "k": p.k, "weights": possible},
                {"contradiction": verdict.infeasible, "status": verdict.status,
                 "counts": [verdict.count_expression(w) for w in verdict.weights],
                 "relation": verdict.relation_expression(), "reason": verdict.reason,
                 "summary": f"{verdict.status}: {verdict.reason}"},
                (weights_step,)))
            if verdict.infeasible:
                return self._certificate(p, "nonexistent", steps, f"moments: {verdict.reason}")

        if not search_allowed:
            return self._certificate(p, "undecided", steps, f"{len(possible)} weights remain, search not run")
        if not dual.proven and not self.cfg.search_unknown_a1:
            return self._certificate(p, "undecided", steps, "A_1^dual = 0 not proven, search not run")

        problem = build_problem(p, possible, 0 if dual.proven else None)
        citations = (weights_step, dual_step) if dual.proven else (weights_step,)
        search_inputs = {"problem": problem.to_dict(), "config": self.cfg.search.to_dict()}
        try:
            result = search(problem, self.cfg.search)
        except BudgetExhausted as err:
            steps.append(ProofStep("feasibility-search", search_inputs,
                                   {"contradiction": False, "status": "budget-exhausted", "counters": err.counters,
                                    "summary": str(err)}, citations))
            return self._certificate(p, "undecided", steps, f"feasibility search: {err}")

        conclusion = {"contradiction": not result.feasible, "status": result.status, "record": result.record,
                      "replay": "re-executed", "summary": result.summary()}
        if result.feasible:
            conclusion["witness"] = {str(w): c for w, c in result.witness.items()}
        steps.append(ProofStep("feasibility-search", search_inputs, conclusion, citations))
        if result.feasible:
            return self._certificate(p, "undecided", steps, "the MacWilliams system has an integral solution")
        return self._certificate(p, "nonexistent", steps, "the MacWilliams system has no integral solution")


def prove(p: CodeParams, table: BoundsTable, cfg: ProverConfig = None) -> ProofCertificate:
    """
    Attempts to prove that no binary linear [n, k, d] code exists.

    Parameters:
    -----------
    p: CodeParams, the target;
    table: BoundsTable;
    cfg: ProverConfig or None for the defaults;

    Returns:
    --------
    ProofCertificate with verdict 'nonexistent' or 'undecided'.
    """
    return Prover(table, cfg).prove(p)


def implied_bound(cert: ProofCertificate):
    """Non-existence of [n, k, d] bounds every binary linear [n, k] code by d - 1."""
    return cert.target.d - 1 if cert.nonexistent else None


@dataclass(frozen=True)
class VerifyResult:
    passed: bool
    step: str = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.passed

    def __str__(self) -> str:
        if self.passed:
            return f"verified: {self.message}"
        return f"failed at {self.step}: {self.message}"


class _Replayer:
    """
    Re-derives every recorded step from the bounds table. Lemmas are replayed once
    and cached by identifier.
    """
    def __init__(self, table: BoundsTable, lemmas: dict):
        self.table = table
        self.lemmas = lemmas
        self._verified = {}

    def replay(self, cert: ProofCertificate):
        if cert.verdict == "undecided" and cert.terminal_step is not None:
            return VerifyResult(False, f"{cert.id}#verdict", "terminal contradiction recorded with verdict undecided")
        for index, step in enumerate(cert.steps):
            handler = getattr(self, "_" + step.rule.replace("-", "_"))
            try:
                problem = handler(cert, step)
            except (KeyError, TypeError, ValueError) as err:
                problem = f"unreadable step data: {err}"
            if problem is not None:
                logger.info("replay of %s step %d (%s) failed: %s", cert.id, index, step.rule, problem)
                return VerifyResult(False, f"{cert.id}#{index}", f"{step.rule}: {problem}")
        return None

    def _lemma(self, reference: str):
        if reference not in self._verified:
            lemma = self.lemmas.get(reference)
            if lemma is None:
                self._verified[reference] = VerifyResult(False, reference, "lemma missing")
            else:
                self._verified[reference] = self.replay(lemma) or VerifyResult(True, None, reference)
        return self._verified[reference]

    @staticmethod
    def _target(cert: ProofCertificate, step: ProofStep) -> CodeParams:
        params = CodeParams.from_dict(step.inputs["params"])
        if params != cert.target:
            raise ValueError(f"step parameters {params} differ from the target {cert.target}")
        return params

    def _griesmer(self, cert, step):
        p = self._target(cert, step)
        length = griesmer_length(p.k, p.d)
        if step.conclusion.get("griesmer_length") != length or step.conclusion.get("contradiction") != (length > p.n):
            return f"recomputed Griesmer length {length}"
        return None

    def _table(self, cert, step):
        p = self._target(cert, step)
        dmax = self.table.lookup(p.n, p.k)
        if dmax is None or step.conclusion.get("dmax") != dmax or not p.d > dmax:
            return f"table gives dmax({p.n},{p.k}) = {dmax}"
        return None

    def _parity(self, cert, step):
        p = self._target(cert, step)
        if step.conclusion.get("odd_weights_excluded") != even_weight_restriction(p).active:
            return "parity restriction differs"
        return None

    def _candidate_weights(self, cert, step):
        p = self._target(cert, step)
        depth_nodes = int(step.inputs["sublemma_steps"])
        report = candidate_weights(p, self.table)
        recorded = step.conclusion["sublemma"]
        for entry in recorded:
            w = entry["weight"]
            if w not in report.possible:
                return f"weight {w} is not possible before the sub-lemma stage"
            node = CodeParams.from_dict(entry["node"])
            if node not in descent_chain(p, w, self.table).nodes[:depth_nodes]:
                return f"{node} is not among the first {depth_nodes} descent nodes for weight {w}"
            low, high = node_distance_range(node, self.table)
            if list(entry["d_range"]) != [low, high] or len(entry["lemmas"]) != high - low + 1:
                return f"distance range of {node} is [{low}, {high}]"
            for d, reference in zip(range(low, high + 1), entry["lemmas"]):
                if reference not in step.citations:
                    return f"lemma {reference} used but not cited"
                lemma = self.lemmas.get(reference)
                if lemma is None or (lemma.target.n, lemma.target.k) != (node.n, node.k) or lemma.target.d > d \
                        or not lemma.nonexistent:
                    return f"lemma {reference} does not exclude {node.with_d(d)}"
                outcome = self._lemma(reference)
                if not outcome:
                    return f"lemma {reference} fails: {outcome}"
        removed = {entry["weight"] for entry in recorded}
        possible = [w for w in report.possible if w not in removed]
        if possible != step.conclusion["possible"]:
            return f"recomputed possible weights {possible}"
        excluded = {rule: len(report.excluded_by(rule)) for rule in RULES}
        excluded["sublemma"] = len(removed)
        if excluded != step.conclusion["excluded"]:
            return f"recomputed exclusion counts {excluded}"
        return None

    def _cited_weights(self, cert, step) -> list:
        for citation in step.citations:
            if isinstance(citation, int) and cert.steps[citation].rule == "candidate-weights":
                return cert.steps[citation].conclusion["possible"]
        raise ValueError("no candidate-weights step cited")

    def _minimum_weight_excluded(self, cert, step):
        p = self._target(cert, step)
        if p.d in self._cited_weights(cert, step):
            return f"weight {p.d} is still possible"
        return None

    def _dual_a1_zero(self, cert, step):
        p = self._target(cert, step)
        if step.conclusion.get("proven") != dual_a1_zero(p, self.table).proven:
            return "A_1^dual = 0 deduction differs"
        return None

    def _moment(self, cert, step):
        weights = step.inputs["weights"]
        if weights != self._cited_weights(cert, step) or (step.inputs["n"], step.inputs["k"]) != (cert.target.n, cert.target.k):
            return "moment inputs differ from the certified weights"
        verdict = moment_solve_small(step.inputs["n"], step.inputs["k"], weights)
        recomputed = {"status": verdict.status, "relation": verdict.relation_expression(),
                      "counts": [verdict.count_expression(w) for w in verdict.weights],
                      "contradiction": verdict.infeasible}
        for key, value in recomputed.items():
            if step.conclusion.get(key) != value:
                return f"{key} recomputes to {value!r}"
        return None

    def _feasibility_search(self, cert, step):
        problem = FeasibilityProblem.from_dict(step.inputs["problem"])
        if problem.params != cert.target or list(problem.weights) != self._cited_weights(cert, step):
            return "search problem differs from the certified weights"
        if problem.a1_dual is not None:
            dual_steps = [cert.steps[c] for c in step.citations
                          if isinstance(c, int) and cert.steps[c].rule == "dual-a1-zero"]
            if problem.a1_dual != 0 or not dual_steps or not dual_steps[0].conclusion.get("proven"):
                return "A_1^dual fixed without a proven deduction"
        if step.conclusion.get("status") == "budget-exhausted":
            return "budget exhausted, nothing established" if step.conclusion.get("contradiction") else None
        try:
            result = search(problem, SearchConfig.from_dict(step.inputs["config"]))
        except BudgetExhausted as err:
            return f"replay ran out of budget: {err}"
        if result.status != step.conclusion.get("status") or step.conclusion.get("contradiction") == result.feasible:
            return f"search recomputes to {result.status}"
        if result.feasible:
            if {str(w): c for w, c in result.witness.items()} != step.conclusion.get("witness"):
                return "witness differs"
        elif _canonical(result.record) != step.conclusion.get("record"):
            return "exhaustion record differs"
        return None


def verify(cert: ProofCertificate, table: BoundsTable) -> VerifyResult:
    """
    Replays every step of the certificate and of its lemmas against the table.

    Parameters:
    -----------
    cert: ProofCertificate;
    table: BoundsTable, must be the table the certificate was produced with;

    Returns:
    --------
    VerifyResult naming the first failing step ('<target>#<index>'); raises
    FingerprintMismatch for another table and CertificateError for a malformed
    certificate.
    """
    if cert.table_fingerprint != table.fingerprint():
        raise FingerprintMismatch(f"certificate was produced with table {cert.table_fingerprint[:12]}, "
                                  f"got {table.fingerprint()[:12]}")
    cert.check_structure()
    for lemma in cert.lemmas.values():
        if lemma.table_fingerprint != cert.table_fingerprint:
            raise CertificateError(f"lemma {lemma.id} was produced with another table")
    failure = _Replayer(table, cert.lemmas).replay(cert)
    if failure is not None:
        return failure
    if cert.recorded_digest is not None and cert.recorded_digest != cert.digest():
        return VerifyResult(False, "digest", "content differs from the recorded digest")
    return VerifyResult(True, None, f"{len(cert.steps)} steps and {len(cert.lemmas)} lemmas replayed")


# debugging and testing
if __name__ == "__main__":
    from LinCodeProver.boundsTables import load_fixture
    fixture = load_fixture()
    certificate = prove(CodeParams(324, 10, 160), fixture)
    print(certificate.summary())
    print(verify(certificate, fixture))

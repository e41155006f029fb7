# --------------------------------------------------------------------------
                    # LinCodeProver: non-existence proofs for linear codes
# --------------------------------------------------------------------------

"""
Proof certificates and their JSON form (schema in docs/certificate_schema.md).

A certificate lists the steps of one proof attempt in the order they were taken.
Every step names its rule, the inputs needed to replay it, its conclusion and the
earlier steps (by index) or lemmas (by identifier, e.g. "[324,10,160]") it relies
on. Lemma certificates are kept flat in the `lemmas` map of the top level
certificate. The certificate carries no timestamps, so equal runs give equal
bytes.

Classes:
--------
ProofStep, ProofCertificate.
"""

import json
import logging
from dataclasses import dataclass, field, replace

from LinCodeProver.boundsTables import CodeParams
from LinCodeProver.utils import TOOL_VERSION, CertificateError, fingerprint

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
VERDICTS = ("nonexistent", "undecided")
STEP_RULES = ("griesmer", "table", "parity", "candidate-weights", "minimum-weight-excluded",
              "dual-a1-zero", "moment", "feasibility-search")
TERMINAL_RULES = ("griesmer", "table", "minimum-weight-excluded", "moment", "feasibility-search")


def _canonical(data):
    """JSON-native copy (tuples become lists, keys strings)."""
    return json.loads(json.dumps(data, sort_keys=True))


@dataclass(frozen=True)
class ProofStep:
    rule: str
    inputs: dict
    conclusion: dict
    citations: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "inputs", _canonical(self.inputs))
        object.__setattr__(self, "conclusion", _canonical(self.conclusion))
        object.__setattr__(self, "citations", tuple(self.citations))

    __hash__ = None

    @property
    def contradiction(self) -> bool:
        return self.rule in TERMINAL_RULES and bool(self.conclusion.get("contradiction"))

    def to_dict(self) -> dict:
        return {"rule": self.rule, "inputs": _canonical(self.inputs), "conclusion": _canonical(self.conclusion),
                "citations": list(self.citations)}

    @classmethod
    def from_dict(cls, data: dict) -> "ProofStep":
        try:
            return cls(data["rule"], data["inputs"], data["conclusion"], tuple(data.get("citations", ())))
        except (KeyError, TypeError) as err:
            raise CertificateError(f"malformed step: {err}") from err


@dataclass(frozen=True)
class ProofCertificate:
    """
    Class instance attributes
    ----------
    self.target: CodeParams, the parameters whose non-existence is claimed;
    self.verdict: str, 'nonexistent' or 'undecided';
    self.steps: tuple of ProofStep;
    self.reason: str, one line summary of the outcome;
    self.lemmas: dict id -> ProofCertificate, recursive lemmas (top level only);
    self.config: dict, the prover configuration used;
    self.table_fingerprint: str, sha256 of the bounds table;
    self.version: str, tool version;
    self.recorded_digest: str or None, the digest read from a file.

    Methods
    -------
    digest(self) -> str
        sha256 over the canonical JSON of the content (digest field excluded).
    to_json(self) -> str / from_json(text) -> ProofCertificate
    check_structure(self) -> None
        Raises CertificateError if citations point forward or to unknown lemmas,
        or if a 'nonexistent' verdict lacks a terminal contradiction step.
    """
    target: CodeParams
    verdict: str
    steps: tuple
    reason: str = ""
    lemmas: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)
    table_fingerprint: str = ""
    version: str = TOOL_VERSION
    recorded_digest: str = None

    __hash__ = None

    @property
    def id(self) -> str:
        return str(self.target)

    @property
    def nonexistent(self) -> bool:
        return self.verdict == "nonexistent"

    @property
    def terminal_step(self):
        return self.steps[-1] if self.steps and self.steps[-1].contradiction else None

    def with_lemmas(self, lemmas: dict) -> "ProofCertificate":
        return replace(self, lemmas=dict(sorted(lemmas.items())))

    def to_dict(self, include_digest: bool = True) -> dict:
        data = {"schema": SCHEMA_VERSION,
                "target": self.target.to_dict(),
                "verdict": self.verdict,
                "reason": self.reason,
                "steps": [step.to_dict() for step in self.steps],
                "lemmas": {key: lemma.to_dict(include_digest=False) for key, lemma in sorted(self.lemmas.items())},
                "config": _canonical(self.config),
                "table_fingerprint": self.table_fingerprint,
                "version": self.version}
        if include_digest:
            data["digest"] = self.digest()
        return data

    def digest(self) -> str:
        content = json.dumps(self.to_dict(include_digest=False), sort_keys=True, separators=(",", ":"))
        return fingerprint(content)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "ProofCertificate":
        try:
            if data.get("schema", SCHEMA_VERSION) != SCHEMA_VERSION:
                raise CertificateError(f"unsupported certificate schema {data.get('schema')}")
            verdict = data["verdict"]
            if verdict not in VERDICTS:
                raise CertificateError(f"unknown verdict {verdict!r}")
            steps = tuple(ProofStep.from_dict(step) for step in data["steps"])
            lemmas = {key: cls.from_dict(value) for key, value in data.get("lemmas", {}).items()}
            return cls(CodeParams.from_dict(data["target"]), verdict, steps, data.get("reason", ""), lemmas,
                       data.get("config", {}), data.get("table_fingerprint", ""), data.get("version", ""),
                       data.get("digest"))
        except (KeyError, TypeError, ValueError, AttributeError) as err:
            raise CertificateError(f"malformed certificate: {err}") from err

    @classmethod
    def from_json(cls, text: str) -> "ProofCertificate":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as err:
            raise CertificateError(f"certificate is not valid JSON: {err}") from err
        if not isinstance(data, dict):
            raise CertificateError("certificate must be a JSON object")
        return cls.from_dict(data)

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(self.to_json())
        logger.info("certificate for %s written to %s", self.target, path)

    @classmethod
    def load(cls, path) -> "ProofCertificate":
        try:
            with open(path, encoding="utf-8") as handle:
                return cls.from_json(handle.read())
        except OSError as err:
            raise CertificateError(f"cannot read certificate {path}: {err}") from err

    def check_structure(self, lemma_ids=None) -> None:
        lemma_ids = set(self.lemmas) if lemma_ids is None else set(lemma_ids)
        for index, step in enumerate(self.steps):
            if step.rule not in STEP_RULES:
                raise CertificateError(f"{self.id} step {index}: unknown rule {step.rule!r}")
            for citation in step.citations:
                if isinstance(citation, int):
                    if not 0 <= citation < index:
                        raise CertificateError(f"{self.id} step {index}: cites step {citation} which does not precede it")
                elif citation not in lemma_ids:
                    raise CertificateError(f"{self.id} step {index}: cites unknown lemma {citation!r}")
        if self.nonexistent and self.terminal_step is None:
            raise CertificateError(f"{self.id}: verdict nonexistent without a terminal contradiction step")
        for lemma in self.lemmas.values():
            lemma.check_structure(lemma_ids)

    def summary(self) -> str:
        lines = [f"{self.target}: {self.verdict} ({self.reason})"]
        for index, step in enumerate(self.steps):
            lines.append(f"  {index}. {step.rule}: {step.conclusion.get('summary', '')}")
        for key in sorted(self.lemmas):
            lines.append(f"  lemma {key}: {self.lemmas[key].verdict} ({self.lemmas[key].reason})")
        return "\n".join(lines)

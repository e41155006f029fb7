import json

import pytest

from LinCodeProver.boundsTables import CodeParams
from LinCodeProver.proofCertificate import SCHEMA_VERSION, ProofCertificate, ProofStep
from LinCodeProver.utils import CertificateError

LEMMA = CodeParams(324, 10, 160)
TARGET = CodeParams(644, 11, 320)


def _griesmer_step(p: CodeParams, contradiction: bool = True) -> ProofStep:
    return ProofStep("griesmer", {"params": p.to_dict()}, {"contradiction": contradiction, "summary": "test"})


def _lemma() -> ProofCertificate:
    return ProofCertificate(LEMMA, "nonexistent", (_griesmer_step(LEMMA),), "lemma", table_fingerprint="abc")


def _certificate(**changes) -> ProofCertificate:
    steps = (ProofStep("parity", {"params": TARGET.to_dict()}, {"odd_weights_excluded": True}),
             ProofStep("candidate-weights", {"params": TARGET.to_dict(), "sublemma_steps": 2},
                       {"possible": (320,), "summary": "one weight"}, (0, str(LEMMA))),
             ProofStep("minimum-weight-excluded", {"params": TARGET.to_dict()}, {"contradiction": True}, (1,)))
    fields = dict(target=TARGET, verdict="nonexistent", steps=steps, reason="test", lemmas={str(LEMMA): _lemma()},
                  config={"recurse": 1}, table_fingerprint="abc")
    fields.update(changes)
    return ProofCertificate(**fields)


def test_step_canonical_form():
    step = ProofStep("candidate-weights", {"weights": (1, 2)}, {"excluded": {3: "x"}}, [0])
    assert step.inputs == {"weights": [1, 2]}
    assert step.conclusion == {"excluded": {"3": "x"}}
    assert step.citations == (0,)
    assert ProofStep.from_dict(step.to_dict()) == step


def test_step_contradiction():
    assert ProofStep("moment", {}, {"contradiction": True}).contradiction
    assert not ProofStep("moment", {}, {"contradiction": False}).contradiction
    assert not ProofStep("parity", {}, {"contradiction": True}).contradiction
    with pytest.raises(CertificateError):
        ProofStep.from_dict({"rule": "parity"})


def test_certificate_properties():
    cert = _certificate()
    assert cert.id == "[644,11,320]"
    assert cert.nonexistent
    assert cert.terminal_step is cert.steps[-1]
    assert _certificate(verdict="undecided", steps=cert.steps[:2]).terminal_step is None


def test_json_round_trip():
    cert = _certificate()
    text = cert.to_json()
    back = ProofCertificate.from_json(text)
    assert back.to_json() == text
    assert back.recorded_digest == cert.digest()
    assert json.loads(text)["schema"] == SCHEMA_VERSION
    assert set(json.loads(text)) == {"schema", "target", "verdict", "reason", "steps", "lemmas", "config",
                                     "table_fingerprint", "version", "digest"}


def test_digest_covers_the_content():
    cert = _certificate()
    assert "digest" not in cert.to_dict(include_digest=False)
    assert cert.digest() == _certificate().digest()
    assert cert.digest() != _certificate(reason="other").digest()
    assert cert.digest() != _certificate(table_fingerprint="abd").digest()


def test_edits_to_exported_dicts_leave_the_certificate_unchanged():
    cert = _certificate()
    text, digest = cert.to_json(), cert.digest()
    data = cert.to_dict()
    data["steps"][1]["conclusion"]["possible"].append(352)
    data["steps"][0]["inputs"]["params"]["n"] = 1
    data["lemmas"][str(LEMMA)]["steps"][0]["conclusion"]["contradiction"] = False
    data["config"]["recurse"] = 5
    assert cert.steps[1].conclusion["possible"] == [320]
    assert cert.to_json() == text and cert.digest() == digest
    assert cert.lemmas[str(LEMMA)].nonexistent and cert.lemmas[str(LEMMA)].steps[0].contradiction


def test_lemmas_are_stored_flat():
    data = _certificate().to_dict()
    assert list(data["lemmas"]) == ["[324,10,160]"]
    assert "digest" not in data["lemmas"]["[324,10,160]"]
    assert data["lemmas"]["[324,10,160]"]["lemmas"] == {}


@pytest.mark.parametrize("text", [
    "not json",
    "[1, 2]",
    json.dumps({"schema": SCHEMA_VERSION + 1, "verdict": "nonexistent"}),
    json.dumps({"verdict": "maybe", "steps": [], "target": {"n": 7, "k": 4, "d": 3}}),
    json.dumps({"verdict": "undecided", "target": {"n": 7, "k": 4, "d": 3}}),
])
def test_from_json_rejects(text):
    with pytest.raises(CertificateError):
        ProofCertificate.from_json(text)


def test_check_structure_accepts_a_valid_certificate():
    _certificate().check_structure()


def test_check_structure_rejects():
    cert = _certificate()
    forward = cert.steps[:1] + (ProofStep("candidate-weights", {}, {}, (1,)),) + cert.steps[2:]
    with pytest.raises(CertificateError, match="does not precede"):
        _certificate(steps=forward).check_structure()
    with pytest.raises(CertificateError, match="unknown lemma"):
        _certificate(lemmas={}).check_structure()
    with pytest.raises(CertificateError, match="terminal"):
        _certificate(steps=cert.steps[:2]).check_structure()
    with pytest.raises(CertificateError, match="unknown rule"):
        _certificate(steps=(ProofStep("guess", {}, {}),) + cert.steps[1:]).check_structure()


def test_write_and_load(tmp_path):
    path = tmp_path / "cert.json"
    cert = _certificate()
    cert.write(path)
    assert ProofCertificate.load(path).to_json() == cert.to_json()
    with pytest.raises(CertificateError):
        ProofCertificate.load(tmp_path / "missing.json")


def test_with_lemmas_and_summary():
    cert = _certificate(lemmas={}).with_lemmas({"[b]": _lemma(), "[a]": _lemma()})
    assert list(cert.lemmas) == ["[a]", "[b]"]
    lines = _certificate().summary().splitlines()
    assert lines[0] == "[644,11,320]: nonexistent (test)"
    assert lines[2] == "  1. candidate-weights: one weight"
    assert lines[-1] == "  lemma [324,10,160]: nonexistent (lemma)"

import pytest

from LinCodeProver.boundsTables import CodeParams, import_bounds
from LinCodeProver.feasibilitySearch import SearchConfig
from LinCodeProver.proofCertificate import ProofCertificate
from LinCodeProver.prover import Prover, ProverConfig, implied_bound, prove, verify
from LinCodeProver.smallCodes import random_even_spanned_code
from LinCodeProver.utils import FingerprintMismatch, PreconditionError

LEMMA_ONE = CodeParams(324, 10, 160)


@pytest.fixture(scope="module")
def lemma_one(fixture_table):
    return prove(LEMMA_ONE, fixture_table)


def test_lemma_324(lemma_one):
    assert lemma_one.nonexistent
    assert [step.rule for step in lemma_one.steps] == ["parity", "candidate-weights", "dual-a1-zero", "moment"]
    assert lemma_one.steps[1].conclusion["possible"] == [160]
    assert "not an integer" in lemma_one.steps[-1].conclusion["reason"]
    assert implied_bound(lemma_one) == 159


def test_lemma_356(fixture_table):
    cert = prove(CodeParams(356, 10, 176), fixture_table)
    assert cert.nonexistent
    moment = cert.terminal_step
    assert moment.rule == "moment"
    assert moment.conclusion["relation"] == "12*A1 + A2 = -56"
    assert "A_192 = 139 - 32*A1" in moment.conclusion["counts"]


def test_lemma_772(fixture_table):
    cert = prove(CodeParams(772, 11, 384), fixture_table)
    assert cert.nonexistent
    assert cert.terminal_step.rule == "moment"


def test_lemma_836_uses_sub_lemmas(fixture_table):
    cert = prove(CodeParams(836, 11, 416), fixture_table)
    assert cert.nonexistent
    assert cert.lemmas and set(cert.steps[1].citations[1:]) <= set(cert.lemmas)
    assert all(lemma.nonexistent for lemma in cert.lemmas.values())
    assert verify(cert, fixture_table)


def test_verify_lemma(lemma_one, fixture_table):
    result = verify(lemma_one, fixture_table)
    assert result.passed
    assert str(result).startswith("verified")


def test_verify_detects_tampering(lemma_one, fixture_table):
    data = lemma_one.to_dict()
    data["steps"][1]["conclusion"]["possible"] = [162]
    result = verify(ProofCertificate.from_dict(data), fixture_table)
    assert not result.passed
    assert result.step == "[324,10,160]#1"


def test_verify_detects_edited_reason(lemma_one, fixture_table):
    data = lemma_one.to_dict()
    data["reason"] = "edited"
    result = verify(ProofCertificate.from_dict(data), fixture_table)
    assert not result.passed and result.step == "digest"


def test_verify_needs_the_same_table(lemma_one):
    with pytest.raises(FingerprintMismatch):
        verify(lemma_one, import_bounds("250,9,122,x\n"))


def test_certificates_are_reproducible(lemma_one, fixture_table):
    assert prove(LEMMA_ONE, fixture_table).to_json() == lemma_one.to_json()
    assert ProofCertificate.from_json(lemma_one.to_json()).to_json() == lemma_one.to_json()


def test_griesmer_and_table_steps(fixture_table, empty_table):
    griesmer = prove(CodeParams(7, 4, 4), empty_table)
    assert griesmer.nonexistent and griesmer.steps[0].rule == "griesmer"
    assert implied_bound(griesmer) == 3
    assert verify(griesmer, empty_table)
    table = prove(CodeParams(250, 9, 123), fixture_table)
    assert table.nonexistent and table.steps[0].rule == "table"
    assert verify(table, fixture_table)


def test_hamming_code_stays_undecided(empty_table):
    cert = prove(CodeParams(7, 4, 3), empty_table)
    assert cert.verdict == "undecided"
    assert implied_bound(cert) is None
    last = cert.steps[-1]
    assert last.rule == "feasibility-search"
    assert last.conclusion["witness"] == {"0": 1, "3": 7, "4": 7, "7": 1}
    assert last.conclusion["replay"] == "re-executed"
    assert verify(cert, empty_table)


def test_repetition_code_stays_undecided(empty_table):
    cert = prove(CodeParams(5, 1, 5), empty_table)
    assert cert.verdict == "undecided"
    assert cert.steps[1].conclusion["possible"] == [5]
    assert cert.steps[-1].conclusion["witness"] == {"0": 1, "5": 1}
    assert verify(cert, empty_table)


def test_one_dimensional_targets(small_table):
    prover = Prover(small_table)
    assert not prover.prove(CodeParams(8, 1, 3)).nonexistent
    assert prover.prove(CodeParams(8, 1, 9)).nonexistent


def test_budget_exhaustion_is_undecided(empty_table):
    cfg = ProverConfig(search=SearchConfig(node_budget=0))
    cert = prove(CodeParams(7, 4, 3), empty_table, cfg)
    assert cert.verdict == "undecided"
    assert cert.steps[-1].conclusion["status"] == "budget-exhausted"
    assert verify(cert, empty_table)


def test_non_binary_targets_are_rejected(empty_table):
    with pytest.raises(PreconditionError):
        prove(CodeParams(6, 3, 4, q=4), empty_table)


def test_existing_codes_are_never_refuted(rng, small_table):
    prover = Prover(small_table)
    checked = 0
    for _ in range(80):
        n = int(rng.integers(4, 9))
        k = int(rng.integers(1, min(4, n - 1) + 1))
        d = int(rng.integers(2, n // 2 + 1))
        try:
            random_even_spanned_code(n, k, d, rng, attempts=20)
        except PreconditionError:
            continue
        checked += 1
        assert not prover.prove(CodeParams(n, k, d)).nonexistent
    assert checked > 10


def test_prover_config_round_trip():
    cfg = ProverConfig(recurse=1, sublemma_search=True, search=SearchConfig(workers=2))
    assert ProverConfig.from_dict(cfg.to_dict()) == cfg


def test_candidate_report_with_sub_lemmas(fixture_table):
    report = Prover(fixture_table).candidate_report(CodeParams(1988, 12, 992))
    assert report.possible == (992, 1008, 1024, 1056, 1088)


@pytest.mark.slow
def test_1988_12_992(fixture_table):
    cert = prove(CodeParams(1988, 12, 992), fixture_table)
    assert cert.nonexistent
    assert cert.steps[1].conclusion["possible"] == [992, 1008, 1024, 1056, 1088]
    assert cert.terminal_step.rule == "feasibility-search"
    assert set(cert.lemmas) >= {"[324,10,160]", "[356,10,176]", "[836,11,416]"}
    assert implied_bound(cert) == 991
    assert verify(cert, fixture_table)

import numpy as np
import pytest

from LinCodeProver.boundsTables import CodeParams
from LinCodeProver.proofCertificate import ProofCertificate, ProofStep
from LinCodeProver.utils import ContractViolation, DomainError
from LinCodeProver.z4Gray import (BTL_TABLE, KHAT6, KHAT6_SPECTRUM, GrayImageRecord, Z4Word, btl_from_certificate,
                                  btl_statement, btl_table_verdicts, gray_map, hamming_weight, kerdock_params,
                                  lee_distance, lee_weight, preparata_gray_params)


def test_lee_weight():
    assert lee_weight([]) == 0
    assert lee_weight([2]) == 2
    assert lee_weight([1, 2, 3]) == 4
    assert lee_weight(Z4Word.parse("3,3,0")) == 2


def test_gray_map():
    assert gray_map([2]).tolist() == [1, 1]
    assert gray_map([1, 3]).tolist() == [1, 0, 0, 1]
    assert gray_map([0, 0]).tolist() == [0, 0, 0, 0]
    assert gray_map([]).size == 0


def test_symbols_are_checked():
    with pytest.raises(DomainError):
        Z4Word((0, 4))
    with pytest.raises(DomainError):
        Z4Word.parse("1,x")
    with pytest.raises(DomainError):
        lee_distance([1, 2], [1])


def test_gray_isometry(rng):
    for _ in range(10 ** 4):
        n = int(rng.integers(1, 65))
        x = rng.integers(0, 4, size=n)
        y = rng.integers(0, 4, size=n)
        assert np.count_nonzero(gray_map(x) != gray_map(y)) == lee_distance(x, y)


def test_weight_correspondence(rng):
    for _ in range(500):
        word = rng.integers(0, 4, size=int(rng.integers(0, 40)))
        assert hamming_weight(gray_map(word)) == lee_weight(word)


def test_kerdock_params():
    assert (kerdock_params(3).length, kerdock_params(3).size, kerdock_params(3).lee_distance) == (57, 4 ** 4, 56)
    five = kerdock_params(5)
    assert (five.length, five.size, five.lee_distance) == (994, 4 ** 6, 992)
    assert five.gray.linear_params() == (1988, 12, 992)
    seven = kerdock_params(7)
    assert (seven.length, seven.size, seven.lee_distance) == (16260, 4 ** 8, 16256)
    for k in (1, 4, 6):
        with pytest.raises(DomainError):
            kerdock_params(k)


def test_khat6_spectrum():
    assert sum(KHAT6_SPECTRUM.values()) == 4096
    assert min(w for w in KHAT6_SPECTRUM if w > 0) == 992
    assert KHAT6.linear_params() == (1988, 12, 992)
    assert str(KHAT6) == "(1988, 2^12, 992)"


def test_gray_image_record_contract():
    with pytest.raises(ContractViolation):
        GrayImageRecord(10, 12, 3)
    with pytest.raises(ContractViolation):
        GrayImageRecord(7, 16, 3, {0: 1, 3: 7, 4: 7})
    with pytest.raises(ContractViolation):
        GrayImageRecord(7, 16, 4, {0: 1, 3: 7, 4: 7, 7: 1})
    with pytest.raises(ContractViolation):
        GrayImageRecord(1, 1, 0, {0: 1})
    assert GrayImageRecord(1, 1, 0).spectrum is None


def test_btl_statement():
    assert btl_statement(KHAT6, 991) == "BTL"
    assert btl_statement(GrayImageRecord(114, 2 ** 8, 56), 55) == "BTL"
    assert btl_statement(KHAT6, 992) == "not-BTL"
    assert btl_statement(KHAT6, None) == "unknown"


def test_reference_table():
    verdicts = btl_table_verdicts()
    assert len(verdicts) == len(BTL_TABLE) + 3
    assert all(verdict == "BTL" for _, verdict in verdicts)
    last = BTL_TABLE[-1]
    assert last.new and last.record is KHAT6 and last.bound_text() == "<= 991"


def test_preparata_rows():
    record = preparata_gray_params(3)
    assert (record.length, record.log2_size, record.distance) == (16, 8, 6)
    assert preparata_gray_params(5).log2_size == 52
    with pytest.raises(DomainError):
        preparata_gray_params(4)


def _certificate(target: CodeParams, verdict: str) -> ProofCertificate:
    step = ProofStep("griesmer", {"params": target.to_dict()}, {"contradiction": verdict == "nonexistent"})
    return ProofCertificate(target, verdict, (step,), "test")


def test_btl_from_certificate():
    target = CodeParams(1988, 12, 992)
    assert btl_from_certificate(KHAT6, _certificate(target, "nonexistent")) == "BTL"
    assert btl_from_certificate(KHAT6, _certificate(target, "undecided")) == "unknown"
    assert btl_from_certificate(KHAT6, _certificate(CodeParams(1988, 12, 991), "nonexistent")) == "unknown"

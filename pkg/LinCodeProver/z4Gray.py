# --------------------------------------------------------------------------
                    # LinCodeProver: non-existence proofs for linear codes
# --------------------------------------------------------------------------

"""
Z4 words, Lee weight, the Gray map and the parameters of the Z4-linear codes
whose binary Gray images beat every linear code of the same length and size.

The Gray map sends 0, 1, 2, 3 to 00, 10, 11, 01 and is an isometry from
(Z4^n, Lee distance) onto (F2^2n, Hamming distance). A Gray image (N, M, d) is
better than linear (BTL) when no binary linear [N, log2 M, d] code exists.

Classes:
--------
Z4Word, GrayImageRecord, KerdockParameters, BTLRow.

Functions:
---------
lee_weight(w) -> int
lee_distance(x, y) -> int
gray_map(w) -> numpy.ndarray
hamming_weight(bits) -> int
kerdock_params(k: int) -> KerdockParameters
preparata_gray_params(k: int) -> GrayImageRecord
btl_statement(g: GrayImageRecord, best_linear_d: int) -> str
btl_table_verdicts() -> list
btl_from_certificate(record: GrayImageRecord, cert) -> str
"""

import logging
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from LinCodeProver.utils import ContractViolation, DomainError

logger = logging.getLogger(__name__)

_LEE = np.array([0, 1, 2, 1], dtype=np.int64)
_GRAY = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=np.uint8)


@dataclass(frozen=True)
class Z4Word:
    """Word over Z4, symbols stored as a tuple of ints in 0..3."""
    symbols: tuple = ()

    def __post_init__(self):
        values = np.asarray(self.symbols, dtype=np.int64).reshape(-1)
        if values.size and ((values < 0) | (values > 3)).any():
            raise DomainError(f"Z4 symbols must lie in 0..3, got {list(self.symbols)}")
        object.__setattr__(self, "symbols", tuple(int(s) for s in values))

    def __len__(self) -> int:
        return len(self.symbols)

    def array(self) -> np.ndarray:
        return np.asarray(self.symbols, dtype=np.int64)

    @classmethod
    def parse(cls, text: str) -> "Z4Word":
        text = text.strip()
        if not text:
            return cls(())
        try:
            return cls(tuple(int(part) for part in text.split(",")))
        except ValueError as err:
            raise DomainError(f"cannot read a Z4 word from {text!r}") from err


def _word(w) -> Z4Word:
    return w if isinstance(w, Z4Word) else Z4Word(tuple(w))


def lee_weight(w) -> int:
    return int(_LEE[_word(w).array()].sum())


def lee_distance(x, y) -> int:
    x, y = _word(x), _word(y)
    if len(x) != len(y):
        raise DomainError(f"Lee distance needs equal lengths, got {len(x)} and {len(y)}")
    return lee_weight(Z4Word(tuple((x.array() - y.array()) % 4)))


def gray_map(w) -> np.ndarray:
    """Binary image of length 2n, the symbol images concatenated in order."""
    return _GRAY[_word(w).array()].reshape(-1)


def hamming_weight(bits) -> int:
    return int(np.count_nonzero(np.asarray(bits)))


@dataclass(frozen=True)
class GrayImageRecord:
    """
    Binary (length, size, distance) parameters of a Gray image, optionally with the
    full Hamming weight distribution. A given spectrum must sum to size and have
    `distance` as its smallest nonzero weight.
    """
    length: int
    size: int
    distance: int
    spectrum: dict = None
    name: str = ""

    def __post_init__(self):
        if self.size < 1 or self.size & (self.size - 1):
            raise ContractViolation(f"{self.name or 'record'}: size {self.size} is not a power of 2")
        if self.spectrum is not None:
            spectrum = MappingProxyType(dict(sorted(self.spectrum.items())))
            if sum(spectrum.values()) != self.size:
                raise ContractViolation(f"{self.name}: spectrum counts sum to {sum(spectrum.values())}, not {self.size}")
            nonzero = [w for w in spectrum if w > 0]
            if not nonzero or min(nonzero) != self.distance:
                raise ContractViolation(f"{self.name}: smallest nonzero weight differs from {self.distance}")
            object.__setattr__(self, "spectrum", spectrum)

    __hash__ = None

    @property
    def log2_size(self) -> int:
        return self.size.bit_length() - 1

    def linear_params(self) -> tuple:
        """(n, k, d) of the linear code the image is compared with."""
        return self.length, self.log2_size, self.distance

    def __str__(self) -> str:
        return f"({self.length}, 2^{self.log2_size}, {self.distance})"


KHAT6_SPECTRUM = MappingProxyType({0: 1, 992: 4000, 1024: 31, 1120: 64})
KHAT6 = GrayImageRecord(1988, 2 ** 12, 992, dict(KHAT6_SPECTRUM), "extended dualized Kerdock code K^*_6")


@dataclass(frozen=True)
class KerdockParameters:
    k: int
    length: int
    size: int
    lee_distance: int

    @property
    def gray(self) -> GrayImageRecord:
        return GrayImageRecord(2 * self.length, self.size, self.lee_distance, None,
                               f"Gray image of K^*_{self.k + 1}")

    def __str__(self) -> str:
        return f"({self.length}, 4^{self.k + 1}, {self.lee_distance})"


def kerdock_params(k: int) -> KerdockParameters:
    """
    Parameters of the extended dualized Kerdock code over Z4 for odd k >= 3.

    Returns:
    --------
    KerdockParameters with length 2^2k - 2^k + 2^((k-3)/2), size 4^(k+1) and minimum
    Lee distance 2^2k - 2^k.
    """
    if not isinstance(k, int) or k < 3 or k % 2 == 0:
        raise DomainError(f"the Kerdock series needs an odd k >= 3, got {k}")
    length = 2 ** (2 * k) - 2 ** k + 2 ** ((k - 3) // 2)
    return KerdockParameters(k, length, 4 ** (k + 1), 2 ** (2 * k) - 2 ** k)


def preparata_gray_params(k: int) -> GrayImageRecord:
    if not isinstance(k, int) or k < 3 or k % 2 == 0:
        raise DomainError(f"the Z4-Preparata family needs an odd k >= 3, got {k}")
    length = 2 ** (k + 1)
    return GrayImageRecord(length, 2 ** (length - 2 * (k + 1)), 6, None, f"Z4-Preparata code (k={k})")


def btl_statement(g: GrayImageRecord, best_linear_d) -> str:
    if best_linear_d is None:
        return "unknown"
    return "BTL" if g.distance > best_linear_d else "not-BTL"


@dataclass(frozen=True)
class BTLRow:
    """Reference row: Gray image, bound interval on the best linear distance, code name."""
    record: GrayImageRecord
    linear_low: int
    linear_high: int
    code: str
    new: bool = False

    __hash__ = None

    def bound_text(self) -> str:
        if self.linear_low is None:
            return f"<= {self.linear_high}"
        if self.linear_low == self.linear_high:
            return str(self.linear_high)
        return f"{self.linear_low}-{self.linear_high}"


def _row(length, log2_size, distance, low, high, code, new=False) -> BTLRow:
    return BTLRow(GrayImageRecord(length, 2 ** log2_size, distance, None, code), low, high, code, new)


BTL_TABLE = (
    _row(14, 6, 6, 5, 5, "Heptacode (shortened Octacode)"),
    _row(16, 8, 6, 5, 5, "Octacode"),
    _row(58, 7, 28, 27, 27, "lengthened simplex code over Z4"),
    _row(60, 8, 28, 27, 27, "doubly shortened Z4-Kerdock code"),
    _row(62, 10, 28, 26, 27, "shortened Z4-Kerdock code"),
    _row(62, 12, 26, 24, 25, "punctured Z4-Kerdock code"),
    _row(64, 11, 28, 26, 27, "expurgated Z4-Kerdock code"),
    _row(64, 12, 28, 25, 26, "Z4-Kerdock code"),
    _row(114, 8, 56, 55, 55, "extended dualized Kerdock code K^*_4"),
    _row(372, 10, 184, None, 183, "dualized Teichmueller code T^*_{2,5}"),
    BTLRow(KHAT6, None, 991, KHAT6.name, True),
)


def btl_table_verdicts(preparata_k=(3, 5, 7)) -> list:
    """
    btl_statement evaluated on every reference row against the upper end of its
    linear bound, followed by the Z4-Preparata rows for the given k.

    Returns:
    --------
    list of (BTLRow, verdict) pairs.
    """
    rows = list(BTL_TABLE)
    for k in preparata_k:
        record = preparata_gray_params(k)
        rows.append(BTLRow(record, None, 5, record.name))
    return [(row, btl_statement(row.record, row.linear_high)) for row in rows]


def btl_from_certificate(record: GrayImageRecord, cert) -> str:
    """
    A certificate proving that no linear [length, log2 size, distance] code exists
    bounds the best linear distance by distance - 1, so the record is BTL. Any
    other certificate leaves the question open.
    """
    target = cert.target
    if (target.n, target.k, target.d) != record.linear_params() or cert.verdict != "nonexistent":
        logger.info("certificate for %s says nothing about %s", target, record)
        return "unknown"
    return btl_statement(record, record.distance - 1)


# debugging and testing
if __name__ == "__main__":
    print(gray_map([1, 3]), lee_weight([1, 2, 3]))
    print(kerdock_params(5), kerdock_params(5).gray)
    for row, verdict in btl_table_verdicts():
        print(row.record, row.bound_text(), verdict, row.code)

# --------------------------------------------------------------------------
                    # LinCodeProver: non-existence proofs for linear codes
# --------------------------------------------------------------------------

"""
The module provides common utility functions for the package:

Classes:
--------
ProverError and its subclasses; the exceptions raised by every other module.

Functions:
---------
configure_logging(verbosity: int) -> None; Installs a stderr handler on the
package logger. Called by the command line front end only.

fingerprint(text: str) -> str; Returns the sha256 hex digest of a text, used for
bounds table and certificate content hashes.

TOOL_VERSION; the package version recorded in certificates.

_readRecords(source, expected_fields: tuple) -> tuple; Splits a comma separated
record stream into (line number, fields) pairs, skipping blank lines and '#'
comments and collecting the malformed lines instead of raising.

_fractionToText(value: Fraction) -> str and _textToFraction(text: str) -> Fraction;
Exact text round trip for rationals ("-56", "69/16").
"""

import hashlib
import io
import logging
from fractions import Fraction

logger = logging.getLogger(__name__)

TOOL_VERSION = "0.1.0"
_PACKAGE_LOGGER = "LinCodeProver"


class ProverError(Exception):
    """Base class of every error raised by LinCodeProver."""


class DomainError(ProverError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class PreconditionError(ProverError, ValueError):
    """An operation was called with inputs violating its stated precondition."""


class ContractViolation(ProverError):
    """Input data does not satisfy the contract of a transform (e.g. A_0 != 1)."""


class FormatError(ProverError):
    """Unreadable stream or unknown format tag."""


class BudgetExhausted(ProverError):
    """
    The feasibility search stopped on its time or node budget.
    The partial counters are kept so that the caller can report them.
    """
    def __init__(self, message: str, counters: dict = None):
        super().__init__(message)
        self.counters = dict(counters or {})


class CertificateError(ProverError):
    """Malformed or inconsistent proof certificate."""


class FingerprintMismatch(CertificateError):
    """The certificate was produced against a different bounds table."""


def configure_logging(verbosity: int = 0) -> None:
    """
    Installs a single stderr handler on the package logger.

    Parameters:
    -----------
    verbosity: int, -1 = errors only, 0 = warnings, 1 = info, 2 and above = debug;
    """
    levels = {-1: logging.ERROR, 0: logging.WARNING, 1: logging.INFO}
    level = levels.get(verbosity, logging.DEBUG if verbosity > 1 else logging.ERROR)
    package_logger = logging.getLogger(_PACKAGE_LOGGER)
    package_logger.setLevel(level)
    if not package_logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        package_logger.addHandler(handler)


def fingerprint(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _readRecords(source, expected_fields: tuple) -> tuple:
    """
    Reads a comma separated record stream. This is supposed to be a private method.

    Parameters:
    -----------
    source: text stream or str, the content to parse;
    expected_fields: tuple of int, accepted numbers of fields per record;

    Returns:
    --------
    tuple (records, problems) where records is a list of (line number, fields) and
    problems is a list of (line number, message) for the malformed lines.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    try:
        lines = source.readlines()
    except (OSError, UnicodeDecodeError, AttributeError) as err:
        raise FormatError(f"unreadable stream: {err}") from err

    records, problems = [], []
    for line_no, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = [field.strip() for field in line.split(",")]
        if len(fields) not in expected_fields:
            problems.append((line_no, f"expected {' or '.join(map(str, expected_fields))} fields, got {len(fields)}"))
            continue
        records.append((line_no, fields))
    return records, problems


def _fractionToText(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _textToFraction(text: str) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as err:
        raise FormatError(f"not an exact rational: {text!r}") from err

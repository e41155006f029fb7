# --------------------------------------------------------------------------
                    # LinCodeProver: non-existence proofs for linear codes
# --------------------------------------------------------------------------

"""
Griesmer bound, residual code parameters, descent chains and tables of best
known upper bounds on the minimum distance.

A residual step takes a codeword of weight w < dq/(q-1) of an [n, k, d]_q code
and punctures on its support, which leaves an [n-w, k-1, >= d-w+ceil(w/q)]_q
code. A descent chain applies that once with a chosen w and then repeatedly to
codewords of minimum weight, checking every node against the Griesmer bound and
the bounds table. The first violated node proves the starting code cannot
contain a codeword of weight w.

Bounds files are UTF-8 text, one `n,k,dmax,provenance` record per line, with
'#' starting a comment.

Classes:
--------
CodeParams, BoundEntry, BoundsTable, DescentChain.

Functions:
---------
griesmer_length(k: int, d: int, q: int = 2) -> int
griesmer_dmax(n: int, k: int, q: int = 2) -> int
residual_params(p: CodeParams, w: int) -> CodeParams
descent_chain(p: CodeParams, w: int, table: BoundsTable) -> DescentChain
import_bounds(source, fmt: str = "csv") -> BoundsTable
load_bounds(path) -> BoundsTable
load_fixture() -> BoundsTable
lookup_dmax(table: BoundsTable, n: int, k: int) -> int or None
"""

import json
import logging
import re
from dataclasses import dataclass
from importlib import resources
from types import MappingProxyType

from LinCodeProver.utils import DomainError, FormatError, PreconditionError, _readRecords, fingerprint

logger = logging.getLogger(__name__)

FIXTURE_RESOURCE = "data/bounds_fixture.csv"
_PARAMS_PATTERN = re.compile(r"^\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(?:>=|≥)?\s*(\d+)\s*\](?:_(\d+))?$")


@dataclass(frozen=True, order=True)
class CodeParams:
    """
    Parameters [n, k, d]_q. Inside descent chains d is a lower bound and may exceed n;
    validate() enforces 1 <= k <= n, 1 <= d <= n at user boundaries.
    """
    n: int
    k: int
    d: int
    q: int = 2

    def __post_init__(self):
        for name in ("n", "k", "d", "q"):
            if not isinstance(getattr(self, name), int):
                raise DomainError(f"{name} must be an integer, got {getattr(self, name)!r}")
        if self.q < 2:
            raise DomainError(f"field size must be at least 2, got {self.q}")
        if self.n < 0 or self.k < 0 or self.d < 0:
            raise DomainError(f"negative parameter in {self}")

    def validate(self) -> "CodeParams":
        if not 1 <= self.k <= self.n:
            raise DomainError(f"{self}: need 1 <= k <= n")
        if not 1 <= self.d <= self.n:
            raise DomainError(f"{self}: need 1 <= d <= n")
        return self

    def __str__(self) -> str:
        suffix = "" if self.q == 2 else f"_{self.q}"
        return f"[{self.n},{self.k},{self.d}]{suffix}"

    def with_d(self, d: int) -> "CodeParams":
        return CodeParams(self.n, self.k, d, self.q)

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "d": self.d, "q": self.q}

    @classmethod
    def from_dict(cls, data: dict) -> "CodeParams":
        return cls(int(data["n"]), int(data["k"]), int(data["d"]), int(data.get("q", 2)))

    @classmethod
    def parse(cls, text: str) -> "CodeParams":
        """Reads '[n,k,d]', '[n,k,>=d]' or '[n,k,d]_q'."""
        match = _PARAMS_PATTERN.match(text.strip())
        if match is None:
            raise DomainError(f"cannot read code parameters from {text!r}")
        n, k, d, q = match.groups()
        return cls(int(n), int(k), int(d), int(q) if q else 2)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def griesmer_length(k: int, d: int, q: int = 2) -> int:
    """
    Minimal length of a linear [n, k, d]_q code: sum_{i<k} ceil(d / q^i).
    """
    return sum(_ceil_div(d, q ** i) for i in range(k))


def griesmer_dmax(n: int, k: int, q: int = 2) -> int:
    """
    Largest d with griesmer_length(k, d, q) <= n; 0 when not even d = 1 fits.
    """
    if griesmer_length(k, 1, q) > n:
        return 0
    low, high = 1, max(n, 1)
    while low < high:
        middle = (low + high + 1) // 2
        if griesmer_length(k, middle, q) <= n:
            low = middle
        else:
            high = middle - 1
    return low


def residual_params(p: CodeParams, w: int) -> CodeParams:
    """
    Parameters of the residual code with respect to a codeword of weight w.

    Parameters:
    -----------
    p: CodeParams, the code [n, k, d]_q;
    w: int, weight of the codeword, d <= w < dq/(q-1);

    Returns:
    --------
    CodeParams [n-w, k-1, d-w+ceil(w/q)]_q, the third entry being a lower bound.
    """
    if p.k <= 1:
        raise PreconditionError(f"{p}: dimension 1 has no residual code")
    if not (p.d <= w and w * (p.q - 1) < p.d * p.q):
        raise PreconditionError(f"{p}: residual needs {p.d} <= w < {p.d * p.q}/{p.q - 1}, got w={w}")
    return CodeParams(p.n - w, p.k - 1, p.d - w + _ceil_div(w, p.q), p.q)


@dataclass(frozen=True)
class BoundEntry:
    dmax: int
    provenance: str


class BoundsTable:
    """
    Immutable store of upper bounds dmax(n, k) on the minimum distance.

    Class attributes
    ----------
    None

    Class instance attributes
    ----------
    self.entries: read-only mapping (n, k) -> BoundEntry;
    self.warnings: tuple of str, data-quality findings collected at import
        (malformed lines, duplicates, monotonicity violations);
    self.q: int, field size the bounds refer to.

    Methods
    -------
    lookup(self, n: int, k: int) -> int or None
        The stored bound, or None. Never guesses.
    entry(self, n: int, k: int) -> BoundEntry or None
    overlay(self, n: int, k: int, dmax: int, provenance: str) -> BoundsTable
        A new table in which (n, k) is bounded by min(stored, dmax).
    fingerprint(self) -> str
        sha256 of the canonical CSV rendering; used to bind certificates to tables.
    to_csv(self) -> str
    """
    def __init__(self, entries: dict = None, warnings: tuple = (), q: int = 2):
        cleaned = {}
        for (n, k), entry in sorted((entries or {}).items()):
            if not isinstance(entry, BoundEntry):
                entry = BoundEntry(int(entry[0]), str(entry[1]))
            cleaned[(int(n), int(k))] = entry
        self.entries = MappingProxyType(cleaned)
        self.warnings = tuple(warnings)
        self.q = q

    @classmethod
    def from_bounds(cls, bounds: dict, provenance: str, q: int = 2) -> "BoundsTable":
        return cls({key: BoundEntry(dmax, provenance) for key, dmax in bounds.items()}, q=q)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, key) -> bool:
        return key in self.entries

    def __iter__(self):
        return iter(self.entries.items())

    def __repr__(self) -> str:
        return f"BoundsTable({len(self)} entries, fingerprint={self.fingerprint()[:12]})"

    def entry(self, n: int, k: int):
        return self.entries.get((n, k))

    def lookup(self, n: int, k: int):
        if k > n:
            return None
        entry = self.entries.get((n, k))
        return None if entry is None else entry.dmax

    def overlay(self, n: int, k: int, dmax: int, provenance: str) -> "BoundsTable":
        merged = dict(self.entries)
        current = merged.get((n, k))
        if current is None or dmax < current.dmax:
            merged[(n, k)] = BoundEntry(dmax, provenance)
        return BoundsTable(merged, self.warnings, self.q)

    def to_csv(self) -> str:
        lines = [f"{n},{k},{entry.dmax},{entry.provenance}" for (n, k), entry in self.entries.items()]
        return "".join(line + "\n" for line in lines)

    def fingerprint(self) -> str:
        return fingerprint(self.to_csv())


def lookup_dmax(table: BoundsTable, n: int, k: int):
    return table.lookup(n, k)


def _check_monotonicity(entries: dict) -> list:
    problems = []
    for (n, k), entry in entries.items():
        longer = entries.get((n + 1, k))
        if longer is not None and entry.dmax > longer.dmax:
            problems.append(f"dmax({n},{k})={entry.dmax} exceeds dmax({n + 1},{k})={longer.dmax}")
        bigger = entries.get((n, k + 1))
        if bigger is not None and entry.dmax < bigger.dmax:
            problems.append(f"dmax({n},{k})={entry.dmax} is below dmax({n},{k + 1})={bigger.dmax}")
    return problems


def _parse_records(records: list) -> tuple:
    entries, problems = {}, []
    for line_no, fields in records:
        n_text, k_text, d_text, provenance = fields
        try:
            n, k, dmax = int(n_text), int(k_text), int(d_text)
        except ValueError:
            problems.append((line_no, f"non-integer field in {','.join(fields)!r}"))
            continue
        if not (1 <= k <= n and 0 <= dmax <= n):
            problems.append((line_no, f"inconsistent record n={n}, k={k}, dmax={dmax}"))
            continue
        if not provenance:
            problems.append((line_no, "missing provenance"))
            continue
        entries.setdefault((n, k), []).append((line_no, BoundEntry(dmax, provenance)))
    return entries, problems


def import_bounds(source, fmt: str = "csv") -> BoundsTable:
    """
    Builds a BoundsTable from a character stream (or a str).

    Parameters:
    -----------
    source: text stream or str;
    fmt: str, 'csv' for `n,k,dmax,provenance` lines or 'json' for a list of
        {"n", "k", "dmax", "provenance"} objects;

    Returns:
    --------
    BoundsTable; malformed lines, duplicate keys (the smaller dmax is kept) and
    monotonicity violations end up in table.warnings and in the log.
    """
    if fmt == "csv":
        records, problems = _readRecords(source, (4,))
    elif fmt == "json":
        records, problems = _json_records(source)
    else:
        raise FormatError(f"unknown bounds format {fmt!r}")

    grouped, bad = _parse_records(records)
    problems.extend(bad)
    warnings = [f"line {line_no}: {message}" for line_no, message in sorted(problems)]

    entries = {}
    for key, found in grouped.items():
        best_line, best = min(found, key=lambda item: (item[1].dmax, item[0]))
        if len(found) > 1:
            listed = ", ".join(f"{entry.dmax} (line {line_no})" for line_no, entry in found)
            warnings.append(f"duplicate entry for {key}: {listed}; keeping {best.dmax}")
        entries[key] = best
    warnings.extend(_check_monotonicity(entries))

    for message in warnings:
        logger.warning("bounds import: %s", message)
    table = BoundsTable(entries, tuple(warnings))
    logger.info("imported %d bounds (%d warnings)", len(table), len(warnings))
    return table


def _json_records(source) -> tuple:
    text = source if isinstance(source, str) else source.read()
    try:
        data = json.loads(text) if text.strip() else []
    except json.JSONDecodeError as err:
        raise FormatError(f"unreadable JSON bounds: {err}") from err
    if isinstance(data, dict):
        data = data.get("entries", [])
    records, problems = [], []
    for index, item in enumerate(data, start=1):
        try:
            records.append((index, [str(item["n"]), str(item["k"]), str(item["dmax"]), str(item.get("provenance", ""))]))
        except (KeyError, TypeError):
            problems.append((index, "record needs n, k, dmax"))
    return records, problems


def load_bounds(path, fmt: str = None) -> BoundsTable:
    fmt = fmt or ("json" if str(path).endswith(".json") else "csv")
    try:
        with open(path, encoding="utf-8") as handle:
            return import_bounds(handle, fmt)
    except OSError as err:
        raise FormatError(f"cannot read bounds file {path}: {err}") from err


def load_fixture() -> BoundsTable:
    """The bounds table shipped with the package (see data/fixture_manifest.json for the provenances)."""
    text = resources.files("LinCodeProver").joinpath(FIXTURE_RESOURCE).read_text(encoding="utf-8")
    return import_bounds(text)


@dataclass(frozen=True)
class DescentChain:
    """
    Result of descent_chain.

    nodes[0] is the residual for the first weight, every later node the residual
    of its predecessor for a codeword of minimum weight. verdict is one of
    'contradiction-by-table', 'contradiction-by-griesmer', 'no-contradiction';
    for contradictions `violation` holds the node index and the violated bound.
    """
    start: CodeParams
    first_weight: int
    nodes: tuple
    verdict: str
    violation: dict = None

    __hash__ = None

    @property
    def contradiction(self) -> bool:
        return self.verdict != "no-contradiction"

    def __str__(self) -> str:
        path = " -> ".join(str(node) for node in (self.start,) + self.nodes)
        return f"{path} (w={self.first_weight}): {self.verdict}"

    def to_dict(self) -> dict:
        return {"start": self.start.to_dict(),
                "first_weight": self.first_weight,
                "nodes": [node.to_dict() for node in self.nodes],
                "verdict": self.verdict,
                "violation": self.violation}


def descent_chain(p: CodeParams, w: int, table: BoundsTable) -> DescentChain:
    """
    Residual descent starting with a codeword of weight w.

    Parameters:
    -----------
    p: CodeParams, starting parameters;
    w: int, weight of the first codeword, admissible for residual_params;
    table: BoundsTable, bounds checked at every node;

    Returns:
    --------
    DescentChain, stopped at the first contradiction or at dimension 1.
    """
    nodes = []
    current = residual_params(p, w)
    while True:
        nodes.append(current)
        index = len(nodes) - 1
        length = griesmer_length(current.k, current.d, current.q)
        if length > current.n:
            violation = {"node": index, "kind": "griesmer", "bound": length, "provenance": "griesmer"}
            verdict = "contradiction-by-griesmer"
            break
        entry = table.entry(current.n, current.k)
        if entry is not None and current.d > entry.dmax:
            violation = {"node": index, "kind": "table", "bound": entry.dmax, "provenance": entry.provenance}
            verdict = "contradiction-by-table"
            break
        if current.k == 1:
            violation, verdict = None, "no-contradiction"
            break
        current = residual_params(current, current.d)
    chain = DescentChain(p, w, tuple(nodes), verdict, violation)
    logger.debug("descent %s", chain)
    return chain


# debugging and testing
if __name__ == "__main__":
    table = import_bounds("250,9,122,codetables.de\n")
    print(descent_chain(CodeParams(1988, 12, 992), 1000, table))

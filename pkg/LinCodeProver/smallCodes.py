# --------------------------------------------------------------------------
                    # LinCodeProver: non-existence proofs for linear codes
# --------------------------------------------------------------------------

"""
Brute-force computations on small explicit binary codes. They are independent of
the analytic machinery and serve as ground truth for it: enumerated spectra and
duals, exact dmax for tiny parameters, exhaustive distribution search.

A generator matrix is a numpy integer array of shape (k, n) with entries 0/1.

Functions:
---------
load_generator(source) -> numpy.ndarray
codewords(G) -> numpy.ndarray
rank_gf2(G) -> int
dual_generator(G) -> numpy.ndarray
weight_distribution(G) -> WeightDistribution
minimum_distance(G) -> int
random_code(n, k, rng) -> numpy.ndarray
random_even_spanned_code(n, k, d, rng, attempts=200) -> numpy.ndarray
exhaustive_dmax(n, k) -> int
exhaustive_table(max_n) -> BoundsTable
brute_force_feasible(n, k, W, a1_dual=None) -> WeightDistribution or None
"""

import io
import logging

import numpy as np

from LinCodeProver.boundsTables import BoundsTable
from LinCodeProver.exactCombinatorics import get_context
from LinCodeProver.spectra import WeightDistribution
from LinCodeProver.utils import FormatError, PreconditionError

logger = logging.getLogger(__name__)

_CHUNK = 4096
_TAIL_PARTS = 6


def load_generator(source) -> np.ndarray:
    """Reads one row per line, written as 0/1 characters (spaces and commas ignored)."""
    if isinstance(source, str):
        source = io.StringIO(source)
    rows = []
    for line_no, raw in enumerate(source, start=1):
        line = raw.split("#", 1)[0].replace(",", "").replace(" ", "").strip()
        if not line:
            continue
        if set(line) - {"0", "1"}:
            raise FormatError(f"line {line_no}: generator rows must be 0/1 strings")
        rows.append([int(ch) for ch in line])
    if not rows:
        raise FormatError("empty generator matrix")
    if len({len(row) for row in rows}) != 1:
        raise FormatError("generator rows differ in length")
    return np.array(rows, dtype=np.int64)


def _messages(k: int) -> np.ndarray:
    return (np.arange(2 ** k, dtype=np.int64)[:, None] >> np.arange(k)) & 1


def _rref(G: np.ndarray) -> tuple:
    """Row reduced echelon form over GF(2) and the pivot columns. Private method."""
    R = np.array(G, dtype=np.int64) % 2
    pivots = []
    row = 0
    for col in range(R.shape[1]):
        if row == R.shape[0]:
            break
        hits = np.nonzero(R[row:, col])[0]
        if hits.size == 0:
            continue
        swap = row + hits[0]
        R[[row, swap]] = R[[swap, row]]
        others = np.nonzero(R[:, col])[0]
        others = others[others != row]
        R[others] ^= R[row]
        pivots.append(col)
        row += 1
    return R[:row], pivots


def rank_gf2(G) -> int:
    return len(_rref(G)[1])


def codewords(G) -> np.ndarray:
    """All 2^r codewords of the row space, r the GF(2) rank, one per row."""
    basis, _ = _rref(G)
    return (_messages(basis.shape[0]) @ basis) % 2


def dual_generator(G) -> np.ndarray:
    R, pivots = _rref(G)
    n = np.asarray(G).shape[1]
    free = [c for c in range(n) if c not in pivots]
    H = np.zeros((len(free), n), dtype=np.int64)
    for index, f in enumerate(free):
        H[index, f] = 1
        for row, p in enumerate(pivots):
            H[index, p] = R[row, f]
    return H


def weight_distribution(G) -> WeightDistribution:
    G = np.asarray(G)
    weights = codewords(G).sum(axis=1)
    counts = np.bincount(weights, minlength=G.shape[1] + 1)
    return WeightDistribution(G.shape[1], {w: int(c) for w, c in enumerate(counts) if c})


def minimum_distance(G) -> int:
    weights = codewords(G).sum(axis=1)
    nonzero = weights[weights > 0]
    return int(nonzero.min()) if nonzero.size else 0


def random_code(n: int, k: int, rng) -> np.ndarray:
    if not 1 <= k <= n:
        raise PreconditionError(f"need 1 <= k <= n, got n={n}, k={k}")
    while True:
        G = rng.integers(0, 2, size=(k, n))
        if rank_gf2(G) == k:
            return G


def random_even_spanned_code(n: int, k: int, d: int, rng, attempts: int = 200) -> np.ndarray:
    """
    A random [n, k, d] code spanned by k words of weight d. Raises
    PreconditionError when no attempt hits minimum distance exactly d.
    """
    for _ in range(attempts):
        G = np.zeros((k, n), dtype=np.int64)
        for row in range(k):
            G[row, rng.choice(n, size=d, replace=False)] = 1
        if rank_gf2(G) == k and minimum_distance(G) == d:
            return G
    raise PreconditionError(f"no [{n},{k},{d}] code spanned by weight {d} words found in {attempts} attempts")


def exhaustive_dmax(n: int, k: int) -> int:
    """
    Largest minimum distance of a binary [n, k] code, by running through all
    systematic generator matrices [I | P].
    """
    if not 1 <= k <= n:
        raise PreconditionError(f"need 1 <= k <= n, got n={n}, k={k}")
    r = n - k
    messages = _messages(k)[1:]
    message_weights = messages.sum(axis=1)
    bits = k * r
    best = 0
    for start in range(0, 2 ** bits, _CHUNK):
        index = np.arange(start, min(start + _CHUNK, 2 ** bits), dtype=np.int64)
        P = ((index[:, None] >> np.arange(bits)) & 1).reshape(index.size, k, r)
        parity = np.einsum("mk,bkr->bmr", messages, P) % 2
        distances = (message_weights[None, :] + parity.sum(axis=2)).min(axis=1)
        best = max(best, int(distances.max()))
        if best == n - k + 1:
            break
    return best


def exhaustive_table(max_n: int) -> BoundsTable:
    """Exact dmax(n, k) for all 1 <= k <= n <= max_n, provenance 'exhaustive'."""
    bounds = {}
    for n in range(1, max_n + 1):
        for k in range(1, n + 1):
            bounds[(n, k)] = exhaustive_dmax(n, k)
    logger.info("exhaustive table up to n=%d: %d entries", max_n, len(bounds))
    return BoundsTable.from_bounds(bounds, "exhaustive")


def _compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative ints summing to `total`, in lexicographic order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _composition_blocks(total: int, parts: int):
    """
    Yields (head, tails) pairs: tails is an int64 array whose rows complete head
    to a composition of total into parts. The blocks in order list every
    composition once, lexicographically.
    """
    width = min(parts, _TAIL_PARTS)
    tables = {}
    for prefix in _compositions(total, parts - width + 1):
        rest = prefix[-1]
        if rest not in tables:
            rows = list(_compositions(rest, width))
            tables[rest] = np.array(rows, dtype=np.int64).reshape(len(rows), width)
        yield prefix[:-1], tables[rest]


def brute_force_feasible(n: int, k: int, W, a1_dual: int = None):
    """
    Runs through every distribution over W (A_0 = 1, counts summing to 2^k) in
    lexicographic order and returns the first one passing check_distribution, or
    None. No pruning of any kind; the dual coefficients of a whole block of
    distributions are evaluated at once as 2^k A_j^dual = K_j(0) + sum_w K_j(w) A_w.
    """
    weights = tuple(sorted(set(W)))
    if n < 1 or any(not 0 < w <= n for w in weights):
        raise PreconditionError(f"weights must lie in [1, {n}]: {weights}")
    if n + k > 62:
        raise PreconditionError(f"[{n},{k}] is too large for the exhaustive distribution search")
    ctx = get_context(n)
    K = np.array([ctx.column(w) for w in (0,) + weights], dtype=np.int64).T
    modulus, upper = 2 ** k, 2 ** n
    for head, tails in _composition_blocks(2 ** k - 1, len(weights)):
        split = len(head) + 1
        offset = K[:, 0] + K[:, 1:split] @ np.array(head, dtype=np.int64)
        scaled = offset[None, :] + tails @ K[:, split:].T
        passed = ((scaled % modulus == 0).all(axis=1) & (scaled >= 0).all(axis=1)
                  & (scaled <= upper).all(axis=1) & (scaled.sum(axis=1) == upper))
        if a1_dual is not None:
            passed &= scaled[:, 1] == a1_dual * modulus
        hits = np.flatnonzero(passed)
        if hits.size:
            counts = head + tuple(int(c) for c in tails[hits[0]])
            return WeightDistribution.code_spectrum(n, dict(zip(weights, counts)))
    return None


# debugging and testing
if __name__ == "__main__":
    hamming = load_generator("1000011\n0100101\n0010110\n0001111\n")
    print(weight_distribution(hamming).as_dict(), weight_distribution(dual_generator(hamming)).as_dict())
    print(exhaustive_dmax(7, 4))

# --------------------------------------------------------------------------
                    # LinCodeProver: non-existence proofs for linear codes
# --------------------------------------------------------------------------

"""
Exact binomial coefficients and Krawtchouk polynomial values.

All values are Python integers of arbitrary precision. For the lengths the
prover works with (n close to 2000) single Krawtchouk values exceed 500 decimal
digits, so no floating point or fixed width arithmetic is used anywhere.

The Krawtchouk polynomial of degree j for length n over an alphabet of q symbols:

    K_j(i) = sum_s (-1)^s (q-1)^(j-s) C(i, s) C(n-i, j-s)

Functions:
---------
binomial(n: int, k: int) -> int; exact C(n, k), 0 outside 0 <= k <= n.
krawtchouk_direct(n: int, j: int, i: int, q: int = 2) -> int; the alternating sum
    evaluated term by term (the reference oracle).
get_context(n: int, q: int = 2) -> KrawtchoukContext; shared context per (n, q).
krawtchouk(ctx: KrawtchoukContext, j: int, i: int) -> int; cached value.
krawtchouk_column(ctx: KrawtchoukContext, i: int) -> tuple; K_0(i), ..., K_n(i).
"""

import logging
import threading
from functools import lru_cache

from scipy.special import comb

from LinCodeProver.utils import DomainError

logger = logging.getLogger(__name__)


def binomial(n: int, k: int) -> int:
    """
    Exact binomial coefficient.

    Parameters:
    -----------
    n: int, nonnegative upper index;
    k: int, lower index, any integer;

    Returns:
    --------
    int, C(n, k); 0 when k < 0 or k > n.
    """
    if k < 0 or k > n:
        return 0
    return int(comb(n, k, exact=True))


def krawtchouk_direct(n: int, j: int, i: int, q: int = 2) -> int:
    """
    Term by term evaluation of the defining sum. Slow but independent of the
    recurrence used by KrawtchoukContext.
    """
    if not (0 <= j <= n and 0 <= i <= n):
        raise DomainError(f"Krawtchouk index out of range: n={n}, j={j}, i={i}")
    total = 0
    for s in range(j + 1):
        term = binomial(i, s) * binomial(n - i, j - s) * (q - 1) ** (j - s)
        total += -term if s % 2 else term
    return total


class KrawtchoukContext:
    """
    Lazily populated table of Krawtchouk values for one (n, q).

    Class attributes
    ----------
    None

    Class instance attributes
    ----------
    self.n: int, code length;
    self.q: int, alphabet size;
    self._columns: dict i -> tuple (K_0(i), ..., K_n(i)); append-only;
    self._lock: threading.Lock serialising the population of new columns.

    Methods
    -------
    value(self, j: int, i: int) -> int
        Cached K_j(i).
    column(self, i: int) -> tuple
        All degrees at the point i, computed with the three-term recurrence
        (j+1) K_{j+1}(i) = ((n-j)(q-1) + j - q i) K_j(i) - (q-1)(n-j+1) K_{j-1}(i).
    """
    def __init__(self, n: int, q: int = 2):
        if n < 0:
            raise DomainError(f"length must be nonnegative, got {n}")
        if q < 2:
            raise DomainError(f"alphabet size must be at least 2, got {q}")
        self.n = n
        self.q = q
        self._columns = {}
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"KrawtchoukContext(n={self.n}, q={self.q}, cached_columns={len(self._columns)})"

    def column(self, i: int) -> tuple:
        if not 0 <= i <= self.n:
            raise DomainError(f"Krawtchouk point out of range [0, {self.n}]: {i}")
        cached = self._columns.get(i)
        if cached is not None:
            return cached
        with self._lock:
            cached = self._columns.get(i)
            if cached is None:
                cached = self._build_column(i)
                self._columns[i] = cached
        return cached

    def value(self, j: int, i: int) -> int:
        if not 0 <= j <= self.n:
            raise DomainError(f"Krawtchouk degree out of range [0, {self.n}]: {j}")
        return self.column(i)[j]

    def _build_column(self, i: int) -> tuple:
        n, q = self.n, self.q
        values = [1]
        if n >= 1:
            values.append((q - 1) * n - q * i)
        for j in range(1, n):
            numerator = ((n - j) * (q - 1) + j - q * i) * values[j] - (q - 1) * (n - j + 1) * values[j - 1]
            assert numerator % (j + 1) == 0, "Krawtchouk recurrence left a remainder"
            values.append(numerator // (j + 1))
        logger.debug("Krawtchouk column n=%d q=%d i=%d computed", n, q, i)
        return tuple(values)


@lru_cache(maxsize=None)
def get_context(n: int, q: int = 2) -> KrawtchoukContext:
    return KrawtchoukContext(n, q)


def krawtchouk(ctx: KrawtchoukContext, j: int, i: int) -> int:
    return ctx.value(j, i)


def krawtchouk_column(ctx: KrawtchoukContext, i: int) -> tuple:
    return ctx.column(i)


# debugging and testing
if __name__ == "__main__":
    ctx = get_context(4)
    print([krawtchouk(ctx, j, 2) for j in range(5)])
    print(krawtchouk_direct(4, 2, 2))

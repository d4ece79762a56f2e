"""Exact combinatorial primitives over arbitrary-precision integers.

Binomial and multinomial coefficients, Stirling numbers of both kinds,
and the Stirling transform.  Out-of-range (n, k) pairs return 0 rather
than raising, which is the convention every summation in this package
relies on.
"""

from __future__ import annotations

import math
import threading
from typing import Sequence

from .errors import NegativePartError

__all__ = [
    "binomial",
    "multinomial",
    "StirlingTable",
    "stirling2",
    "stirling1_unsigned",
    "stirling1_signed",
    "stirling_transform",
]


def binomial(n: int, k: int) -> int:
    """C(n, k) for n >= 0; zero when k < 0 or k > n."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinomial(n: int, parts: Sequence[int]) -> int:
    """n! / (parts_1! * ... * parts_m!) if the parts sum to n, else 0.

    This is the number of functions from an n-set onto m indexed blocks
    with prescribed block sizes.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    for p in parts:
        if p < 0:
            raise NegativePartError(f"parts must be >= 0, got {p}")
    if sum(parts) != n:
        return 0
    result = 1
    remaining = n
    for p in parts:
        result *= math.comb(remaining, p)
        remaining -= p
    return result


class StirlingTable:
    """Memoized triangles of Stirling numbers of both kinds.

    Rows are grown lazily: reading entry (n, k) materializes all rows up
    to n.  Growth appends only fully built rows under a lock, so
    concurrent readers never observe a partial row; a built table is
    effectively immutable.  Call ``ensure(n)`` to pre-size before sharing
    across threads if you want to avoid any locking on the read path.
    """

    def __init__(self, max_n: int = 0):
        # row n holds entries k = 0..n
        self._second: list[tuple[int, ...]] = [(1,)]
        self._first: list[tuple[int, ...]] = [(1,)]
        self._lock = threading.Lock()
        self.ensure(max_n)

    @property
    def max_n(self) -> int:
        return len(self._second) - 1

    def ensure(self, n: int) -> None:
        """Materialize both triangles up to row n."""
        if n <= self.max_n:
            return
        with self._lock:
            while len(self._second) <= n:
                row_n = len(self._second) - 1
                prev2 = self._second[row_n]
                prev1 = self._first[row_n]

                def entry(row: tuple[int, ...], k: int) -> int:
                    return row[k] if 0 <= k <= row_n else 0

                # {n+1, k} = k*{n, k} + {n, k-1}
                self._second.append(
                    tuple(
                        k * entry(prev2, k) + entry(prev2, k - 1)
                        for k in range(row_n + 2)
                    )
                )
                # [n+1, k] = n*[n, k] + [n, k-1]
                self._first.append(
                    tuple(
                        row_n * entry(prev1, k) + entry(prev1, k - 1)
                        for k in range(row_n + 2)
                    )
                )

    def second(self, n: int, k: int) -> int:
        """{n brace k}: partitions of an n-set into k nonempty blocks."""
        if n < 0:
            raise ValueError(f"n must be >= 0, got {n}")
        if k < 0 or k > n:
            return 0
        self.ensure(n)
        return self._second[n][k]

    def first_unsigned(self, n: int, k: int) -> int:
        """[n brack k]: permutations of n elements with k cycles."""
        if n < 0:
            raise ValueError(f"n must be >= 0, got {n}")
        if k < 0 or k > n:
            return 0
        self.ensure(n)
        return self._first[n][k]

    def first_signed(self, n: int, k: int) -> int:
        """s(n, k) = (-1)^(n-k) * [n brack k]."""
        value = self.first_unsigned(n, k)
        return -value if (n - k) % 2 else value

    def second_row(self, n: int) -> tuple[int, ...]:
        self.ensure(n)
        return self._second[n]

    def first_row(self, n: int) -> tuple[int, ...]:
        self.ensure(n)
        return self._first[n]


_SHARED = StirlingTable()


def stirling2(n: int, k: int) -> int:
    return _SHARED.second(n, k)


def stirling1_unsigned(n: int, k: int) -> int:
    return _SHARED.first_unsigned(n, k)


def stirling1_signed(n: int, k: int) -> int:
    return _SHARED.first_signed(n, k)


def stirling_transform(a: Sequence[int]) -> list[int]:
    """b_l = sum_{i=1..l} {l brace i} * a_i, one-indexed, same length as a."""
    if len(a) == 0:
        raise ValueError("sequence must have length >= 1")
    _SHARED.ensure(len(a))
    return [
        sum(_SHARED.second(l, i) * a[i - 1] for i in range(1, l + 1))
        for l in range(1, len(a) + 1)
    ]

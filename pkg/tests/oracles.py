"""Independent oracles used by the test suite.

Everything here is derived directly from the defining equations

    A(0, n)     = n + 1
    A(m+1, 0)   = A(m, 1)
    A(m+1, n+1) = A(m, A(m+1, n))

and deliberately shares no code with the package under test.  Values are
built row by row (row m is an iterated application of row m-1), which keeps
call depth bounded by m instead of by the size of the results.
"""

from __future__ import annotations

from typing import Callable


def _iterate_row(prev: Callable[[int], int]) -> Callable[[int], int]:
    # Row m as a cached unfolding of row m-1: A(m,0)=prev(1), A(m,n)=prev(A(m,n-1)).
    cache: list[int] = []

    def row(n: int) -> int:
        while len(cache) <= n:
            k = len(cache)
            cache.append(prev(1) if k == 0 else prev(cache[k - 1]))
        return cache[n]

    return row


class AckOracle:
    """Definition-faithful Ackermann values, cached per row."""

    def __init__(self) -> None:
        self._rows: list[Callable[[int], int]] = [lambda n: n + 1]

    def value(self, m: int, n: int) -> int:
        while len(self._rows) <= m:
            self._rows.append(_iterate_row(self._rows[-1]))
        return self._rows[m](n)


class CallCountOracle:
    """Exact number of call-frame entries for the naive recursion.

    c(0,n) = 1
    c(m+1,0) = 1 + c(m,1)
    c(m+1,n+1) = 1 + c(m+1,n) + c(m, A(m+1,n))

    The same number is the length in rewrite steps of the head-rewriting
    collapse of a stack  n # m # L  down to  A(m,n) # L.
    """

    def __init__(self, values: AckOracle | None = None) -> None:
        self._values = values or AckOracle()
        self._rows: list[list[int]] = [[]]

    def count(self, m: int, n: int) -> int:
        if m == 0:
            return 1
        while len(self._rows) <= m:
            self._rows.append([])
        row = self._rows[m]
        while len(row) <= n:
            k = len(row)
            if k == 0:
                row.append(1 + self.count(m - 1, 1))
            else:
                row.append(1 + row[k - 1] + self.count(m - 1, self._values.value(m, k - 1)))
        return row[n]


# Saturating variants: used to predict, cheaply and without building huge
# numbers, whether an evaluation fits inside a step budget.  Any result
# > cap is reported as cap + 1 and means only "more than cap".

def ack_sat(m: int, n: int, cap: int) -> int:
    if m == 0:
        return min(n + 1, cap + 1)
    if m == 1:
        return min(n + 2, cap + 1)
    if m == 2:
        return min(2 * n + 3, cap + 1)
    if m == 3:
        if n + 3 > max(cap, 4).bit_length() + 1:
            return cap + 1
        return min((1 << (n + 3)) - 3, cap + 1)
    # m >= 4: unfold one level; saturation stops the recursion quickly.
    if n == 0:
        return ack_sat(m - 1, 1, cap)
    inner = ack_sat(m, n - 1, cap)
    if inner > cap:
        return cap + 1
    return ack_sat(m - 1, inner, cap)


def call_count_sat(m: int, n: int, cap: int) -> int:
    if m == 0:
        return 1
    if m == 1:
        return min(2 * n + 2, cap + 1)
    if m == 2:
        return min(2 * n * n + 7 * n + 5, cap + 1)
    total = 1 + call_count_sat(m - 1, 1, cap)
    for k in range(n):
        a_k = ack_sat(m, k, cap)
        if a_k > cap:
            return cap + 1
        total += 1 + call_count_sat(m - 1, a_k, cap)
        if total > cap:
            return cap + 1
    return min(total, cap + 1)


def collapse_cost_sat(stack: tuple[int, ...], cap: int) -> int:
    """Total rewrite steps to run a stack down to length <= 1, saturated at cap."""
    total = 0
    cur = list(stack)
    while len(cur) >= 2:
        n_, m_ = cur[0], cur[1]
        total += call_count_sat(m_, n_, cap)
        if total > cap:
            return cap + 1
        value = ack_sat(m_, n_, cap)
        if value > cap:
            return cap + 1
        cur[:2] = [value]
    return total


def acklist_oracle(stack: tuple[int, ...], values: AckOracle) -> int:
    """Collapse the two front elements through the value oracle until short."""
    cur = list(stack)
    while len(cur) >= 2:
        cur[:2] = [values.value(cur[1], cur[0])]
    return cur[0] if cur else 0

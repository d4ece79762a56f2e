"""Closed-form expressions for expected degrees and fiber power sums.

Everything here is evaluated in exact integer/rational arithmetic.  Each
closed form has at least one independent computation path in
``noninv.oracle`` (full enumeration or direct multinomial summation),
and the test suite asserts exact agreement between the paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .combinatorics import binomial, stirling1_unsigned, stirling2
from .errors import InvalidExponentError, InvalidSizeError

__all__ = [
    "ChainSpec",
    "expected_degree_chain",
    "expected_degree_iterate",
    "power_difference_coeffs",
    "expected_degree_q",
    "closed_multinomial_power_sum",
    "stirling_identity_sum",
    "power_sum_stirling_form",
]


@dataclass(frozen=True)
class ChainSpec:
    """Sizes (n_1, ..., n_{t+1}) of the sets in a composition chain.

    A chain of t >= 1 functions f_s: X_s -> X_{s+1} needs t+1 sets, so
    the size vector has length >= 2.
    """

    sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(self.sizes)
        object.__setattr__(self, "sizes", sizes)
        if len(sizes) < 2:
            raise InvalidSizeError(
                f"a chain needs at least 2 set sizes, got {len(sizes)}"
            )
        if any(n < 1 for n in sizes):
            raise InvalidSizeError(f"set sizes must be >= 1, got {sizes}")

    @property
    def t(self) -> int:
        """Number of functions in the chain."""
        return len(self.sizes) - 1

    def tuple_count(self) -> int:
        """Number of t-tuples of functions: prod_s n_{s+1}^{n_s}."""
        return prod(
            self.sizes[s + 1] ** self.sizes[s] for s in range(self.t)
        )


def expected_degree_chain(spec: ChainSpec) -> Fraction:
    """Expected degree of a uniformly random composition chain.

    Equals (prod_s n_s - prod_s (n_s - 1)) / prod_{s>=2} n_s, always a
    rational in [1, n_1].
    """
    sizes = spec.sizes
    numerator = prod(sizes) - prod(n - 1 for n in sizes)
    return Fraction(numerator, prod(sizes[1:]))


def expected_degree_iterate(n: int, t: int) -> Fraction:
    """Equal-sets special case: (n^(t+1) - (n-1)^(t+1)) / n^t."""
    if n < 1:
        raise InvalidSizeError(f"n must be >= 1, got {n}")
    if t < 1:
        raise InvalidSizeError(f"t must be >= 1, got {t}")
    return Fraction(n ** (t + 1) - (n - 1) ** (t + 1), n**t)


def power_difference_coeffs(t: int) -> list[int]:
    """Coefficients of n^(t+1) - (n-1)^(t+1) as a polynomial in n.

    Entry s is (-1)^s * C(t+1, s+1), the coefficient of n^(t-s): a
    beheaded row of Pascal's triangle with alternating signs.  As n grows
    the normalized difference tends to t+1.
    """
    if t < 1:
        raise InvalidSizeError(f"t must be >= 1, got {t}")
    return [
        (-binomial(t + 1, s + 1) if s % 2 else binomial(t + 1, s + 1))
        for s in range(t + 1)
    ]


def _power_sum_kernel(n: int, m: int, q: int) -> int:
    # sum_{k=1..q} {q, k} (sum_{j=1..k} (-1)^(k-j) [k, j] n^(j-1)) m^(q-k)
    total = 0
    for k in range(1, q + 1):
        inner = sum(
            (-1) ** (k - j) * stirling1_unsigned(k, j) * n ** (j - 1)
            for j in range(1, k + 1)
        )
        total += stirling2(q, k) * inner * m ** (q - k)
    return total


def expected_degree_q(n: int, m: int, q: int) -> Fraction:
    """Average of deg(f, q) over all m^n functions from an n-set to an m-set.

    Evaluates the Stirling-number closed form

        (1/m^(q-1)) * sum_{k=1..q} {q brace k}
            (sum_{j=1..k} (-1)^(k-j) [k brack j] n^(j-1)) m^(q-k)

    exactly; ``noninv.oracle.brute_expected_degree_q`` is the
    enumeration path the tests compare against.
    """
    if n < 1 or m < 1:
        raise InvalidSizeError(f"set sizes must be >= 1, got ({n}, {m})")
    if q < 1:
        raise InvalidExponentError(f"exponent must be >= 1, got {q}")
    return Fraction(_power_sum_kernel(n, m, q), m ** (q - 1))


def closed_multinomial_power_sum(n: int, m: int, q: int) -> int:
    """Closed form for sum over weak compositions k of n into m parts of
    multinomial(n; k) * sum_i k_i^q  (with 0^0 = 1 when q = 0).

    For q >= 1 this is n * m^(n-(q-1)) times the Stirling kernel used by
    ``expected_degree_q``; for q = 0 it is m^(n+1).  The m power can have
    a negative exponent (q > n+1), so the product is carried in exact
    rationals and checked to be integral before returning.
    """
    if n < 1 or m < 1:
        raise InvalidSizeError(f"parameters must be >= 1, got ({n}, {m})")
    if q < 0:
        raise InvalidExponentError(f"exponent must be >= 0, got {q}")
    if q == 0:
        return m ** (n + 1)
    value = n * Fraction(m) ** (n - (q - 1)) * _power_sum_kernel(n, m, q)
    if value.denominator != 1:
        raise ArithmeticError(
            f"power sum for ({n}, {m}, {q}) is not integral: {value}"
        )
    return value.numerator


def stirling_identity_sum(q: int) -> int:
    """sum_{k=0..q-1} (-1)^k sum_{j=1..q-k} {q brace k+j} [k+j brack j].

    An alternating double sum of products of Stirling numbers of both
    kinds; its value is 1 for every q >= 1 (the test suite asserts this,
    the function just computes the sum).
    """
    if q < 1:
        raise InvalidExponentError(f"q must be >= 1, got {q}")
    return sum(
        (-1) ** k
        * sum(
            stirling2(q, k + j) * stirling1_unsigned(k + j, j)
            for j in range(1, q - k + 1)
        )
        for k in range(q)
    )


def power_sum_stirling_form(n: int, q: int) -> int:
    """Alternative closed form for the m = n multinomial power sum.

    Evaluates n^(n-(q-2)) * sum_{k=0..q-1} (-1)^k
    (sum_{j=1..q-k} {q brace k+j} [k+j brack j]) n^(q-k-1), carried in
    rationals when the leading power has a negative exponent.  Equals
    ``closed_multinomial_power_sum(n, n, q)``.
    """
    if n < 1:
        raise InvalidSizeError(f"n must be >= 1, got {n}")
    if q < 1:
        raise InvalidExponentError(f"q must be >= 1, got {q}")
    total = sum(
        (-1) ** k
        * sum(
            stirling2(q, k + j) * stirling1_unsigned(k + j, j)
            for j in range(1, q - k + 1)
        )
        * n ** (q - k - 1)
        for k in range(q)
    )
    value = Fraction(n) ** (n - (q - 2)) * total
    if value.denominator != 1:
        raise ArithmeticError(
            f"power sum form for ({n}, {q}) is not integral: {value}"
        )
    return value.numerator

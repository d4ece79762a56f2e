"""Independent computation paths for every closed form in the package.

Two kinds of oracle live here: full enumeration over function tuples
(exponential, budget-guarded) and direct evaluation of nested multinomial
sums over weak compositions (polynomial per level, also budget-guarded).
Each closed form in ``noninv.closed_form`` must agree exactly with at
least one of these paths; the chain expectation has all three.

0^0 = 1 throughout: the composition sums count functions with prescribed
(possibly empty) fibers, which forces the convention.  Python's integer
``0 ** 0`` already evaluates to 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb
from typing import Iterator, Mapping, Sequence, Union

from .closed_form import ChainSpec
from .combinatorics import multinomial
from .errors import BudgetExceededError, InvalidExponentError, InvalidSizeError
from .functions import FiniteFunction

__all__ = [
    "EnumerationBudget",
    "DEFAULT_BUDGET",
    "VerificationReport",
    "enumerate_functions",
    "weak_compositions",
    "count_weak_compositions",
    "brute_expected_degree_chain",
    "multinomial_expected_degree_chain",
    "brute_expected_degree_q",
    "multinomial_power_sum",
    "check_square_moment_identity",
]


@dataclass(frozen=True)
class EnumerationBudget:
    """Cap on the number of objects an oracle may enumerate."""

    max_states: int = 10**6

    def __post_init__(self):
        if self.max_states < 1:
            raise InvalidSizeError(
                f"budget must be >= 1, got {self.max_states}"
            )

    def check(self, states: int, what: str) -> None:
        if states > self.max_states:
            raise BudgetExceededError(
                f"{what} needs {states} enumerated objects, "
                f"budget is {self.max_states}"
            )


DEFAULT_BUDGET = EnumerationBudget()

ExactValue = Union[int, Fraction]


@dataclass(frozen=True)
class VerificationReport:
    """Paired (oracle value, closed-form value) for one parameter point."""

    parameters: Mapping[str, int]
    oracle_value: Fraction
    closed_value: Fraction
    match: bool

    @staticmethod
    def compare(
        parameters: Mapping[str, int],
        oracle_value: ExactValue,
        closed_value: ExactValue,
    ) -> "VerificationReport":
        oracle = Fraction(oracle_value)
        closed = Fraction(closed_value)
        return VerificationReport(
            parameters=dict(parameters),
            oracle_value=oracle,
            closed_value=closed,
            match=oracle == closed,
        )


def enumerate_functions(
    domain_size: int, codomain_size: int
) -> Iterator[FiniteFunction]:
    """All codomain_size^domain_size functions, in lexicographic order of
    the image tuple."""
    for images in product(range(codomain_size), repeat=domain_size):
        yield FiniteFunction(domain_size, codomain_size, images)


def weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of ``total`` into ``parts`` nonnegative parts.

    Colexicographic order (last coordinate varies slowest); the order is
    fixed only so that streamed output is reproducible.
    """
    if parts < 1:
        raise InvalidSizeError(f"parts must be >= 1, got {parts}")
    if parts == 1:
        yield (total,)
        return
    for last in range(total + 1):
        for rest in weak_compositions(total - last, parts - 1):
            yield rest + (last,)


def count_weak_compositions(total: int, parts: int) -> int:
    return comb(total + parts - 1, parts - 1)


def _fiber_square_sum(images: Sequence[int], codomain_size: int) -> int:
    counts = [0] * codomain_size
    for y in images:
        counts[y] += 1
    return sum(c * c for c in counts)


def brute_expected_degree_chain(
    spec: ChainSpec, budget: EnumerationBudget = DEFAULT_BUDGET
) -> Fraction:
    """Exact average of deg(f_t o ... o f_1) over all function tuples.

    Folds each tuple incrementally: the DFS keeps the partial composition
    X_1 -> X_{s+1} and never materializes a tuple of functions, so memory
    stays O(t * n) while the arithmetic remains exact.
    """
    sizes = spec.sizes
    t = spec.t
    budget.check(spec.tuple_count(), f"chain enumeration for {sizes}")
    n1 = sizes[0]
    total = 0

    def descend(level: int, g: tuple[int, ...]) -> None:
        nonlocal total
        if level == t:
            total += _fiber_square_sum(g, sizes[t])
            return
        dom, cod = sizes[level], sizes[level + 1]
        for f in product(range(cod), repeat=dom):
            descend(level + 1, tuple(f[x] for x in g))

    descend(0, tuple(range(n1)))
    return Fraction(total, n1 * spec.tuple_count())


def multinomial_expected_degree_chain(
    spec: ChainSpec, budget: EnumerationBudget = DEFAULT_BUDGET
) -> Fraction:
    """Chain expectation via nested sums over fiber-size profiles.

    Level s sums over weak compositions of n_s into n_{t+1} parts; the
    weight linking level s to level s+1 is prod_i k_{s+1,i}^{k_{s,i}}
    (the count of functions realizing those nested fiber sizes), and the
    innermost level carries sum_i k_{1,i}^2.  Level sums are memoized on
    the sorted next-level profile, which they are symmetric in.
    """
    sizes = spec.sizes
    t = spec.t
    parts = sizes[-1]
    for s in range(t):
        budget.check(
            count_weak_compositions(sizes[s], parts),
            f"weak compositions of {sizes[s]} into {parts} parts",
        )
    memo: dict[tuple[int, tuple[int, ...]], int] = {}

    def level_sum(s: int, k_next: tuple[int, ...]) -> int:
        # sum over profiles at 1-based level s, given level s+1's profile
        key = (s, tuple(sorted(k_next)))
        if key in memo:
            return memo[key]
        acc = 0
        for k in weak_compositions(sizes[s - 1], parts):
            weight = multinomial(sizes[s - 1], k)
            for ki, ni in zip(k, k_next):
                weight *= ni**ki
            if weight == 0:
                continue
            if s == 1:
                acc += weight * sum(ki * ki for ki in k)
            else:
                acc += weight * level_sum(s - 1, k)
        memo[key] = acc
        return acc

    total = 0
    for k_top in weak_compositions(sizes[t - 1], parts):
        weight = multinomial(sizes[t - 1], k_top)
        if t == 1:
            total += weight * sum(ki * ki for ki in k_top)
        else:
            total += weight * level_sum(t - 1, k_top)
    return Fraction(total, sizes[0] * spec.tuple_count())


def brute_expected_degree_q(
    n: int, m: int, q: int, budget: EnumerationBudget = DEFAULT_BUDGET
) -> Fraction:
    """Exact average of deg(f, q) over all m^n functions."""
    if n < 1 or m < 1:
        raise InvalidSizeError(f"set sizes must be >= 1, got ({n}, {m})")
    if q < 1:
        raise InvalidExponentError(f"exponent must be >= 1, got {q}")
    budget.check(m**n, f"enumeration of all functions ({n}, {m})")
    total = 0
    for images in product(range(m), repeat=n):
        counts = [0] * m
        for y in images:
            counts[y] += 1
        total += sum(c**q for c in counts)
    return Fraction(total, n * m**n)


def multinomial_power_sum(
    n: int, m: int, q: int, budget: EnumerationBudget = DEFAULT_BUDGET
) -> int:
    """sum over weak compositions k of n into m parts of
    multinomial(n; k) * sum_i k_i^q, with 0^0 = 1 when q = 0.

    Direct summation; the closed-form counterpart is
    ``noninv.closed_form.closed_multinomial_power_sum``.
    """
    if n < 1 or m < 1:
        raise InvalidSizeError(f"parameters must be >= 1, got ({n}, {m})")
    if q < 0:
        raise InvalidExponentError(f"exponent must be >= 0, got {q}")
    budget.check(
        count_weak_compositions(n, m),
        f"weak compositions of {n} into {m} parts",
    )
    total = 0
    for k in weak_compositions(n, m):
        total += multinomial(n, k) * sum(ki**q for ki in k)
    return total


def check_square_moment_identity(
    m: int, k_parts: Sequence[int]
) -> VerificationReport:
    """Check the second-moment expansion of a weighted multinomial sum.

    Left side: sum over weak compositions (l_1..l_n) of m of
    multinomial(m; l) * prod_i k_i^(l_i) * sum_i l_i^2.  Right side:
    m(m-1) r^(m-2) sum_i k_i^2 + m r^m with r = sum_i k_i.  The scalar
    m(m-1) is evaluated first and short-circuits the first term, so
    r^(m-2) is never formed with a negative exponent when m = 1.
    """
    if m < 1:
        raise InvalidSizeError(f"m must be >= 1, got {m}")
    parts = tuple(k_parts)
    if len(parts) < 1:
        raise InvalidSizeError("k_parts must have length >= 1")
    if any(k < 0 for k in parts):
        raise InvalidSizeError(f"k_parts must be >= 0, got {parts}")
    n = len(parts)
    r = sum(parts)

    lhs = 0
    for l in weak_compositions(m, n):
        weight = multinomial(m, l)
        for ki, li in zip(parts, l):
            weight *= ki**li
        lhs += weight * sum(li * li for li in l)

    lead = m * (m - 1)
    first = lead * r ** (m - 2) * sum(k * k for k in parts) if lead else 0
    rhs = first + m * r**m

    return VerificationReport.compare(
        {"m": m, "n": n, "r": r}, lhs, rhs
    )

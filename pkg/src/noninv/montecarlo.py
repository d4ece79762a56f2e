"""Seeded Monte Carlo estimation for sizes beyond enumeration.

RNG contract
------------
The generator is SplitMix64 (Steele, Lea & Flood's public-domain mixer;
the same one xoshiro uses for seeding): a 64-bit counter advanced by the
golden-gamma constant, finalized with two xor-multiply rounds.  It is
fully specified by the constants below, so the stream is reproducible
across platforms and implementations.

Uniform integers below a bound are drawn by rejection (words >=
floor(2^64 / bound) * bound are discarded), so there is no modulo bias.

Samples are processed in fixed blocks of ``BLOCK_SAMPLES``.  Block i uses
its own SplitMix64 stream whose initial state is the i-th output word of
a SplitMix64 stream seeded with the master seed.  Per-block partial sums
are exact integers merged in block order, so the result is bit-for-bit
identical no matter how many worker threads run the blocks.  The block
size is part of the stream contract: changing it changes the report.

All reference values stay exact rationals; floats appear only in the
reported mean, standard error and z-score.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .closed_form import ChainSpec, expected_degree_chain, expected_degree_iterate
from .errors import InvalidSizeError
from .functions import FiniteFunction

__all__ = [
    "SplitMix64",
    "derived_stream",
    "BLOCK_SAMPLES",
    "SamplerConfig",
    "EstimateReport",
    "sample_function",
    "estimate_expected_degree_chain",
    "estimate_max_fiber_mean",
    "convergence_table",
]

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

BLOCK_SAMPLES = 1024


def _mix64(z: int) -> int:
    z &= _MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """SplitMix64 stream: state += gamma; output = mix(state)."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_word(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return _mix64(self._state)

    def randbelow(self, bound: int) -> int:
        """Uniform integer in [0, bound) via rejection (no modulo bias)."""
        if bound < 1:
            raise InvalidSizeError(f"bound must be >= 1, got {bound}")
        threshold = ((1 << 64) // bound) * bound
        while True:
            word = self.next_word()
            if word < threshold:
                return word % bound


def derived_stream(seed: int, index: int) -> SplitMix64:
    """Stream for block ``index``: seeded with the index-th output word
    of a SplitMix64 stream seeded with the master seed."""
    return SplitMix64(_mix64((seed + (index + 1) * _GAMMA) & _MASK64))


@dataclass(frozen=True)
class SamplerConfig:
    """Seed, sample count and sizes for one estimation run."""

    seed: int
    samples: int
    sizes: Optional[ChainSpec] = None

    def __post_init__(self):
        if not 0 <= self.seed < 1 << 64:
            raise InvalidSizeError(
                f"seed must be a 64-bit unsigned integer, got {self.seed}"
            )
        if self.samples < 1:
            raise InvalidSizeError(
                f"samples must be >= 1, got {self.samples}"
            )


@dataclass(frozen=True)
class EstimateReport:
    """Monte Carlo estimate with its exact reference value, when one exists.

    ``z_score`` is (mean - closed_form) / std_error, present only when a
    closed form is known and the standard error is positive.
    ``theta_ratio`` is mean / (log n / log log n) for max-fiber runs.
    """

    mean: float
    std_error: float
    closed_form: Optional[Fraction]
    z_score: Optional[float]
    samples: int
    seed: int
    theta_ratio: Optional[float] = None


def sample_function(n: int, m: int, stream: SplitMix64) -> FiniteFunction:
    """Uniform random function: each image independent uniform on [0, m)."""
    return FiniteFunction(
        n, m, tuple(stream.randbelow(m) for _ in range(n))
    )


def _chain_block(
    sizes: tuple[int, ...], seed: int, block: int, count: int
) -> tuple[int, int]:
    """Sum and square-sum of the fiber-square statistic over one block.

    Inlines the SplitMix64 step for speed; draws are word-for-word the
    same as ``sample_function`` on ``derived_stream(seed, block)`` (the
    test suite pins this equivalence).
    """
    t = len(sizes) - 1
    n1 = sizes[0]
    state = derived_stream(seed, block)._state
    total = 0
    total_sq = 0
    thresholds = [
        ((1 << 64) // cod) * cod for cod in sizes[1:]
    ]
    for _ in range(count):
        g = list(range(n1))
        for s in range(t):
            dom, cod = sizes[s], sizes[s + 1]
            threshold = thresholds[s]
            f = [0] * dom
            for i in range(dom):
                while True:
                    state = (state + _GAMMA) & _MASK64
                    z = ((state ^ (state >> 30)) * _MIX1) & _MASK64
                    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
                    z ^= z >> 31
                    if z < threshold:
                        f[i] = z % cod
                        break
            g = [f[x] for x in g]
        counts = [0] * sizes[t]
        for y in g:
            counts[y] += 1
        s_val = sum(c * c for c in counts)
        total += s_val
        total_sq += s_val * s_val
    return total, total_sq


def _maxfiber_block(
    n: int, seed: int, block: int, count: int
) -> tuple[int, int]:
    state = derived_stream(seed, block)._state
    threshold = ((1 << 64) // n) * n
    total = 0
    total_sq = 0
    for _ in range(count):
        counts = [0] * n
        for _ in range(n):
            while True:
                state = (state + _GAMMA) & _MASK64
                z = ((state ^ (state >> 30)) * _MIX1) & _MASK64
                z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
                z ^= z >> 31
                if z < threshold:
                    counts[z % n] += 1
                    break
        m_val = max(counts)
        total += m_val
        total_sq += m_val * m_val
    return total, total_sq


def _run_blocks(
    block_fn: Callable[[int, int], tuple[int, int]],
    samples: int,
    threads: int,
) -> tuple[int, int]:
    blocks = [
        (b, min(BLOCK_SAMPLES, samples - b * BLOCK_SAMPLES))
        for b in range((samples + BLOCK_SAMPLES - 1) // BLOCK_SAMPLES)
    ]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(
                pool.map(lambda bc: block_fn(bc[0], bc[1]), blocks)
            )
    else:
        results = [block_fn(b, c) for b, c in blocks]
    total = sum(r[0] for r in results)
    total_sq = sum(r[1] for r in results)
    return total, total_sq


def _mean_and_error(
    total: int, total_sq: int, samples: int, denom: int
) -> tuple[Fraction, float]:
    """Exact mean and float standard error of the statistic total/denom."""
    mean = Fraction(total, samples * denom)
    if samples == 1:
        return mean, 0.0
    # unbiased sample variance of x_i = s_i / denom
    var = (Fraction(total_sq, denom * denom) - samples * mean * mean) / (
        samples - 1
    )
    return mean, math.sqrt(var / samples)


def estimate_expected_degree_chain(
    config: SamplerConfig, threads: int = 1
) -> EstimateReport:
    """Sample random function chains and average the composition degree.

    The report carries the exact closed-form expectation and the z-score
    of the sample mean against it.
    """
    if config.sizes is None:
        raise InvalidSizeError("config.sizes must be a ChainSpec")
    sizes = config.sizes.sizes
    total, total_sq = _run_blocks(
        lambda b, c: _chain_block(sizes, config.seed, b, c),
        config.samples,
        threads,
    )
    mean, std_error = _mean_and_error(
        total, total_sq, config.samples, sizes[0]
    )
    closed = expected_degree_chain(config.sizes)
    z = float(mean - closed) / std_error if std_error > 0 else None
    return EstimateReport(
        mean=float(mean),
        std_error=std_error,
        closed_form=closed,
        z_score=z,
        samples=config.samples,
        seed=config.seed,
    )


def estimate_max_fiber_mean(
    n: int, config: SamplerConfig, threads: int = 1
) -> EstimateReport:
    """Estimate E[max fiber] over uniform random endofunctions of an n-set.

    No closed form is attached; the report records the ratio of the mean
    to log(n)/log(log(n)) for qualitative comparison with the known
    growth order of the expected maximum fiber.  Requires n >= 3 so that
    log(log(n)) is positive.
    """
    if n < 3:
        raise InvalidSizeError(
            f"max-fiber estimation needs n >= 3, got {n}"
        )
    total, total_sq = _run_blocks(
        lambda b, c: _maxfiber_block(n, config.seed, b, c),
        config.samples,
        threads,
    )
    mean, std_error = _mean_and_error(total, total_sq, config.samples, 1)
    ratio = float(mean) / (math.log(n) / math.log(math.log(n)))
    return EstimateReport(
        mean=float(mean),
        std_error=std_error,
        closed_form=None,
        z_score=None,
        samples=config.samples,
        seed=config.seed,
        theta_ratio=ratio,
    )


def convergence_table(
    t: int, n_values: Sequence[int]
) -> list[tuple[int, Fraction, Fraction]]:
    """Rows (n, exact chain expectation for equal sets, gap to t+1).

    The gaps are exact rationals; they are positive and strictly
    decreasing in n once n > t.
    """
    rows = []
    for n in n_values:
        value = expected_degree_iterate(n, t)
        rows.append((n, value, Fraction(t + 1) - value))
    return rows

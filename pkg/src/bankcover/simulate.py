"""Seeded Monte Carlo for the bank-coverage process.

Replication ``i`` of an experiment always consumes its own generator, derived
from ``(seed, i)`` with a counter-based bit generator, so results are
bit-identical no matter how replications are split across workers.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .coupon import BankSpec, InvalidSpecError

__all__ = [
    "GENERATOR_ID",
    "SimulationConfig",
    "SimulationResult",
    "replication_stream",
    "simulate_one",
    "run_experiment",
    "max_of_single_banks",
    "variance_std_error",
]

GENERATOR_ID = f"philox4x64/numpy-{np.__version__}"

# Stream family for the cross-check sampler, disjoint from replication streams.
_ALT_SAMPLER_SALT = 0x6D61785F


@dataclass(frozen=True)
class SimulationConfig:
    """One reproducible experiment: spec, replication count, seed, workers."""

    spec: BankSpec
    reps: int
    seed: int
    workers: int = 1

    def __post_init__(self) -> None:
        if not isinstance(self.reps, int) or self.reps < 1:
            raise InvalidSpecError(f"reps must be an integer >= 1, got {self.reps!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2 ** 64:
            raise InvalidSpecError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if not isinstance(self.workers, int) or self.workers < 1:
            raise InvalidSpecError(f"workers must be an integer >= 1, got {self.workers!r}")


@dataclass(frozen=True)
class SimulationResult:
    """Aggregated replication outcomes; the histogram is exact integer counts."""

    mean: float
    variance: float
    std_error_mean: float
    min: int
    max: int
    histogram: dict[int, int] = field(repr=False)
    generator_id: str = GENERATOR_ID


def replication_stream(seed: int, index: int) -> np.random.Generator:
    """Generator owned by replication ``index``; a pure function of (seed, index)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence((seed, index))))


def _block_hint(a: int, q: int) -> int:
    # Size the draw block so most replications finish in one pass; drawing
    # past the stopping test is harmless because the stream prefix is fixed.
    rate = -math.log1p(-1.0 / a)
    return max(16, int((math.log(a * q) + 4.0) / rate) + 2)


def simulate_one(spec: BankSpec, stream: np.random.Generator) -> int:
    """Tests generated until every alternative of every bank has appeared.

    Draws one uniform alternative per bank per test, in test order, tracking
    per-bank coverage as 64-bit bitsets.  Blocks of tests are evaluated at
    once for speed; the draw sequence, and therefore the result, matches the
    one-test-at-a-time loop exactly.
    """
    a, q = spec.a, spec.q
    if a == 1:
        # The first test covers everything; no randomness is consumed.
        return 1
    full = np.uint64(2 ** a - 1)
    one = np.uint64(1)
    block = _block_hint(a, q)
    covered = np.zeros(q, dtype=np.uint64)
    base = 0
    while True:
        draws = stream.integers(0, a, size=(block, q))
        bits = one << draws.astype(np.uint64)
        np.bitwise_or.accumulate(bits, axis=0, out=bits)
        bits |= covered
        done = (bits == full).all(axis=1)
        if done.any():
            return base + int(done.argmax()) + 1
        covered = bits[-1].copy()
        base += block


def _count_range(a: int, q: int, seed: int, start: int, stop: int) -> Counter:
    spec = BankSpec(a, q)
    hist: Counter = Counter()
    for i in range(start, stop):
        hist[simulate_one(spec, replication_stream(seed, i))] += 1
    return hist


def _chunk_ranges(reps: int, workers: int) -> list[tuple[int, int]]:
    size, extra = divmod(reps, workers)
    ranges = []
    start = 0
    for w in range(workers):
        stop = start + size + (1 if w < extra else 0)
        if stop > start:
            ranges.append((start, stop))
        start = stop
    return ranges


def run_experiment(config: SimulationConfig) -> SimulationResult:
    """Run ``config.reps`` independent replications and aggregate exactly.

    The histogram, and every statistic derived from it, is independent of
    ``workers``: replication i is a pure function of (seed, i).
    """
    spec, reps, seed = config.spec, config.reps, config.seed
    chunks = _chunk_ranges(reps, config.workers)
    if config.workers == 1 or len(chunks) == 1:
        parts = [_count_range(spec.a, spec.q, seed, s, e) for s, e in chunks]
    else:
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            futures = [
                pool.submit(_count_range, spec.a, spec.q, seed, s, e)
                for s, e in chunks
            ]
            parts = [f.result() for f in futures]
    hist: Counter = Counter()
    for part in parts:
        hist.update(part)
    return _result_from_histogram(hist, reps)


def _result_from_histogram(hist: Counter, reps: int) -> SimulationResult:
    s1 = sum(n * c for n, c in hist.items())
    s2 = sum(n * n * c for n, c in hist.items())
    mean = s1 / reps
    if reps > 1:
        # Unbiased sample variance, computed in exact rationals then rounded once.
        variance = float(Fraction(reps * s2 - s1 * s1, reps * (reps - 1)))
    else:
        variance = 0.0
    return SimulationResult(
        mean=mean,
        variance=variance,
        std_error_mean=math.sqrt(variance / reps),
        min=min(hist),
        max=max(hist),
        histogram=dict(sorted(hist.items())),
    )


def variance_std_error(result: SimulationResult) -> float:
    """Standard error of the sample variance, from exact histogram moments."""
    hist = result.histogram
    n = sum(hist.values())
    if n < 2:
        return 0.0
    s1 = sum(v * c for v, c in hist.items())
    mean = Fraction(s1, n)
    m2 = sum((v - mean) ** 2 * c for v, c in hist.items()) / n
    m4 = sum((v - mean) ** 4 * c for v, c in hist.items()) / n
    se_sq = (m4 - m2 ** 2 * Fraction(n - 3, n - 1)) / n
    return math.sqrt(float(se_sq)) if se_sq > 0 else 0.0


def max_of_single_banks(spec: BankSpec, reps: int, seed: int) -> np.ndarray:
    """Cross-check sampler: coverage time as the max of per-bank stage sums.

    Each bank's time is a sum of geometric waits (one per still-missing
    alternative count), a different construction from the per-test draws of
    :func:`simulate_one`.  Test-only route for distributional comparisons.
    """
    a, q = spec.a, spec.q
    rng = np.random.Generator(
        np.random.Philox(np.random.SeedSequence((seed, _ALT_SAMPLER_SALT)))
    )
    out = np.empty(reps, dtype=np.int64)
    done = 0
    while done < reps:
        m = min(20_000, reps - done)
        totals = np.zeros((m, q), dtype=np.int64)
        for k in range(1, a + 1):
            totals += rng.geometric((a - k + 1) / a, size=(m, q))
        out[done : done + m] = totals.max(axis=1)
        done += m
    return out

"""Throughput of the dense product kernel against the naive blade-pair loop."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .algebra import Algebra, algebra, blade_product

CHECK_RTOL = 1e-12
ORACLE_SAMPLE = 200

Kernel = Callable[[Algebra, np.ndarray, np.ndarray], np.ndarray]


class CrossCheckError(RuntimeError):
    pass


@dataclass(frozen=True)
class BenchReport:
    signature: str
    iterations: int
    seconds: float
    products_per_second: float
    oracle_products_per_second: float
    speedup: float
    check_samples: int
    check_max_error: float


def naive_product(alg: Algebra, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Double loop over every blade pair through :func:`blade_product`."""
    out = np.zeros(alg.dim)
    for i in range(alg.dim):
        if a[i] == 0.0:
            continue
        for j in range(alg.dim):
            if b[j] == 0.0:
                continue
            sign, k = blade_product(i, j, alg.sig)
            out[k] += sign * a[i] * b[j]
    return out


def dense_kernel(alg: Algebra, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return alg.product_batch(a, b)


def cross_check(alg: Algebra, kernel: Kernel, samples: int, rng: np.random.Generator) -> float:
    a = rng.standard_normal((samples, alg.dim))
    b = rng.standard_normal((samples, alg.dim))
    fast = kernel(alg, a, b)
    worst = 0.0
    for row in range(samples):
        ref = naive_product(alg, a[row], b[row])
        err = np.max(np.abs(fast[row] - ref)) / max(np.max(np.abs(ref)), 1e-300)
        worst = max(worst, float(err))
    if not worst <= CHECK_RTOL:
        raise CrossCheckError(f"kernel disagrees with the blade-pair oracle on {alg.sig}: "
                              f"max relative error {worst:.3g}")
    return worst


def run_bench(p: int, q: int, iterations: int, seed: int = 0, check_samples: int = 64,
              kernel: Kernel = dense_kernel, chunk: int = 65536) -> BenchReport | None:
    """Time ``iterations`` random products; ``None`` when there is nothing to time.

    The kernel is cross-checked against :func:`naive_product` before timing and
    :class:`CrossCheckError` is raised on disagreement.
    """
    if iterations <= 0:
        return None
    alg = algebra(p, q)
    rng = np.random.default_rng(seed)
    worst = cross_check(alg, kernel, check_samples, rng)

    elapsed = 0.0
    done = 0
    while done < iterations:
        size = min(chunk, iterations - done)
        a = rng.standard_normal((size, alg.dim))
        b = rng.standard_normal((size, alg.dim))
        start = time.perf_counter()
        kernel(alg, a, b)
        elapsed += time.perf_counter() - start
        done += size

    sample = min(iterations, ORACLE_SAMPLE)
    a = rng.standard_normal((sample, alg.dim))
    b = rng.standard_normal((sample, alg.dim))
    start = time.perf_counter()
    for row in range(sample):
        naive_product(alg, a[row], b[row])
    oracle_rate = sample / (time.perf_counter() - start)

    rate = iterations / elapsed if elapsed > 0 else float("inf")
    return BenchReport(str(alg.sig), iterations, elapsed, rate, oracle_rate,
                       rate / oracle_rate, check_samples, worst)

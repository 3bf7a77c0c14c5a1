"""Latency benchmark for divrisk solver operations.

Measures wall-clock latency on the reference scenarios:
- Inner solve (one G evaluation)
- V(k) from a cold solver (includes the k_max estimate)
- Existence classification
- Penalised value W(lambda)
- Brute-force oracle at resolution 20000

Every call builds a fresh solver so the memo caches never hit.

Usage:
    python -m benchmarks.latency
    python benchmarks/latency.py
"""

import json
import statistics
import time
from typing import Any, Dict, List

from divrisk import IntegrandSpec, WorstCaseSolver, brute_force_V, burg_two_r, kl_two_point

BURG = IntegrandSpec.f_divergence("burg")
KL = IntegrandSpec.f_divergence("kl")


def _timed(fn, iterations: int = 100) -> Dict[str, float]:
    """Run fn() `iterations` times and return latency stats in ms."""
    times: List[float] = []
    for _ in range(iterations):
        t0 = time.perf_counter()
        fn()
        elapsed = (time.perf_counter() - t0) * 1000
        times.append(elapsed)

    times.sort()
    return {
        "mean_ms": round(statistics.mean(times), 3),
        "median_ms": round(statistics.median(times), 3),
        "p95_ms": round(times[int(len(times) * 0.95)], 3),
        "min_ms": round(times[0], 3),
        "max_ms": round(times[-1], 3),
        "iterations": iterations,
    }


def bench_inner_interior(space) -> Dict[str, float]:
    """One INTERIOR inner solve on the 200-node Burg scenario."""
    return _timed(lambda: WorstCaseSolver(BURG, space).solve_inner(-1.0), iterations=1000)


def bench_inner_boundary(space) -> Dict[str, float]:
    """One BOUNDARY inner solve on the 200-node Burg scenario."""
    return _timed(lambda: WorstCaseSolver(BURG, space).solve_inner(-4.0), iterations=1000)


def bench_value_cold(space) -> Dict[str, float]:
    """V(1) from a cold solver, k_max estimate included."""
    return _timed(lambda: WorstCaseSolver(BURG, space).value_at_k(1.0), iterations=20)


def bench_classify(space) -> Dict[str, float]:
    """Existence classification over the 64-point probe grid."""
    return _timed(lambda: WorstCaseSolver(BURG, space).classify(), iterations=20)


def bench_penalised(space) -> Dict[str, float]:
    """W(1) on the two-point KL scenario."""
    return _timed(lambda: WorstCaseSolver(KL, space).penalised_value(1.0), iterations=1000)


def bench_oracle(space) -> Dict[str, float]:
    """Brute-force V(0.2) at resolution 20000."""
    return _timed(lambda: brute_force_V(KL, space, 0.2, 20000), iterations=50)


def main():
    print("divrisk Latency Benchmark")
    print("=" * 50)
    print()

    burg = burg_two_r()
    kl = kl_two_point()

    runs = [
        ("inner_interior", "inner solve INTERIOR (200 nodes) x 1000", lambda: bench_inner_interior(burg)),
        ("inner_boundary", "inner solve BOUNDARY (200 nodes) x 1000", lambda: bench_inner_boundary(burg)),
        ("value_cold", "V(1) cold solver x 20", lambda: bench_value_cold(burg)),
        ("classify", "classify (64 probes) x 20", lambda: bench_classify(burg)),
        ("penalised_kl2pt", "W(1) two-point KL x 1000", lambda: bench_penalised(kl)),
        ("oracle_20000", "brute-force V(0.2) x 50", lambda: bench_oracle(kl)),
    ]

    results: Dict[str, Any] = {}
    for key, label, bench in runs:
        print(f"Running: {label} ...")
        r = bench()
        results[key] = r
        print(f"  mean={r['mean_ms']:.3f}ms  p95={r['p95_ms']:.3f}ms  max={r['max_ms']:.3f}ms")

    print()
    print("=" * 50)
    print("Summary:")
    print()
    for name, r in results.items():
        print(f"  {name:20s}  mean={r['mean_ms']:9.3f}ms  p95={r['p95_ms']:9.3f}ms")

    # Save results
    output_path = "benchmarks/latency_results.json"
    with open(output_path, "w", encoding="utf-8") as f:
        json.dump(results, f, indent=2)
    print(f"\nResults saved to {output_path}")


if __name__ == "__main__":
    main()

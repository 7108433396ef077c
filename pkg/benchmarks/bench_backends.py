#!/usr/bin/env python3
"""Time the compiled gamma kernels against the pure-Python twins.

Imports both backend modules directly (ignoring SAWLEN_BACKEND), checks
that they agree to double precision on every benchmarked call, then
reports per-call medians and the speedup.  Run from a checkout or an
installed tree:

    python3 benchmarks/bench_backends.py [--repeats 9]
"""

import argparse
import math
import statistics
import sys
import time

from sawlen import _corepy

try:
    from sawlen import _corecy
except ImportError:
    _corecy = None

CASES = [
    ("log_q_exact_sum(50, 50)", "log_q_exact_sum", (50, 50.0), 2000),
    ("log_q_exact_sum(64, 120)", "log_q_exact_sum", (64, 120.0), 2000),
    ("log_q_lower_series(500, 450)", "log_q_lower_series", (500.0, 450.0), 500),
    ("log_q_lower_series(9000, 8800)", "log_q_lower_series", (9000.0, 8800.0), 100),
    ("log_q_upper_cf(500, 700)", "log_q_upper_cf", (500.0, 700.0), 1000),
    ("log_q_upper_cf(9000, 11000)", "log_q_upper_cf", (9000.0, 11000.0), 1000),
    ("log_factorials(100000)", "log_factorials", (100000,), 20),
]


def time_call(fn, args, loops, repeats):
    best = []
    for _ in range(repeats):
        start = time.perf_counter()
        for _ in range(loops):
            fn(*args)
        best.append((time.perf_counter() - start) / loops)
    return statistics.median(best)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=9)
    args = parser.parse_args(argv)

    if _corecy is None:
        print("compiled backend not importable; nothing to compare "
              "(build with: pip install -e . --no-build-isolation)")
        return 1

    header = f"{'kernel call':<38} {'python':>12} {'compiled':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    total_py = total_cy = 0.0
    for label, name, call_args, loops in CASES:
        py_fn = getattr(_corepy, name)
        cy_fn = getattr(_corecy, name)
        py_out = py_fn(*call_args)
        cy_out = cy_fn(*call_args)
        if name == "log_factorials":
            agree = (abs(py_out - cy_out) <= 1e-12 * (1 + abs(py_out))).all()
        else:
            agree = math.isclose(py_out, cy_out, rel_tol=1e-13, abs_tol=1e-300)
        if not agree:
            print(f"BACKEND DISAGREEMENT on {label}: {py_out!r} vs {cy_out!r}")
            return 1
        t_py = time_call(py_fn, call_args, loops, args.repeats)
        t_cy = time_call(cy_fn, call_args, loops, args.repeats)
        total_py += t_py
        total_cy += t_cy
        print(f"{label:<38} {t_py * 1e6:>10.2f}us {t_cy * 1e6:>10.2f}us "
              f"{t_py / t_cy:>8.1f}x")
    print("-" * len(header))
    print(f"{'total':<38} {total_py * 1e6:>10.2f}us {total_cy * 1e6:>10.2f}us "
          f"{total_py / total_cy:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

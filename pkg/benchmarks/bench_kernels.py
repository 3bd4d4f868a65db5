"""Compare the compiled and pure-Python kernels on the hot loops.

Run with: python3 benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import random
import time

from pga_hoare import _kernels_py, kernels
from pga_hoare.services import boolreg, counter, family
from pga_hoare.syntax import normalize, parse_sequence
from pga_hoare.threads import extract

try:
    from pga_hoare import _kernels
except ImportError:
    _kernels = None

_ALPHABET = ["r.get", "+r.get", "-r.get", "r.set:t", "r.set:f",
             "#0", "#1", "#2", "#3", "!"]


def _segment_workload(rng, n=400):
    """(args tuples for run_segment_kernel) over random register segments."""
    work = []
    for _ in range(n):
        k = rng.randint(1, 6)
        body = " ; ".join(rng.choice(_ALPHABET) for _ in range(k))
        if rng.random() < 0.4:
            body = f"({body})^w"
        c = normalize(parse_sequence(body))
        for content in (False, True):
            u = family({"r": boolreg(content)})
            foci, kinds, contents = kernels.encode_family(u)
            enc = kernels.encode_canonical(c, foci, kinds)
            work.append((*enc, len(c.prefix), len(c.period or ()), 1,
                         kinds, contents, 100))
    return work


def _counter_workload(n=200):
    c = normalize(parse_sequence("(-c.iszero ; #2 ; ! ; c.decr)^w"))
    work = []
    for i in range(n):
        u = family({"c": counter(i)})
        foci, kinds, contents = kernels.encode_family(u)
        enc = kernels.encode_canonical(c, foci, kinds)
        work.append((*enc, len(c.prefix), len(c.period or ()), 1, kinds,
                     contents, 400))
    return work


def _thread_workload(rng, n=300):
    work = []
    for _ in range(n):
        k = rng.randint(1, 6)
        body = " ; ".join(rng.choice(_ALPHABET) for _ in range(k))
        t = extract(normalize(parse_sequence(body)))
        for content in (False, True):
            u = family({"r": boolreg(content)})
            foci, kinds, contents = kernels.encode_family(u)
            enc = kernels.encode_thread(t.nodes, foci, kinds)
            work.append((*enc, t.root, kinds, contents, 100))
    return work


def _time(fn, work, repeats):
    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        for args in work:
            fn(*args)
        best = min(best, time.perf_counter() - started)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=5)
    opts = ap.parse_args()

    if _kernels is None:
        print("compiled extension not available; nothing to compare")
        return

    rng = random.Random(0)
    suites = [
        ("segment/register", "run_segment_kernel", _segment_workload(rng)),
        ("segment/counter", "run_segment_kernel", _counter_workload()),
        ("apply/register", "apply_kernel", _thread_workload(rng)),
    ]
    print(f"{'workload':<18} {'pure (ms)':>10} {'cython (ms)':>12} "
          f"{'speedup':>8}")
    for name, fn_name, work in suites:
        pure = _time(getattr(_kernels_py, fn_name), work, opts.repeats)
        comp = _time(getattr(_kernels, fn_name), work, opts.repeats)
        print(f"{name:<18} {pure * 1e3:>10.2f} {comp * 1e3:>12.2f} "
              f"{pure / comp:>7.1f}x")


if __name__ == "__main__":
    main()

"""Timing comparison between the two accumulator backends.

Feeds byte-identical row streams to the pure-Python accumulator and to
the compiled extension, then reports best-of-three wall times for each
workload.  Workloads mirror the library's hot paths: augmentation-ideal
chains and gather-table convolution batches, where entries stay well
below the extension's 2**31 guard.  (Dense random lattices blow past the
guard during elimination; the library reruns those on the pure backend,
a path exercised by the tests rather than timed here.)  Run directly:

    python3 benchmarks/bench_accum.py
"""

import random
import time

from gammafilt.grouprings import (AbelianPGroup, Character, RepRingElement,
                                  char_reps)
from gammafilt.kernels import BACKEND, CompiledAccumulator, PureAccumulator

REPEATS = 3


def chain_rows(g, length):
    # products of augmentation generators, every word up to the length cap
    one = RepRingElement.one(g)
    gens = [RepRingElement.from_character(g, Character(g.exps_of(i))) - one
            for i in char_reps(g)]
    rows = []
    frontier = [one]
    for _ in range(length):
        frontier = [b * a for b in frontier for a in gens]
        rows.extend(list(b.coeffs) for b in frontier)
    return rows


def workload_chain(p, exponents, length):
    g = AbelianPGroup(p, exponents)
    rows = chain_rows(g, length)
    probes = rows[::7]

    def run(cls):
        acc = cls(g.order)
        for r in rows:
            acc.add_row(r)
        acc.hnf_rows()
        for v in probes:
            acc.contains(v)
    shape = " x ".join(f"Z/{p ** e}" for e in exponents)
    return f"ideal chain {shape} (n={len(rows)}, w={g.order})", run


def workload_gather():
    # one batch per character: multiply every base row by (chi - 1)
    # through the group's own gather tables, the convolution hot path
    g = AbelianPGroup(3, [1, 1, 1])
    base = chain_rows(g, 2)[-len(char_reps(g)) ** 2:]
    ident = tuple(range(g.order))
    batches = [[(g.gather(j), 1), (ident, -1)] for j in char_reps(g)]

    def run(cls):
        acc = cls(g.order)
        for terms in batches:
            acc.add_multiplied_rows(base, terms)
        acc.hnf_rows()
    return f"gather batches Z/3^3 (rows={len(base)}, w={g.order})", run


def best_of(run, cls):
    best = None
    for _ in range(REPEATS):
        t0 = time.perf_counter()
        try:
            run(cls)
        except OverflowError:
            return None
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def main():
    print(f"active library backend: {BACKEND}")
    if CompiledAccumulator is None:
        print("compiled extension unavailable; timing pure backend only")
    workloads = [
        workload_chain(2, [2, 2], 3),
        workload_chain(2, [1, 2, 3], 2),
        workload_gather(),
    ]
    header = f"{'workload':<44} {'pure':>9} {'compiled':>9} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, run in workloads:
        tp = best_of(run, PureAccumulator)
        line = f"{name:<44} {tp:>8.4f}s"
        if CompiledAccumulator is not None:
            tc = best_of(run, CompiledAccumulator)
            if tc is None:
                line += f" {'guard':>9} {'-':>8}"
            else:
                line += f" {tc:>8.4f}s {tp / tc:>7.1f}x"
        print(line)


if __name__ == "__main__":
    main()

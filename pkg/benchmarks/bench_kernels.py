"""Compare the compiled and pure-Python kernels on representative workloads.

Usage: python benchmarks/bench_kernels.py [--repeat N]
Prints a TSV table: workload, python seconds, cython seconds, speedup.
"""
import argparse
import random
import sys
import time
from itertools import combinations

from hypertrace import kernels
from hypertrace.coverings import min_covering_exact
from hypertrace.extsearch import check_k2t_lemmas, exact_extremal, random_maximal_trace_free
from hypertrace.hypercore import Hypergraph
from hypertrace.repfamily import SetFamily, find_disjointly_representable
from hypertrace.tracedetect import contains_star_trace, contains_trace, k2t, star


def _random_hosts(count, n, r, density, seed):
    rng = random.Random(seed)
    return [
        Hypergraph(n, r, tuple(e for e in combinations(range(n), r) if rng.random() < density))
        for _ in range(count)
    ]


def trace_k23():
    for h in _random_hosts(40, 12, 3, 0.08, 1):
        contains_trace(h, k2t(3))


def trace_star_general():
    for h in _random_hosts(40, 10, 3, 0.3, 2):
        contains_trace(h, star(4))


def star_fast_path():
    for h in _random_hosts(40, 10, 3, 0.3, 2):
        contains_star_trace(h, 4)


def drep_families():
    rng = random.Random(3)
    for _ in range(300):
        fam = SetFamily(12, tuple({tuple(sorted(rng.sample(range(12), 3))) for _ in range(14)}))
        find_disjointly_representable(fam, 5)


def lemma_instances():
    for i in range(30):
        t = (2, 3, 4)[i % 3]
        check_k2t_lemmas(random_maximal_trace_free(12, 3, k2t(t), seed=i), t)


def covering_search():
    min_covering_exact(7, 4, 3)
    min_covering_exact(8, 4, 2)


def extremal_search():
    exact_extremal(6, 3, star(4))
    exact_extremal(7, 3, star(3), budget=20_000)


WORKLOADS = [
    ("trace K_2,3, n=12", trace_k23),
    ("trace K_1,4 general, n=10", trace_star_general),
    ("trace K_1,4 star path, n=10", star_fast_path),
    ("disjointly representable, k=5", drep_families),
    ("random maximal + lemma checks", lemma_instances),
    ("minimum covering search", covering_search),
    ("exact extremal search", extremal_search),
]


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    if "cython" not in kernels.available_backends():
        sys.exit("compiled kernels are not built; reinstall with Cython available")
    prev = kernels.backend()
    print("workload\tpython_s\tcython_s\tspeedup")
    try:
        for name, fn in WORKLOADS:
            times = {}
            for backend in ("python", "cython"):
                kernels.set_backend(backend)
                times[backend] = timed(fn, args.repeat)
            py, cy = times["python"], times["cython"]
            print(f"{name}\t{py:.4f}\t{cy:.4f}\t{py / cy:.1f}x", flush=True)
    finally:
        kernels.set_backend(prev)


if __name__ == "__main__":
    main()

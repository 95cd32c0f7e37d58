"""Compare the compiled and pure-Python frame scans.

    python benchmarks/bench_kernels.py [--sizes 40 80 129] [--repeat 5]

Each grid size m gives a triangulated square with about 6 m^2 simplexes.
The torus strip adds a complex with many critical simplexes, where labels
are wide bitmasks instead of single bits.
"""
import argparse
import statistics
import time

from morseframes import kernels
from morseframes.complex import Complex, closure
from morseframes.sequence import decreasing_scheme, increasing_scheme


def grid_disk(m: int) -> Complex:
    def v(i, j):
        return i * (m + 1) + j

    facets = []
    for i in range(m):
        for j in range(m):
            a, b, c, d = v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)
            facets += [(a, b, d), (a, c, d)]
    return closure(facets)


def holey_grid(m: int) -> Complex:
    # every other square left empty: many 1-cycles, wide labels
    def v(i, j):
        return i * (m + 1) + j

    facets = []
    for i in range(m):
        for j in range(m):
            a, b, c, d = v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)
            if (i + j) % 2:
                facets += [(a, b), (a, c), (b, d), (c, d)]
            else:
                facets += [(a, b, d), (a, c, d)]
    return closure(facets)


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times), statistics.median(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[40, 80, 129])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    cases = []
    for m in args.sizes:
        cases.append((f"disk m={m}", decreasing_scheme(grid_disk(m))))
        cases.append((f"holes m={m}", increasing_scheme(holey_grid(m))))

    backends = sorted(kernels.BACKENDS)
    print(f"{'case':<14}{'n':>8}{'critical':>10}  " + "".join(f"{b + ' ref':>14}{b + ' coref':>14}" for b in backends))
    for name, W in cases:
        row = f"{name:<14}{len(W.complex):>8}{sum(W.critical_counts()):>10}  "
        for b in backends:
            ref, _ = best_of(lambda: kernels.reference_masks(W, b), args.repeat)
            coref, _ = best_of(lambda: kernels.coreference_masks(W, b), args.repeat)
            row += f"{ref * 1e3:>12.1f}ms{coref * 1e3:>12.1f}ms"
        print(row)


if __name__ == "__main__":
    main()

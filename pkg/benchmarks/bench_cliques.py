"""Compare the numba and numpy clique-counting kernels on del Pezzo graphs.

    python3 benchmarks/bench_cliques.py            # r = 5..8, 3 repeats
    python3 benchmarks/bench_cliques.py --r 8 --repeat 5
    NOK_THREADS=1 python3 benchmarks/bench_cliques.py

The numba timings exclude compilation: each backend is called once on the
r = 1 graph before measuring.  Both backends must return the same count.
"""
import argparse
import statistics
import time

from nok import _kernels
from nok.chambers import del_pezzo_model, orthogonality_graph


def bench(fwd, backend, repeat):
    times, count = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        count = _kernels.count_cliques(fwd, backend)
        times.append(time.perf_counter() - t0)
    return count, statistics.median(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--r", type=int, nargs="*", default=[5, 6, 7, 8])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = _kernels.available_backends()
    warm = _kernels.forward_bitsets(orthogonality_graph(del_pezzo_model(1))[1])
    for b in backends:
        _kernels.count_cliques(warm, b)

    print(f"{'r':>2} {'vertices':>8} {'cliques':>9} " + " ".join(f"{b:>10}" for b in backends)
          + ("    speedup" if len(backends) > 1 else ""))
    for r in args.r:
        curves, adj = orthogonality_graph(del_pezzo_model(r))
        fwd = _kernels.forward_bitsets(adj)
        results = {b: bench(fwd, b, args.repeat) for b in backends}
        counts = {c for c, _ in results.values()}
        assert len(counts) == 1, f"backends disagree at r = {r}: {results}"
        row = f"{r:>2} {len(curves):>8} {counts.pop():>9} "
        row += " ".join(f"{results[b][1]:>9.4f}s" for b in backends)
        if len(backends) > 1:
            row += f"  {results['numpy'][1] / results['numba'][1]:>8.1f}x"
        print(row)


if __name__ == "__main__":
    main()

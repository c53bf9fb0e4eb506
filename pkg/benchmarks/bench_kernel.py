"""Compare the compiled and pure-Python routing kernels.

Runs each search once per kernel (kernel time only, no certificate
conversion) and checks that both explore the same number of nodes.

    python benchmarks/bench_kernel.py [--repeat 3] [--quick]
"""
from __future__ import annotations

import argparse
import time

from thrackle.musquash import standard_musquash
from thrackle.search.routing import KERNELS, _path_specs, _problem, _run_kernel


def cases(quick: bool):
    yield "figure-eight (5,3)", standard_musquash(5), _path_specs(standard_musquash(5), 0, 3, None, True)
    yield "figure-eight (7,3)", standard_musquash(7), _path_specs(standard_musquash(7), 0, 3, None, True)
    yield "two-path n=7", standard_musquash(7), _path_specs(standard_musquash(7), 0, 2)
    if not quick:
        yield "figure-eight (5,5)", standard_musquash(5), _path_specs(standard_musquash(5), 0, 5, None, True)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="skip the (5,5) case")
    args = ap.parse_args()
    names = [k for k in ("python", "compiled") if k in KERNELS]
    print(f"{'case':<22}" + "".join(f"{k + ' [s]':>16}" for k in names) + f"{'nodes':>12}{'speedup':>10}")
    for label, d, specs in cases(args.quick):
        prob = _problem(d, specs, list(range(len(d.edges))))
        best = {}
        nodes = {}
        for k in names:
            times = []
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                n, aborted, _, _ = _run_kernel(prob, k, True, True, None)
                times.append(time.perf_counter() - t0)
            best[k] = min(times)
            nodes[k] = n
        if len(set(nodes.values())) != 1:
            raise SystemExit(f"{label}: kernels disagree on node counts {nodes}")
        speed = best["python"] / best["compiled"] if "compiled" in best else float("nan")
        print(f"{label:<22}" + "".join(f"{best[k]:>16.4f}" for k in names)
              + f"{nodes[names[0]]:>12}{speed:>9.1f}x")


if __name__ == "__main__":
    main()

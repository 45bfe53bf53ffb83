"""Time whole-trace replay with the pure-Python and compiled kernels.

    python3 benchmarks/bench_replay.py --waypoints 20000 --networks 200
"""

import argparse
import statistics
import sys
import time

from roamtrack import kernels, synth
from roamtrack.evaluator import _encode


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--waypoints", type=int, default=5000)
    ap.add_argument("--networks", type=int, default=100)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    profile = synth.Profile(num_networks=args.networks, num_waypoints=args.waypoints,
                            total_duration_s=args.waypoints * 1800, seed=args.seed)
    names, *arrays = _encode(synth.generate(profile))
    results = {}
    print(f"{args.waypoints} visits over {args.networks} networks, best/median of {args.repeat}")
    for backend in sorted(kernels.KERNELS):
        kernel = kernels.KERNELS[backend]
        best, med, out = best_of(lambda: kernel(names, *arrays, 0.5, 0.5, False, 1.0), args.repeat)
        results[backend] = out
        print(f"  {backend:8s} {best * 1e3:10.1f} ms  {med * 1e3:10.1f} ms  "
              f"{args.waypoints / best:12.0f} visits/s")
    if len(results) > 1:
        preds = {b: r[0] for b, r in results.items()}
        same = len({tuple(p) for p in preds.values()}) == 1
        print(f"  predictions identical across backends: {same}")
        if not same:
            return 1
    else:
        print("  compiled kernel not built; run `python3 setup.py build_ext --inplace`")
    return 0


if __name__ == "__main__":
    sys.exit(main())

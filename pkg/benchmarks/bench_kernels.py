"""Compare the jitted kernels against the pure-numpy fallback.

Run:  python3 benchmarks/bench_kernels.py
"""

import itertools
import time

import numpy as np

from hyperlag import kernels_numpy

try:
    from hyperlag import kernels_numba
except ImportError:
    kernels_numba = None


def make_instance(n, r, m, seed):
    rng = np.random.default_rng(seed)
    all_r = list(itertools.combinations(range(n), r))
    idx = rng.choice(len(all_r), size=min(m, len(all_r)), replace=False)
    edges = np.array([all_r[i] for i in sorted(idx)], dtype=np.int64)
    x = rng.uniform(0.0, 1.0, n)
    x /= x.sum()
    xs = rng.uniform(0.0, 1.0, (2000, n))
    xs /= xs.sum(axis=1, keepdims=True)
    return edges, x, xs


def bench(fn, *args, repeat=200):
    fn(*args)  # warm-up (triggers JIT compilation on first use)
    best = float("inf")
    for _ in range(5):
        t0 = time.perf_counter()
        for _ in range(repeat):
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / repeat)
    return best


def grad_call(mod, edges, x):
    out = np.zeros(x.size)
    mod.accumulate_grad_level(edges, x, 1.0, out)
    return out


def main():
    cases = [
        ("n=20 r=3 m=500", make_instance(20, 3, 500, 1)),
        ("n=40 r=4 m=3000", make_instance(40, 4, 3000, 2)),
        ("n=60 r=2 m=1500", make_instance(60, 2, 1500, 3)),
    ]
    mods = [("numpy", kernels_numpy)]
    if kernels_numba is not None:
        mods.append(("numba", kernels_numba))
    else:
        print("numba unavailable; benchmarking the numpy path only")

    header = f"{'case':<18} {'kernel':<12}" + "".join(
        f"{name:>12}" for name, _ in mods
    )
    if len(mods) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))

    for label, (edges, x, xs) in cases:
        rows = [
            ("eval", [bench(mod.eval_level, edges, x) for _, mod in mods]),
            (
                "grad",
                [
                    bench(lambda e, w, m=mod: grad_call(m, e, w), edges, x)
                    for _, mod in mods
                ],
            ),
            (
                "batch(2000)",
                [bench(mod.eval_level_batch, edges, xs, repeat=20) for _, mod in mods],
            ),
        ]
        for kernel, times in rows:
            line = f"{label:<18} {kernel:<12}" + "".join(
                f"{t * 1e6:>10.1f}us" for t in times
            )
            if len(times) == 2 and times[1] > 0:
                line += f"{times[0] / times[1]:>9.1f}x"
            print(line)
        print()


if __name__ == "__main__":
    main()

"""Time the numba-compiled kernels against their pure-numpy versions.

    python benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

The first jit call (compilation or cache load) is excluded from timings.
"""
import argparse
import json
import sys
import timeit

import numpy as np

from qcat import _kernels as K
from qcat.operators import build_ladder_set, displacement_generator


def cases():
    xs = np.linspace(0.01, 5.2, 200)             # sweep up to the q = 0.9 radius

    def series(f):
        return lambda: [f(x, 0.9, 1e-14, 2_000_000) for x in xs]

    def truncation(f):
        return lambda: [f(x, 0.9, 1e-15, 100_000) for x in xs]

    def amplitudes(f):
        return lambda: [f(np.sqrt(x), 0.9, 200) for x in xs]

    M = np.ascontiguousarray(displacement_generator(1.2, build_ladder_set(0.8, 120)))

    def balance(f):
        return lambda: f(M, 100)

    B, _ = K.balance_numpy(M, 100)
    B = np.ascontiguousarray(B)

    def expm(f):
        return lambda: f(B, 1e-13, 60)

    return [
        ("q_exp_series x200", "q_exp_series", series),
        ("truncation_level x200", "truncation_level", truncation),
        ("coherent_amplitudes x200", "coherent_amplitudes", amplitudes),
        ("balance 121x121", "balance", balance),
        ("expm_taylor 121x121", "expm_taylor", expm),
    ]


def best_of(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05 and number < 1000:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", help="also write results here")
    args = ap.parse_args(argv)
    if not K.HAVE_NUMBA:
        print("numba is not installed; only the numpy path can be timed", file=sys.stderr)
    rows = []
    for label, name, make in cases():
        numpy_fn = make(getattr(K, name + "_numpy"))
        t_np = best_of(numpy_fn, args.repeat)
        t_jit = None
        if K.HAVE_NUMBA:
            jit_fn = make(getattr(K, name + "_jit"))
            jit_fn()                                 # compile / load cache
            t_jit = best_of(jit_fn, args.repeat)
        rows.append({"kernel": label, "numpy_s": t_np, "numba_s": t_jit,
                     "speedup": (t_np / t_jit) if t_jit else None})
    print(f"{'kernel':<28s} {'numpy [ms]':>11s} {'numba [ms]':>11s} {'speedup':>8s}")
    for r in rows:
        jit = f"{1e3 * r['numba_s']:11.3f}" if r["numba_s"] else f"{'-':>11s}"
        sp = f"{r['speedup']:8.1f}" if r["speedup"] else f"{'-':>8s}"
        print(f"{r['kernel']:<28s} {1e3 * r['numpy_s']:11.3f} {jit} {sp}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=1)


if __name__ == "__main__":
    main()

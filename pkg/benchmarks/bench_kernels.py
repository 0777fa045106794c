"""Time the numba kernels against their numpy twins.

    python benchmarks/bench_kernels.py [--repeat N]

Each kernel is warmed up once (which triggers JIT compilation) and then timed
as the best of ``--repeat`` runs.  Results are also checked for agreement.
"""

import argparse
import time

import numpy as np

from srk import kernels


def workload(rng):
    den = np.vstack([[1.0, 0, 0, 0], 0.3 * rng.standard_normal((4, 4))])
    return {
        "qmul": (rng.standard_normal((200_000, 4)), rng.standard_normal((200_000, 4))),
        "qinv": (rng.standard_normal((200_000, 4)),),
        "twist": (rng.standard_normal((200_000, 4)), rng.standard_normal((200_000, 4))),
        "horner": (rng.standard_normal((12, 4)), 0.5 * rng.standard_normal((100_000, 4))),
        "convolve": (rng.standard_normal((400, 4)), rng.standard_normal((400, 4))),
        "left_divide": (rng.standard_normal((4000, 4)), 0.5 * rng.standard_normal(4)),
        "star_solve": (den, rng.standard_normal((6, 4)), 2000),
        "quotient_eval": (den, den * np.array([1.0, -1, -1, -1]), rng.standard_normal((6, 4)),
                          0.5 * rng.standard_normal((100_000, 4))),
    }


def best_of(fn, args, repeat):
    fn(*args)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if kernels.numba_impl is None:
        print("numba is not available (or SRK_DISABLE_NUMBA is set); nothing to compare")
        return
    work = workload(np.random.default_rng(args.seed))
    print(f"{'kernel':<15}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}  agree")
    for name, data in work.items():
        np_fn = getattr(kernels.numpy_impl, name)
        nb_fn = getattr(kernels.numba_impl, name)
        t_np = best_of(np_fn, data, args.repeat)
        t_nb = best_of(nb_fn, data, args.repeat)
        agree = np.allclose(np_fn(*data), nb_fn(*data), rtol=1e-12, atol=1e-12)
        print(f"{name:<15}{t_np * 1e3:>12.3f}{t_nb * 1e3:>12.3f}{t_np / t_nb:>10.1f}  {agree}")


if __name__ == "__main__":
    main()

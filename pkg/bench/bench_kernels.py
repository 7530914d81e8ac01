"""Compare the compiled and pure-Python contraction kernels.

    python3 bench/bench_kernels.py [--repeat N] [--dims 3,4,6]

Times the raw kernels on random integer tensors, then an end-to-end sweep
of normal-form sewing over a group algebra, once per backend.
"""
import argparse
import random
import timeit

from frobtqft import derive, kernels
from frobtqft.builders import group_algebra
from frobtqft.tqft import evaluate_plan, normal_form_plan


def raw_cases(dim, rng):
    a = [rng.randrange(-50, 50) for _ in range(dim ** 3)]
    b = [rng.randrange(-50, 50) for _ in range(dim ** 3)]
    return {
        "transpose r3": lambda m: m.transpose(a, 3, dim, [2, 0, 1]),
        "outer r3*r3": lambda m: m.outer(a, b),
        "tensordot 2 axes": lambda m: m.tensordot(a, 3, b, 3, dim, [1, 2], [0, 1]),
    }


def sewing_sweep(pkg):
    for g in range(3):
        for n in range(1, 4):
            for m in range(4):
                evaluate_plan(normal_form_plan((g, n, m)), pkg)


def best(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05:
        number *= 4
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--dims", default="3,4,6")
    parser.add_argument("--group", default="Z4")
    args = parser.parse_args()
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the python backend is available")
    rng = random.Random(0)
    print(f"{'case':<28}" + "".join(f"{b:>14}" for b in backends) + f"{'speedup':>10}")

    def row(label, fn):
        times = []
        for b in backends:
            previous = kernels.use_backend(b)
            try:
                times.append(best(fn, args.repeat))
            finally:
                kernels.use_backend(previous)
        speedup = f"{times[0] / times[-1]:.1f}x" if len(times) > 1 else "-"
        print(f"{label:<28}" + "".join(f"{t * 1e3:>12.3f}ms" for t in times) + f"{speedup:>10}")

    for dim in (int(d) for d in args.dims.split(",")):
        for label, case in raw_cases(dim, rng).items():
            row(f"{label} dim={dim}", lambda: case(kernels))
    pkg = derive(group_algebra(args.group))
    row(f"sewing sweep K[{args.group}]", lambda: sewing_sweep(pkg))


if __name__ == "__main__":
    main()

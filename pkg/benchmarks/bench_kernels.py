"""Compare the Cython kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py --sizes 10 20 40 80
"""

import argparse

from pcenter import kernels
from pcenter.bench import format_records, run_bench


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 20, 40, 80])
    ap.add_argument("-p", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"backend selected at import: {kernels.backend()}")
    print(format_records(run_bench(tuple(args.sizes), args.p, args.repeat)), end="")


if __name__ == "__main__":
    main()

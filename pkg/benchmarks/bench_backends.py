"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_backends.py [N ...]

Prints CSV; ``identical`` is 1 when both backends return bit-equal results.
"""

import sys

from trigfib.benchmark import backend_rows, format_backend_csv


def main(argv):
    sizes = [int(a) for a in argv] or [64, 256, 1024]
    sys.stdout.write(format_backend_csv(backend_rows(sizes, repeat=3)))


if __name__ == "__main__":
    main(sys.argv[1:])

"""Compare the compiled and numpy kernel backends.

    python benchmarks/bench_kernels.py [--qubits 8 12 16 20] [--repeat 5]

Times one Walsh-Hadamard transform and one full G iteration per register size
and reports the best of ``--repeat`` runs in milliseconds.
"""
import argparse
import timeit

import numpy as np

from qbdq.kernels import available_backends, load_backend


def bench(impl, qubits, repeat):
    rng = np.random.default_rng(qubits)
    dim = 1 << qubits
    amps = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    amps /= np.linalg.norm(amps)
    m = max(1, qubits // 2)
    number = max(1, 2**16 // dim)
    t_fwht = min(timeit.repeat(lambda: impl.fwht(amps), number=number, repeat=repeat)) / number
    t_iter = min(
        timeit.repeat(lambda: impl.grover_iterate(amps, 1, m, 1), number=number, repeat=repeat)
    ) / number
    return t_fwht * 1e3, t_iter * 1e3


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--qubits", type=int, nargs="+", default=[8, 12, 16, 20])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    backends = available_backends()
    print(f"{'qubits':>6} {'backend':>8} {'fwht ms':>10} {'G ms':>10}")
    results = {}
    for q in args.qubits:
        for name in backends:
            results[q, name] = bench(load_backend(name), q, args.repeat)
            f, g = results[q, name]
            print(f"{q:>6} {name:>8} {f:>10.4f} {g:>10.4f}")
    if len(backends) == 2:
        print("\nspeedup (python / cython) on G:")
        for q in args.qubits:
            print(f"  {q:>2} qubits: {results[q, 'python'][1] / results[q, 'cython'][1]:.1f}x")


if __name__ == "__main__":
    main()

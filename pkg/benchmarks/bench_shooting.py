"""Benchmark the shooting sweep: numba-compiled kernel vs Python fallback.

The per-step RK4 propagators are built with vectorized numpy either way;
only the sequential 2x2 sweep differs.  Usage:

    python benchmarks/bench_shooting.py [--points 8001] [--repeats 5]
"""
import argparse
import time

import numpy as np

from pdmorse import GridSpec, MassModel, WEYL, get_molecule, u_eff
from pdmorse import kernels
from pdmorse.units import HBAR2_EV_AMU_A2


def build_problem(points: int):
    mol = get_molecule("H2")
    mm = MassModel.for_molecule(mol, 0.0)
    grid = GridSpec(-0.7, 10.0, points)
    xs = grid.xs()
    xm = 0.5 * (xs[:-1] + xs[1:])
    e_trial = -4.4
    q_nodes = 2.0 * mm.mass(xs) * (u_eff(mm, WEYL, mol, xs) - e_trial) / HBAR2_EV_AMU_A2
    q_mids = 2.0 * mm.mass(xm) * (u_eff(mm, WEYL, mol, xm) - e_trial) / HBAR2_EV_AMU_A2
    return kernels.rk4_propagators(q_nodes, q_mids, grid.h)


def time_sweep(fn, props, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*props, 0.0, 1.0)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=8001)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    props = build_problem(args.points)
    steps = len(props[0])

    t_py = time_sweep(kernels.sweep_python, props, args.repeats)
    print(f"python fallback : {t_py * 1e3:8.3f} ms  ({steps / t_py / 1e6:6.1f} Msteps/s)")

    if kernels.HAS_NUMBA:
        kernels.sweep_numba(*props, 0.0, 1.0)  # compile outside the timing
        t_nb = time_sweep(kernels.sweep_numba, props, args.repeats)
        print(f"numba kernel    : {t_nb * 1e3:8.3f} ms  ({steps / t_nb / 1e6:6.1f} Msteps/s)")
        print(f"speedup         : {t_py / t_nb:8.1f}x")
        py_out = kernels.sweep_python(*props, 0.0, 1.0)
        nb_out = kernels.sweep_numba(*props, 0.0, 1.0)
        agree = (py_out[2] == nb_out[2]
                 and np.isclose(py_out[0], nb_out[0], rtol=1e-13)
                 and np.isclose(py_out[1], nb_out[1], rtol=1e-13))
        print(f"paths agree     : {agree}")
    else:
        print("numba not installed; only the fallback path was timed")
    print(f"active path     : {'numba' if kernels.USE_NUMBA else 'python'} "
          f"(PDMORSE_DISABLE_NUMBA to force the fallback)")


if __name__ == "__main__":
    main()

"""Piecewise-constant schedules, time-ordered propagators, and
Heisenberg-picture projectors.

Propagation backward in physical time is the adjoint of the forward
propagator, so a round trip is the identity to machine precision without
any ODE integration error.
"""

import numpy as np

from qcontour import (HamiltonianSchedule, evolve_state, heisenberg_projector,
                      propagate)


def main():
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)

    sched = HamiltonianSchedule([(0.0, 1.0, sx), (1.0, 2.0, sz)])
    print("schedule: sigma_x on [0, 1], then sigma_z on [1, 2]\n")

    u = propagate(sched, 0.0, 2.0)
    print("U(2, 0) =")
    print(np.array_str(u, precision=6, suppress_small=True))

    # latest segment leftmost: crossing the boundary composes the two
    # exponentials in chronological order
    left = propagate(sched, 1.0, 2.0) @ propagate(sched, 0.0, 1.0)
    print(f"\ncomposition defect |U(2,0) - U(2,1)U(1,0)|: "
          f"{np.max(np.abs(u - left)):.2e}")

    psi = np.array([1, 0], dtype=complex)
    there = evolve_state(psi, sched, 0.0, 2.0)
    back = evolve_state(there, sched, 2.0, 0.0)
    print(f"round trip |psi - U(0,2)U(2,0)psi|: {np.max(np.abs(back - psi)):.2e}")

    p = heisenberg_projector(psi, sched, 2.0, 0.0)
    print("\nHeisenberg projector onto |0> at t=2, referred to t=0:")
    print(np.array_str(p, precision=6, suppress_small=True))
    print(f"trace = {np.trace(p).real:.12f}, "
          f"idempotency defect = {np.max(np.abs(p @ p - p)):.2e}")


if __name__ == "__main__":
    main()

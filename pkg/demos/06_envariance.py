"""Entanglement-assisted invariance of equal-amplitude states.

For a maximally entangled pair, permuting the Schmidt basis on one side
can always be undone on the other side; once the Schmidt coefficients
differ, no permutation-with-phases counter exists.
"""

import math

import numpy as np

from qcontour import BipartiteState, check_envariance, schmidt_decompose


def swap_on(basis):
    return np.outer(basis[1], basis[0].conj()) + \
        np.outer(basis[0], basis[1].conj())


def main():
    inv = 1 / math.sqrt(2)
    bell = BipartiteState(2, 2, np.array([inv, 0, 0, inv], dtype=complex))
    form = schmidt_decompose(bell)
    print(f"maximally entangled pair, Schmidt coefficients "
          f"{tuple(round(c, 6) for c in form.coefficients)}")

    result = check_envariance(bell, swap_on(form.basis_a))
    print(f"swap the A Schmidt basis: envariant = {result.envariant}")
    print("counter transformation on B:")
    print(np.array_str(result.counter, precision=6, suppress_small=True))
    print(f"restoration residual: {result.residual:.2e}\n")

    lopsided = BipartiteState(2, 2, np.array(
        [math.sqrt(0.8), 0, 0, math.sqrt(0.2)], dtype=complex))
    form = schmidt_decompose(lopsided)
    print(f"lopsided pair, coefficients "
          f"{tuple(round(c, 6) for c in form.coefficients)}")
    result = check_envariance(lopsided, swap_on(form.basis_a))
    print(f"same swap: envariant = {result.envariant}")

    phases = np.diag(np.exp(1j * np.array([0.3, -1.2])))
    a_cols = np.column_stack(form.basis_a)
    u_a = a_cols @ phases @ a_cols.conj().T
    result = check_envariance(lopsided, u_a)
    print(f"Schmidt-basis phase rotation: envariant = {result.envariant}")
    print("\nphases can always be undone on the partner; coefficient "
          "swaps cannot, unless the coefficients match.")


if __name__ == "__main__":
    main()

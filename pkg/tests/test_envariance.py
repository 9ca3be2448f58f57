import itertools
import math

import numpy as np
import pytest

from qcontour import (BipartiteState, ValidationError, check_envariance,
                      schmidt_decompose)
from qcontour.linalg import is_orthonormal, tensor
from qcontour.sampling import (random_orthonormal_basis, random_state,
                               rng_from_seed)

from toys import E0


def bell_state():
    return BipartiteState(2, 2, np.array([1, 0, 0, 1], dtype=complex)
                          / math.sqrt(2))


def equal_amplitude_state(rng, n):
    """C sum_k e^{i phi_k} |a_k>|b_k> with random bases and phases."""
    basis_a = random_orthonormal_basis(rng, n)
    basis_b = random_orthonormal_basis(rng, n)
    phases = rng.uniform(0, 2 * np.pi, size=n)
    amps = sum(np.exp(1j * p) * tensor(a, b)
               for p, a, b in zip(phases, basis_a, basis_b))
    return BipartiteState(n, n, amps / math.sqrt(n))


def perm_phase_on_basis(basis, perm, phases=None):
    """Unitary mapping basis[k] to e^{i phases[k]} basis[perm[k]]."""
    dim = basis[0].size
    u = np.zeros((dim, dim), dtype=complex)
    for k, j in enumerate(perm):
        phase = 1.0 if phases is None else np.exp(1j * phases[k])
        u += phase * np.outer(basis[j], basis[k].conj())
    return u


class TestSchmidtDecompose:
    def test_product_state_single_coefficient(self):
        psi = BipartiteState(2, 2, tensor(E0, E0))
        form = schmidt_decompose(psi)
        assert form.coefficients == pytest.approx((1.0, 0.0))
        assert form.rank == 1

    def test_bell_state_coefficients(self):
        form = schmidt_decompose(bell_state())
        assert form.coefficients == pytest.approx((1 / math.sqrt(2),
                                                   1 / math.sqrt(2)))

    def test_reconstruction_random_states(self):
        for seed in range(100):
            rng = rng_from_seed(seed)
            d_a, d_b = int(rng.integers(2, 5)), int(rng.integers(2, 5))
            psi = BipartiteState(d_a, d_b, random_state(rng, d_a * d_b))
            form = schmidt_decompose(psi)
            assert np.max(np.abs(form.reconstruct() - psi.amplitudes)) < 1e-10
            assert is_orthonormal(form.basis_a)
            assert is_orthonormal(form.basis_b)
            assert sum(c * c for c in form.coefficients) == \
                pytest.approx(1.0, abs=1e-10)
            assert list(form.coefficients) == \
                sorted(form.coefficients, reverse=True)


class TestCheckEnvariance:
    def test_identity_is_envariant(self):
        result = check_envariance(bell_state(), np.eye(2))
        assert result.envariant
        np.testing.assert_allclose(result.counter, np.eye(2), atol=1e-10)

    def test_bell_swap_has_counter_swap(self):
        form = schmidt_decompose(bell_state())
        u_a = perm_phase_on_basis(form.basis_a, (1, 0))
        result = check_envariance(bell_state(), u_a)
        assert result.envariant
        # the counter acts as the matching swap on the B Schmidt basis
        mapped = result.counter @ form.basis_b[0]
        overlap = abs(np.vdot(form.basis_b[1], mapped))
        assert overlap == pytest.approx(1.0, abs=1e-10)

    def test_unequal_coefficients_swap_not_envariant(self):
        psi = BipartiteState(2, 2, np.array(
            [math.sqrt(0.8), 0, 0, math.sqrt(0.2)], dtype=complex))
        form = schmidt_decompose(psi)
        u_a = perm_phase_on_basis(form.basis_a, (1, 0))
        result = check_envariance(psi, u_a)
        assert not result.envariant
        assert result.counter is None

    def test_rejects_non_unitary_transform(self):
        with pytest.raises(ValidationError):
            check_envariance(bell_state(), 2 * np.eye(2))

    def test_equal_amplitudes_envariant_under_all_permutations(self):
        for seed in range(10):
            rng = rng_from_seed(3000 + seed)
            n = int(rng.integers(2, 4))
            psi = equal_amplitude_state(rng, n)
            form = schmidt_decompose(psi)
            for perm in itertools.permutations(range(n)):
                u_a = perm_phase_on_basis(form.basis_a, perm)
                assert check_envariance(psi, u_a).envariant

    def test_schmidt_phase_rotations_always_envariant(self):
        for seed in range(10):
            rng = rng_from_seed(4000 + seed)
            n = int(rng.integers(2, 5))
            psi = BipartiteState(n, n, random_state(rng, n * n))
            form = schmidt_decompose(psi)
            phases = rng.uniform(0, 2 * np.pi, size=n)
            u_a = perm_phase_on_basis(form.basis_a, range(n), phases)
            result = check_envariance(psi, u_a)
            assert result.envariant

    def test_distinct_coefficient_permutation_never_envariant(self):
        for seed in range(10):
            rng = rng_from_seed(5000 + seed)
            n = 3
            # well separated coefficients
            raw = np.array([1.0, 0.6, 0.3])
            coeffs = raw / np.linalg.norm(raw)
            basis_a = random_orthonormal_basis(rng, n)
            basis_b = random_orthonormal_basis(rng, n)
            amps = sum(c * tensor(a, b)
                       for c, a, b in zip(coeffs, basis_a, basis_b))
            psi = BipartiteState(n, n, amps)
            form = schmidt_decompose(psi)
            u_a = perm_phase_on_basis(form.basis_a, (1, 0, 2))
            assert not check_envariance(psi, u_a).envariant

    def test_arbitrary_rotation_outside_search_family(self):
        # a Hadamard-type mixing of Schmidt vectors has no permutation-phase
        # counter even for equal amplitudes
        psi = BipartiteState(2, 2, np.array(
            [math.sqrt(0.8), 0, 0, math.sqrt(0.2)], dtype=complex))
        form = schmidt_decompose(psi)
        h = (np.outer(form.basis_a[0] + form.basis_a[1], form.basis_a[0].conj())
             + np.outer(form.basis_a[0] - form.basis_a[1],
                        form.basis_a[1].conj())) / math.sqrt(2)
        assert not check_envariance(psi, h).envariant

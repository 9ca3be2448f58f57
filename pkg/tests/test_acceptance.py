"""Acceptance suite.

Each test realizes one acceptance criterion at its stated tolerance and
prints a PASS line with the observed worst case; run with ``-s`` to see
the lines as they complete.
"""

import itertools
import math
import time

import numpy as np

from qcontour import (DecompositionMode, FamilySpec, FixedPoint,
                      QuantumHistory, ToyBundle, born_probability,
                      chain_probability, condition_on_final,
                      decompose_total_measure, decoherence_functional,
                      delta_psi, delta_psi_line_integral, enumerate_family,
                      history_operator, measure_report, monte_carlo_sample,
                      sequential_chain, validate_family)
from qcontour.linalg import complete_basis
from qcontour.oracle import OutcomeDistribution
from qcontour.sampling import (random_orthonormal_basis, random_schedule,
                               random_state, rng_from_seed)

from toys import random_family_spec
from test_envariance import equal_amplitude_state, perm_phase_on_basis
from qcontour import check_envariance, schmidt_decompose
from qcontour.linalg import tensor


def report(criterion, detail, elapsed, budget):
    print(f"PASS {criterion}: {detail} [{elapsed:.2f}s < {budget:g}s]")
    assert elapsed < budget


def test_criterion_1_born_recovery():
    """Measures of 2-point, initially constrained histories reproduce the
    single-measurement probability within 1e-12; 1000 random models, d <= 8."""
    start = time.perf_counter()
    worst = 0.0
    for seed in range(1000):
        rng = rng_from_seed(seed)
        dim = int(rng.integers(2, 9))
        sched = random_schedule(rng, (0.0, 1.0), dim)
        psi1 = random_state(rng, dim)
        basis = tuple(random_orthonormal_basis(rng, dim))
        spec = FamilySpec(times=(0.0, 1.0), bases=(basis, basis),
                          constraints=(FixedPoint(0.0, psi1, "prep"),))
        rep = measure_report(enumerate_family(spec), sched)
        for entry, phi in zip(rep.entries, basis):
            expected = born_probability(psi1, 0.0, phi, 1.0, sched)
            worst = max(worst, abs(entry.measure - expected))
    assert worst <= 1e-12
    report("criterion 1 (Born recovery)",
           f"1000 models, max |measure - Born| = {worst:.2e} <= 1e-12",
           time.perf_counter() - start, 10.0)


def test_criterion_2_route_equivalence():
    """Contour-walk weights equal closed-form weights within 1e-10 over 200
    random histories, N_t in {2,3,4}, d in {2,3,4}, steps in {1,8,64}."""
    start = time.perf_counter()
    worst = 0.0
    for seed in range(200):
        rng = rng_from_seed(10_000 + seed)
        n_t = int(rng.integers(2, 5))
        dim = int(rng.integers(2, 5))
        times = np.sort(rng.uniform(0.0, 2.0, size=n_t))
        while np.min(np.diff(times)) < 1e-2:
            times = np.sort(rng.uniform(0.0, 2.0, size=n_t))
        sched = random_schedule(rng, times, dim)
        h = QuantumHistory(tuple(FixedPoint(float(t), random_state(rng, dim))
                                 for t in times))
        closed = delta_psi(h, sched)
        for steps in (1, 8, 64):
            walked = delta_psi_line_integral(h, sched, steps)
            worst = max(worst, abs(walked - closed))
    assert worst <= 1e-10
    report("criterion 2 (route equivalence)",
           f"200 histories x 3 step counts, max gap = {worst:.2e} <= 1e-10",
           time.perf_counter() - start, 30.0)


def test_criterion_3_normalization():
    """Measures sum to 1 within 1e-10 for enumerated families with
    S_t in {1,2}, N_t <= 4, d <= 4."""
    start = time.perf_counter()
    worst = 0.0
    cases = 0
    for n_t, dim, s_t in itertools.product((2, 3, 4), (2, 3, 4), (1, 2)):
        for seed in range(3):
            spec, sched = random_family_spec(
                20_000 + 100 * cases + seed, dim=dim, n_times=n_t, s_t=s_t)
            rep = measure_report(enumerate_family(spec), sched)
            worst = max(worst, abs(float(rep.measures.sum()) - 1.0))
            cases += 1
    assert worst <= 1e-10
    report("criterion 3 (normalization)",
           f"{cases} families, max |sum - 1| = {worst:.2e} <= 1e-10",
           time.perf_counter() - start, 30.0)


def test_criterion_4_decomposition_identity():
    """The four bundle decompositions agree within 1e-12 over 500 random
    bundles, and the fully diverging terms rebuild the overlapping product."""
    start = time.perf_counter()
    worst_spread = 0.0
    worst_rebuild = 0.0
    for seed in range(500):
        rng = rng_from_seed(30_000 + seed)
        dim = int(rng.integers(2, 4))
        sched = random_schedule(rng, (0.0, 1.0, 2.0), dim)
        past = tuple(FixedPoint(0.0, v, str(k)) for k, v in
                     enumerate(random_orthonormal_basis(rng, dim)))
        future = tuple(FixedPoint(2.0, v, str(k)) for k, v in
                       enumerate(random_orthonormal_basis(rng, dim)))
        bundle = ToyBundle(past=past,
                           pivot=FixedPoint(1.0, random_state(rng, dim)),
                           future=future)
        results = {mode: decompose_total_measure(bundle, sched, mode)
                   for mode in DecompositionMode}
        totals = [r.total for r in results.values()]
        worst_spread = max(worst_spread, max(totals) - min(totals))
        rebuild = abs(sum(results[DecompositionMode.MDRW].terms)
                      - results[DecompositionMode.MORW].terms[0])
        worst_rebuild = max(worst_rebuild, rebuild)
    assert worst_spread <= 1e-12
    assert worst_rebuild <= 1e-12
    report("criterion 4 (decomposition identity)",
           f"500 bundles, max total spread = {worst_spread:.2e}, "
           f"max rebuild gap = {worst_rebuild:.2e} <= 1e-12",
           time.perf_counter() - start, 10.0)


def test_criterion_5_oracle_equivalence():
    """Measures equal collapse-chain probabilities (conditioned on the final
    outcome when both endpoints are pinned) within 1e-10, N_t <= 4, d <= 4."""
    start = time.perf_counter()
    worst = 0.0
    cases = 0
    for n_t, dim in itertools.product((2, 3, 4), (2, 3, 4)):
        for s_t in (1, 2):
            for seed in range(3):
                spec, sched = random_family_spec(
                    40_000 + 100 * cases + seed, dim=dim, n_times=n_t,
                    s_t=s_t)
                rep = measure_report(enumerate_family(spec), sched)
                lookup = rep.by_choices()
                psi1 = spec.constraints[0].state
                if s_t == 1:
                    dist = sequential_chain(psi1, spec.bases[1:],
                                            spec.times[1:], sched,
                                            t_prep=spec.times[0])
                else:
                    final = next(fp for fp in spec.constraints
                                 if fp.time == spec.times[-1])
                    full = sequential_chain(
                        psi1,
                        list(spec.bases[1:-1]) + [complete_basis(final.state)],
                        spec.times[1:], sched, t_prep=spec.times[0])
                    dist = condition_on_final(full, 0)
                for seq, p in dist.outcomes:
                    worst = max(worst, abs(lookup[seq] - p))
                cases += 1
    assert worst <= 1e-10
    report("criterion 5 (oracle equivalence)",
           f"{cases} models, max |measure - chain| = {worst:.2e} <= 1e-10",
           time.perf_counter() - start, 60.0)


def test_criterion_6_consistency_and_decoherence():
    """Orthonormal-basis families always validate, injected non-orthogonal
    fixed points are always flagged, and diagonal decoherence functionals
    match chain probabilities within 1e-10."""
    start = time.perf_counter()
    worst_diag = 0.0
    for seed in range(30):
        rng = rng_from_seed(50_000 + seed)
        dim = int(rng.integers(2, 5))
        n_t = int(rng.integers(2, 5))
        spec, sched = random_family_spec(50_000 + seed, dim=dim, n_times=n_t,
                                         s_t=1)
        fam = enumerate_family(spec)
        assert validate_family(fam, 1e-10).valid

        # corrupt one free fixed point with a non-orthogonal superposition
        h = fam.histories[0]
        basis = spec.bases[-1]
        mixed = (basis[0] + basis[1]) / math.sqrt(2)
        tampered = QuantumHistory(
            h.points[:-1] + (FixedPoint(h.times[-1], mixed, "mixed"),))
        from qcontour import HistoryFamily
        corrupted = HistoryFamily(
            histories=fam.histories[1:] + (tampered,),
            constraint_times=fam.constraint_times)
        assert not validate_family(corrupted, 1e-10).valid

        psi1 = spec.constraints[0].state
        rho1 = np.outer(psi1, psi1.conj())
        for h in fam.histories:
            chain = history_operator(h.points, sched, h.times[0])
            diag = decoherence_functional(chain, chain, psi1)
            assert abs(diag.imag) <= 1e-12
            gap = abs(diag.real - chain_probability(h.points, sched, rho1))
            worst_diag = max(worst_diag, gap)
    assert worst_diag <= 1e-10
    report("criterion 6 (consistency and decoherence)",
           f"30 families validated, tampering always flagged, "
           f"max |D(a,a) - chain| = {worst_diag:.2e} <= 1e-10",
           time.perf_counter() - start, 30.0)


def test_criterion_7_envariance():
    """Equal-amplitude states are envariant under every Schmidt permutation;
    distinct-coefficient states are never envariant under swaps; 100
    randomized instances each."""
    start = time.perf_counter()
    for seed in range(100):
        rng = rng_from_seed(60_000 + seed)
        n = int(rng.integers(2, 5))
        psi = equal_amplitude_state(rng, n)
        form = schmidt_decompose(psi)
        for perm in itertools.permutations(range(n)):
            assert check_envariance(psi, perm_phase_on_basis(form.basis_a,
                                                             perm)).envariant
    for seed in range(100):
        rng = rng_from_seed(61_000 + seed)
        n = int(rng.integers(2, 5))
        raw = np.sort(rng.uniform(0.2, 1.0, size=n))[::-1]
        while np.min(-np.diff(raw)) < 0.05:
            raw = np.sort(rng.uniform(0.2, 1.0, size=n))[::-1]
        coeffs = raw / np.linalg.norm(raw)
        basis_a = random_orthonormal_basis(rng, n)
        basis_b = random_orthonormal_basis(rng, n)
        amps = sum(c * tensor(a, b)
                   for c, a, b in zip(coeffs, basis_a, basis_b))
        from qcontour import BipartiteState
        psi = BipartiteState(n, n, amps)
        form = schmidt_decompose(psi)
        i, j = sorted(rng.choice(n, size=2, replace=False))
        perm = list(range(n))
        perm[i], perm[j] = perm[j], perm[i]
        assert not check_envariance(
            psi, perm_phase_on_basis(form.basis_a, perm)).envariant
    report("criterion 7 (envariance)",
           "100 equal-amplitude instances envariant under all permutations; "
           "100 distinct-coefficient swaps rejected",
           time.perf_counter() - start, 30.0)


def test_criterion_8_monte_carlo_frequencies():
    """Sampled frequencies at n = 1e5 sit inside five-sigma binomial bands of
    the computed measures for 20 fixed-seed models, bit-identically per seed."""
    start = time.perf_counter()
    n = 100_000
    worst_sigma = 0.0
    for index in range(20):
        spec, sched = random_family_spec(70_000 + index, dim=2,
                                         n_times=2 + index % 3, s_t=1)
        rep = measure_report(enumerate_family(spec), sched)
        dist = OutcomeDistribution(
            tuple((e.choices, e.measure) for e in rep.entries))
        table = monte_carlo_sample(dist, n, seed=index)
        assert table.all_within_band
        worst_sigma = max(worst_sigma, table.max_sigma)
        again = monte_carlo_sample(dist, n, seed=index)
        assert again == table
    report("criterion 8 (Monte Carlo frequencies)",
           f"20 models x {n} samples, max deviation = "
           f"{worst_sigma:.2f} sigma < 5; reruns bit-identical",
           time.perf_counter() - start, 60.0)

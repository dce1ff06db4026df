"""Acceptance criteria, one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines inline;
under plain ``pytest -v`` the test names carry the verdicts.
"""

from __future__ import annotations

import math
import time

import numpy as np
import pytest

from conftest import XOR_ROWS, random_joint, random_pair, set_partitions, variable_from_partition
from infodiagram import (
    Dist,
    DistPair,
    HypothesisEvaluator,
    RandomVariable,
    SetFunction,
    act,
    advantage_instance,
    alpha_kl,
    alpha_kl_instance,
    atom_interaction,
    atom_table,
    atoms,
    bayes_error_evaluator,
    cross_entropy_instance,
    empirical_from_rows,
    entropy,
    entropy_function,
    equivalent,
    indices_of,
    interaction,
    kl,
    kl_instance,
    mobius_oracle,
    r1_instance,
    refines,
    relative_instance,
    shannon_instance,
    tsallis_entropy,
    tsallis_instance,
    verify_hu,
)

TOL = 1e-9
EXACT_TOL = 1e-12


def report(num: int, text: str) -> None:
    print(f"ACCEPTANCE {num}: PASS - {text}")


def test_criterion_01_xor_interaction_information():
    start = time.perf_counter()
    dist, gens = empirical_from_rows(XOR_ROWS)
    inst = shannon_instance(dist, gens, "bits")
    value = interaction(inst, (1, 2, 4), 0)
    elapsed = time.perf_counter() - start
    assert abs(value - (-1.0)) <= TOL
    assert elapsed < 1.0
    report(1, f"XOR I3 = {value} (base 2), computed in {elapsed:.3f}s")


def test_criterion_02_bsc_mutual_kl_divergence():
    start = time.perf_counter()
    points = ((0, 0), (0, 1), (1, 0), (1, 1))
    gens = [RandomVariable(labels=(0, 0, 1, 1)), RandomVariable(labels=(0, 1, 0, 1))]
    values = {}
    for eps in (0.5, 0.25, 0.01):
        q = Dist(masses=np.array([(1 - eps) / 2, eps / 2, eps / 2, (1 - eps) / 2]), points=points)
        pair = DistPair(p=Dist(masses=np.full(4, 0.25), points=points), q=q)
        inst = kl_instance(pair, gens, "bits")
        values[eps] = interaction(inst, (0b01, 0b10), 0)
        expected = 1.0 + 0.5 * (math.log2(1.0 - eps) + math.log2(eps))
        assert abs(values[eps] - expected) <= TOL
    elapsed = time.perf_counter() - start
    assert abs(values[0.5]) <= TOL
    assert abs(values[0.25] - (-0.2075187496)) <= TOL
    assert values[0.01] < -1.0
    assert elapsed < 1.0
    report(2, f"BSC D2 = {values[0.5]:.3f}, {values[0.25]:.10f}, {values[0.01]:.3f} "
              f"for eps 0.5, 0.25, 0.01 in {elapsed:.3f}s")


def test_criterion_03_generalization_error_synergy():
    start = time.perf_counter()
    dist, gens = empirical_from_rows(XOR_ROWS)
    evaluator = bayes_error_evaluator(dist, gens[:2], gens[2], "bits")
    assert evaluator.errors == (1.0, 1.0, 1.0, 0.0)
    synergy = interaction(advantage_instance(evaluator), (0b01, 0b10), 0)
    elapsed = time.perf_counter() - start
    assert synergy == -1.0
    assert elapsed < 1.0
    report(3, f"Bayes errors (1,1,1,0), mutual advantage = {synergy} in {elapsed:.3f}s")


def test_criterion_04_identity_sweep_all_families():
    start = time.perf_counter()
    rng = np.random.default_rng(1234)
    worst_inexact = 0.0
    for _ in range(100):
        dist, gens = random_joint(rng, 3)
        pair = random_pair(rng, dist)
        family = [
            shannon_instance(dist, gens),
            tsallis_instance(dist, gens, 2.0),
            tsallis_instance(dist, gens, 0.5),
            kl_instance(pair, gens),
            alpha_kl_instance(pair, gens, 2.0),
            cross_entropy_instance(pair, gens),
        ]
        for inst in family:
            result = verify_hu(inst, q_max=3, tol=TOL)
            assert result.passed, inst.meta
            worst_inexact = max(worst_inexact, result.max_residual)

    worst_exact = 0.0
    for _ in range(5):
        r = SetFunction(n=4, values=tuple(rng.uniform(0.0, 1.0, 16)))
        e = HypothesisEvaluator(n=4, errors=tuple(rng.uniform(0.0, 1.0, 16)))
        for inst in (r1_instance(r), advantage_instance(e)):
            result = verify_hu(inst, q_max=3, tol=EXACT_TOL)
            assert result.passed, inst.meta
            worst_exact = max(worst_exact, result.max_residual)

    elapsed = time.perf_counter() - start
    assert worst_inexact <= TOL
    assert worst_exact <= EXACT_TOL
    assert elapsed < 300.0
    report(4, f"600 probabilistic sweeps (worst {worst_inexact:.2e}) and 10 exact sweeps "
              f"(worst {worst_exact:.2e}) in {elapsed:.1f}s")


def test_criterion_05_mobius_oracle_equivalence():
    rng = np.random.default_rng(4321)
    worst = 0.0
    for trial in range(50):
        n = 1 + trial % 4
        if trial % 5 == 0:
            dist, gens = random_joint(rng, n)
            inst = shannon_instance(dist, gens)
        else:
            inst = r1_instance(SetFunction(n=n, values=tuple(rng.uniform(0.0, 1.0, 1 << n))))
        solved = mobius_oracle(inst)
        closed = atom_table(inst)
        worst = max(worst, max(abs(solved[a] - closed[a]) for a in atoms(n)))
    assert worst <= TOL
    report(5, f"50 linear solves vs closed form at n <= 4, max gap {worst:.2e}")


def test_criterion_06_generator_identities():
    rng = np.random.default_rng(99)
    n, full = 3, 0b111
    worst = 0.0
    for _ in range(20):
        dist, gens = random_joint(rng, n)
        inst = shannon_instance(dist, gens)
        eta = {a: atom_interaction(inst, a) for a in atoms(n)}
        f1 = {k: inst.total(k) for k in range(1 << n)}

        def degree_term(j_mask):
            singles = [1 << (i - 1) for i in indices_of(j_mask)]
            return interaction(inst, singles, 0)

        gaps = []
        for i in atoms(n):
            # (1) the alternating closed form over joints containing the complement
            comp = full & ~i
            acc = 0.0
            for k in range(1, 1 << n):
                if (k & comp) == comp:
                    acc += (-1.0) ** (k.bit_count() + i.bit_count() + 1 - n) * f1[k]
            gaps.append(abs(eta[i] - acc))
            # (4) alternating sum of unconditioned terms of the supersets
            acc = 0.0
            for j in atoms(n):
                if (j & i) == i:
                    acc += (-1.0) ** (j.bit_count() - i.bit_count()) * degree_term(j)
            gaps.append(abs(eta[i] - acc))
        for k in range(1 << n):
            # (2) each joint total is the sum of the atoms its circles cover
            acc = sum(eta[a] for a in atoms(n) if a & k)
            gaps.append(abs(f1[k] - acc))
            # (5) inclusion-exclusion over interaction terms of sub-joints
            acc = 0.0
            for j in atoms(n):
                if (j & k) == j:
                    acc += (-1.0) ** (j.bit_count() + 1) * degree_term(j)
            gaps.append(abs(f1[k] - acc))
        for j in atoms(n):
            # (3) an unconditioned interaction is the sum of the nested atoms
            acc = sum(eta[i] for i in atoms(n) if (i & j) == j)
            gaps.append(abs(degree_term(j) - acc))
            # (6) and equals the inclusion-exclusion over joint totals
            acc = 0.0
            for k in atoms(n):
                if (k & j) == k:
                    acc += (-1.0) ** (k.bit_count() + 1) * f1[k]
            gaps.append(abs(degree_term(j) - acc))
        worst = max(worst, max(gaps))
    assert worst <= TOL
    report(6, f"six generator identities on 20 random joints, max gap {worst:.2e}")


def test_criterion_07_relative_computations():
    rng = np.random.default_rng(77)
    worst = 0.0
    for _ in range(20):
        dist, gens = random_joint(rng, 4)
        inst = shannon_instance(dist, gens)
        y_fixed = int(rng.integers(1, 16))
        z_fixed = int(rng.integers(0, 16))
        rel = relative_instance(inst, (y_fixed,), z_fixed)
        for v1 in range(16):
            gap = abs(interaction(rel, (v1,), 0) - interaction(inst, (y_fixed, v1), z_fixed))
            worst = max(worst, gap)
        for _ in range(40):
            v1 = int(rng.integers(0, 16))
            v2 = int(rng.integers(0, 16))
            got = interaction(rel, (v1, v2), 0)
            want = interaction(inst, (y_fixed, v1, v2), z_fixed)
            worst = max(worst, abs(got - want))
    assert worst <= TOL
    report(7, f"relative terms match prepended-block terms on 20 joints, max gap {worst:.2e}")


def test_criterion_08_triple_overlap_decomposition():
    rng = np.random.default_rng(88)
    worst = 0.0
    for _ in range(20):
        dist, gens = random_joint(rng, 3)
        inst = shannon_instance(dist, gens)
        lhs = interaction(inst, (0b011, 0b101), 0)
        rhs = interaction(inst, (0b001,), 0b100) + interaction(inst, (0b011, 0b100), 0)
        worst = max(worst, abs(lhs - rhs))
    assert worst <= TOL
    report(8, f"I2(X1X2; X1X3) = X3.I1(X1) + I2(X1X2; X3) on 20 joints, max gap {worst:.2e}")


def test_criterion_09_equivalence_theory():
    rng = np.random.default_rng(9)
    masses = rng.uniform(0.05, 1.0, 4)
    p = Dist(masses=masses / masses.sum())
    partitions = set_partitions(range(4))
    assert len(partitions) == 15
    variables = [variable_from_partition(cells, 4) for cells in partitions]
    probes = [entropy_function(v) for v in variables[:5]]
    failures = 0
    for x in variables:
        for y in variables:
            conditional = act(x, entropy_function(y), p)
            if refines(x, y) != (abs(conditional) <= EXACT_TOL):
                failures += 1
            # equivalence is mutual functional determination...
            if equivalent(x, y) != (refines(x, y) and refines(y, x)):
                failures += 1
            if equivalent(x, y):
                # ...and equivalent variables are interchangeable
                if abs(entropy(p, x) - entropy(p, y)) > EXACT_TOL:
                    failures += 1
                for f in probes:
                    if abs(act(x, f, p) - act(y, f, p)) > EXACT_TOL:
                        failures += 1
    assert failures == 0
    report(9, "all 225 partition pairs on a 4-point space: zero failures")


def test_criterion_10_continuity_of_deformations():
    rng = np.random.default_rng(10)
    worst = 0.0
    for _ in range(20):
        size = int(rng.integers(2, 9))
        masses = rng.uniform(0.05, 1.0, size)
        p = Dist(masses=masses / masses.sum())
        pair = random_pair(rng, p)
        x = RandomVariable(labels=tuple(int(v) for v in rng.integers(0, 3, size)))
        h = entropy(p, x, "nats")
        d = kl(pair, x, "nats")
        for alpha in (1.0 - 1e-5, 1.0 + 1e-5):
            worst = max(worst, abs(tsallis_entropy(p, x, alpha) - h))
            worst = max(worst, abs(alpha_kl(pair, x, alpha) - d))
    assert worst <= 1e-4
    report(10, f"deformed values at alpha = 1 +/- 1e-5 within {worst:.2e} of the limits")

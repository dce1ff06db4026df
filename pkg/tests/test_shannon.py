"""Distribution machinery, entropy, the conditioning action, equivalence."""

from __future__ import annotations

import numpy as np
import pytest

from conftest import random_joint, set_partitions, variable_from_partition
from infodiagram import (
    Dist,
    DomainError,
    IngestionError,
    RandomVariable,
    act,
    condition,
    conditioned,
    constant_variable,
    empirical_from_rows,
    entropy,
    entropy_function,
    equivalent,
    interaction,
    joint,
    marginal,
    refines,
    shannon_instance,
)

H_BERNOULLI_34_BITS = 0.8112781244591328  # -(3/4)log2(3/4) - (1/4)log2(1/4)


def random_variable(rng, size, arity=3):
    return RandomVariable(labels=tuple(int(v) for v in rng.integers(0, arity, size)))


def strictly_positive(rng, size, points=None):
    masses = rng.uniform(0.05, 1.0, size)
    return Dist(masses=masses / masses.sum(), points=points)


# ---------------------------------------------------------------------------
# distributions and variables


def test_dist_validation():
    with pytest.raises(DomainError):
        Dist(masses=np.array([0.5, 0.6]))
    with pytest.raises(DomainError):
        Dist(masses=np.array([1.5, -0.5]))
    with pytest.raises(DomainError):
        Dist(masses=np.array([0.5, 0.5]), points=("a",))


def test_marginal_parity_and_injective():
    p = Dist(masses=np.full(4, 0.25))
    parity = RandomVariable(labels=(0, 1, 1, 0))
    pushed = marginal(p, parity)
    assert pushed.points == (0, 1)
    assert pushed.masses.tolist() == [0.5, 0.5]

    injective = RandomVariable(labels=("w", "x", "y", "z"))
    q = Dist(masses=np.array([0.1, 0.2, 0.3, 0.4]))
    assert marginal(q, injective).masses.tolist() == [0.1, 0.2, 0.3, 0.4]


def test_marginal_xor_component(xor_joint):
    dist, gens = xor_joint
    pushed = marginal(dist, gens[2])
    assert sorted(pushed.masses.tolist()) == [0.5, 0.5]


def test_condition_constant_and_zero_mass():
    p = Dist(masses=np.array([0.5, 0.5, 0.0]))
    const = constant_variable(3)
    conditioned_on_all = condition(p, const, "*")
    assert conditioned_on_all.masses.tolist() == p.masses.tolist()
    assert conditioned_on_all.points == p.points

    x = RandomVariable(labels=("a", "a", "b"))
    # "b" only carries zero mass: conditioning leaves p untouched
    assert condition(p, x, "b") is p
    with pytest.raises(DomainError):
        condition(p, x, "c")


def test_condition_renormalizes_block():
    p = Dist(masses=np.full(4, 0.25), points=("00", "01", "10", "11"))
    first_bit = RandomVariable(labels=(0, 0, 1, 1))
    cond = condition(p, first_bit, 0)
    assert cond.masses.tolist() == [0.5, 0.5, 0.0, 0.0]
    assert cond.points == p.points


def test_entropy_values():
    p = Dist(masses=np.full(4, 0.25))
    labels = RandomVariable(labels=("a", "b", "c", "d"))
    assert entropy(p, labels, "bits") == pytest.approx(2.0, abs=1e-15)
    assert entropy(p, constant_variable(4), "bits") == 0.0

    bern = Dist(masses=np.array([0.75, 0.25]))
    ident = RandomVariable(labels=(0, 1))
    assert entropy(bern, ident, "bits") == pytest.approx(H_BERNOULLI_34_BITS, abs=1e-15)
    with pytest.raises(DomainError, match="base"):
        entropy(bern, ident, "trits")


def test_act_examples(xor_joint):
    rng = np.random.default_rng(0)
    p = strictly_positive(rng, 6)
    x = random_variable(rng, 6)
    f = entropy_function(x, "nats")
    # the trivial variable acts trivially
    assert act(constant_variable(6), f, p) == pytest.approx(f(p), abs=1e-15)
    # conditioning a variable on itself leaves no uncertainty
    assert act(x, f, p) == pytest.approx(0.0, abs=1e-12)

    dist, gens = xor_joint
    hx = entropy_function(gens[0], "bits")
    assert act(gens[2], hx, dist) == pytest.approx(1.0, abs=1e-15)


def test_joint_and_equivalence_laws():
    rng = np.random.default_rng(1)
    x = random_variable(rng, 5)
    y = random_variable(rng, 5)
    assert equivalent(joint(x, constant_variable(5)), x)
    assert equivalent(joint(x, x), x)
    assert equivalent(joint(x, y), joint(y, x))
    with pytest.raises(DomainError, match="mismatch"):
        joint(x, random_variable(rng, 4))


def test_equivalent_examples():
    x = RandomVariable(labels=(0, 0, 1, 1))
    relabeled = RandomVariable(labels=("down", "down", "up", "up"))
    parity = RandomVariable(labels=(0, 1, 1, 0))
    assert equivalent(x, relabeled)
    assert not equivalent(x, parity)


def test_refines_examples():
    first_bit = RandomVariable(labels=(0, 0, 1, 1))
    parity = RandomVariable(labels=(0, 1, 1, 0))
    both = joint(first_bit, parity)
    assert refines(first_bit, constant_variable(4))
    assert refines(both, first_bit)
    assert not refines(first_bit, parity)
    assert not refines(parity, first_bit)


# ---------------------------------------------------------------------------
# chain rule, action axioms, equivalence interplay


def test_chain_rule_on_random_triples():
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(100):
        size = int(rng.integers(2, 9))
        p = strictly_positive(rng, size)
        x = random_variable(rng, size)
        y = random_variable(rng, size)
        lhs = entropy(p, joint(x, y))
        rhs = entropy(p, x) + act(x, entropy_function(y), p)
        worst = max(worst, abs(lhs - rhs))
    assert worst <= 1e-12


def test_action_axioms_sampled():
    rng = np.random.default_rng(3)
    for _ in range(25):
        size = int(rng.integers(2, 8))
        p = strictly_positive(rng, size)
        x = random_variable(rng, size)
        y = random_variable(rng, size)
        f = entropy_function(random_variable(rng, size))
        g = entropy_function(random_variable(rng, size))
        assert act(constant_variable(size), f, p) == pytest.approx(f(p), abs=1e-13)
        assert act(x, conditioned(y, f), p) == pytest.approx(act(joint(x, y), f, p), abs=1e-12)
        assert act(x, f + g, p) == pytest.approx(act(x, f, p) + act(x, g, p), abs=1e-12)


def test_entropy_monotone_under_refinement():
    rng = np.random.default_rng(4)
    for _ in range(50):
        size = int(rng.integers(2, 9))
        p = strictly_positive(rng, size)
        x = random_variable(rng, size, arity=4)
        # y = f(x): collapse x's labels through a random map
        table = {lab: int(rng.integers(0, 2)) for lab in set(x.labels)}
        y = RandomVariable(labels=tuple(table[lab] for lab in x.labels))
        assert refines(x, y)
        assert entropy(p, y) <= entropy(p, x) + 1e-12


def test_zero_conditional_iff_function_of():
    # on a strictly positive 4-point space, X.H(Y) vanishes exactly when
    # Y is a function of X; checked over all 15 x 15 partition pairs
    rng = np.random.default_rng(5)
    p = strictly_positive(rng, 4)
    parts = set_partitions(range(4))
    assert len(parts) == 15
    variables = [variable_from_partition(cells, 4) for cells in parts]
    for x in variables:
        for y in variables:
            value = act(x, entropy_function(y), p)
            if refines(x, y):
                assert abs(value) <= 1e-12
            else:
                assert value > 1e-12


def test_equivalence_preserves_entropy_and_action():
    rng = np.random.default_rng(6)
    for _ in range(20):
        size = int(rng.integers(2, 8))
        p = strictly_positive(rng, size)
        x = random_variable(rng, size)
        relabel = {lab: f"<{lab}>" for lab in set(x.labels)}
        x2 = RandomVariable(labels=tuple(relabel[lab] for lab in x.labels))
        assert equivalent(x, x2)
        assert entropy(p, x) == pytest.approx(entropy(p, x2), abs=1e-13)
        f = entropy_function(random_variable(rng, size))
        assert act(x, f, p) == pytest.approx(act(x2, f, p), abs=1e-12)


def test_nonnegativity():
    rng = np.random.default_rng(7)
    for _ in range(20):
        dist, gens = random_joint(rng, 2)
        inst = shannon_instance(dist, gens)
        assert entropy(dist, gens[0]) >= 0.0
        assert interaction(inst, (0b01, 0b10), 0) >= -1e-12


# ---------------------------------------------------------------------------
# the instance and ingestion


def test_shannon_instance_small_cases(xor_joint):
    rows = [(a, b) for a in (0, 1) for b in (0, 1)]
    dist, gens = empirical_from_rows(rows)
    inst = shannon_instance(dist, gens, "bits")
    assert interaction(inst, (0b01,), 0) == entropy(dist, gens[0], "bits")
    assert interaction(inst, (0b01, 0b10), 0) == pytest.approx(0.0, abs=1e-12)

    copied = empirical_from_rows([(0, 0), (1, 1)])
    inst_eq = shannon_instance(*copied, "bits")
    assert interaction(inst_eq, (0b01, 0b10), 0) == pytest.approx(1.0, abs=1e-15)

    dist, gens = xor_joint
    inst_xor = shannon_instance(dist, gens, "bits")
    assert interaction(inst_xor, (1, 2, 4), 0) == pytest.approx(-1.0, abs=1e-12)


def test_empirical_from_rows_xor(xor_joint):
    dist, gens = xor_joint
    assert dist.masses.tolist() == [0.25, 0.25, 0.25, 0.25]
    assert len(gens) == 3
    assert dist.points == ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0))


def test_empirical_single_row_is_deterministic():
    dist, gens = empirical_from_rows([("a", "b")])
    assert dist.masses.tolist() == [1.0]
    for g in gens:
        assert entropy(dist, g) == 0.0


def test_empirical_duplicates_equal_weights():
    d1, _ = empirical_from_rows([(0, 1), (0, 1), (1, 0)])
    d2, _ = empirical_from_rows([(0, 1), (1, 0)], weights=[2.0, 1.0])
    assert d1.points == d2.points
    assert d1.masses.tolist() == d2.masses.tolist()


def test_empirical_errors_name_rows():
    with pytest.raises(IngestionError, match="row 1"):
        empirical_from_rows([(0, 1), (0,)])
    with pytest.raises(IngestionError, match="row 0"):
        empirical_from_rows([(0, 1)], weights=[float("nan")])
    with pytest.raises(IngestionError, match="row 1"):
        empirical_from_rows([(0, 1), (1, 1)], weights=[1.0, -2.0])
    with pytest.raises(IngestionError, match="positive"):
        empirical_from_rows([(0, 1)], weights=[0.0])
    with pytest.raises(IngestionError, match="no rows"):
        empirical_from_rows([])

"""Finite discrete probability: distributions, variables as partitions, entropy.

Random variables here are labelings of an enumerated finite sample space;
two variables carry the same information iff they induce the same
partition, which is what :func:`equivalent` decides.  Conditioning an
information function by a variable is the averaged conditioning
``(X.F)(P) = sum over x of P_X(x) * F(P | X = x)``, and Shannon entropy is
the function satisfying the chain rule ``H(XY) = H(X) + X.H(Y)``, which
is the single identity :func:`shannon_instance` feeds to the diagram engine.

Conventions: ``0 * log 0 = 0``; conditioning on a zero-probability value
returns the distribution unchanged; natural log by default, ``base="bits"``
for binary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import ChainRuleInstance, DomainError, _check_n

MASS_TOL = 1e-12
MAX_SAMPLE_POINTS = 10 ** 6

_LOG_SCALE = {"nats": 1.0, "bits": 1.0 / math.log(2.0)}


class IngestionError(ValueError):
    """Malformed input data (ragged rows, bad weights, oversized spaces)."""


def log_scale(base: str) -> float:
    """Multiplier turning natural-log values into the requested base."""
    try:
        return _LOG_SCALE[base]
    except KeyError:
        raise DomainError(f"log base must be 'nats' or 'bits', got {base!r}") from None


@dataclass(frozen=True, eq=False)
class Dist:
    """Probability mass function over an enumerated finite sample space.

    ``points`` names the sample points (defaults to their indices); masses
    must be nonnegative and sum to 1 within 1e-12.
    """

    masses: np.ndarray
    points: tuple = None

    def __post_init__(self):
        arr = np.asarray(self.masses, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise DomainError("masses must be a nonempty 1-d array")
        if not np.all(np.isfinite(arr)):
            raise DomainError("masses must be finite")
        if np.any(arr < 0):
            raise DomainError("masses must be nonnegative")
        if abs(float(arr.sum()) - 1.0) > MASS_TOL:
            raise DomainError(f"masses sum to {float(arr.sum())!r}, not 1 within {MASS_TOL}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "masses", arr)
        pts = self.points if self.points is not None else tuple(range(arr.size))
        pts = tuple(pts)
        if len(pts) != arr.size:
            raise DomainError(f"{len(pts)} points for {arr.size} masses")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return self.masses.size


@dataclass(frozen=True, eq=False)
class RandomVariable:
    """A labeling of sample points; its partition is what carries information."""

    labels: tuple
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if not self.labels:
            raise DomainError("a random variable needs at least one sample point")

    def __len__(self) -> int:
        return len(self.labels)

    def values(self) -> tuple:
        """Distinct labels in first-occurrence order."""
        seen = {}
        for lab in self.labels:
            if lab not in seen:
                seen[lab] = None
        return tuple(seen)

    def partition(self) -> frozenset:
        """The induced partition of the sample space as index cells."""
        cells = {}
        for i, lab in enumerate(self.labels):
            cells.setdefault(lab, []).append(i)
        return frozenset(frozenset(cell) for cell in cells.values())


def constant_variable(size: int, name: str = "") -> RandomVariable:
    """The trivial variable: one label, no information."""
    return RandomVariable(labels=("*",) * size, name=name)


def _check_same_space(p: Dist, x: RandomVariable) -> None:
    if len(p) != len(x):
        raise DomainError(f"variable on {len(x)} points does not match distribution on {len(p)}")


def marginal(p: Dist, x: RandomVariable) -> Dist:
    """Pushforward of ``p`` along ``x``: mass per label, first-occurrence order."""
    _check_same_space(p, x)
    order = []
    mass = {}
    for i, lab in enumerate(x.labels):
        if lab not in mass:
            mass[lab] = 0.0
            order.append(lab)
        mass[lab] += float(p.masses[i])
    return Dist(masses=np.array([mass[lab] for lab in order]), points=tuple(order))


def condition(p: Dist, x: RandomVariable, value) -> Dist:
    """Renormalized restriction of ``p`` to ``x == value``.

    If the value has probability zero, returns ``p`` unchanged; that
    convention keeps averaged sums free of case splits.
    """
    _check_same_space(p, x)
    if value not in x.labels:
        raise DomainError(f"{value!r} is not a label of the variable")
    block = np.array([lab == value for lab in x.labels])
    px = float(p.masses[block].sum())
    if px == 0.0:
        return p
    masses = np.where(block, p.masses, 0.0) / px
    return Dist(masses=masses, points=p.points)


def entropy(p: Dist, x: RandomVariable, base: str = "nats") -> float:
    """Shannon entropy of ``x`` under ``p``, with ``0 log 0 = 0``."""
    scale = log_scale(base)
    m = marginal(p, x).masses
    pos = m[m > 0]
    return float(-(pos * np.log(pos)).sum() * scale)


def act(x: RandomVariable, f, p: Dist) -> float:
    """Averaged conditioning: ``sum over x-values of P_X(x) * F(P | X = x)``.

    ``f`` is any callable on distributions; zero-probability values are
    skipped (their weight is zero).
    """
    _check_same_space(p, x)
    pushed = marginal(p, x)
    total = 0.0
    for value, weight in zip(pushed.points, pushed.masses):
        w = float(weight)
        if w == 0.0:
            continue
        total += w * f(condition(p, x, value))
    return total


def joint(x: RandomVariable, y: RandomVariable) -> RandomVariable:
    """Pairing of two variables on the same sample space."""
    if len(x) != len(y):
        raise DomainError(f"sample-space size mismatch: {len(x)} vs {len(y)}")
    name = f"({x.name},{y.name})" if x.name or y.name else ""
    return RandomVariable(labels=tuple(zip(x.labels, y.labels)), name=name)


def joint_of(gens, mask: int, size: int) -> RandomVariable:
    """Joint of the generators selected by ``mask`` (the constant variable for 0)."""
    selected = [g for i, g in enumerate(gens) if mask & (1 << i)]
    if not selected:
        return constant_variable(size)
    labels = tuple(tuple(g.labels[i] for g in selected) for i in range(size))
    return RandomVariable(labels=labels)


def equivalent(x: RandomVariable, y: RandomVariable) -> bool:
    """True iff the two variables induce the same partition of the space."""
    if len(x) != len(y):
        raise DomainError(f"sample-space size mismatch: {len(x)} vs {len(y)}")
    return x.partition() == y.partition()


def refines(x: RandomVariable, y: RandomVariable) -> bool:
    """True iff ``y`` is a function of ``x`` (x's partition refines y's)."""
    if len(x) != len(y):
        raise DomainError(f"sample-space size mismatch: {len(x)} vs {len(y)}")
    image = {}
    for lx, ly in zip(x.labels, y.labels):
        if image.setdefault(lx, ly) != ly:
            return False
    return True


@dataclass(frozen=True)
class InfoFunction:
    """An evaluatable information function, closed under +, - and conditioning."""

    evaluator: Callable
    tag: str = ""

    def __call__(self, context) -> float:
        return float(self.evaluator(context))

    def __add__(self, other) -> "InfoFunction":
        return InfoFunction(lambda ctx: self(ctx) + other(ctx), "sum")

    def __sub__(self, other) -> "InfoFunction":
        return InfoFunction(lambda ctx: self(ctx) - other(ctx), "difference")

    def __neg__(self) -> "InfoFunction":
        return InfoFunction(lambda ctx: -self(ctx), "difference")


def entropy_function(x: RandomVariable, base: str = "nats") -> InfoFunction:
    """The entropy of ``x`` as a function of the distribution."""
    return InfoFunction(lambda p: entropy(p, x, base), "entropy")


def conditioned(x: RandomVariable, f) -> InfoFunction:
    """The averaged conditioning of ``f`` by ``x`` as a function."""
    return InfoFunction(lambda p: act(x, f, p), "conditioned")


def shannon_instance(p: Dist, gens, base: str = "nats") -> ChainRuleInstance:
    """Entropy as a chain-rule instance over the monoid the generators span.

    ``k1(y, z)`` is the conditional entropy of the joint of the ``y``
    generators given the joint of the ``z`` generators, i.e.
    ``H(X_(y|z)) - H(X_z)``.  Also carries the function-valued form so the
    action axioms can be validated.
    """
    gens = tuple(gens)
    n = len(gens)
    _check_n(n)
    for g in gens:
        _check_same_space(p, g)
    size = len(p)

    joints: dict[int, RandomVariable] = {}
    ents: dict[int, float] = {}

    def var(mask: int) -> RandomVariable:
        v = joints.get(mask)
        if v is None:
            v = joint_of(gens, mask, size)
            joints[mask] = v
        return v

    def h(mask: int) -> float:
        val = ents.get(mask)
        if val is None:
            val = entropy(p, var(mask), base)
            ents[mask] = val
        return val

    def k1(y_mask: int, z_mask: int) -> float:
        return h(y_mask | z_mask) - h(z_mask)

    return ChainRuleInstance(
        n=n,
        k1=k1,
        f1=lambda mask: entropy_function(var(mask), base),
        action=lambda f, mask: conditioned(var(mask), f),
        evaluate=lambda f: f(p),
        meta={"kind": "shannon", "base": base},
    )


def empirical_from_rows(rows, weights=None):
    """Empirical distribution and one variable per column from a table of rows.

    The sample space is the distinct rows in first-occurrence order; masses
    are normalized (weighted) counts.  Returns ``(dist, variables)``.
    """
    rows = list(rows)
    if not rows:
        raise IngestionError("no rows")
    width = len(rows[0])
    if weights is None:
        weights = [1.0] * len(rows)
    else:
        weights = list(weights)
        if len(weights) != len(rows):
            raise IngestionError(f"{len(weights)} weights for {len(rows)} rows")

    mass: dict[tuple, float] = {}
    order: list[tuple] = []
    for i, row in enumerate(rows):
        row = tuple(row)
        if len(row) != width:
            raise IngestionError(f"row {i}: expected {width} columns, got {len(row)}")
        try:
            w = float(weights[i])
        except (TypeError, ValueError):
            raise IngestionError(f"row {i}: weight {weights[i]!r} is not a number") from None
        if not math.isfinite(w) or w < 0:
            raise IngestionError(f"row {i}: weight {w!r} must be finite and >= 0")
        if row not in mass:
            if len(order) >= MAX_SAMPLE_POINTS:
                raise IngestionError(f"more than {MAX_SAMPLE_POINTS} distinct sample points")
            mass[row] = 0.0
            order.append(row)
        mass[row] += w

    total = math.fsum(mass.values())
    if total <= 0:
        raise IngestionError("total weight must be positive")
    dist = Dist(masses=np.array([mass[row] / total for row in order]), points=tuple(order))
    variables = [
        RandomVariable(labels=tuple(row[j] for row in order)) for j in range(width)
    ]
    return dist, variables

"""Guarded values: injective maps from guard partitions into an algebra.

A :class:`GuardedValue` symbolically stores one algebra element per
product.  Operations intersect the operand partitions, compute blockwise
and canonicalize, i.e. merge blocks carrying equal values by disjunction.
The lifted structure is again a Kleene algebra (:class:`GuardedAlgebra`),
so matrices and automata over it work unchanged.
"""

from __future__ import annotations

from typing import Callable, Iterable

from .features import (
    TRUE,
    And,
    FeatureModel,
    Guard,
    GuardPartition,
    Not,
    Or,
    intersect_masks,
    lowest_bit,
)
from .kleene import KleeneAlgebra, OmegaAlgebra


class GuardedValue:
    """``blocks`` is a tuple of ``(guard, mask, value)`` with pairwise
    disjoint nonempty masks covering the model and pairwise distinct values,
    ordered by lowest product index."""

    __slots__ = ("model", "blocks", "_key")

    def __init__(self, model: FeatureModel, blocks):
        self.model = model
        self.blocks = tuple(blocks)
        self._key = None

    @property
    def partition(self) -> GuardPartition:
        return GuardPartition(
            self.model, tuple(b[0] for b in self.blocks), tuple(b[1] for b in self.blocks)
        )

    @property
    def values(self) -> dict:
        return {b[0]: b[2] for b in self.blocks}

    def key(self) -> frozenset:
        if self._key is None:
            self._key = frozenset((m, v) for _, m, v in self.blocks)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, GuardedValue):
            return NotImplemented
        return self.model == other.model and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __len__(self):
        return len(self.blocks)

    def at(self, product) -> object:
        return semantics_at(self, product)

    def table(self) -> dict:
        """Product (as frozenset of features) -> value."""
        out = {}
        for _, m, v in self.blocks:
            for p in self.model.products_in(m):
                out[p] = v
        return out

    def __repr__(self):
        body = ", ".join(f"{self.model.describe(m)} -> {v!r}" for _, m, v in self.blocks)
        return f"GuardedValue{{{body}}}"


def _canon(model: FeatureModel, raw: Iterable) -> GuardedValue:
    """Merge equal-valued blocks of ``(guard, mask, value)`` triples."""
    groups: dict = {}
    for g, m, v in raw:
        hit = groups.get(v)
        if hit is None:
            groups[v] = [g, m]
        else:
            hit[0] = Or(hit[0], g)
            hit[1] |= m
    blocks = sorted(((g, m, v) for v, (g, m) in groups.items()), key=lambda b: lowest_bit(b[1]))
    return GuardedValue(model, blocks)


def canonicalize(raw, model: FeatureModel | None = None) -> GuardedValue:
    """Canonicalization of a partition-indexed map.

    ``raw`` is a mapping guard -> value (model required) or an iterable of
    ``(guard, value)`` pairs; the guards must form a partition.
    """
    if isinstance(raw, GuardedValue):
        return _canon(raw.model, raw.blocks)
    if model is None:
        raise TypeError("a model is required to canonicalize a guard map")
    items = list(raw.items()) if isinstance(raw, dict) else list(raw)
    part = GuardPartition.of([g for g, _ in items], model)
    return _canon(model, ((g, m, v) for (g, v), m in zip(items, part.masks)))


def constant(model: FeatureModel, value) -> GuardedValue:
    return GuardedValue(model, ((TRUE, model.full, value),))


def semantics_at(f: GuardedValue, product):
    """Value of ``f`` at a product (feature-name collection or index)."""
    idx = product if isinstance(product, int) else f.model.index(product)
    bit = 1 << idx
    for _, m, v in f.blocks:
        if m & bit:
            return v
    raise ValueError("product not covered")  # unreachable for valid values


def lift2(f1: GuardedValue, f2: GuardedValue, op: Callable) -> GuardedValue:
    if f1.model is not f2.model and f1.model != f2.model:
        raise ValueError("guarded values over different feature models")
    b1, b2 = f1.blocks, f2.blocks
    raw = (
        (And(b1[i][0], b2[j][0]), m, op(b1[i][2], b2[j][2]))
        for i, j, m in intersect_masks([b[1] for b in b1], [b[1] for b in b2])
    )
    return _canon(f1.model, raw)


def lift1(f: GuardedValue, op: Callable) -> GuardedValue:
    return _canon(f.model, ((g, m, op(v)) for g, m, v in f.blocks))


def gp_plus(alg: KleeneAlgebra, f1, f2):
    return lift2(f1, f2, alg.plus)


def gp_times(alg: KleeneAlgebra, f1, f2):
    return lift2(f1, f2, alg.times)


def gp_star(alg: KleeneAlgebra, f):
    return lift1(f, alg.star)


def gp_omega(alg: OmegaAlgebra, f):
    return lift1(f, alg.omega)


def from_guard_weight(model: FeatureModel, alg: KleeneAlgebra, guard: Guard, weight) -> GuardedValue:
    """``{guard -> weight, !guard -> 0}`` with empty branches dropped."""
    m = model.mask(guard)
    raw = []
    if m:
        raw.append((guard, m, weight))
    if model.full & ~m:
        raw.append((Not(guard), model.full & ~m, alg.zero))
    return _canon(model, raw)


def from_table(model: FeatureModel, table: dict) -> GuardedValue:
    """Guarded value from a product -> value table, built from
    characteristic guards and canonicalized."""
    raw = []
    for i in range(len(model)):
        p = model.product_of(i)
        raw.append((model.characteristic_guard(p), 1 << i, table[p]))
    return _canon(model, raw)


class GuardedAlgebra(KleeneAlgebra):
    """The featured lift of ``base`` over a feature model."""

    def __init__(self, base: KleeneAlgebra, model: FeatureModel):
        self.base = base
        self.model = model
        self.name = f"GP({base.name})"
        self.zero = constant(model, base.zero)
        self.one = constant(model, base.one)
        self.bounded = base.bounded

    def plus(self, x, y):
        return lift2(x, y, self.base.plus)

    def times(self, x, y):
        return lift2(x, y, self.base.times)

    def star(self, x):
        return lift1(x, self.base.star)

    def lift(self, value) -> GuardedValue:
        return constant(self.model, value)

    def render(self, x):
        return "{" + ", ".join(
            f"{self.model.describe(m)} -> {self.base.render(v)}" for _, m, v in x.blocks
        ) + "}"


class GuardedOmegaAlgebra(GuardedAlgebra, OmegaAlgebra):
    """Lift of a semiring-semimodule pair: both sides become guarded."""

    def __init__(self, base: OmegaAlgebra, model: FeatureModel):
        super().__init__(base, model)
        self.vzero = constant(model, base.vzero)

    def vplus(self, u, v):
        return lift2(u, v, self.base.vplus)

    def act(self, x, v):
        return lift2(x, v, self.base.act)

    def omega(self, x):
        return lift1(x, self.base.omega)

    def vrender(self, v):
        return "{" + ", ".join(
            f"{self.model.describe(m)} -> {self.base.vrender(w)}" for _, m, w in v.blocks
        ) + "}"


def lift_algebra(base: KleeneAlgebra, model: FeatureModel) -> GuardedAlgebra:
    if isinstance(base, OmegaAlgebra):
        return GuardedOmegaAlgebra(base, model)
    return GuardedAlgebra(base, model)

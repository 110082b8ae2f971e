"""Weighted and featured weighted automata and their values."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .energy import ENERGY, BOT, OmegaIndicator
from .features import FeatureModel, Guard
from .gplift import GuardedValue, from_guard_weight, lift_algebra, semantics_at
from .kleene import KleeneAlgebra, OmegaAlgebra
from .matrix import MatrixRep, mat_act, mat_omega_k, mat_product, mat_star, zeros


def _check_states(states, initial, accepting, transitions):
    if len(set(states)) != len(states):
        raise ValueError("duplicate state names")
    known = set(states)
    for s in list(initial) + list(accepting):
        if s not in known:
            raise ValueError(f"unknown state {s!r}")
    for src, _, dst in transitions:
        if src not in known or dst not in known:
            raise ValueError(f"transition {src!r} -> {dst!r} references an unknown state")


@dataclass(frozen=True)
class WeightedAutomaton:
    algebra: KleeneAlgebra
    states: tuple
    initial: frozenset
    accepting: frozenset
    transitions: tuple  # (source, weight, target)

    def __init__(self, algebra, states, initial, accepting, transitions):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "states", tuple(states))
        object.__setattr__(self, "initial", frozenset(initial))
        object.__setattr__(self, "accepting", frozenset(accepting))
        object.__setattr__(self, "transitions", tuple(tuple(t) for t in transitions))
        _check_states(self.states, self.initial, self.accepting, self.transitions)


@dataclass(frozen=True)
class FeaturedWeightedAutomaton:
    """Featured automaton over ``algebra``: labels are guarded values."""

    model: FeatureModel
    algebra: KleeneAlgebra
    states: tuple
    initial: frozenset
    accepting: frozenset
    transitions: tuple  # (source, GuardedValue, target)
    guarded: tuple = field(default=(), compare=False)  # (source, guard, weight, target) if known

    def __init__(self, model, algebra, states, initial, accepting, transitions, guarded=()):
        object.__setattr__(self, "model", model)
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "states", tuple(states))
        object.__setattr__(self, "initial", frozenset(initial))
        object.__setattr__(self, "accepting", frozenset(accepting))
        object.__setattr__(self, "transitions", tuple(tuple(t) for t in transitions))
        object.__setattr__(self, "guarded", tuple(guarded))
        _check_states(self.states, self.initial, self.accepting, self.transitions)
        for _, label, _ in self.transitions:
            if not isinstance(label, GuardedValue) or label.model != model:
                raise ValueError("transition labels must be guarded values over the automaton's model")

    @classmethod
    def from_guarded(
        cls,
        model: FeatureModel,
        algebra: KleeneAlgebra,
        states: Sequence,
        initial,
        accepting,
        transitions: Sequence[tuple[Any, Guard, Any, Any]],
    ) -> FeaturedWeightedAutomaton:
        """Build from ``(source, guard, weight, target)`` transitions; each
        label is ``{guard -> weight, !guard -> 0}``."""
        labels = [(s, from_guard_weight(model, algebra, g, w), t) for s, g, w, t in transitions]
        return cls(model, algebra, states, initial, accepting, labels, guarded=transitions)

    @property
    def lifted(self) -> KleeneAlgebra:
        return lift_algebra(self.algebra, self.model)

    def as_weighted(self) -> WeightedAutomaton:
        """The same automaton viewed as weighted over the lifted algebra."""
        return WeightedAutomaton(self.lifted, self.states, self.initial, self.accepting, self.transitions)


def matrix_representation(A: WeightedAutomaton) -> MatrixRep:
    """``(alpha, M, k)``; accepting states first, order otherwise stable."""
    alg = A.algebra
    order = tuple(s for s in A.states if s in A.accepting) + tuple(
        s for s in A.states if s not in A.accepting
    )
    pos = {s: i for i, s in enumerate(order)}
    n = len(order)
    M = zeros(alg, n)
    for src, w, dst in A.transitions:
        i, j = pos[src], pos[dst]
        M[i][j] = alg.plus(M[i][j], w)
    alpha = [alg.one if s in A.initial else alg.zero for s in order]
    return MatrixRep(alpha, M, len(A.accepting), order)


def reach_value(A: WeightedAutomaton):
    """``alpha M* kappa``: the sum of weights of accepting finite paths."""
    alg = A.algebra
    rep = matrix_representation(A)
    if not rep.M:
        return alg.zero
    star = mat_star(alg, rep.M)
    row = mat_product(alg, [rep.alpha], star)[0]
    return alg.sum(alg.times(x, y) for x, y in zip(row, rep.kappa(alg)))


def buchi_value(A: WeightedAutomaton):
    """``alpha M^{ω_k}``: the sum over Büchi accepting infinite paths."""
    alg = A.algebra
    if not isinstance(alg, OmegaAlgebra):
        raise TypeError(f"Büchi values need an ω-algebra, got {alg.name}")
    rep = matrix_representation(A)
    if not rep.M:
        return alg.vzero
    vec = mat_omega_k(alg, rep.M, rep.k)
    return mat_act(alg, [rep.alpha], vec)[0]


def energy_queries(A: WeightedAutomaton, x0) -> tuple[bool, bool]:
    """(reachability, Büchi acceptance) from initial energy ``x0``."""
    if A.algebra is not ENERGY:
        raise TypeError("energy queries need an energy automaton")
    x0 = Fraction(x0)
    if x0 < 0:
        raise ValueError("initial energy must be nonnegative")
    reach = reach_value(A)(x0) is not BOT
    buchi = buchi_value(A)(x0)
    return reach, buchi


def project(F: FeaturedWeightedAutomaton, product) -> WeightedAutomaton:
    idx = product if isinstance(product, int) else F.model.index(product)
    return WeightedAutomaton(
        F.algebra,
        F.states,
        F.initial,
        F.accepting,
        [(s, semantics_at(label, idx), t) for s, label, t in F.transitions],
    )


def featured_reach_value(F: FeaturedWeightedAutomaton) -> GuardedValue:
    return reach_value(F.as_weighted())


def featured_buchi_value(F: FeaturedWeightedAutomaton) -> GuardedValue:
    if not isinstance(F.algebra, OmegaAlgebra):
        raise TypeError(f"Büchi values need an ω-algebra, got {F.algebra.name}")
    return buchi_value(F.as_weighted())


def per_product_oracle(F: FeaturedWeightedAutomaton, query: str = "reach") -> dict:
    """Product -> value, computed on each projection separately."""
    if query not in ("reach", "buchi"):
        raise ValueError(f"unknown query {query!r}")
    fn = reach_value if query == "reach" else buchi_value
    return {F.model.product_of(i): fn(project(F, i)) for i in range(len(F.model))}


def indicator_at(v: OmegaIndicator, x0) -> bool:
    return v(Fraction(x0))

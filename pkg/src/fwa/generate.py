"""Random instances for tests and benchmarks (seeded ``random.Random``)."""

from __future__ import annotations

import random
from fractions import Fraction

from .automata import FeaturedWeightedAutomaton, WeightedAutomaton
from .energy import ENERGY, EnergyFunction, update
from .features import TRUE, Atom, FeatureModel, Guard, Not, conjunction, disjunction
from .gplift import GuardedValue, _canon
from .kleene import BOOL, FUZZ, INF, TROP, KleeneAlgebra

FEATURE_NAMES = "abcdefghijklmnopqrst"


def random_model(rng: random.Random, nfeatures: int) -> FeatureModel:
    return FeatureModel(list(FEATURE_NAMES[:nfeatures]), "all")


def random_literal(rng: random.Random, model: FeatureModel) -> Guard:
    a = Atom(rng.choice(model.features))
    return a if rng.random() < 0.5 else Not(a)


def random_guard(rng: random.Random, model: FeatureModel, p_true: float = 0.3) -> Guard:
    """``true``, a literal, or a small conjunction/disjunction of literals."""
    if not model.features or rng.random() < p_true:
        return TRUE
    r = rng.random()
    if r < 0.5:
        return random_literal(rng, model)
    lits = [random_literal(rng, model) for _ in range(2)]
    return conjunction(lits) if r < 0.8 else disjunction(lits)


def random_weight(rng: random.Random, alg: KleeneAlgebra):
    if alg is BOOL:
        return rng.random() < 0.7
    if alg is TROP:
        return INF if rng.random() < 0.05 else Fraction(rng.randint(0, 9), rng.choice((1, 1, 2)))
    if alg is FUZZ:
        return INF if rng.random() < 0.1 else Fraction(rng.randint(0, 9), rng.choice((1, 1, 2)))
    if alg is ENERGY:
        return random_update(rng)
    raise ValueError(f"no weight generator for {alg!r}")


def random_update(rng: random.Random, lo: int = -3, hi: int = 3) -> EnergyFunction:
    return update(rng.randint(lo, hi), rng.randint(lo, hi))


def random_pwl(rng: random.Random, max_pieces: int = 4) -> EnergyFunction:
    """Random valid piecewise-linear energy function."""
    if rng.random() < 0.05:
        return EnergyFunction(())
    slopes = [Fraction(1), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3)]
    start = Fraction(rng.randint(0, 8), rng.choice((1, 2)))
    value = Fraction(rng.randint(0, 8), rng.choice((1, 2)))
    pieces = []
    closed = rng.random() < 0.8
    for i in range(rng.randint(1, max_pieces)):
        slope = rng.choice(slopes)
        pieces.append((start, closed, value - slope * start, slope))
        length = Fraction(rng.randint(1, 6), rng.choice((1, 2, 4)))
        end = start + length
        value = value + slope * length + Fraction(rng.randint(0, 3) if rng.random() < 0.5 else 0, rng.choice((1, 2)))
        start, closed = end, rng.random() < 0.5
    if rng.random() < 0.25:
        pieces.append((start, closed, None, None))
    return EnergyFunction.from_pieces(pieces)


def random_guarded_value(
    rng: random.Random, alg: KleeneAlgebra, model: FeatureModel, weight=None, max_blocks: int = 4
) -> GuardedValue:
    """Random guarded value: products grouped at random, then canonicalized."""
    weight = weight or (lambda: random_weight(rng, alg))
    k = rng.randint(1, max_blocks)
    masks = [0] * k
    for i in range(len(model)):
        masks[rng.randrange(k)] |= 1 << i
    raw = []
    for m in masks:
        if m:
            raw.append((model.describe(m), m, weight()))
    return _canon(model, raw)


def random_featured_automaton(
    rng: random.Random,
    alg: KleeneAlgebra,
    model: FeatureModel,
    max_states: int = 6,
    max_transitions: int = 12,
    weight=None,
    p_true: float = 0.3,
    require_accepting: bool = False,
    disjoint: bool = False,
) -> FeaturedWeightedAutomaton:
    """Random featured automaton; ``disjoint`` keeps initial states out of
    the accepting set (when there is another state), so the empty path
    does not decide the value."""
    weight = weight or (lambda: random_weight(rng, alg))
    n = rng.randint(1, max_states)
    states = [f"s{i}" for i in range(n)]
    initial = [s for s in states if rng.random() < 0.35] or [rng.choice(states)]
    pool = [s for s in states if s not in initial] if disjoint and len(initial) < n else states
    accepting = [s for s in pool if rng.random() < 0.35]
    if require_accepting and not accepting:
        accepting = [rng.choice(pool)]
    transitions = []
    for _ in range(rng.randint(0, max_transitions)):
        transitions.append((rng.choice(states), random_guard(rng, model, p_true), weight(), rng.choice(states)))
    return FeaturedWeightedAutomaton.from_guarded(model, alg, states, initial, accepting, transitions)


def random_weighted_automaton(
    rng: random.Random, alg: KleeneAlgebra, max_states: int = 5, max_transitions: int = 10, weight=None
) -> WeightedAutomaton:
    weight = weight or (lambda: random_weight(rng, alg))
    n = rng.randint(1, max_states)
    states = [f"s{i}" for i in range(n)]
    initial = [s for s in states if rng.random() < 0.4] or [rng.choice(states)]
    accepting = [s for s in states if rng.random() < 0.4]
    transitions = [
        (rng.choice(states), weight(), rng.choice(states)) for _ in range(rng.randint(0, max_transitions))
    ]
    return WeightedAutomaton(alg, states, initial, accepting, transitions)


def random_matrix(rng: random.Random, alg: KleeneAlgebra, n: int, weight=None, p_zero: float = 0.4):
    weight = weight or (lambda: random_weight(rng, alg))
    return [[alg.zero if rng.random() < p_zero else weight() for _ in range(n)] for _ in range(n)]


def bench_automaton(rng: random.Random, nfeatures: int, n: int, ntrans: int | None = None):
    """Tropical featured automaton for family-vs-product benchmarks: mostly
    unguarded transitions, the rest guarded by single literals."""
    model = random_model(rng, nfeatures)
    ntrans = ntrans if ntrans is not None else 2 * n
    states = [f"s{i}" for i in range(n)]
    transitions = []
    for i in range(n - 1):  # a backbone so that the target is reachable
        transitions.append((states[i], TRUE, Fraction(rng.randint(5, 9)), states[i + 1]))
    for _ in range(ntrans - (n - 1)):
        g = random_literal(rng, model) if rng.random() < 0.4 else TRUE
        transitions.append((rng.choice(states), g, Fraction(rng.randint(1, 9)), rng.choice(states)))
    return FeaturedWeightedAutomaton.from_guarded(model, TROP, states, [states[0]], [states[-1]], transitions)

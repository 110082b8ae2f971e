import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given

from conftest import seeds
from fwa.automata import FeaturedWeightedAutomaton, featured_reach_value, project, reach_value
from fwa.features import TRUE, And, Atom, FeatureModel, Not, Or
from fwa.fwalgo import (
    SymbolicDistanceTable,
    combine_update,
    featured_floyd_warshall,
    floyd_warshall,
    split_update,
)
from fwa.generate import random_featured_automaton, random_guard, random_model
from fwa.gplift import GuardedValue, canonicalize, constant, from_table
from fwa.kleene import INF, TROP

a, b = Atom("a"), Atom("b")
A1 = FeatureModel(["a"])
AB = FeatureModel(["a", "b"])
F = frozenset


def raw(model, pairs):
    """Guarded value with exactly the given blocks (no canonicalization)."""
    return GuardedValue(model, [(g, model.mask(g), v) for g, v in pairs])


class TestSplitCombine:
    def test_split_branch(self):
        f = split_update(constant(A1, INF), TRUE, a, Fr(2))
        assert f == canonicalize({a: Fr(2), Not(a): INF}, A1)

    def test_overwrite_branch(self):
        f = split_update(raw(A1, [(a, Fr(5)), (Not(a), INF)]), a, TRUE, Fr(2))
        assert f == canonicalize({a: Fr(2), Not(a): INF}, A1)
        assert [g for g, _, _ in f.blocks] == [Not(a), a]

    def test_split_then_combine(self):
        f = split_update(raw(AB, [(a, Fr(5)), (Not(a), Fr(2))]), a, b, Fr(2))
        assert f.table() == {F(): 2, F("b"): 2, F("a"): 5, F("ab"): 2}
        assert len(f) == 2
        merged = next(g for g, _, v in f.blocks if v == 2)
        assert merged == Or(Not(a), And(a, b))

    def test_precondition(self):
        with pytest.raises(AssertionError):
            split_update(raw(A1, [(a, Fr(1)), (Not(a), INF)]), a, TRUE, Fr(2))

    def test_combine(self):
        f = combine_update(raw(A1, [(a, Fr(2)), (Not(a), Fr(2))]), a)
        assert len(f) == 1 and f.blocks[0][0] == Or(Not(a), a)
        g = raw(A1, [(a, Fr(2)), (Not(a), Fr(3))])
        assert set(combine_update(g, a).blocks) == set(g.blocks)
        h = raw(AB, [(And(a, b), Fr(1)), (And(a, Not(b)), Fr(1)), (Not(a), Fr(3))])
        r = combine_update(h, And(a, b))
        assert r == canonicalize(h) and len(r) == 2

    @given(seeds)
    def test_split_semantics(self, seed):
        rng = random.Random(seed)
        m = random_model(rng, 3)
        f = from_table(m, {p: Fr(rng.randint(3, 6)) for p in m.products})
        g1, m1, y = rng.choice(f.blocks)
        g2 = random_guard(rng, m)
        if not m1 & m.mask(g2):
            return
        x = Fr(rng.randint(0, 2))
        r = split_update(f, g1, g2, x)
        assert len({v for _, _, v in r.blocks}) == len(r.blocks)
        hit = m1 & m.mask(g2)
        for i in range(len(m)):
            assert r.at(i) == (x if hit >> i & 1 else f.at(i))


class TestFloydWarshall:
    def test_running_example(self):
        F_ = FeaturedWeightedAutomaton.from_guarded(
            A1, TROP, ["s0", "s1"], ["s0"], ["s1"], [("s0", TRUE, Fr(5), "s1"), ("s0", a, Fr(2), "s1")]
        )
        assert featured_floyd_warshall(F_) == canonicalize({a: Fr(2), Not(a): Fr(5)}, A1)

    def test_no_transitions(self):
        F_ = FeaturedWeightedAutomaton.from_guarded(A1, TROP, ["s", "t"], ["s"], ["t"], [])
        assert featured_floyd_warshall(F_) == constant(A1, INF)

    def test_empty_path_base_case(self):
        F_ = FeaturedWeightedAutomaton.from_guarded(A1, TROP, ["s"], ["s"], ["s"], [])
        assert featured_floyd_warshall(F_) == constant(A1, Fr(0))
        assert featured_floyd_warshall(F_, strict_fig1=True) == constant(A1, INF)
        G = FeaturedWeightedAutomaton.from_guarded(A1, TROP, ["s"], ["s"], ["s"], [("s", a, Fr(3), "s")])
        assert featured_floyd_warshall(G, strict_fig1=True) == canonicalize({a: Fr(3), Not(a): INF}, A1)

    def test_loop_order(self):
        # s0 -> s3 -> s2 -> s1: nesting k innermost sees d(s0, s2) too late
        m = FeatureModel([])
        F_ = FeaturedWeightedAutomaton.from_guarded(
            m, TROP, ["s0", "s1", "s2", "s3"], ["s0"], ["s1"],
            [("s0", TRUE, Fr(1), "s3"), ("s3", TRUE, Fr(1), "s2"), ("s2", TRUE, Fr(1), "s1")],
        )
        assert featured_floyd_warshall(F_) == constant(m, Fr(3))
        assert featured_floyd_warshall(F_, loop_order="ijk") == constant(m, INF)
        with pytest.raises(ValueError):
            featured_floyd_warshall(F_, loop_order="jik")

    def test_rejects_bad_input(self):
        from fwa.kleene import BOOL

        with pytest.raises(TypeError):
            featured_floyd_warshall(FeaturedWeightedAutomaton.from_guarded(A1, BOOL, ["s"], [], [], []))
        with pytest.raises(ValueError):
            featured_floyd_warshall(
                FeaturedWeightedAutomaton.from_guarded(A1, TROP, ["s"], [], [], [("s", a, Fr(-1), "s")])
            )

    @given(seeds)
    def test_equivalence(self, seed):
        rng = random.Random(seed)
        m = random_model(rng, rng.randint(0, 4))
        F_ = random_featured_automaton(rng, TROP, m)
        assert featured_floyd_warshall(F_) == featured_reach_value(F_)

    @given(seeds)
    def test_invariants_during_relax(self, seed):
        rng = random.Random(seed)
        m = random_model(rng, rng.randint(0, 3))
        F_ = random_featured_automaton(rng, TROP, m, max_states=4)
        table = SymbolicDistanceTable.from_automaton(F_)
        n = table.n
        for k in range(n):
            for i in range(n):
                for j in range(n):
                    before = table.cell(i, j)
                    table.relax(i, j, k)
                    after = table.cell(i, j)
                    masks = [mk for _, mk, _ in after.blocks]
                    assert all(masks) and sum(masks) == m.full and len(set(masks)) == len(masks)
                    assert all(m.mask(g) == mk for g, mk, _ in after.blocks)
                    assert len({v for _, _, v in after.blocks}) == len(after.blocks)
                    assert all(after.at(p) <= before.at(p) for p in range(len(m)))

    @given(seeds)
    def test_scalar_baseline(self, seed):
        rng = random.Random(seed)
        m = random_model(rng, 2)
        F_ = random_featured_automaton(rng, TROP, m)
        for i in range(len(m)):
            A = project(F_, i)
            assert floyd_warshall(A) == reach_value(A)

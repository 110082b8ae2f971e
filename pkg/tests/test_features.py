import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fwa.features import (
    FALSE,
    TRUE,
    And,
    Atom,
    FeatureModel,
    GuardPartition,
    GuardSyntaxError,
    Not,
    Or,
    UnknownFeatureError,
    characteristic_guard,
    intersect_partitions,
    is_partition,
    parse_guard,
    render_guard,
    sat,
    simplify_mask,
)
from fwa.generate import random_guard, random_model

a, b, c = Atom("a"), Atom("b"), Atom("c")
AB = FeatureModel(["a", "b"])
A = FeatureModel(["a"])


def P(*names):
    return frozenset(names)


class TestParse:
    def test_and_not(self):
        assert parse_guard("a & !b", AB) == And(a, Not(b))

    def test_constants(self):
        assert parse_guard("true") == TRUE
        assert parse_guard(" false ") == FALSE

    def test_precedence(self):
        assert parse_guard("a | b & c") == Or(a, And(b, c))

    def test_left_assoc_and_parens(self):
        assert parse_guard("a & b & c") == And(And(a, b), c)
        assert parse_guard("a & (b | c)") == And(a, Or(b, c))
        assert parse_guard("!!a") == Not(Not(a))

    @pytest.mark.parametrize("text,pos", [("a &", 3), ("(a", 2), ("a b", 2), ("a $ b", 2), ("", 0)])
    def test_syntax_error_position(self, text, pos):
        with pytest.raises(GuardSyntaxError) as e:
            parse_guard(text)
        assert e.value.pos == pos

    def test_unknown_feature(self):
        with pytest.raises(UnknownFeatureError):
            parse_guard("a & z", AB)

    @given(st.integers(0, 2**31))
    def test_render_roundtrip(self, seed):
        rng = random.Random(seed)
        m = random_model(rng, 3)
        g = random_guard(rng, m, p_true=0.1)
        g2 = rng.choice([g, Not(g), And(g, random_guard(rng, m)), Or(random_guard(rng, m), g)])
        assert parse_guard(render_guard(g2), m) == g2


class TestSat:
    def test_examples(self):
        assert sat(TRUE, A) == {P(), P("a")}
        assert sat(a, AB) == {P("a"), P("a", "b")}
        assert sat(And(a, Not(a)), AB) == set()

    def test_explicit_products(self):
        m = FeatureModel(["a", "b"], [["a"], ["a", "b"]])
        assert sat(b, m) == {P("a", "b")}
        assert sat(Not(a), m) == set()

    def test_characteristic_guard(self):
        assert characteristic_guard({"a"}, AB) == And(a, Not(b))
        assert characteristic_guard(set(), A) == Not(a)
        assert characteristic_guard({"a", "b"}, AB) == And(a, b)
        with pytest.raises(ValueError):
            characteristic_guard({"b"}, FeatureModel(["a", "b"], [["a"]]))

    @given(st.integers(0, 2**31))
    def test_characteristic_guard_singleton(self, seed):
        m = random_model(random.Random(seed), 4)
        for p in m.products:
            assert sat(characteristic_guard(p, m), m) == {p}

    def test_model_errors(self):
        with pytest.raises(ValueError):
            FeatureModel(["a", "a"])
        with pytest.raises(ValueError):
            FeatureModel(["a"], [])
        with pytest.raises(ValueError):
            FeatureModel([f"f{i}" for i in range(21)])
        with pytest.raises(UnknownFeatureError):
            FeatureModel(["a"], [["b"]])


class TestPartitions:
    def test_is_partition(self):
        assert is_partition([a, Not(a)], A)
        assert not is_partition([a, b], AB)
        assert is_partition([TRUE], AB)
        assert not is_partition([a, Not(a), FALSE], A)  # empty block

    def test_intersections(self):
        p, _ = intersect_partitions(GuardPartition.of([TRUE], A), GuardPartition.of([a, Not(a)], A))
        assert [A.mask(g) for g in p.guards] == [A.mask(a), A.mask(Not(a))]
        p, blocks = intersect_partitions(
            GuardPartition.of([a, Not(a)], AB), GuardPartition.of([b, Not(b)], AB)
        )
        assert len(p) == 4 and is_partition(list(p.guards), AB)
        assert {(blk.left, blk.right) for blk in blocks} == {(0, 0), (0, 1), (1, 0), (1, 1)}
        p, _ = intersect_partitions(GuardPartition.of([a, Not(a)], A), GuardPartition.of([a, Not(a)], A))
        assert p.guards == (And(a, a), And(Not(a), Not(a)))

    @given(st.integers(0, 2**31))
    def test_intersection_is_partition_with_unique_factors(self, seed):
        from fwa.generate import random_guarded_value
        from fwa.kleene import TROP

        rng = random.Random(seed)
        m = random_model(rng, rng.randint(0, 4))
        p1 = random_guarded_value(rng, TROP, m).partition
        p2 = random_guarded_value(rng, TROP, m).partition
        p, blocks = intersect_partitions(p1, p2)
        assert is_partition(list(p.guards), m)
        for blk in blocks:
            assert blk.mask & p1.masks[blk.left] == blk.mask
            assert blk.mask & p2.masks[blk.right] == blk.mask
        for i in range(len(m)):
            assert sum(1 for mk in p.masks if mk >> i & 1) == 1


class TestSimplify:
    @given(st.integers(0, 2**31))
    def test_describe_is_exact(self, seed):
        rng = random.Random(seed)
        m = random_model(rng, rng.randint(0, 5))
        mask = rng.randrange(m.full + 1)
        assert m.mask(simplify_mask(m, mask)) == mask

    def test_examples(self):
        assert simplify_mask(AB, AB.full) == TRUE
        assert simplify_mask(AB, AB.mask(Or(a, And(Not(a), b)))) == Or(a, b)
        assert render_guard(simplify_mask(AB, AB.mask(And(a, Not(b))))) == "a & !b"

    def test_many_features_fallback(self):
        m = FeatureModel([f"f{i}" for i in range(13)], [[], ["f0"], ["f0", "f1"]])
        g = simplify_mask(m, 0b101)
        assert m.mask(g) == 0b101

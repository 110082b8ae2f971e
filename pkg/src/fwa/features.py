"""Feature models, feature guards and guard partitions.

Guard semantics are exact: every guard is evaluated against the explicit,
finite product set of a :class:`FeatureModel` and the result is kept as an
integer bit-set over product indices.  Formulas are only carried along for
display and for I/O.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_ALL_FEATURES = 20

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class GuardSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


class UnknownFeatureError(ValueError):
    pass


# --------------------------------------------------------------------------
# Guard formulas


class Guard:
    """Boolean expression over feature atoms."""

    __slots__ = ()

    def __and__(self, other: Guard) -> Guard:
        return And(self, other)

    def __or__(self, other: Guard) -> Guard:
        return Or(self, other)

    def __invert__(self) -> Guard:
        return Not(self)

    def __str__(self) -> str:
        return render_guard(self)


@dataclass(frozen=True, repr=False)
class Const(Guard):
    value: bool

    def __repr__(self):
        return f"Const({self.value})"


@dataclass(frozen=True, repr=False)
class Atom(Guard):
    name: str

    def __repr__(self):
        return f"Atom({self.name!r})"


@dataclass(frozen=True, repr=False)
class Not(Guard):
    arg: Guard

    def __repr__(self):
        return f"Not({self.arg!r})"


@dataclass(frozen=True, repr=False)
class And(Guard):
    left: Guard
    right: Guard

    def __repr__(self):
        return f"And({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Or(Guard):
    left: Guard
    right: Guard

    def __repr__(self):
        return f"Or({self.left!r}, {self.right!r})"


TRUE = Const(True)
FALSE = Const(False)

_PREC = {Or: 1, And: 2, Not: 3, Atom: 4, Const: 4}


def render_guard(g: Guard) -> str:
    """Render in the input grammar with minimal parentheses."""

    def go(node, parent_prec, right_operand):
        if isinstance(node, Const):
            return "true" if node.value else "false"
        if isinstance(node, Atom):
            return node.name
        prec = _PREC[type(node)]
        if isinstance(node, Not):
            s = "!" + go(node.arg, prec, False)
        else:
            op = " & " if isinstance(node, And) else " | "
            s = go(node.left, prec, False) + op + go(node.right, prec, True)
        # binary operators are left-associative
        if prec < parent_prec or (prec == parent_prec and right_operand):
            s = f"({s})"
        return s

    return go(g, 0, False)


def conjunction(gs: Iterable[Guard]) -> Guard:
    gs = list(gs)
    if not gs:
        return TRUE
    out = gs[0]
    for g in gs[1:]:
        out = And(out, g)
    return out


def disjunction(gs: Iterable[Guard]) -> Guard:
    gs = list(gs)
    if not gs:
        return FALSE
    out = gs[0]
    for g in gs[1:]:
        out = Or(out, g)
    return out


# --------------------------------------------------------------------------
# Parsing

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|([!&|()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise GuardSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(1) if m.group(1) else m.start(2)
        tokens.append((m.group(1) or m.group(2), start))
        pos = m.end()
    tokens.append((None, len(text)))
    return tokens


def parse_guard(text: str, model: FeatureModel | None = None) -> Guard:
    """Parse a guard expression.

    Grammar: identifiers, ``true``/``false``, ``!`` > ``&`` > ``|``,
    parentheses; binary operators are left-associative.  If ``model`` is
    given, every atom must name one of its features.
    """
    tokens = _tokenize(text)
    i = 0

    def peek():
        return tokens[i][0]

    def advance():
        nonlocal i
        tok = tokens[i]
        i += 1
        return tok

    def parse_or():
        node = parse_and()
        while peek() == "|":
            advance()
            node = Or(node, parse_and())
        return node

    def parse_and():
        node = parse_not()
        while peek() == "&":
            advance()
            node = And(node, parse_not())
        return node

    def parse_not():
        if peek() == "!":
            advance()
            return Not(parse_not())
        return parse_atom()

    def parse_atom():
        tok, pos = advance()
        if tok is None:
            raise GuardSyntaxError("unexpected end of input", text, pos)
        if tok == "(":
            node = parse_or()
            close, cpos = advance()
            if close != ")":
                raise GuardSyntaxError("expected ')'", text, cpos)
            return node
        if tok in ("true", "false"):
            return Const(tok == "true")
        if _IDENT.match(tok):
            if model is not None and tok not in model.feature_index:
                raise UnknownFeatureError(f"unknown feature {tok!r} in guard {text!r}")
            return Atom(tok)
        raise GuardSyntaxError(f"unexpected token {tok!r}", text, pos)

    node = parse_or()
    tok, pos = tokens[i]
    if tok is not None:
        raise GuardSyntaxError(f"unexpected token {tok!r}", text, pos)
    return node


# --------------------------------------------------------------------------
# Feature models


class FeatureModel:
    """Features ``N`` and a nonempty set of products ``px`` over them.

    Products are stored as bit-vectors over the feature ordering (bit ``j``
    set iff feature ``j`` is present) and sorted ascending; a product's
    position in that order is its index in guard bit-sets.
    """

    def __init__(self, features: Sequence[str], products: Iterable[Iterable[str]] | str = "all"):
        features = tuple(features)
        for f in features:
            if not isinstance(f, str) or not _IDENT.match(f) or f in ("true", "false"):
                raise ValueError(f"invalid feature name {f!r}")
        if len(set(features)) != len(features):
            raise ValueError("feature names must be distinct")
        self.features = features
        self.feature_index = {f: j for j, f in enumerate(features)}

        if isinstance(products, str):
            if products != "all":
                raise ValueError(f"products must be 'all' or a list, got {products!r}")
            if len(features) > MAX_ALL_FEATURES:
                raise ValueError(
                    f"products='all' supports at most {MAX_ALL_FEATURES} features, got {len(features)}"
                )
            bits = list(range(1 << len(features)))
        else:
            seen = set()
            for p in products:
                if isinstance(p, str):
                    raise TypeError("a product must be a collection of feature names")
                b = 0
                for f in p:
                    if f not in self.feature_index:
                        raise UnknownFeatureError(f"unknown feature {f!r} in product {sorted(p)}")
                    b |= 1 << self.feature_index[f]
                seen.add(b)
            bits = sorted(seen)
        if not bits:
            raise ValueError("the product set must be nonempty")
        self.product_bits = tuple(bits)
        self.bit_index = {b: i for i, b in enumerate(bits)}
        self.full = (1 << len(bits)) - 1
        self.is_complete = len(bits) == 1 << len(features)
        # atom masks: which products contain feature j
        self._atom = {
            f: sum(1 << i for i, b in enumerate(bits) if b >> j & 1)
            for f, j in self.feature_index.items()
        }

    def __repr__(self):
        return f"FeatureModel({list(self.features)!r}, {len(self.product_bits)} products)"

    def __eq__(self, other):
        return (
            isinstance(other, FeatureModel)
            and self.features == other.features
            and self.product_bits == other.product_bits
        )

    def __hash__(self):
        return hash((self.features, self.product_bits))

    def __len__(self):
        return len(self.product_bits)

    @property
    def products(self) -> tuple[frozenset, ...]:
        return tuple(self.product_of(i) for i in range(len(self.product_bits)))

    def product_of(self, index: int) -> frozenset:
        b = self.product_bits[index]
        return frozenset(f for f, j in self.feature_index.items() if b >> j & 1)

    def index(self, product: Iterable[str]) -> int:
        """Index of a product given as a collection of feature names."""
        b = 0
        for f in product:
            if f not in self.feature_index:
                raise UnknownFeatureError(f"unknown feature {f!r}")
            b |= 1 << self.feature_index[f]
        try:
            return self.bit_index[b]
        except KeyError:
            raise ValueError(f"{sorted(product)} is not a product of this model") from None

    def mask(self, g: Guard) -> int:
        """Satisfaction set of ``g`` as a product bit-set.

        Iterative, and memoized per node, since computed guards can be deep
        DAGs with heavy sharing.
        """
        memo: dict[int, int] = {}
        stack = [(g, False)]
        while stack:
            node, expanded = stack.pop()
            key = id(node)
            if key in memo:
                continue
            if isinstance(node, Const):
                memo[key] = self.full if node.value else 0
            elif isinstance(node, Atom):
                try:
                    memo[key] = self._atom[node.name]
                except KeyError:
                    raise UnknownFeatureError(f"unknown feature {node.name!r}") from None
            elif not expanded:
                stack.append((node, True))
                if isinstance(node, Not):
                    stack.append((node.arg, False))
                else:
                    stack.append((node.right, False))
                    stack.append((node.left, False))
            elif isinstance(node, Not):
                memo[key] = self.full & ~memo[id(node.arg)]
            elif isinstance(node, And):
                memo[key] = memo[id(node.left)] & memo[id(node.right)]
            else:
                memo[key] = memo[id(node.left)] | memo[id(node.right)]
        return memo[id(g)]

    def sat(self, g: Guard) -> frozenset:
        """The set of products satisfying ``g``."""
        return self.products_in(self.mask(g))

    def products_in(self, mask: int) -> frozenset:
        return frozenset(self.product_of(i) for i in iter_bits(mask))

    def characteristic_guard(self, product: Iterable[str]) -> Guard:
        product = frozenset(product)
        self.index(product)  # must be a product of the model
        lits = [Atom(f) if f in product else Not(Atom(f)) for f in self.features]
        return conjunction(lits)

    def describe(self, mask: int) -> Guard:
        """A compact guard whose satisfaction set is ``mask``."""
        return simplify_mask(self, mask)


def iter_bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def sat(g: Guard, model: FeatureModel) -> frozenset:
    return model.sat(g)


def characteristic_guard(p: Iterable[str], model: FeatureModel) -> Guard:
    return model.characteristic_guard(p)


# --------------------------------------------------------------------------
# Guard partitions


@dataclass(frozen=True)
class GuardPartition:
    """A set of guards with nonempty, pairwise disjoint satisfaction sets
    covering all products.  ``masks[i]`` is the satisfaction set of
    ``guards[i]``."""

    model: FeatureModel
    guards: tuple
    masks: tuple

    @classmethod
    def of(cls, gs: Sequence[Guard], model: FeatureModel) -> GuardPartition:
        gs = tuple(gs)
        masks = tuple(model.mask(g) for g in gs)
        if not _partition_masks(masks, model.full):
            raise ValueError("guards do not form a partition of the products")
        return cls(model, gs, masks)

    def __len__(self):
        return len(self.guards)

    def __iter__(self):
        return iter(zip(self.guards, self.masks))

    def block_of(self, product_index: int) -> int:
        bit = 1 << product_index
        for i, m in enumerate(self.masks):
            if m & bit:
                return i
        raise ValueError("product not covered")  # unreachable for valid partitions


def _partition_masks(masks: Sequence[int], full: int) -> bool:
    seen = 0
    for m in masks:
        if m == 0 or m & seen:
            return False
        seen |= m
    return seen == full


def is_partition(gs: Sequence[Guard], model: FeatureModel) -> bool:
    return _partition_masks([model.mask(g) for g in gs], model.full)


@dataclass(frozen=True)
class IntersectionBlock:
    guard: Guard
    mask: int
    left: int  # index of the factor in the first partition
    right: int  # index of the factor in the second partition


def intersect_masks(m1: Sequence[int], m2: Sequence[int]):
    """Yield ``(i, j, m1[i] & m2[j])`` for every nonempty intersection."""
    for i, a in enumerate(m1):
        rest = a
        for j, b in enumerate(m2):
            c = a & b
            if c:
                yield i, j, c
                rest &= ~c
                if not rest:
                    break


def intersect_partitions(p1: GuardPartition, p2: GuardPartition) -> tuple[GuardPartition, tuple]:
    """Intersection ``P1 ∧ P2`` plus, per block, its unique factor pair."""
    blocks = [
        IntersectionBlock(And(p1.guards[i], p2.guards[j]), m, i, j)
        for i, j, m in intersect_masks(p1.masks, p2.masks)
    ]
    part = GuardPartition(p1.model, tuple(b.guard for b in blocks), tuple(b.mask for b in blocks))
    return part, tuple(blocks)


# --------------------------------------------------------------------------
# Display simplification

_QM_LIMIT = 12


def simplify_mask(model: FeatureModel, mask: int) -> Guard:
    """Sum-of-products guard for a product set.

    Uses Quine-McCluskey prime implicants (non-products are don't-cares)
    with a greedy cover; for more than ``_QM_LIMIT`` features it falls back
    to a disjunction of characteristic guards.
    """
    if mask == model.full:
        return TRUE
    if mask == 0:
        return FALSE
    nf = len(model.features)
    on = {model.product_bits[i] for i in iter_bits(mask)}
    if nf > _QM_LIMIT:
        return disjunction(model.characteristic_guard(model.product_of(i)) for i in iter_bits(mask))
    off = set(model.product_bits) - on
    # a cube is (value, care) with care bits fixed to value
    full_care = (1 << nf) - 1

    level = {(b, full_care) for b in range(1 << nf) if b not in off}
    primes = set()
    while level:
        merged = set()
        nxt = set()
        by_care: dict[int, set] = {}
        for v, c in level:
            by_care.setdefault(c, set()).add(v)
        for c, vals in by_care.items():
            for v in vals:
                for j in range(nf):
                    bit = 1 << j
                    if c & bit and not v & bit and (v | bit) in vals:
                        nxt.add((v, c & ~bit))
                        merged.add((v, c))
                        merged.add((v | bit, c))
        primes |= level - merged
        level = nxt
    primes = list(primes)

    def covers(cube, b):
        return (b & cube[1]) == cube[0]

    remaining = set(on)
    chosen = []
    while remaining:
        best = max(
            primes,
            key=lambda p: (sum(1 for b in remaining if covers(p, b)), -bin(p[1]).count("1"), -p[1], -p[0]),
        )
        chosen.append(best)
        remaining = {b for b in remaining if not covers(best, b)}

    def cube_guard(cube):
        v, c = cube
        lits = []
        for j, f in enumerate(model.features):
            if c >> j & 1:
                lits.append(Atom(f) if v >> j & 1 else Not(Atom(f)))
        return conjunction(lits)

    chosen.sort(key=lambda p: _cube_order(p, nf))
    return disjunction(cube_guard(c) for c in chosen)


def _cube_order(cube, nf):
    v, c = cube
    # positive literals first, in feature order
    return tuple(2 if not c >> j & 1 else (0 if v >> j & 1 else 1) for j in range(nf))


def all_products(features: Sequence[str]) -> list[frozenset]:
    return [frozenset(c) for r in range(len(features) + 1) for c in itertools.combinations(features, r)]

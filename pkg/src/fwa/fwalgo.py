"""Symbolic Floyd-Warshall over tropically weighted featured automata.

Every distance cell is a guarded value that is updated in place by
``split`` (refine a block where a shorter path exists) and ``combine``
(merge the updated block with the one block that may now share its value).
"""

from __future__ import annotations

from fractions import Fraction

from .automata import FeaturedWeightedAutomaton, WeightedAutomaton
from .features import TRUE, And, FeatureModel, Guard, Not, Or, lowest_bit
from .gplift import GuardedValue
from .kleene import INF, TROP


class _Cell:
    """Mutable guarded value: list of ``[guard, mask, value]``."""

    __slots__ = ("blocks",)

    def __init__(self, blocks):
        self.blocks = [list(b) for b in blocks]

    def find(self, bit_index: int) -> int:
        bit = 1 << bit_index
        for idx, b in enumerate(self.blocks):
            if b[1] & bit:
                return idx
        raise AssertionError("cell does not cover the product")

    def freeze(self, model) -> GuardedValue:
        return GuardedValue(model, sorted((tuple(b) for b in self.blocks), key=lambda b: lowest_bit(b[1])))


def _combine(cell: _Cell, idx: int) -> None:
    g, m, x = cell.blocks[idx]
    for jdx, other in enumerate(cell.blocks):
        if jdx != idx and other[2] == x:
            merged = [Or(other[0], g), other[1] | m, x]
            for k in sorted((idx, jdx), reverse=True):
                del cell.blocks[k]
            cell.blocks.append(merged)
            break
    assert len({b[2] for b in cell.blocks}) == len(cell.blocks), "more than one duplicate after update"


def _split(cell: _Cell, idx: int, g2: Guard, m2: int, x) -> None:
    g1, m1, y = cell.blocks[idx]
    m12 = m1 & m2
    assert m12 and x < y, "split precondition violated"
    if m12 == m1:
        cell.blocks[idx][2] = x
        _combine(cell, idx)
    else:
        cell.blocks[idx] = [And(g1, Not(g2)), m1 & ~m2, y]
        cell.blocks.append([And(g1, g2), m12, x])
        _combine(cell, len(cell.blocks) - 1)


def _lower(cell: _Cell, g2: Guard, m2: int, x) -> None:
    """Lower ``cell`` to ``x`` wherever it is larger on ``m2``; blocks are
    snapshotted and looked up again after each update."""
    for m1 in [b[1] for b in cell.blocks]:
        if not m1 & m2:
            continue
        idx = cell.find(lowest_bit(m1))
        blk = cell.blocks[idx]
        if blk[1] & m2 and blk[2] > x:
            _split(cell, idx, g2, m2, x)


def split_update(f: GuardedValue, g1: Guard, g2: Guard, x) -> GuardedValue:
    """Set ``f`` to ``x`` on ``g1 & g2`` (``g1`` a block of ``f``), then
    combine."""
    model = f.model
    cell = _Cell(f.blocks)
    m1 = model.mask(g1)
    idx = next(i for i, b in enumerate(cell.blocks) if b[1] == m1)
    _split(cell, idx, g2, model.mask(g2), x)
    return cell.freeze(model)


def combine_update(f: GuardedValue, g: Guard) -> GuardedValue:
    """Merge the block ``g`` with the first other block of equal value."""
    model = f.model
    cell = _Cell(f.blocks)
    m = model.mask(g)
    idx = next(i for i, b in enumerate(cell.blocks) if b[1] == m)
    _combine(cell, idx)
    return cell.freeze(model)


def _guarded_transitions(F: FeaturedWeightedAutomaton):
    model = F.model
    if F.guarded:
        for s, g, w, t in F.guarded:
            yield s, g, model.mask(g), w, t
        return
    for s, label, t in F.transitions:
        for g, m, w in label.blocks:
            if w != INF:
                yield s, g, m, w, t


class SymbolicDistanceTable:
    """``D[i][j]``: per-product shortest distance from state i to state j."""

    def __init__(self, model: FeatureModel, n: int):
        self.model = model
        self.n = n
        self.D = [[_Cell([(TRUE, model.full, INF)]) for _ in range(n)] for _ in range(n)]

    @classmethod
    def from_automaton(cls, F: FeaturedWeightedAutomaton, base_case: bool = True) -> SymbolicDistanceTable:
        if F.algebra is not TROP:
            raise TypeError("symbolic Floyd-Warshall needs a tropical automaton")
        table = cls(F.model, len(F.states))
        pos = {s: i for i, s in enumerate(F.states)}
        if base_case:
            for i in range(table.n):
                table.D[i][i] = _Cell([(TRUE, F.model.full, Fraction(0))])
        for s, g, m, w, t in _guarded_transitions(F):
            if w == INF:
                continue
            if w < 0:
                raise ValueError("weights must be nonnegative")
            _lower(table.D[pos[s]][pos[t]], g, m, w)
        return table

    def cell(self, i: int, j: int) -> GuardedValue:
        return self.D[i][j].freeze(self.model)

    def relax(self, i: int, j: int, k: int) -> None:
        """Lower ``D[i][j]`` by ``D[i][k] + D[k][j]`` where that is shorter."""
        left = [tuple(b) for b in self.D[i][k].blocks]
        right = [tuple(b) for b in self.D[k][j].blocks]
        target = self.D[i][j]
        for g2, m2, v2 in left:
            if v2 == INF:
                continue
            for g3, m3, v3 in right:
                m23 = m2 & m3
                if not m23 or v3 == INF:
                    continue
                _lower(target, And(g2, g3), m23, v2 + v3)

    def close(self, loop_order: str = "kij") -> None:
        """Run all relaxations; ``"kij"`` keeps the intermediate state in the
        outermost loop, ``"ijk"`` nests it innermost."""
        rng = range(self.n)
        if loop_order == "kij":
            for k in rng:
                for i in rng:
                    for j in rng:
                        self.relax(i, j, k)
        elif loop_order == "ijk":
            for i in rng:
                for j in rng:
                    for k in rng:
                        self.relax(i, j, k)
        else:
            raise ValueError(f"unknown loop order {loop_order!r}")

    def extract(self, sources, targets) -> GuardedValue:
        """Pointwise minimum over ``D[i][j]`` for i in sources, j in targets."""
        f = _Cell([(TRUE, self.model.full, INF)])
        for i in sources:
            for j in targets:
                for g2, m2, v2 in [tuple(b) for b in self.D[i][j].blocks]:
                    _lower(f, g2, m2, v2)
        return f.freeze(self.model)


def featured_floyd_warshall(
    F: FeaturedWeightedAutomaton, strict_fig1: bool = False, loop_order: str = "kij"
) -> GuardedValue:
    """Minimum reachability value for every product at once.

    ``strict_fig1`` drops the empty-path base case, so a state only reaches
    itself through a cycle.
    """
    table = SymbolicDistanceTable.from_automaton(F, base_case=not strict_fig1)
    table.close(loop_order)
    pos = {s: i for i, s in enumerate(F.states)}
    return table.extract([pos[s] for s in F.states if s in F.initial], [pos[s] for s in F.states if s in F.accepting])


def floyd_warshall(A: WeightedAutomaton):
    """Scalar shortest accepting-path value of a tropical automaton (the
    per-product baseline)."""
    if A.algebra is not TROP:
        raise TypeError("Floyd-Warshall needs a tropical automaton")
    n = len(A.states)
    pos = {s: i for i, s in enumerate(A.states)}
    D = [[INF] * n for _ in range(n)]
    for i in range(n):
        D[i][i] = Fraction(0)
    for s, w, t in A.transitions:
        i, j = pos[s], pos[t]
        if w < D[i][j]:
            D[i][j] = w
    for k in range(n):
        Dk = D[k]
        for i in range(n):
            dik = D[i][k]
            if dik == INF:
                continue
            Di = D[i]
            for j in range(n):
                d = dik + Dk[j]
                if d < Di[j]:
                    Di[j] = d
    return min(
        (D[pos[s]][pos[t]] for s in A.states if s in A.initial for t in A.states if t in A.accepting),
        default=INF,
    )

"""The energy semiring of piecewise-linear energy functions and its
ω-semimodule of threshold indicators.

An energy function maps an energy level ``x >= 0`` to the level after a
transition, or to ⊥ (``None``) when the transition is disabled.  Every
function here satisfies ``f(y) - f(x) >= y - x`` for ``x <= y``; in the
piecewise-linear normal form that means slopes ``>= 1`` and upward jumps.

Product order: ``ef_compose(f, g)`` applies ``f`` first.  The action of a
function on an indicator is ``(f . v)(x) = v(f(x))``.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Optional

from .kleene import INF, OmegaAlgebra, parse_rational, render_rational

BOT = None  # ⊥ as an energy value

INF_FORMULA = "inf"


class Piece(NamedTuple):
    """Affine piece ``offset + slope * x`` (both ``None`` for constant ∞)
    starting at ``start``, which it contains iff ``closed``."""

    start: Fraction
    closed: bool
    offset: Optional[Fraction]
    slope: Optional[Fraction]

    @property
    def formula(self):
        return INF_FORMULA if self.slope is None else (self.offset, self.slope)


def _feval(formula, x):
    if formula == INF_FORMULA or x == INF:
        return INF
    off, slope = formula
    return off + slope * x


# Cells: ("pt", x, value) or ("op", a, b, formula), b = None for +∞.
# A function's cells alternate points and open intervals and end in an open
# interval reaching +∞.


def _cells_from_pieces(pieces):
    cells = []
    for i, p in enumerate(pieces):
        nxt = pieces[i + 1] if i + 1 < len(pieces) else None
        f = p.formula
        if p.closed:
            cells.append(("pt", p.start, _feval(f, p.start)))
        end = nxt.start if nxt is not None else None
        if end is None or end > p.start:
            cells.append(("op", p.start, end, f))
            if nxt is not None and not nxt.closed:
                cells.append(("pt", end, _feval(f, end)))
    return cells


def _point_formula(x, v):
    return (v - x, Fraction(1))


def _pieces_from_cells(cells):
    """Canonical pieces: minimal breakpoints, points attach to the left."""
    # drop a leading undefined region
    k = 0
    while k < len(cells) and _undefined(cells[k]):
        k += 1
    cells = cells[k:]
    if not cells:
        return ()
    for c in cells:
        if _undefined(c):
            raise ValueError("energy function domain is not upward closed")

    # merge: Open(a,b,F) Point(b, F(b)) Open(b,c,F) -> Open(a,c,F)
    merged = []
    for c in cells:
        if (
            c[0] == "op"
            and len(merged) >= 2
            and merged[-1][0] == "pt"
            and merged[-2][0] == "op"
            and merged[-2][3] == c[3]
            and _feval(c[3], merged[-1][1]) == merged[-1][2]
        ):
            prev = merged[-2]
            merged.pop()
            merged[-1] = ("op", prev[1], c[2], c[3])
        else:
            merged.append(c)

    pieces = []
    i = 0
    while i < len(merged):
        c = merged[i]
        if c[0] == "pt":
            x, v = c[1], c[2]
            if i > 0 and merged[i - 1][0] == "op" and _feval(merged[i - 1][3], x) == v:
                i += 1
                continue
            nxt = merged[i + 1]
            if _feval(nxt[3], x) == v:
                pieces.append(_piece(x, True, nxt[3]))
                i += 2
            else:
                pieces.append(_piece(x, True, _point_formula(x, v)))
                i += 1
        else:
            pieces.append(_piece(c[1], False, c[3]))
            i += 1
    return tuple(pieces)


def _piece(start, closed, formula):
    if formula == INF_FORMULA:
        return Piece(start, closed, None, None)
    return Piece(start, closed, formula[0], formula[1])


def _undefined(cell):
    return cell[2] is BOT if cell[0] == "pt" else cell[3] is None


def _check_cells(cells):
    """Raise unless the cells describe a valid energy function."""
    for c in cells:
        if c[0] == "op" and c[3] != INF_FORMULA:
            off, slope = c[3]
            if slope < 1:
                raise ValueError(f"slope {slope} < 1")
        if c[0] == "pt" and c[2] is not INF and c[2] < 0:
            raise ValueError(f"negative value at {c[1]}")
    for i, c in enumerate(cells):
        if c[0] == "op":
            lo = _feval(c[3], c[1])
            if lo != INF and lo < 0:
                raise ValueError(f"negative values near {c[1]}")
            continue
        x, v = c[1], c[2]
        if i > 0:
            left = _feval(cells[i - 1][3], x)
            if v < left:
                raise ValueError(f"downward jump at {x}")
        right = _feval(cells[i + 1][3], x)
        if v > right:
            raise ValueError(f"downward jump right of {x}")


def _mid(a, b):
    return a + 1 if b is None else (a + b) / 2


@dataclass(frozen=True)
class EnergyFunction:
    """Rational piecewise-linear energy function in normal form.

    ``pieces == ()`` is the nowhere-defined function ⊥.
    """

    pieces: tuple = ()

    @classmethod
    def from_pieces(cls, pieces) -> EnergyFunction:
        """Validate and normalize a list of :class:`Piece` (or 4-tuples)."""
        pieces = [Piece(Fraction(p[0]), bool(p[1]), *_norm_formula(p[2], p[3])) for p in pieces]
        if not pieces:
            return BOTTOM
        if pieces[0].start < 0:
            raise ValueError("lower bound must be nonnegative")
        for p, q in zip(pieces, pieces[1:]):
            if q.start < p.start or (q.start == p.start and not (p.closed and not q.closed)):
                raise ValueError("piece starts must increase (a point piece needs closed/open)")
        cells = _cells_from_pieces(pieces)
        _check_cells(cells)
        return cls(_pieces_from_cells(cells))

    @cached_property
    def cells(self):
        return _cells_from_pieces(self.pieces)

    @cached_property
    def _keys(self):
        # sort keys: point x -> (x, 0); open (a, b) -> (a, 1)
        return [(c[1], 0 if c[0] == "pt" else 1) for c in self.cells]

    @property
    def is_bottom(self) -> bool:
        return not self.pieces

    @property
    def lb(self):
        return self.pieces[0].start if self.pieces else None

    @property
    def lb_closed(self) -> bool:
        return bool(self.pieces) and self.pieces[0].closed

    @property
    def breakpoints(self):
        return sorted({p.start for p in self.pieces})

    def cell_at(self, x):
        """The cell containing finite ``x``, or None below the domain."""
        j = bisect_right(self._keys, (x, 0)) - 1
        if j < 0:
            return None
        c = self.cells[j]
        if c[0] == "pt":
            return c if c[1] == x else None
        return c  # open cell with a < x (x beyond b impossible by construction)

    def __call__(self, x):
        return ef_apply(self, x)

    def __repr__(self):
        return f"EnergyFunction<{render_energy(self)}>"


def _norm_formula(offset, slope):
    if slope is None or slope == INF_FORMULA:
        return None, None
    return Fraction(offset), Fraction(slope)


BOTTOM = EnergyFunction(())
ID = EnergyFunction((Piece(Fraction(0), True, Fraction(0), Fraction(1)),))


def update(lb, delta) -> EnergyFunction:
    """``x -> x + delta`` for ``x >= lb``; ``lb`` is raised to ``-delta``
    when ``lb + delta < 0`` (and to 0 when negative)."""
    lb, delta = max(Fraction(lb), Fraction(0)), Fraction(delta)
    if lb + delta < 0:
        lb = -delta
    return EnergyFunction((Piece(lb, True, delta, Fraction(1)),))


def update_needs_raise(lb, delta) -> bool:
    return max(Fraction(lb), Fraction(0)) + Fraction(delta) < 0


def const_inf(lb=0, closed=True) -> EnergyFunction:
    return EnergyFunction((Piece(Fraction(lb), closed, None, None),))


# --------------------------------------------------------------------------
# Semiring operations


def ef_apply(f: EnergyFunction, x):
    if x is BOT or f.is_bottom:
        return BOT
    if x == INF:
        return INF
    c = f.cell_at(x)
    if c is None:
        return BOT
    if c[0] == "pt":
        return c[2]
    return _feval(c[3], x)


def _build(bps, start_closed, point_value, open_formula):
    cells = []
    for i, b in enumerate(bps):
        if i > 0 or start_closed:
            cells.append(("pt", b, point_value(b)))
        nxt = bps[i + 1] if i + 1 < len(bps) else None
        cells.append(("op", b, nxt, open_formula(b, nxt)))
    return EnergyFunction(_pieces_from_cells(cells))


def _formula_at(f: EnergyFunction, x):
    """Formula of the open cell containing non-breakpoint ``x``."""
    c = f.cell_at(x)
    if c is None:
        return None
    assert c[0] == "op"
    return c[3]


def ef_max(f: EnergyFunction, g: EnergyFunction) -> EnergyFunction:
    """Pointwise maximum, ⊥ being the bottom element."""
    if f.is_bottom:
        return g
    if g.is_bottom:
        return f
    if f == g:
        return f
    bps = set(f.breakpoints) | set(g.breakpoints)
    ordered = sorted(bps)
    # crossings of the two affine descriptions inside elementary intervals
    for i, a in enumerate(ordered):
        b = ordered[i + 1] if i + 1 < len(ordered) else None
        m = _mid(a, b)
        F, G = _formula_at(f, m), _formula_at(g, m)
        if F is None or G is None or F == INF_FORMULA or G == INF_FORMULA or F[1] == G[1]:
            continue
        x = (G[0] - F[0]) / (F[1] - G[1])
        if x > a and (b is None or x < b):
            bps.add(x)
    ordered = sorted(bps)
    lo = min(f.lb, g.lb)
    closed = (f.lb == lo and f.lb_closed) or (g.lb == lo and g.lb_closed)
    ordered = [x for x in ordered if x >= lo]

    def point_value(x):
        return _vmax(ef_apply(f, x), ef_apply(g, x))

    def open_formula(a, b):
        m = _mid(a, b)
        F, G = _formula_at(f, m), _formula_at(g, m)
        if F is None:
            return G
        if G is None:
            return F
        return F if _feval(F, m) >= _feval(G, m) else G

    return _build(ordered, closed, point_value, open_formula)


def _vmax(x, y):
    if x is BOT:
        return y
    if y is BOT:
        return x
    return x if x >= y else y


def ef_compose(f: EnergyFunction, g: EnergyFunction) -> EnergyFunction:
    """Semiring product: ``x -> g(f(x))`` (apply ``f`` first)."""
    if f.is_bottom or g.is_bottom:
        return BOTTOM
    bps = set(f.breakpoints)
    gbps = g.breakpoints
    for c in f.cells:
        if c[0] != "op" or c[3] == INF_FORMULA:
            continue
        a, b, (off, slope) = c[1], c[2], c[3]
        for t in gbps:
            x = (t - off) / slope
            if x > a and (b is None or x < b):
                bps.add(x)
    ordered = sorted(bps)

    def point_value(x):
        return ef_apply(g, ef_apply(f, x))

    def open_formula(a, b):
        m = _mid(a, b)
        F = _formula_at(f, m)
        if F is None:
            return None
        if F == INF_FORMULA:
            return INF_FORMULA
        G = _formula_at(g, _feval(F, m))
        if G is None or G == INF_FORMULA:
            return G
        return (G[0] + G[1] * F[0], G[1] * F[1])

    return _build(ordered, f.lb_closed, point_value, open_formula)


def _first_at_least(f: EnergyFunction, alpha, beta, strict: bool):
    """Least point of ``{x in dom f : f(x) >= alpha*x + beta}`` (``>`` if
    ``strict``) as ``(t, closed)``, or None.  Relies on ``f(x) - alpha*x``
    being nondecreasing, which holds for ``alpha`` in {0, 1}."""

    def ok(v, x):
        rhs = alpha * x + beta
        return v > rhs if strict else v >= rhs

    for c in f.cells:
        if c[0] == "pt":
            if ok(c[2], c[1]):
                return c[1], True
            continue
        a, b, F = c[1], c[2], c[3]
        if F == INF_FORMULA:
            return a, False
        off, slope = F
        k = slope - alpha  # (slope - alpha) x  vs  beta - off
        rhs = beta - off
        if k == 0:
            if (0 > rhs) if strict else (0 >= rhs):
                return a, False
            continue
        r = rhs / k
        if r <= a:
            return a, False
        if b is None or r < b:
            return r, not strict
    return None


def ef_star(f: EnergyFunction) -> EnergyFunction:
    """``f*(x) = ∞`` where ``f(x) > x``, ``x`` elsewhere.

    When ``f(x) > x`` the gains ``f^(n+1)(x) - f^n(x)`` never decrease, so
    the iterates diverge; otherwise the supremum is the ``f^0`` term.
    """
    hit = _first_at_least(f, 1, 0, strict=True)
    zero = Fraction(0)
    if hit is None:
        return ID
    t, closed = hit
    if t == 0 and closed:
        return const_inf(0)
    return EnergyFunction.from_pieces([(zero, True, zero, 1), (t, closed, None, None)])


# --------------------------------------------------------------------------
# The semimodule of ∞-continuous indicators


@dataclass(frozen=True)
class OmegaIndicator:
    """Up-closed indicator: true iff ``x >= threshold`` (``x > threshold``
    when not ``closed``); ``threshold is None`` is constant false.  ⊥ maps
    to false and ∞ to true unless constant false."""

    threshold: Optional[Fraction] = None
    closed: bool = False

    def __post_init__(self):
        if self.threshold is None and self.closed:
            object.__setattr__(self, "closed", False)

    @property
    def is_false(self) -> bool:
        return self.threshold is None

    def __call__(self, x) -> bool:
        if x is BOT or self.threshold is None:
            return False
        if x == INF:
            return True
        return x >= self.threshold if self.closed else x > self.threshold

    def __repr__(self):
        return f"OmegaIndicator<{render_indicator(self)}>"


V_FALSE = OmegaIndicator()
V_TRUE = OmegaIndicator(Fraction(0), True)


def threshold(t, closed=True) -> OmegaIndicator:
    return OmegaIndicator(Fraction(t), closed)


def ef_omega(f: EnergyFunction) -> OmegaIndicator:
    """True exactly where ``f(x) >= x`` (finite ``x`` in the domain)."""
    hit = _first_at_least(f, 1, 0, strict=False)
    return V_FALSE if hit is None else OmegaIndicator(*hit)


def v_join(u: OmegaIndicator, v: OmegaIndicator) -> OmegaIndicator:
    if u.is_false:
        return v
    if v.is_false:
        return u
    if u.threshold < v.threshold:
        return u
    if v.threshold < u.threshold:
        return v
    return OmegaIndicator(u.threshold, u.closed or v.closed)


def v_act(f: EnergyFunction, v: OmegaIndicator) -> OmegaIndicator:
    """``x -> v(f(x))``."""
    if v.is_false or f.is_bottom:
        return V_FALSE
    hit = _first_at_least(f, 0, v.threshold, strict=not v.closed)
    return V_FALSE if hit is None else OmegaIndicator(*hit)


# --------------------------------------------------------------------------
# Rendering and payloads


def _render_formula(off, slope):
    if slope == 1:
        lin = "x"
    else:
        lin = f"{render_rational(slope)}*x"
    if off == 0:
        return lin
    sign = "+" if off > 0 else "-"
    return f"{lin}{sign}{render_rational(abs(off))}"


def render_energy(f: EnergyFunction) -> str:
    if f.is_bottom:
        return "bot"
    if f == ID:
        return "id"
    parts = []
    for i, p in enumerate(f.pieces):
        nxt = f.pieces[i + 1] if i + 1 < len(f.pieces) else None
        lo = ("[" if p.closed else "(") + render_rational(p.start)
        if nxt is None:
            hi = "inf)"
        elif nxt.start == p.start:
            hi = render_rational(p.start) + "]"
        else:
            hi = render_rational(nxt.start) + (")" if nxt.closed else "]")
        body = "inf" if p.slope is None else _render_formula(p.offset, p.slope)
        parts.append(f"{body} on {lo},{hi}")
    return "; ".join(parts)


def render_indicator(v: OmegaIndicator) -> str:
    if v.is_false:
        return "false"
    if v == V_TRUE:
        return "true"
    op = ">=" if v.closed else ">"
    return f"x{op}{render_rational(v.threshold)}"


def energy_to_json(f: EnergyFunction):
    if f.is_bottom:
        return {"kind": "pwl", "pieces": []}
    if len(f.pieces) == 1 and f.pieces[0].closed and f.pieces[0].slope == 1:
        p = f.pieces[0]
        return {"kind": "update", "lb": render_rational(p.start), "delta": render_rational(p.offset)}
    out = []
    for p in f.pieces:
        d = {"start": render_rational(p.start), "closed": p.closed}
        if p.slope is None:
            d["inf"] = True
        else:
            d["offset"] = render_rational(p.offset)
            d["slope"] = render_rational(p.slope)
        out.append(d)
    return {"kind": "pwl", "lb": render_rational(f.lb), "pieces": out}


def energy_from_json(payload) -> EnergyFunction:
    if not isinstance(payload, dict) or "kind" not in payload:
        raise ValueError(f"energy weight must be an object with 'kind', got {payload!r}")
    kind = payload["kind"]
    if kind == "update":
        return update(parse_rational(payload["lb"]), parse_rational(payload["delta"]))
    if kind == "id":
        return ID
    if kind in ("bot", "bottom"):
        return BOTTOM
    if kind == "pwl":
        pieces = []
        for d in payload.get("pieces", []):
            start = parse_rational(d["start"])
            closed = bool(d.get("closed", True))
            if d.get("inf"):
                pieces.append((start, closed, None, None))
            else:
                pieces.append((start, closed, parse_rational(d["offset"]), parse_rational(d["slope"])))
        f = EnergyFunction.from_pieces(pieces)
        if "lb" in payload and pieces and parse_rational(payload["lb"]) != pieces[0][0]:
            raise ValueError("'lb' disagrees with the first piece's start")
        return f
    raise ValueError(f"unknown energy weight kind {kind!r}")


def indicator_to_json(v: OmegaIndicator):
    if v.is_false:
        return {"kind": "false"}
    return {"kind": "threshold", "t": render_rational(v.threshold), "closed": v.closed}


class EnergyAlgebra(OmegaAlgebra):
    """Energy functions with max and composition, paired with indicators."""

    name = "energy"
    zero = BOTTOM
    one = ID
    vzero = V_FALSE

    def plus(self, x, y):
        return ef_max(x, y)

    def times(self, x, y):
        return ef_compose(x, y)

    def star(self, x):
        return ef_star(x)

    def vplus(self, u, v):
        return v_join(u, v)

    def act(self, x, v):
        return v_act(x, v)

    def omega(self, x):
        return ef_omega(x)

    def render(self, x):
        return render_energy(x)

    def vrender(self, v):
        return render_indicator(v)

    def parse(self, payload):
        return energy_from_json(payload)

    def to_json(self, x):
        return energy_to_json(x)


ENERGY = EnergyAlgebra()

"""Independent oracles: direct iteration and run simulation."""

from fractions import Fraction

from fwa.energy import BOT
from fwa.kleene import INF

ITERATION_CAP = 64
OMEGA_CAP = 100_000


def sample_points(f, extra=()):
    """Grid 0..10 step 1/2 plus every breakpoint and breakpoint ± 1/2."""
    pts = {Fraction(k, 2) for k in range(21)}
    for b in f.breakpoints:
        pts |= {b, b + Fraction(1, 2), b - Fraction(1, 2)}
    pts |= set(extra)
    return sorted(p for p in pts if p >= 0)


def star_by_iteration(f, x):
    """sup_n f^n(x) by iteration; once the value grows, gains never shrink
    (f(y) - f(x) >= y - x), so the sequence diverges."""
    best, cur = x, x
    for _ in range(ITERATION_CAP):
        nxt = f(cur)
        if nxt is BOT:
            return best
        if nxt == INF:
            return INF
        if nxt > cur:
            return INF
        best = max(best, nxt)
        if nxt == cur:
            return best
        cur = nxt
    return best


def omega_by_iteration(f, x):
    """Iterate until undefined (false) or no longer decreasing (true)."""
    cur = x
    for _ in range(OMEGA_CAP):
        nxt = f(cur)
        if nxt is BOT:
            return False
        if nxt >= cur:
            return True
        cur = nxt
    raise AssertionError("omega iteration did not settle")


def simulate_energy(A, x0):
    """(reachable, buchi) for an automaton whose weights are updates with
    integer data, by exploring global states (s, x).

    Energies are truncated at ``cap``: a run of the truncated system is a
    real run (real energy is never lower), and ``cap`` leaves room for
    10 * n * (1 + max|delta|) of pumping above the largest lower bound.
    Buchi acceptance is a reachable accepting global state on a cycle.
    """
    x0 = Fraction(x0)
    edges = []
    max_delta, max_lb = 0, 0
    for s, f, t in A.transitions:
        if f.is_bottom:
            continue
        (p,) = f.pieces
        assert p.slope == 1 and p.closed
        edges.append((s, p.start, p.offset, t))
        max_delta = max(max_delta, abs(p.offset))
        max_lb = max(max_lb, p.start)
    cap = x0 + max_lb + 10 * len(A.states) * (1 + max_delta)

    def succ(node):
        s, x = node
        for src, lb, d, t in edges:
            if src == s and x >= lb:
                yield (t, min(x + d, cap))

    start = [(s, x0) for s in A.initial]
    seen = set(start)
    stack = list(start)
    while stack:
        v = stack.pop()
        for w in succ(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    reachable = any(s in A.accepting for s, _ in seen)

    def on_cycle(v):
        todo, visited = list(succ(v)), set()
        while todo:
            w = todo.pop()
            if w == v:
                return True
            if w in visited:
                continue
            visited.add(w)
            todo.extend(succ(w))
        return False

    buchi = any(s in A.accepting and on_cycle((s, x)) for s, x in seen)
    return reachable, buchi


def simple_path_value(A):
    """Sum over accepting paths that repeat no state (loops have weight 1
    in bounded semirings, so these suffice)."""
    alg = A.algebra
    out = {s: [] for s in A.states}
    for s, w, t in A.transitions:
        out[s].append((w, t))
    total = alg.zero

    def walk(s, weight, visited):
        nonlocal total
        if s in A.accepting:
            total = alg.plus(total, weight)
        for w, t in out[s]:
            if t not in visited:
                walk(t, alg.times(weight, w), visited | {t})

    for s in A.initial:
        walk(s, alg.one, {s})
    return total

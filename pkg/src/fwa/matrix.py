"""Matrices over a Kleene algebra: product, star and ω-powers.

Matrices are lists of rows; vectors over the semimodule (for ω-powers) are
plain lists.  Every function takes the algebra as its first argument.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, List

from .kleene import KleeneAlgebra, OmegaAlgebra

Matrix = List[List[Any]]


def zeros(alg: KleeneAlgebra, n: int, m: int | None = None) -> Matrix:
    return [[alg.zero] * (n if m is None else m) for _ in range(n)]


def identity(alg: KleeneAlgebra, n: int) -> Matrix:
    out = zeros(alg, n)
    for i in range(n):
        out[i][i] = alg.one
    return out


def mat_eq(alg: KleeneAlgebra, X: Matrix, Y: Matrix) -> bool:
    return len(X) == len(Y) and all(
        len(rx) == len(ry) and all(alg.eq(a, b) for a, b in zip(rx, ry)) for rx, ry in zip(X, Y)
    )


def mat_plus(alg: KleeneAlgebra, X: Matrix, Y: Matrix) -> Matrix:
    if len(X) != len(Y) or any(len(a) != len(b) for a, b in zip(X, Y)):
        raise ValueError("dimension mismatch")
    return [[alg.plus(a, b) for a, b in zip(rx, ry)] for rx, ry in zip(X, Y)]


def mat_product(alg: KleeneAlgebra, X: Matrix, Y: Matrix) -> Matrix:
    """Sum-of-products matrix product; vectors are 1×n / n×1 matrices."""
    if not X or not Y:
        return [[] for _ in X]
    inner = len(X[0])
    if inner != len(Y):
        raise ValueError(f"dimension mismatch: {len(X)}x{inner} times {len(Y)}x{len(Y[0])}")
    cols = list(zip(*Y))
    zero, plus, times = alg.zero, alg.plus, alg.times
    out = []
    for row in X:
        new = []
        for col in cols:
            acc = zero
            for a, b in zip(row, col):
                if a == zero or b == zero:
                    continue
                acc = plus(acc, times(a, b))
            new.append(acc)
        out.append(new)
    return out


def mat_act(alg: OmegaAlgebra, X: Matrix, v: list) -> list:
    """Matrix-vector action into the semimodule: ``(Xv)_i = ⊕_j X_ij v_j``."""
    if X and len(X[0]) != len(v):
        raise ValueError("dimension mismatch")
    out = []
    for row in X:
        acc = alg.vzero
        for a, w in zip(row, v):
            if a == alg.zero:
                continue
            acc = alg.vplus(acc, alg.act(a, w))
        out.append(acc)
    return out


def _blocks(M: Matrix, k: int):
    a = [row[:k] for row in M[:k]]
    b = [row[k:] for row in M[:k]]
    c = [row[:k] for row in M[k:]]
    d = [row[k:] for row in M[k:]]
    return a, b, c, d


def _join(a, b, c, d) -> Matrix:
    return [ra + rb for ra, rb in zip(a, b)] + [rc + rd for rc, rd in zip(c, d)]


def mat_star(alg: KleeneAlgebra, M: Matrix, split: int | None = 1, literal: bool = False) -> Matrix:
    """Matrix star by block recursion.

    ``split`` is the size of the top-left block (``None`` = ⌊n/2⌋).  By
    default the bottom-right block uses the Schur form
    ``S = (d + c a* b)*`` and the other blocks are derived from it, which
    needs one recursive star per level.  ``literal=True`` evaluates the
    four blocks ``(a + b d* c)*``, ``(a + b d* c)* b d*``,
    ``(d + c a* b)* c a*`` and ``(d + c a* b)*`` as written; it costs
    exponential time and is kept for cross-checking.
    """
    n = len(M)
    if n == 0:
        return []
    if n == 1:
        return [[alg.star(M[0][0])]]
    k = n // 2 if split is None else split
    if not 1 <= k < n:
        raise ValueError(f"split {k} out of range for dimension {n}")
    a, b, c, d = _blocks(M, k)

    def star(X):
        return mat_star(alg, X, split, literal)

    def mul(*Xs):
        out = Xs[0]
        for X in Xs[1:]:
            out = mat_product(alg, out, X)
        return out

    a_s = star(a)
    if literal:
        d_s = star(d)
        top = star(mat_plus(alg, a, mul(b, d_s, c)))
        bot = star(mat_plus(alg, d, mul(c, a_s, b)))
        return _join(top, mul(top, b, d_s), mul(bot, c, a_s), bot)
    S = star(mat_plus(alg, d, mul(c, a_s, b)))
    a_s_b = mul(a_s, b)
    c_a_s = mul(c, a_s)
    tr = mul(a_s_b, S)
    tl = mat_plus(alg, a_s, mul(tr, c_a_s))
    bl = mul(S, c_a_s)
    return _join(tl, tr, bl, S)


def mat_omega(alg: OmegaAlgebra, M: Matrix, literal: bool = False) -> list:
    """ω-power ``M^ω`` as a vector over the semimodule (1×1 / rest split).

    With ``x = a + b d* c`` the first entry is ``x^ω + x* b d^ω``.  The
    remaining entries default to ``d^ω + d* c (M^ω)_1`` (paths staying in the
    rest forever, or first entering the split state), which needs a single
    recursive ω per level; ``literal=True`` instead evaluates
    ``(d + c a* b)^ω + (d + c a* b)* c a^ω``.
    """
    if not hasattr(alg, "omega"):
        raise TypeError(f"{alg!r} has no ω-operation")
    n = len(M)
    if n == 0:
        return []
    if n == 1:
        return [alg.omega(M[0][0])]
    a, b, c, d = _blocks(M, 1)
    d_s = mat_star(alg, d)
    d_o = mat_omega(alg, d, literal)
    x = mat_plus(alg, a, mat_product(alg, mat_product(alg, b, d_s), c))[0][0]
    top = alg.vplus(alg.omega(x), alg.act(alg.star(x), mat_act(alg, b, d_o)[0]))
    if literal:
        a_s = alg.star(a[0][0])
        y = mat_plus(alg, d, mat_product(alg, mat_product(alg, c, [[a_s]]), b))
        rest = [
            alg.vplus(u, w)
            for u, w in zip(
                mat_omega(alg, y, literal),
                mat_act(alg, mat_product(alg, mat_star(alg, y), c), [alg.omega(a[0][0])]),
            )
        ]
    else:
        rest = [alg.vplus(u, w) for u, w in zip(d_o, mat_act(alg, mat_product(alg, d_s, c), [top]))]
    return [top] + rest


def mat_omega_k(alg: OmegaAlgebra, M: Matrix, k: int, literal: bool = False) -> list:
    """``[(a + b d* c)^ω ; d* c (a + b d* c)^ω]`` with ``a`` the top-left
    ``k×k`` block; ``k = n`` gives ``M^ω`` and ``k = 0`` the zero vector."""
    n = len(M)
    if not 0 <= k <= n:
        raise ValueError(f"k={k} out of range for dimension {n}")
    if k == 0:
        return [alg.vzero] * n
    if k == n:
        return mat_omega(alg, M, literal)
    a, b, c, d = _blocks(M, k)
    d_s = mat_star(alg, d)
    x = mat_plus(alg, a, mat_product(alg, mat_product(alg, b, d_s), c))
    x_o = mat_omega(alg, x, literal)
    return x_o + mat_act(alg, mat_product(alg, d_s, c), x_o)


def path_sum_oracle(alg: KleeneAlgebra, M: Matrix, maxlen: int) -> Matrix:
    """⊕ of the weights of all index paths with at most ``maxlen`` steps,
    by explicit enumeration (the empty path contributes ``one``)."""
    n = len(M)
    out = identity(alg, n)
    for length in range(1, maxlen + 1):
        for i in range(n):
            for mid in itertools.product(range(n), repeat=length - 1):
                w_prefix = alg.one
                prev = i
                for s in mid:
                    w_prefix = alg.times(w_prefix, M[prev][s])
                    prev = s
                for j in range(n):
                    out[i][j] = alg.plus(out[i][j], alg.times(w_prefix, M[prev][j]))
    return out


@dataclass
class MatrixRep:
    """``(alpha, M, k)`` with accepting states ordered first."""

    alpha: list
    M: Matrix
    k: int
    states: tuple = ()

    def kappa(self, alg: KleeneAlgebra) -> list:
        return [alg.one if i < self.k else alg.zero for i in range(len(self.M))]

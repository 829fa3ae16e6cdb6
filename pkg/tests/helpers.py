"""Shared test oracles and generators.

The QP oracle solves the soft-margin dual exactly by enumerating active
sets: every multiplier is pinned to 0, pinned to C, or left free, the free
block is solved as a bordered KKT linear system, and the best feasible
candidate wins. With n <= 6 points that is at most 3^6 = 729 small solves,
so it is exact up to linear-algebra rounding and completely independent of
the sequential solver under test.
"""
from __future__ import annotations

from itertools import product

import numpy as np
from scipy.optimize import linprog

from syndromic.text import BinaryVector


def dual_objective(K: np.ndarray, y: np.ndarray, alphas: np.ndarray) -> float:
    ay = alphas * y
    return float(alphas.sum() - 0.5 * ay @ K @ ay)


def qp_oracle(K: np.ndarray, y: np.ndarray, C: float) -> tuple[np.ndarray, float]:
    """Globally maximize the dual by active-set enumeration.

    Returns (alphas, objective). Requires the equality constraint
    sum(alpha * y) = 0 and the box 0 <= alpha <= C.
    """
    n = len(y)
    Q = np.outer(y, y) * K
    best_obj = -np.inf
    best_a = None
    eps = 1e-9
    for assignment in product((0, 1, 2), repeat=n):  # 0 -> 0, 1 -> C, 2 -> free
        zero = [i for i, s in enumerate(assignment) if s == 0]
        upper = [i for i, s in enumerate(assignment) if s == 1]
        free = [i for i, s in enumerate(assignment) if s == 2]
        a = np.zeros(n)
        a[upper] = C
        if free:
            # Stationarity on the face: Q_FF a_F + beta y_F = 1 - C Q_FU 1
            # plus the equality constraint row.
            QFF = Q[np.ix_(free, free)]
            rhs = np.ones(len(free)) - C * Q[np.ix_(free, upper)].sum(axis=1)
            A = np.zeros((len(free) + 1, len(free) + 1))
            A[: len(free), : len(free)] = QFF
            A[: len(free), -1] = y[free]
            A[-1, : len(free)] = y[free]
            b_vec = np.concatenate([rhs, [-C * y[upper].sum()]])
            sol, *_ = np.linalg.lstsq(A, b_vec, rcond=None)
            if not np.allclose(A @ sol, b_vec, atol=1e-7):
                continue  # no stationary point on this face
            a_free = sol[:-1]
            if np.any(a_free < -eps) or np.any(a_free > C + eps):
                # Singular faces have a whole affine set of stationary
                # points; look for one inside the box before giving up.
                a_free = _stationary_point_in_box(A, sol, C, len(free))
                if a_free is None:
                    continue
            a[free] = np.clip(a_free, 0.0, C)
        else:
            if abs(C * y[upper].sum()) > 1e-9:
                continue  # equality constraint unsatisfiable on this face
        if abs(float(a @ y)) > 1e-7:
            continue
        obj = dual_objective(K, y, a)
        if obj > best_obj:
            best_obj = obj
            best_a = a
    assert best_a is not None, "oracle found no feasible point (alpha = 0 should always work)"
    return best_a, best_obj


def _stationary_point_in_box(
    A: np.ndarray, particular: np.ndarray, C: float, n_free: int
) -> np.ndarray | None:
    """Search the solution set {particular + null(A) t} for a point whose
    alpha block lies in [0, C]. Returns that block, or None."""
    _, s, vt = np.linalg.svd(A)
    null = vt[np.sum(s > 1e-9 * max(1.0, s[0])) :].T  # columns span null(A)
    if null.shape[1] == 0:
        return None
    Nf = null[:n_free, :]
    base = particular[:n_free]
    # 0 <= base + Nf t <= C as two stacked inequality blocks.
    A_ub = np.vstack([Nf, -Nf])
    b_ub = np.concatenate([C - base, base])
    res = linprog(
        np.zeros(null.shape[1]),
        A_ub=A_ub,
        b_ub=b_ub,
        bounds=[(None, None)] * null.shape[1],
        method="highs",
    )
    if not res.success:
        return None
    candidate = base + Nf @ res.x
    if np.any(candidate < -1e-7) or np.any(candidate > C + 1e-7):
        return None
    return candidate


def derive_bias(K: np.ndarray, y: np.ndarray, alphas: np.ndarray, C: float) -> float:
    """Bias rule mirroring the trainer: average over non-bound vectors,
    KKT-interval midpoint when everything sits at a bound."""
    g = (alphas * y) @ K
    eps = 1e-8 * max(1.0, C)
    non_bound = (alphas > eps) & (alphas < C - eps)
    if non_bound.any():
        return float(np.mean(y[non_bound] - g[non_bound]))
    lows, highs = [], []
    for i in range(len(y)):
        limit = y[i] - g[i]
        at_zero = alphas[i] <= eps
        if (y[i] > 0) == at_zero:
            lows.append(limit)
        else:
            highs.append(limit)
    lo = max(lows) if lows else -np.inf
    hi = min(highs) if highs else np.inf
    if np.isfinite(lo) and np.isfinite(hi):
        return (lo + hi) / 2.0
    return 0.0


def kkt_max_violation(
    K: np.ndarray, y: np.ndarray, alphas: np.ndarray, bias: float, C: float
) -> float:
    """Largest violation of the stationarity conditions in margin units."""
    f = (alphas * y) @ K + bias
    margins = y * f
    worst = 0.0
    bound_eps = 1e-8 * max(1.0, C)
    for i in range(len(y)):
        if alphas[i] <= bound_eps:
            worst = max(worst, 1.0 - margins[i])  # wants margin >= 1
        elif alphas[i] >= C - bound_eps:
            worst = max(worst, margins[i] - 1.0)  # wants margin <= 1
        else:
            worst = max(worst, abs(margins[i] - 1.0))
    return max(worst, 0.0)


def random_vectors(rng: np.random.Generator, n: int, dim: int) -> list[BinaryVector]:
    """Random sparse binary vectors; roughly half the coordinates active."""
    out = []
    for _ in range(n):
        mask = rng.random(dim) < 0.5
        out.append(BinaryVector(dimension=dim, active=frozenset(np.flatnonzero(mask).tolist())))
    return out


def random_labeled_instance(
    rng: np.random.Generator, n: int, dim: int
) -> tuple[list[BinaryVector], np.ndarray]:
    """Random vectors plus labels guaranteed to include both classes."""
    vectors = random_vectors(rng, n, dim)
    while True:
        y = rng.choice([-1.0, 1.0], size=n)
        if len(set(y)) == 2:
            return vectors, y

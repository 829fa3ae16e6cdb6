"""Soft-margin binary SVM with polynomial and RBF kernels.

Training solves the standard dual problem

    maximize  sum(a) - 1/2 * sum_ij a_i a_j y_i y_j K(x_i, x_j)
    s.t.      0 <= a_i <= C,  sum_i a_i y_i = 0

by sequential pairwise optimization: each step picks a multiplier pair,
solves its two-variable subproblem analytically under the box and equality
constraints, and repeats until no example violates the KKT conditions
beyond the configured tolerance. Pair selection follows the classic
heuristics (worst violator outer loop, largest error difference inner
loop, deterministic rotating fallbacks).

Feature vectors are sparse binary, so single-pair kernel evaluations work
on active-index sets; full Gram matrices are built through dense numpy
products when the problem is small enough for that to be a win.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence

import numpy as np

from .text import BinaryVector

KERNEL_KINDS = ("polynomial", "rbf")

_FORMAT_TAG = "syndromic-svm"
_FORMAT_VERSION = 1

# Densifying the feature matrix is preferred up to this many cells.
_DENSE_CELLS_LIMIT = 50_000_000


class ConvergenceError(RuntimeError):
    """Solver exhausted its iteration budget before satisfying KKT.

    Carries the best iterate's diagnostics so callers can inspect how far
    the solve got.
    """

    def __init__(self, passes: int, max_violation: float, dual_objective: float):
        self.passes = passes
        self.max_violation = max_violation
        self.dual_objective = dual_objective
        super().__init__(
            f"no convergence after {passes} passes "
            f"(max KKT violation {max_violation:.3e}, dual objective {dual_objective:.6f})"
        )


@dataclass(frozen=True)
class KernelConfig:
    """Kernel selection. Degree 1 with the default offset is the linear
    configuration; gamma=None resolves to 1/dimension when evaluated."""

    kind: str
    degree: int = 1
    coef0: float = 1.0
    gamma: float | None = None

    def __post_init__(self):
        if self.kind not in KERNEL_KINDS:
            raise ValueError(f"unknown kernel kind {self.kind!r}")
        if self.kind == "polynomial" and (self.degree < 1 or int(self.degree) != self.degree):
            raise ValueError("polynomial degree must be a positive integer")
        if self.gamma is not None and self.gamma <= 0:
            raise ValueError("gamma must be positive")


@dataclass(frozen=True)
class SolverSettings:
    C: float = 1.0
    kkt_tolerance: float = 1e-3
    max_passes: int = 1000

    def __post_init__(self):
        if self.C <= 0 or self.kkt_tolerance <= 0 or self.max_passes <= 0:
            raise ValueError("solver settings must all be positive")


def _resolve_gamma(cfg: KernelConfig, dimension: int) -> float:
    if cfg.gamma is not None:
        return cfg.gamma
    return 1.0 / max(1, dimension)


def kernel_eval(cfg: KernelConfig, x: BinaryVector, y: BinaryVector) -> float:
    """Single-pair kernel value over sparse active sets."""
    if x.dimension != y.dimension:
        raise ValueError(f"dimension mismatch: {x.dimension} vs {y.dimension}")
    dot = len(x.active & y.active)
    if cfg.kind == "polynomial":
        return float((dot + cfg.coef0) ** cfg.degree)
    gamma = _resolve_gamma(cfg, x.dimension)
    sq_dist = len(x.active) + len(y.active) - 2 * dot
    return math.exp(-gamma * sq_dist)


def _dense_features(vectors: Sequence[BinaryVector]) -> np.ndarray:
    m = vectors[0].dimension
    X = np.zeros((len(vectors), m))
    for r, v in enumerate(vectors):
        if v.dimension != m:
            raise ValueError("vectors have inconsistent dimensions")
        if v.active:
            X[r, list(v.active)] = 1.0
    return X


def cross_gram(
    cfg: KernelConfig, a: Sequence[BinaryVector], b: Sequence[BinaryVector]
) -> np.ndarray:
    """Kernel matrix K[i, j] = k(a[i], b[j])."""
    if not a or not b:
        return np.zeros((len(a), len(b)))
    if a[0].dimension != b[0].dimension:
        raise ValueError("dimension mismatch between vector sets")
    m = a[0].dimension
    if (len(a) + len(b)) * max(1, m) <= _DENSE_CELLS_LIMIT:
        Xa = _dense_features(a)
        Xb = _dense_features(b)
        dots = Xa @ Xb.T
        if cfg.kind == "polynomial":
            return (dots + cfg.coef0) ** cfg.degree
        gamma = _resolve_gamma(cfg, m)
        na = Xa.sum(axis=1)[:, None]
        nb = Xb.sum(axis=1)[None, :]
        return np.exp(-gamma * (na + nb - 2 * dots))
    out = np.zeros((len(a), len(b)))
    for i, va in enumerate(a):
        for j, vb in enumerate(b):
            out[i, j] = kernel_eval(cfg, va, vb)
    return out


def gram_matrix(cfg: KernelConfig, vectors: Sequence[BinaryVector]) -> np.ndarray:
    return cross_gram(cfg, vectors, vectors)


@dataclass(frozen=True)
class SVMModel:
    support_vectors: tuple[BinaryVector, ...]
    alphas: np.ndarray
    labels: np.ndarray
    bias: float
    kernel: KernelConfig
    C: float
    dimension: int

    def __post_init__(self):
        if len(self.support_vectors) == 0:
            raise ValueError("model has no support vectors")
        if not (len(self.support_vectors) == len(self.alphas) == len(self.labels)):
            raise ValueError("support vector, alpha and label counts disagree")
        if np.any(self.alphas <= 0) or np.any(self.alphas > self.C * (1 + 1e-9)):
            raise ValueError("alphas must lie in (0, C]")
        if not set(np.unique(self.labels)) <= {-1.0, 1.0}:
            raise ValueError("labels must be -1 or +1")
        for v in self.support_vectors:
            if v.dimension != self.dimension:
                raise ValueError("support vector dimension mismatch")

    def save(self, path: str | Path) -> None:
        """Plain-text model file; floats use repr() for a bit-exact round-trip."""
        g = self.kernel.gamma
        lines = [
            f"{_FORMAT_TAG} {_FORMAT_VERSION}",
            f"kernel {self.kernel.kind} {self.kernel.degree} {float(self.kernel.coef0)!r} "
            + ("-" if g is None else repr(float(g))),
            f"C {float(self.C)!r}",
            f"bias {float(self.bias)!r}",
            f"dimension {self.dimension}",
            f"support_vectors {len(self.support_vectors)}",
        ]
        for a, y, v in zip(self.alphas, self.labels, self.support_vectors):
            idx = ",".join(str(i) for i in sorted(v.active)) or "-"
            lines.append(f"{float(a)!r} {int(y)} {idx}")
        Path(path).write_text("".join(l + "\n" for l in lines), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "SVMModel":
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        header = lines[0].split()
        if header[0] != _FORMAT_TAG or int(header[1]) != _FORMAT_VERSION:
            raise ValueError(f"not an SVM model file: {path}")
        _, kind, degree, coef0, gamma = lines[1].split()
        kernel = KernelConfig(
            kind=kind,
            degree=int(degree),
            coef0=float(coef0),
            gamma=None if gamma == "-" else float(gamma),
        )
        C = float(lines[2].split()[1])
        bias = float(lines[3].split()[1])
        dimension = int(lines[4].split()[1])
        n_sv = int(lines[5].split()[1])
        alphas = np.zeros(n_sv)
        labels = np.zeros(n_sv)
        vectors = []
        for r, line in enumerate(lines[6 : 6 + n_sv]):
            a, y, idx = line.split()
            alphas[r] = float(a)
            labels[r] = float(int(y))
            active = frozenset() if idx == "-" else frozenset(int(i) for i in idx.split(","))
            vectors.append(BinaryVector(dimension=dimension, active=active))
        return cls(
            support_vectors=tuple(vectors),
            alphas=alphas,
            labels=labels,
            bias=bias,
            kernel=kernel,
            C=C,
            dimension=dimension,
        )


class _SMOSolver:
    """Pairwise dual ascent over a precomputed Gram matrix."""

    # Relative step size below which a pair update is considered no progress.
    _STEP_EPS = 1e-14

    def __init__(self, K: np.ndarray, y: np.ndarray, settings: SolverSettings):
        self.K = K
        self.y = y
        self.C = settings.C
        self.tol = settings.kkt_tolerance
        self.max_passes = settings.max_passes
        n = len(y)
        self.alphas = np.zeros(n)
        self.b = 0.0
        # E_i = f(x_i) - y_i with f(x) = sum_j a_j y_j K_ij + b
        self.E = -y.astype(float)
        self._rotor = 0

    def dual_objective(self) -> float:
        a, y, K = self.alphas, self.y, self.K
        return float(a.sum() - 0.5 * (a * y) @ K @ (a * y))

    def max_violation(self) -> float:
        """Largest KKT violation, measured in margin units."""
        r = self.E * self.y  # y_i f(x_i) - 1
        lower = np.where(self.alphas < self.C, np.maximum(0.0, -r), 0.0)
        upper = np.where(self.alphas > 0, np.maximum(0.0, r), 0.0)
        return float(np.maximum(lower, upper).max())

    def _take_step(self, i1: int, i2: int) -> bool:
        if i1 == i2:
            return False
        a1, a2 = self.alphas[i1], self.alphas[i2]
        y1, y2 = self.y[i1], self.y[i2]
        E1, E2 = self.E[i1], self.E[i2]
        s = y1 * y2
        if s < 0:
            L = max(0.0, a2 - a1)
            H = min(self.C, self.C + a2 - a1)
        else:
            L = max(0.0, a1 + a2 - self.C)
            H = min(self.C, a1 + a2)
        if L >= H:
            return False
        k11 = self.K[i1, i1]
        k12 = self.K[i1, i2]
        k22 = self.K[i2, i2]
        eta = k11 + k22 - 2.0 * k12
        if eta > 0:
            a2_new = a2 + y2 * (E1 - E2) / eta
            a2_new = min(max(a2_new, L), H)
        else:
            # PSD kernels make eta >= 0; at eta == 0 the restricted
            # objective is linear in a2, so compare the two endpoints.
            obj_L = self._pair_objective(i1, i2, L)
            obj_H = self._pair_objective(i1, i2, H)
            if obj_L > obj_H + 1e-12:
                a2_new = L
            elif obj_H > obj_L + 1e-12:
                a2_new = H
            else:
                return False
        if abs(a2_new - a2) < self._STEP_EPS * (a2_new + a2 + self._STEP_EPS):
            return False
        a1_new = a1 + s * (a2 - a2_new)
        # Clip float dust; L/H guarantee the exact value is inside the box.
        a1_new = min(max(a1_new, 0.0), self.C)

        d1 = (a1_new - a1) * y1
        d2 = (a2_new - a2) * y2
        b1 = self.b - E1 - d1 * k11 - d2 * k12
        b2 = self.b - E2 - d1 * k12 - d2 * k22
        if 0.0 < a1_new < self.C:
            b_new = b1
        elif 0.0 < a2_new < self.C:
            b_new = b2
        else:
            b_new = (b1 + b2) / 2.0
        self.E += d1 * self.K[i1] + d2 * self.K[i2] + (b_new - self.b)
        self.alphas[i1] = a1_new
        self.alphas[i2] = a2_new
        self.b = b_new
        return True

    def _pair_objective(self, i1: int, i2: int, a2_val: float) -> float:
        """Dual objective restricted to the (i1, i2) pair, dropping terms
        that do not involve either multiplier."""
        a1, a2 = self.alphas[i1], self.alphas[i2]
        y1, y2 = self.y[i1], self.y[i2]
        s = y1 * y2
        k11, k12, k22 = self.K[i1, i1], self.K[i1, i2], self.K[i2, i2]
        gamma = a1 + s * a2
        a1_val = gamma - s * a2_val
        # v_j = f(x_j) - b - a1 y1 K_1j - a2 y2 K_2j (current iterate)
        v1 = (self.E[i1] + y1 - self.b) - a1 * y1 * k11 - a2 * y2 * k12
        v2 = (self.E[i2] + y2 - self.b) - a1 * y1 * k12 - a2 * y2 * k22
        return (
            a1_val
            + a2_val
            - 0.5 * k11 * a1_val * a1_val
            - 0.5 * k22 * a2_val * a2_val
            - s * k12 * a1_val * a2_val
            - y1 * a1_val * v1
            - y2 * a2_val * v2
        )

    def _examine(self, i2: int) -> bool:
        y2, a2, E2 = self.y[i2], self.alphas[i2], self.E[i2]
        r2 = E2 * y2
        if not ((r2 < -self.tol and a2 < self.C) or (r2 > self.tol and a2 > 0)):
            return False
        n = len(self.y)
        non_bound = np.flatnonzero((self.alphas > 0) & (self.alphas < self.C))
        if len(non_bound) > 1:
            i1 = int(non_bound[np.argmax(np.abs(self.E[non_bound] - E2))])
            if self._take_step(i1, i2):
                return True
        self._rotor = (self._rotor + 1) % n
        for i1 in np.roll(non_bound, -self._rotor % max(1, len(non_bound))):
            if self._take_step(int(i1), i2):
                return True
        for off in range(n):
            if self._take_step((self._rotor + off) % n, i2):
                return True
        return False

    def solve(self) -> tuple[np.ndarray, float]:
        n = len(self.y)
        examine_all = True
        for _ in range(self.max_passes):
            changed = 0
            if examine_all:
                for i in range(n):
                    changed += self._examine(i)
            else:
                for i in np.flatnonzero((self.alphas > 0) & (self.alphas < self.C)):
                    changed += self._examine(int(i))
            if examine_all:
                if changed == 0:
                    return self.alphas, self.b
                examine_all = False
            elif changed == 0:
                examine_all = True
        raise ConvergenceError(self.max_passes, self.max_violation(), self.dual_objective())


def train_svm(
    examples: Sequence[tuple[BinaryVector, int]],
    cfg: KernelConfig,
    settings: SolverSettings = SolverSettings(),
) -> SVMModel:
    """Train a soft-margin SVM on (vector, label) pairs with labels in {-1, +1}.

    The bias is recomputed after convergence as the average over non-bound
    support vectors of y_i - sum_j a_j y_j K_ij; when every multiplier sits
    at a bound, it falls back to the midpoint of the interval the KKT
    conditions leave feasible.
    """
    if not examples:
        raise ValueError("empty training set")
    vectors = [v for v, _ in examples]
    labels = [l for _, l in examples]
    if any(l not in (-1, 1) for l in labels):
        raise ValueError("labels must be -1 or +1")
    y = np.array(labels, dtype=float)
    if len(set(labels)) < 2:
        raise ValueError("training set contains a single class")
    m = vectors[0].dimension
    if cfg.kind == "rbf" and cfg.gamma is None:
        cfg = replace(cfg, gamma=1.0 / max(1, m))

    K = gram_matrix(cfg, vectors)
    solver = _SMOSolver(K, y, settings)
    alphas, _ = solver.solve()

    g = (alphas * y) @ K
    bound_eps = 1e-8 * max(1.0, settings.C)
    non_bound = (alphas > bound_eps) & (alphas < settings.C - bound_eps)
    if non_bound.any():
        bias = float(np.mean(y[non_bound] - g[non_bound]))
    else:
        # KKT at bounds: a=0 wants y(g+b) >= 1, a=C wants y(g+b) <= 1.
        lows, highs = [], []
        for i in range(len(y)):
            limit = y[i] - g[i]
            at_zero = alphas[i] <= bound_eps
            if (y[i] > 0) == at_zero:
                lows.append(limit)
            else:
                highs.append(limit)
        lo = max(lows) if lows else -math.inf
        hi = min(highs) if highs else math.inf
        if math.isfinite(lo) and math.isfinite(hi):
            bias = (lo + hi) / 2.0
        else:
            bias = solver.b

    keep = alphas > 1e-12 * max(1.0, settings.C)
    return SVMModel(
        support_vectors=tuple(v for v, k in zip(vectors, keep) if k),
        alphas=alphas[keep].copy(),
        labels=y[keep].copy(),
        bias=bias,
        kernel=cfg,
        C=settings.C,
        dimension=m,
    )


def decision_value(model: SVMModel, x: BinaryVector) -> float:
    """f(x) = sum_i a_i y_i K(x_i, x) + b."""
    if x.dimension != model.dimension:
        raise ValueError(f"dimension mismatch: {x.dimension} vs model {model.dimension}")
    total = model.bias
    for a, y, sv in zip(model.alphas, model.labels, model.support_vectors):
        total += a * y * kernel_eval(model.kernel, sv, x)
    return float(total)


def decision_values(model: SVMModel, xs: Sequence[BinaryVector]) -> np.ndarray:
    """Vectorized decision function for a batch of inputs."""
    for x in xs:
        if x.dimension != model.dimension:
            raise ValueError(f"dimension mismatch: {x.dimension} vs model {model.dimension}")
    if not xs:
        return np.zeros(0)
    K = cross_gram(model.kernel, list(model.support_vectors), list(xs))
    return (model.alphas * model.labels) @ K + model.bias


def classify_svm(model: SVMModel, x: BinaryVector) -> bool:
    """Positive iff the decision value is strictly positive."""
    return decision_value(model, x) > 0.0

"""Auto-weighted multi-view graph embedding with hub suppression.

The embedding F (n-by-k, orthonormal columns) is fit so each node's row
stays close to the weighted average of its neighbors' rows in every view,
under a row-wise-sparse penalty: the per-row cost is the Euclidean norm of
the residual, not its square. Rows that cannot be reconciled with any one
cluster's average (boundary-spanning nodes) are driven toward zero instead
of distorting the cluster geometry, which is what makes small row norms a
hub signal downstream.

One solver iteration, from the current embedding F:
  1. per view, form the neighbor-average residual P = F - W F, where W is
     the row-stochastic walk matrix of that view;
  2. per view, convert P's row norms into diagonal reweighting factors
     q_j = 1 / (2 sqrt(||p_j||^2 + epsilon)) (the smoothed row-norm
     linearization), giving the reweighted operator L = M^T Q M with
     M = I - W;
  3. in auto mode, set each view weight to 1 / (2 sqrt(Tr(F^T L F))), so
     views the current embedding fits well get large weights;
  4. refresh F as the eigenvectors of the 2nd through (k+1)-th smallest
     eigenvalues of the weighted sum of the per-view operators. M
     annihilates vectors that are constant on connected components, so the
     skipped bottom eigenvector is the uninformative constant direction.

The first iteration uses equal view weights 1/m; iteration stops when the
relative change of the objective sum_v sqrt(Tr(F^T L_v F)) falls below
rel_tol, or at max_iters.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import MultiViewGraph, random_walk_matrix
from .linalg import smallest_eigenpairs, trace_form

# Traces this far below zero mean an operator lost positive semidefiniteness.
_PSD_SLACK = 1e-10


@dataclass(frozen=True)
class EmbedConfig:
    """Solver parameters.

    weights=None selects auto mode; a sequence of m positive floats fixes
    the view weights for the whole run (the non-adaptive variant).
    inner_q_iters > 1 re-linearizes the row weights and re-solves the
    eigenproblem that many times per outer iteration before the view
    weights refresh; 1 is the plain single-loop scheme.
    """
    k: int
    epsilon: float = 1e-4
    max_iters: int = 100
    rel_tol: float = 1e-6
    weights: tuple | None = None
    isolated_policy: str = "error"
    inner_q_iters: int = 1
    alpha_guard: float = 1e-12

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"embedding dimension k must be >= 1, got {self.k}")
        if self.epsilon <= 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.max_iters < 0:
            raise ValueError(f"max_iters must be >= 0, got {self.max_iters}")
        if self.rel_tol < 0:
            raise ValueError(f"rel_tol must be >= 0, got {self.rel_tol}")
        if self.inner_q_iters < 1:
            raise ValueError(f"inner_q_iters must be >= 1, got {self.inner_q_iters}")
        if self.alpha_guard <= 0:
            raise ValueError(f"alpha_guard must be positive, got {self.alpha_guard}")
        if self.weights is not None:
            w = tuple(float(x) for x in self.weights)
            if len(w) == 0 or not all(np.isfinite(x) and x > 0 for x in w):
                raise ValueError("fixed view weights must be positive finite floats")
            object.__setattr__(self, "weights", w)


@dataclass(frozen=True)
class SolveTrace:
    """Per-iteration objective values and view-weight history of one solve."""
    objectives: np.ndarray
    alpha_history: np.ndarray
    iterations: int
    converged: bool


def walk_residual(embedding: np.ndarray, view: np.ndarray,
                  isolated_policy: str = "error") -> np.ndarray:
    """Residual of each row against its neighbor average: F - W F."""
    f = np.asarray(embedding, dtype=np.float64)
    walk = random_walk_matrix(view, isolated_policy)
    if f.shape[0] != walk.shape[0]:
        raise ValueError(
            f"embedding has {f.shape[0]} rows for a {walk.shape[0]}-node view")
    return f - walk @ f


def residual_row_weights(residual: np.ndarray, epsilon: float) -> np.ndarray:
    """Diagonal reweighting factors q_j = 1 / (2 sqrt(||p_j||^2 + epsilon)).

    All outputs lie in (0, 1/(2 sqrt(epsilon))]; epsilon keeps zero-residual
    rows finite.
    """
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    p = np.asarray(residual, dtype=np.float64)
    sq = np.einsum("ij,ij->i", p, p)
    return 1.0 / (2.0 * np.sqrt(sq + epsilon))


def view_laplacian(view: np.ndarray, row_weights: np.ndarray,
                   isolated_policy: str = "error") -> np.ndarray:
    """Reweighted walk operator L = (I - W)^T Q (I - W) for one view."""
    q = np.asarray(row_weights, dtype=np.float64)
    if np.any(q <= 0) or not np.all(np.isfinite(q)):
        raise ValueError("row weights must be positive and finite")
    walk = random_walk_matrix(view, isolated_policy)
    n = walk.shape[0]
    if q.shape != (n,):
        raise ValueError(f"expected {n} row weights, got shape {q.shape}")
    m = np.eye(n) - walk
    return _laplacian_from_parts(m, q)


def _laplacian_from_parts(m: np.ndarray, q: np.ndarray) -> np.ndarray:
    lap = m.T @ (q[:, None] * m)
    # Symmetrize away the last-ulp drift of the triple product.
    return (lap + lap.T) / 2.0


def combined_laplacian(laplacians, weights) -> np.ndarray:
    """Weighted sum of per-view operators."""
    if len(laplacians) != len(weights):
        raise ValueError(
            f"{len(laplacians)} operators but {len(weights)} weights")
    if len(laplacians) == 0:
        raise ValueError("need at least one operator")
    out = np.zeros_like(np.asarray(laplacians[0], dtype=np.float64))
    for lap, w in zip(laplacians, weights):
        out += float(w) * np.asarray(lap, dtype=np.float64)
    return out


def auto_view_weights(embedding: np.ndarray, laplacians,
                      guard: float = 1e-12) -> np.ndarray:
    """Adaptive view weights 1 / (2 sqrt(Tr(F^T L F))), floored at `guard`.

    A view the embedding reconstructs well has a small trace and therefore a
    large weight; the guard keeps the weight finite at a perfect fit.
    """
    if guard <= 0:
        raise ValueError(f"guard must be positive, got {guard}")
    traces = np.array([trace_form(embedding, lap) for lap in laplacians])
    return 1.0 / (2.0 * np.sqrt(np.maximum(traces, guard)))


def embedding_objective(embedding: np.ndarray, laplacians) -> float:
    """Objective sum_v sqrt(Tr(F^T L_v F)); traces are clamped at zero.

    A trace below -1e-10 means an upstream operator is not positive
    semidefinite, which is a bug, so it raises instead of being clamped.
    """
    total = 0.0
    for i, lap in enumerate(laplacians):
        z = trace_form(embedding, lap)
        if z < -_PSD_SLACK:
            raise ValueError(
                f"operator {i} produced trace {z:g} < -{_PSD_SLACK:g}; "
                "positive semidefiniteness is broken upstream")
        total += np.sqrt(max(z, 0.0))
    return float(total)


def _check_solve_inputs(n: int, m: int, config: EmbedConfig) -> None:
    if config.k + 1 > n:
        raise ValueError(
            f"need k + 1 <= n to skip the bottom eigenvector: k={config.k}, n={n}")
    if config.weights is not None and len(config.weights) != m:
        raise ValueError(
            f"{len(config.weights)} fixed weights for {m} views")


def _embedding_from_operator(ltilde: np.ndarray, k: int) -> np.ndarray:
    return smallest_eigenpairs(ltilde, k + 1).eigenvectors[:, 1:]


def solve(graph: MultiViewGraph, config: EmbedConfig, on_update=None):
    """Run the alternating embedding scheme on a multi-view graph.

    Returns (embedding, view_weights, trace): the final n-by-k orthonormal
    embedding, the final per-view weights, and the full iteration trace.
    The trace objectives include the initial embedding, so their length is
    trace.iterations + 1. If given, on_update(iteration, embedding) is
    called after each embedding refresh (instrumentation hook).
    """
    n, m = graph.n, graph.m
    _check_solve_inputs(n, m, config)
    walks = [random_walk_matrix(v, config.isolated_policy) for v in graph.views]
    eye = np.eye(n)
    contrasts = [eye - w for w in walks]

    if config.weights is not None:
        alphas = np.array(config.weights, dtype=np.float64)
    else:
        alphas = np.full(m, 1.0 / m)

    def reweighted_laplacians(f):
        laps = []
        for walk, contrast in zip(walks, contrasts):
            residual = f - walk @ f
            q = residual_row_weights(residual, config.epsilon)
            laps.append(_laplacian_from_parts(contrast, q))
        return laps

    # Deterministic start: unweighted operators (unit row weights), equal
    # view weights.
    init_laps = [_laplacian_from_parts(c, np.ones(n)) for c in contrasts]
    f = _embedding_from_operator(combined_laplacian(init_laps, np.full(m, 1.0 / m)), config.k)

    objectives = []
    alpha_history = []
    iterations = 0
    converged = False
    while True:
        laps = reweighted_laplacians(f)
        if config.weights is None and iterations > 0:
            alphas = auto_view_weights(f, laps, config.alpha_guard)
        objectives.append(embedding_objective(f, laps))
        alpha_history.append(alphas.copy())
        if len(objectives) >= 2:
            prev, cur = objectives[-2], objectives[-1]
            if abs(prev - cur) / max(prev, 1e-12) < config.rel_tol:
                converged = True
                break
        if iterations >= config.max_iters:
            break
        for inner in range(config.inner_q_iters):
            if inner > 0:
                laps = reweighted_laplacians(f)
            f = _embedding_from_operator(combined_laplacian(laps, alphas), config.k)
        iterations += 1
        if on_update is not None:
            on_update(iterations, f)

    trace = SolveTrace(
        objectives=np.array(objectives),
        alpha_history=np.array(alpha_history),
        iterations=iterations,
        converged=converged,
    )
    return f, alphas, trace


def solve_single_view(view: np.ndarray, config: EmbedConfig):
    """Embed a single affinity matrix; the view weight cancels for m = 1.

    Returns (embedding, trace), identical to solve() on a one-view graph.
    """
    f, _, trace = solve(MultiViewGraph(views=(view,)), config)
    return f, trace

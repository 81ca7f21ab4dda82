"""Hub scoring, hub-set selection, and hub-edge removal.

Two hub signals are supported. The embedding row norm reads hubs directly
off the solver output: the row-sparse penalty drives boundary-spanning rows
toward zero, so a SMALL norm marks a hub. Shortest-path betweenness is the
classic standalone baseline, where a LARGE score marks a hub; affinities
convert to distances as 1/a_ij.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass

import numpy as np

from .graph import MultiViewGraph

HUB_METHODS = ("row_norm", "betweenness")


@dataclass(frozen=True)
class HubReport:
    """Per-node hub scores with a ranking and the chosen hub set.

    ranking sorts node indices by ascending score (ties by lower index);
    for `row_norm` hubs sit at the front of the ranking, for `betweenness`
    at the back. selected is always stored in ascending index order.
    """
    method: str
    scores: np.ndarray
    ranking: np.ndarray
    selected: np.ndarray

    def to_json(self) -> str:
        return json.dumps({
            "method": self.method,
            "scores": [float(s) for s in self.scores],
            "ranking": [int(i) for i in self.ranking],
            "selected": [int(i) for i in self.selected],
        }, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "HubReport":
        obj = json.loads(text)
        return HubReport(
            method=obj["method"],
            scores=np.asarray(obj["scores"], dtype=np.float64),
            ranking=np.asarray(obj["ranking"], dtype=np.int64),
            selected=np.asarray(obj["selected"], dtype=np.int64),
        )


def hub_scores(embedding: np.ndarray) -> np.ndarray:
    """Euclidean norm of each embedding row; small norm means hub-like."""
    f = np.asarray(embedding, dtype=np.float64)
    if f.ndim != 2:
        raise ValueError(f"expected an n-by-k embedding, got shape {f.shape}")
    return np.linalg.norm(f, axis=1)


def score_ranking(scores: np.ndarray) -> np.ndarray:
    """Node indices sorted by ascending score, ties broken by lower index."""
    return np.argsort(np.asarray(scores), kind="stable")


def select_hubs(scores: np.ndarray, top: int | None = None,
                threshold: float | None = None) -> np.ndarray:
    """Pick low-score nodes, either the `top` smallest or all at or below `threshold`.

    Exactly one strategy must be given. Returns indices in ascending order.
    """
    scores = np.asarray(scores, dtype=np.float64)
    if (top is None) == (threshold is None):
        raise ValueError("give exactly one of top= or threshold=")
    if top is not None:
        if not 0 <= top <= scores.size:
            raise ValueError(f"top must be in 0..{scores.size}, got {top}")
        chosen = score_ranking(scores)[:top]
    else:
        if threshold < 0:
            raise ValueError(f"threshold must be >= 0, got {threshold}")
        chosen = np.flatnonzero(scores <= threshold)
    return np.sort(chosen)


def betweenness(view: np.ndarray) -> np.ndarray:
    """Shortest-path betweenness of each node on one weighted view.

    Edge distance is 1/a_ij for a_ij > 0 (strong affinity = short hop);
    zero affinities are non-edges. Scores are unnormalized pair counts:
    each unordered source/target pair splits one unit over its shortest
    paths, credited to intermediate nodes; disconnected pairs contribute
    nothing. Uniformly rescaling all affinities leaves the scores unchanged.
    """
    a = np.asarray(view, dtype=np.float64)
    n = a.shape[0]
    scores = np.zeros(n)
    neighbors = [np.flatnonzero(a[i] > 0) for i in range(n)]
    for source in range(n):
        # Dijkstra with shortest-path counts and predecessor lists.
        dist = np.full(n, np.inf)
        sigma = np.zeros(n)
        preds = [[] for _ in range(n)]
        order = []
        dist[source] = 0.0
        sigma[source] = 1.0
        seen = np.zeros(n, dtype=bool)
        heap = [(0.0, source)]
        while heap:
            d, v = heapq.heappop(heap)
            if seen[v]:
                continue
            seen[v] = True
            order.append(v)
            for w in neighbors[v]:
                if seen[w]:
                    continue
                cand = d + 1.0 / a[v, w]
                if cand < dist[w]:
                    dist[w] = cand
                    sigma[w] = sigma[v]
                    preds[w] = [v]
                    heapq.heappush(heap, (cand, w))
                elif cand == dist[w]:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        # Back-propagate pair dependencies in reverse settle order.
        delta = np.zeros(n)
        for w in reversed(order):
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != source:
                scores[w] += delta[w]
    # Each unordered pair was counted from both endpoints.
    return scores / 2.0


def remove_hub_edges(graph: MultiViewGraph, hubs) -> MultiViewGraph:
    """Zero out the rows and columns of the hub nodes in every view."""
    idx = np.asarray(list(hubs), dtype=np.int64)
    n = graph.n
    if idx.size and (idx.min() < 0 or idx.max() >= n):
        raise ValueError(f"hub index out of range for {n} nodes: {idx}")
    views = []
    for view in graph.views:
        v = view.copy()
        v[idx, :] = 0.0
        v[:, idx] = 0.0
        views.append(v)
    return MultiViewGraph(views=tuple(views), node_names=graph.node_names)


def hub_report(scores: np.ndarray, method: str, top: int | None = None,
               threshold: float | None = None) -> HubReport:
    """Bundle scores, ranking, and a hub selection into a HubReport.

    For `row_norm` the selection favors small scores; for `betweenness` it
    favors large ones (top largest, or score >= threshold).
    """
    if method not in HUB_METHODS:
        raise ValueError(f"unknown hub method {method!r}; expected one of {HUB_METHODS}")
    scores = np.asarray(scores, dtype=np.float64)
    if method == "row_norm":
        selected = select_hubs(scores, top=top, threshold=threshold)
    else:
        if (top is None) == (threshold is None):
            raise ValueError("give exactly one of top= or threshold=")
        if top is not None:
            selected = np.sort(select_hubs(-scores, top=top))
        else:
            selected = np.flatnonzero(scores >= threshold)
    return HubReport(
        method=method,
        scores=scores,
        ranking=score_ranking(scores),
        selected=np.sort(selected),
    )

"""Multi-view graph representation, validation, normalization, and file I/O.

A multi-view graph is a single node set observed through several nonnegative
symmetric affinity matrices (e.g., functional and structural brain
connectivity over the same regions). Matrices are stored dense; the intended
scale is desk-sized (n up to a few hundred nodes).

File formats:
  - matrix: headerless CSV, n rows of n comma-separated decimal values.
  - manifest: JSON object
      {"views": [paths...], "transform": "reject|abs|clamp0",
       "node_names": optional [strings]}
    View paths are resolved relative to the manifest's directory.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

SYMMETRY_TOL = 1e-9

TRANSFORMS = ("reject", "abs", "clamp0")

ISOLATED_POLICIES = ("error", "self_loop")


class GraphValidationError(ValueError):
    """An affinity matrix, manifest, or view set violates its contract."""


class IsolatedNodeError(ValueError):
    """A zero-degree node was encountered under the `error` policy."""

    def __init__(self, index: int):
        self.index = int(index)
        super().__init__(f"node {self.index} has zero degree (isolated)")


def apply_transform(data: np.ndarray, transform: str) -> np.ndarray:
    """Resolve negative entries according to a manifest-declared transform.

    `reject` raises on any negative entry, `abs` takes magnitudes, and
    `clamp0` floors negatives at zero. Non-finite entries always raise.
    """
    if transform not in TRANSFORMS:
        raise GraphValidationError(
            f"unknown transform {transform!r}; expected one of {TRANSFORMS}")
    data = np.asarray(data, dtype=np.float64)
    if not np.all(np.isfinite(data)):
        raise GraphValidationError("affinity matrix contains non-finite entries")
    if transform == "abs":
        return np.abs(data)
    if transform == "clamp0":
        return np.maximum(data, 0.0)
    if np.any(data < 0):
        i, j = np.argwhere(data < 0)[0]
        raise GraphValidationError(
            f"negative entry {data[i, j]!r} at ({i}, {j}) under transform 'reject'")
    return data


def validate_affinity(data: np.ndarray) -> np.ndarray:
    """Validate one affinity matrix and return it as a read-only float array.

    Enforces: square, finite, entrywise nonnegative, symmetric within
    SYMMETRY_TOL, zero diagonal. A nonzero diagonal is stripped with a
    warning rather than rejected (self-affinity carries no meaning under
    neighbor averaging).
    """
    arr = np.array(data, dtype=np.float64, copy=True)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise GraphValidationError(f"affinity matrix must be square, got shape {arr.shape}")
    if arr.shape[0] == 0:
        raise GraphValidationError("affinity matrix must have at least one node")
    if not np.all(np.isfinite(arr)):
        raise GraphValidationError("affinity matrix contains non-finite entries")
    if np.any(arr < 0):
        i, j = np.argwhere(arr < 0)[0]
        raise GraphValidationError(
            f"negative entry {arr[i, j]!r} at ({i}, {j}); "
            "apply a transform ('abs' or 'clamp0') or fix the data")
    asym = np.max(np.abs(arr - arr.T)) if arr.size else 0.0
    if asym > SYMMETRY_TOL:
        raise GraphValidationError(
            f"affinity matrix asymmetric beyond tolerance: max |a_ij - a_ji| = {asym:g}")
    diag = np.diagonal(arr)
    if np.any(diag != 0):
        warnings.warn(
            "affinity matrix has nonzero diagonal entries; self-loops stripped",
            stacklevel=2)
        np.fill_diagonal(arr, 0.0)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class MultiViewGraph:
    """A node set with one validated affinity matrix per view.

    Immutable after construction; views are read-only float64 arrays that
    all share the same node count.
    """
    views: tuple
    node_names: tuple | None = None

    def __post_init__(self):
        if len(self.views) < 1:
            raise GraphValidationError("a multi-view graph needs at least one view")
        validated = tuple(validate_affinity(v) for v in self.views)
        n = validated[0].shape[0]
        for i, v in enumerate(validated):
            if v.shape[0] != n:
                raise GraphValidationError(
                    f"view {i} has {v.shape[0]} nodes, expected {n} (dimension mismatch)")
        object.__setattr__(self, "views", validated)
        if self.node_names is not None:
            names = tuple(str(s) for s in self.node_names)
            if len(names) != n:
                raise GraphValidationError(
                    f"got {len(names)} node names for {n} nodes")
            object.__setattr__(self, "node_names", names)

    @property
    def n(self) -> int:
        return self.views[0].shape[0]

    @property
    def m(self) -> int:
        return len(self.views)


def degree(view: np.ndarray) -> np.ndarray:
    """Row-sum degree vector d_i = sum_j a_ij of one affinity matrix."""
    return np.asarray(view, dtype=np.float64).sum(axis=1)


def random_walk_matrix(view: np.ndarray, isolated_policy: str = "error") -> np.ndarray:
    """Row-normalize an affinity matrix so each row is a neighbor distribution.

    Zero-degree nodes make the normalization undefined; `error` raises
    IsolatedNodeError naming the first such node, while `self_loop` first
    gives each isolated node a unit self-loop (its row becomes a point mass
    on itself).
    """
    if isolated_policy not in ISOLATED_POLICIES:
        raise ValueError(
            f"unknown isolated_policy {isolated_policy!r}; expected one of {ISOLATED_POLICIES}")
    a = np.asarray(view, dtype=np.float64)
    d = a.sum(axis=1)
    isolated = np.flatnonzero(d == 0)
    if isolated.size:
        if isolated_policy == "error":
            raise IsolatedNodeError(isolated[0])
        a = a.copy()
        a[isolated, isolated] = 1.0
        d = a.sum(axis=1)
    return a / d[:, None]


# ---------------------------------------------------------------------------
# File I/O
# ---------------------------------------------------------------------------

def save_matrix_csv(data: np.ndarray, path) -> None:
    """Write a dense matrix as headerless CSV with exact float round-trip."""
    arr = np.asarray(data, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {arr.shape}")
    # repr() of a Python float is the shortest string that parses back
    # bit-identically, so load(save(load(p))) == load(p).
    lines = [",".join(repr(float(x)) for x in row) for row in arr]
    Path(path).write_text("\n".join(lines) + "\n")


def load_matrix_csv(path) -> np.ndarray:
    """Read a headerless CSV matrix as float64."""
    try:
        arr = np.loadtxt(path, delimiter=",", dtype=np.float64, ndmin=2)
    except ValueError as exc:
        raise GraphValidationError(f"cannot parse matrix file {path}: {exc}") from exc
    return arr


def load_multiview(manifest_path) -> MultiViewGraph:
    """Load a multi-view graph from a JSON manifest.

    The manifest's `transform` (default `reject`) decides how negative
    entries in the referenced CSV matrices are handled before validation.
    """
    manifest_path = Path(manifest_path)
    try:
        manifest = json.loads(manifest_path.read_text())
    except json.JSONDecodeError as exc:
        raise GraphValidationError(f"invalid manifest JSON {manifest_path}: {exc}") from exc
    if not isinstance(manifest, dict) or "views" not in manifest:
        raise GraphValidationError(f"manifest {manifest_path} must be an object with a 'views' list")
    paths = manifest["views"]
    if not isinstance(paths, list) or len(paths) < 1:
        raise GraphValidationError("manifest 'views' must list at least one matrix file")
    transform = manifest.get("transform", "reject")
    base = manifest_path.parent
    views = []
    for rel in paths:
        raw = load_matrix_csv(base / rel)
        if raw.ndim != 2 or raw.shape[0] != raw.shape[1]:
            raise GraphValidationError(f"matrix file {rel} is not square: shape {raw.shape}")
        views.append(apply_transform(raw, transform))
    node_names = manifest.get("node_names")
    return MultiViewGraph(views=tuple(views), node_names=tuple(node_names) if node_names else None)


def save_multiview(graph: MultiViewGraph, out_dir, transform: str = "reject") -> Path:
    """Write a graph as view_<i>.csv files plus manifest.json; returns the manifest path."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    names = []
    for i, view in enumerate(graph.views):
        name = f"view_{i}.csv"
        save_matrix_csv(view, out_dir / name)
        names.append(name)
    manifest = {"views": names, "transform": transform}
    if graph.node_names is not None:
        manifest["node_names"] = list(graph.node_names)
    manifest_path = out_dir / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return manifest_path

"""Command-line interface.

One subcommand per pipeline stage, composed through files:

  generate          synthetic graph or two-cohort dataset (manifest + CSVs + truth)
  embed             fit the multi-view embedding for one graph
  hubs              score and select hubs (embedding row norms or betweenness)
  cluster-nodes     k-means over embedding rows
  cluster-subjects  embed a cohort and spectrally cluster the subjects
  evaluate          ACC / NMI of predicted labels against truth labels
  sweep-k           embed a cohort over a grid of k and report mean +/- std

Structured outputs are JSON; matrices are headerless CSV. Every JSON result
embeds the invoking configuration and the library version, so identical
configs and seeds reproduce results bit for bit. Failures print a
machine-readable JSON object to stderr and exit nonzero.

The MVGEHD_THREADS environment variable caps worker threads for per-subject
embedding (default: all cores).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .clustering import KMeansConfig, cluster_subjects, node_clusters
from .graph import load_matrix_csv, load_multiview, save_matrix_csv, save_multiview
from .hubs import betweenness, hub_report, hub_scores
from .metrics import evaluate
from .solver import EmbedConfig, solve
from .synth import PlantedSpec, generate_cohort, generate_multiview, save_truth


def _worker_count() -> int:
    env = os.environ.get("MVGEHD_THREADS")
    if env:
        count = int(env)
        if count < 1:
            raise ValueError(f"MVGEHD_THREADS must be >= 1, got {env}")
        return count
    return os.cpu_count() or 1


def _run_config(args: argparse.Namespace) -> dict:
    config = {k: v for k, v in vars(args).items() if k != "func"}
    return {k: (str(v) if isinstance(v, Path) else v) for k, v in sorted(config.items())}


def _write_json(path, payload: dict, args: argparse.Namespace) -> None:
    payload = dict(payload)
    payload["config"] = _run_config(args)
    payload["version"] = __version__
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _amend_json(path, args: argparse.Namespace) -> None:
    """Embed the run config and version into an already-written JSON file."""
    _write_json(path, json.loads(Path(path).read_text()), args)


def _read_labels(path) -> np.ndarray:
    obj = json.loads(Path(path).read_text())
    if "labels" not in obj:
        raise ValueError(f"{path} has no 'labels' field")
    return np.asarray(obj["labels"], dtype=np.int64)


def _parse_weights(text: str | None):
    if text is None:
        return None
    return tuple(float(x) for x in text.split(","))


def _parse_quality(text: str | None, views: int):
    if text is None:
        return 1.0
    parts = tuple(float(x) for x in text.split(","))
    return parts[0] if len(parts) == 1 and views != 1 else parts


def _embed_config(args: argparse.Namespace, k: int | None = None) -> EmbedConfig:
    return EmbedConfig(
        k=args.k if k is None else k,
        epsilon=args.epsilon,
        max_iters=args.max_iters,
        rel_tol=args.tol,
        weights=_parse_weights(getattr(args, "weights", None)),
        isolated_policy=args.isolated_policy,
    )


def _embed_cohort(manifest_paths, config_for_k) -> list:
    graphs = [load_multiview(p) for p in manifest_paths]
    with ThreadPoolExecutor(max_workers=_worker_count()) as pool:
        return list(pool.map(lambda g: solve(g, config_for_k)[0], graphs))


def _spec_from_args(args: argparse.Namespace, side: str = "") -> PlantedSpec:
    def pick(name, default):
        if side:
            override = getattr(args, f"b_{name}", None)
            if override is not None:
                return override
        return getattr(args, name, default)

    views = pick("views", 2)
    return PlantedSpec(
        n=args.n,
        clusters=pick("clusters", 2),
        hubs=pick("hubs", 0),
        views=views,
        p_intra=pick("p_intra", 0.9),
        p_inter=pick("p_inter", 0.01),
        noise_sigma=pick("noise", 0.01),
        view_quality=_parse_quality(pick("view_quality", None), views),
        hub_spread=pick("hub_spread", 0.7),
        seed=pick("seed", 0),
    )


def cmd_generate(args: argparse.Namespace) -> None:
    out = Path(args.out)
    spec_a = _spec_from_args(args)
    if args.cohort is None:
        graph, truth = generate_multiview(spec_a)
        manifest = save_multiview(graph, out)
        save_truth(truth, out / "truth.json")
        _amend_json(manifest, args)
        _amend_json(out / "truth.json", args)
        return
    count_a, count_b = (int(x) for x in args.cohort.split(","))
    spec_b = _spec_from_args(args, side="b")
    subjects, labels = generate_cohort(spec_a, spec_b, count_a, count_b)
    manifest_paths = []
    for i, graph in enumerate(subjects):
        manifest = save_multiview(graph, out / f"subject_{i:03d}")
        manifest_paths.append(str(manifest.relative_to(out)))
    _write_json(out / "cohort.json",
                {"subjects": manifest_paths, "labels": [int(x) for x in labels]}, args)
    _write_json(out / "cohort_truth.json", {"labels": [int(x) for x in labels]}, args)


def cmd_embed(args: argparse.Namespace) -> None:
    graph = load_multiview(args.manifest)
    config = _embed_config(args)
    embedding, alphas, trace = solve(graph, config)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    save_matrix_csv(embedding, out / "embedding.csv")
    _write_json(out / "weights.json", {"alphas": [float(a) for a in alphas]}, args)
    _write_json(out / "trace.json", {
        "objectives": [float(x) for x in trace.objectives],
        "alpha_history": [[float(a) for a in row] for row in trace.alpha_history],
        "iterations": trace.iterations,
        "converged": trace.converged,
    }, args)


def cmd_hubs(args: argparse.Namespace) -> None:
    if args.method == "row_norm":
        if args.embedding is None:
            raise ValueError("--method row_norm needs --embedding")
        scores = hub_scores(load_matrix_csv(args.embedding))
    else:
        if args.manifest is None:
            raise ValueError("--method betweenness needs --manifest")
        graph = load_multiview(args.manifest)
        if not 0 <= args.view < graph.m:
            raise ValueError(f"--view {args.view} out of range for {graph.m} views")
        scores = betweenness(graph.views[args.view])
    if args.hub_top is None and args.hub_threshold is None:
        raise ValueError("give --hub-top or --hub-threshold")
    report = hub_report(scores, args.method, top=args.hub_top,
                        threshold=args.hub_threshold)
    _write_json(args.out, json.loads(report.to_json()), args)


def cmd_cluster_nodes(args: argparse.Namespace) -> None:
    embedding = load_matrix_csv(args.embedding)
    labels = node_clusters(embedding, args.k,
                           KMeansConfig(restarts=args.restarts, seed=args.seed))
    _write_json(args.out, {"k": args.k, "labels": [int(x) for x in labels]}, args)


def _cohort_manifests(cohort_path) -> list:
    cohort_path = Path(cohort_path)
    obj = json.loads(cohort_path.read_text())
    if "subjects" not in obj:
        raise ValueError(f"{cohort_path} has no 'subjects' field")
    return [cohort_path.parent / p for p in obj["subjects"]]


def cmd_cluster_subjects(args: argparse.Namespace) -> None:
    manifests = _cohort_manifests(args.cohort)
    embeddings = _embed_cohort(manifests, _embed_config(args, k=args.embed_k))
    labels = cluster_subjects(embeddings, args.k,
                              KMeansConfig(restarts=args.restarts, seed=args.seed))
    _write_json(args.out, {"k": args.k, "labels": [int(x) for x in labels]}, args)


def cmd_evaluate(args: argparse.Namespace) -> None:
    result = evaluate(_read_labels(args.pred), _read_labels(args.truth))
    _write_json(args.out, json.loads(result.to_json()), args)


def cmd_sweep_k(args: argparse.Namespace) -> None:
    manifests = _cohort_manifests(args.cohort)
    truth = _read_labels(args.truth)
    if len(truth) != len(manifests):
        raise ValueError(f"{len(truth)} truth labels for {len(manifests)} subjects")
    rows = []
    for k in range(args.k_min, args.k_max + 1):
        embeddings = _embed_cohort(manifests, _embed_config(args, k=k))
        accs, nmis = [], []
        for rep in range(args.repeats):
            seed = int(np.random.SeedSequence(
                [0 if args.seed is None else args.seed, k, rep]).generate_state(1)[0])
            labels = cluster_subjects(embeddings, 2,
                                      KMeansConfig(restarts=args.restarts, seed=seed))
            result = evaluate(labels, truth)
            accs.append(result.acc)
            nmis.append(result.nmi)
        rows.append({
            "k": k,
            "acc_mean": float(np.mean(accs)),
            "acc_std": float(np.std(accs)),
            "nmi_mean": float(np.mean(nmis)),
            "nmi_std": float(np.std(nmis)),
        })
    best = max(rows, key=lambda r: r["acc_mean"])
    _write_json(args.out, {"rows": rows, "best": best}, args)


def _add_embed_flags(p: argparse.ArgumentParser, with_weights: bool = True) -> None:
    p.add_argument("--epsilon", type=float, default=1e-4,
                   help="residual smoothing constant (default 1e-4)")
    p.add_argument("--max-iters", type=int, default=100, help="iteration cap")
    p.add_argument("--tol", type=float, default=1e-6,
                   help="relative objective-change stopping threshold")
    p.add_argument("--isolated-policy", choices=("error", "self_loop"),
                   default="error", help="zero-degree node handling")
    if with_weights:
        p.add_argument("--weights", type=str, default=None,
                       help="comma list of fixed view weights (disables auto-weighting)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mvgehd",
        description="Auto-weighted multi-view graph embedding with hub detection.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="synthesize a planted graph or cohort")
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--clusters", type=int, default=2)
    p.add_argument("--hubs", type=int, default=0)
    p.add_argument("--views", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p-intra", type=float, default=0.9)
    p.add_argument("--p-inter", type=float, default=0.01)
    p.add_argument("--noise", type=float, default=0.01)
    p.add_argument("--view-quality", type=str, default=None,
                   help="comma list of per-view structure strengths in [0,1]")
    p.add_argument("--hub-spread", type=float, default=0.7)
    p.add_argument("--cohort", type=str, default=None, metavar="NA,NB",
                   help="generate NA+NB subjects instead of a single graph")
    for name, typ in (("clusters", int), ("hubs", int), ("seed", int),
                      ("p-intra", float), ("p-inter", float), ("noise", float),
                      ("hub-spread", float), ("view-quality", str)):
        p.add_argument(f"--b-{name}", type=typ, default=None,
                       help=f"cohort B override for --{name}")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("embed", help="fit the multi-view embedding of one graph")
    p.add_argument("--manifest", type=Path, required=True)
    p.add_argument("--k", type=int, required=True, help="embedding dimension")
    p.add_argument("--out", type=Path, required=True)
    _add_embed_flags(p)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("hubs", help="score nodes and select hubs")
    p.add_argument("--method", choices=("row_norm", "betweenness"), default="row_norm")
    p.add_argument("--embedding", type=Path, default=None,
                   help="embedding CSV (row_norm method)")
    p.add_argument("--manifest", type=Path, default=None,
                   help="graph manifest (betweenness method)")
    p.add_argument("--view", type=int, default=0, help="view index for betweenness")
    p.add_argument("--hub-top", type=int, default=None)
    p.add_argument("--hub-threshold", type=float, default=None)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_hubs)

    p = sub.add_parser("cluster-nodes", help="k-means on embedding rows")
    p.add_argument("--embedding", type=Path, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_cluster_nodes)

    p = sub.add_parser("cluster-subjects", help="embed a cohort and cluster subjects")
    p.add_argument("--cohort", type=Path, required=True,
                   help="cohort JSON listing subject manifests")
    p.add_argument("--embed-k", type=int, required=True, help="per-subject embedding dimension")
    p.add_argument("--k", type=int, default=2, help="number of subject clusters")
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", type=Path, required=True)
    _add_embed_flags(p)
    p.set_defaults(func=cmd_cluster_subjects)

    p = sub.add_parser("evaluate", help="ACC / NMI against truth labels")
    p.add_argument("--pred", type=Path, required=True)
    p.add_argument("--truth", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sweep-k", help="grid-search the embedding dimension")
    p.add_argument("--cohort", type=Path, required=True)
    p.add_argument("--truth", type=Path, required=True)
    p.add_argument("--k-min", type=int, default=5)
    p.add_argument("--k-max", type=int, default=15)
    p.add_argument("--repeats", type=int, default=20,
                   help="clustering repetitions per k (reseeding k-means)")
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", type=Path, required=True)
    _add_embed_flags(p)
    p.set_defaults(func=cmd_sweep_k)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except Exception as exc:  # surfaced as machine-readable JSON, nonzero exit
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

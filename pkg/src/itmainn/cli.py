"""Pipeline driver: ingest, augment, split, train, evaluate, serve, report.

Exit codes: 0 success, 1 configuration/validation problem, 2 runtime
failure. Every subcommand accepts --config (JSON file; flags override file
values) and --dry-run (validate and print the plan, write nothing). All
randomness flows from one --seed, expanded per stage with a stable label.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from datetime import datetime, timezone
from pathlib import Path

from .augment.engine import AugmentationConfig, AugmentationError, augment_manifest
from .data.manifest import DatasetError, DatasetLayout, DatasetManifest, ingest_dataset
from .data.splits import (
    FoldPlan,
    SplitError,
    SplitPlan,
    make_folds,
    stratified_split,
    training_pool,
)
from .evaluation.metrics import MetricReport
from .seeds import derive_seed

log = logging.getLogger("itmainn")

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2

TASKS = ("binary", "multiclass")


class ConfigError(Exception):
    pass


def _load_config(path) -> dict:
    if path is None:
        return {}
    try:
        raw = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top-level config must be a JSON object")
    return raw


def _pick(flag, cfg: dict, key: str, default=None):
    """Flag beats config file beats default."""
    if flag is not None:
        return flag
    return cfg.get(key, default)


def _require(value, what: str):
    if value is None:
        raise ConfigError(f"missing required setting: {what}")
    return value


def _check_task(task: str) -> str:
    if task not in TASKS:
        raise ConfigError(f"task must be one of {TASKS}, got {task!r}")
    return task


def _load_manifest(path) -> DatasetManifest:
    path = Path(_require(path, "manifest path"))
    if not path.exists():
        raise ConfigError(f"manifest not found: {path}")
    return DatasetManifest.load(path)


def _plan_lines(title: str, lines) -> None:
    print(f"dry-run: {title}")
    for line in lines:
        print(f"  - {line}")


def _timestamp() -> str:
    return datetime.now(timezone.utc).strftime("%Y%m%d-%H%M%S")


# ---------------------------------------------------------------- subcommands


def cmd_ingest(args, cfg):
    root = Path(_require(_pick(args.root, cfg, "root"), "--root"))
    task = _check_task(_pick(args.task, cfg, "task", "binary"))
    out = _pick(args.out, cfg, "out")
    include_augmented = bool(_pick(args.include_augmented, cfg, "include_augmented", True))
    on_undecodable = _pick(args.on_undecodable, cfg, "on_undecodable", "fail")
    if not root.is_dir():
        raise ConfigError(f"dataset root is not a directory: {root}")
    if args.dry_run:
        _plan_lines(
            "ingest",
            [
                f"scan {root} as {task} task (augmented: {include_augmented})",
                f"write manifest to {out or '<stdout>'}",
            ],
        )
        return
    manifest = ingest_dataset(
        root, task, include_augmented=include_augmented, on_undecodable=on_undecodable
    )
    if out:
        manifest.save(out)
        log.info("manifest written to %s", out)
    print(json.dumps({"counts": manifest.counts, "total_originals": manifest.total_originals}))


def cmd_augment(args, cfg):
    manifest_path = _pick(args.manifest, cfg, "manifest")
    out_root = _require(_pick(args.out_root, cfg, "output_root"), "--out-root")
    seed = _pick(args.seed, cfg, "seed", 0)
    targets = cfg.get("targets", {})
    if args.targets:
        try:
            targets = json.loads(args.targets)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"--targets is not valid JSON: {exc.msg}") from None
    if not targets:
        raise ConfigError("no augmentation targets given (per-class total counts)")
    manifest = _load_manifest(manifest_path)
    unknown = set(targets) - set(manifest.class_names)
    if unknown:
        raise ConfigError(f"targets name unknown classes: {sorted(unknown)}")
    aug_cfg = AugmentationConfig.from_dict(
        {
            **{k: v for k, v in cfg.items() if k in (
                "enabled_transforms", "parameter_ranges", "min_transforms", "max_transforms"
            )},
            "target_count_per_class": targets,
            "seed": derive_seed(seed, "augment"),
            "output_root": str(out_root),
        }
    )
    out = _pick(args.out, cfg, "out", str(Path(out_root) / "manifest.json"))
    if args.dry_run:
        counts = manifest.counts
        _plan_lines(
            "augment",
            [
                f"expand {name}: {counts.get(name, 0)} -> {target}"
                for name, target in sorted(targets.items())
            ]
            + [f"write images under {out_root}", f"write merged manifest to {out}"],
        )
        return
    merged = augment_manifest(manifest, aug_cfg)
    merged.save(out)
    totals = {
        name: sum(1 for i in merged.images if merged.class_names[i.class_label] == name)
        for name in merged.class_names
    }
    print(json.dumps({"totals": totals, "manifest": str(out)}))


def cmd_split(args, cfg):
    manifest = _load_manifest(_pick(args.manifest, cfg, "manifest"))
    test_fraction = float(_pick(args.test_fraction, cfg, "test_fraction", 0.2))
    val_fraction = float(_pick(args.val_fraction, cfg, "val_fraction", 0.0))
    rounding = _pick(args.rounding, cfg, "rounding", "half_up")
    seed = _pick(args.seed, cfg, "seed", 0)
    out = _require(_pick(args.out, cfg, "out"), "--out")
    if args.dry_run:
        _plan_lines(
            "split",
            [
                f"stratified split of {manifest.total_originals} originals",
                f"test={test_fraction} val={val_fraction} rounding={rounding}",
                f"write plan to {out}",
            ],
        )
        return
    plan = stratified_split(
        manifest, test_fraction, val_fraction, seed=derive_seed(seed, "split"), rounding=rounding
    )
    Path(out).write_text(json.dumps(plan.to_dict(), indent=2))
    print(
        json.dumps(
            {
                "train": len(plan.train_ids),
                "val": len(plan.val_ids),
                "test": len(plan.test_ids),
            }
        )
    )


def _resolve_model_parts(args, cfg, seed):
    """Shared backbone/head/provider setup for train-like subcommands."""
    from .models import build_model, get_spec
    from .models.heads import HeadSpec
    from .models.providers import LocalCacheProvider, TorchvisionProvider, ChainProvider, default_provider

    backbone = _require(_pick(args.backbone, cfg, "backbone"), "--backbone")
    task = _check_task(_pick(args.task, cfg, "task", "binary"))
    pretrained = bool(_pick(args.pretrained, cfg, "pretrained", True))
    weights_dir = _pick(getattr(args, "weights_dir", None), cfg, "weights_dir")
    provider = (
        ChainProvider(LocalCacheProvider(weights_dir), TorchvisionProvider())
        if weights_dir
        else default_provider()
    )
    spec = get_spec(backbone, provider=provider)

    def builder(train_cfg):
        head = HeadSpec(task=task, dropout_rate=train_cfg.dropout_rate)
        return build_model(
            spec,
            head,
            pretrained=pretrained,
            provider=provider,
            seed=derive_seed(seed, "model"),
        )

    return backbone, task, spec, builder


def _train_config_from(cfg: dict, seed: int):
    from .training.trainer import TrainConfig

    fields = {
        k: cfg[k]
        for k in (
            "learning_rate",
            "batch_size",
            "dropout_rate",
            "weight_decay",
            "optimizer",
            "max_epochs",
            "early_stop_patience",
        )
        if k in cfg
    }
    return TrainConfig(seed=derive_seed(seed, "train"), **fields)


def _split_from(args, cfg, manifest, seed) -> SplitPlan:
    split_path = _pick(getattr(args, "split", None), cfg, "split")
    if split_path:
        return SplitPlan.from_dict(json.loads(Path(split_path).read_text()))
    test_fraction = float(_pick(getattr(args, "test_fraction", None), cfg, "test_fraction", 0.2))
    val_fraction = float(_pick(getattr(args, "val_fraction", None), cfg, "val_fraction", 0.1))
    rounding = _pick(getattr(args, "rounding", None), cfg, "rounding", "half_up")
    return stratified_split(
        manifest, test_fraction, val_fraction, seed=derive_seed(seed, "split"), rounding=rounding
    )


def _write_reports(out_dir: Path, reports: dict, loss_field: str = "cross_entropy_loss"):
    from .evaluation.report import render_report

    csv_text = render_report(reports, "csv", loss_field=loss_field)
    md_text = render_report(reports, "markdown", loss_field=loss_field)
    (out_dir / "report.csv").write_text(csv_text)
    (out_dir / "report.md").write_text(md_text)
    return csv_text


def cmd_train(args, cfg):
    seed = _pick(args.seed, cfg, "seed", 0)
    manifest = _load_manifest(_pick(args.manifest, cfg, "manifest"))
    backbone, task, spec, builder = _resolve_model_parts(args, cfg, seed)
    if manifest.task != task:
        raise ConfigError(f"manifest task {manifest.task!r} does not match --task {task!r}")
    train_cfg = _train_config_from(cfg, seed)
    plan = _split_from(args, cfg, manifest, seed)
    if not plan.val_ids:
        raise ConfigError("training needs a validation split (val_fraction > 0 or plan with val_ids)")
    out_root = Path(_pick(args.out, cfg, "out", "runs"))
    run_dir = out_root / f"{_timestamp()}-{backbone}"
    if args.dry_run:
        _plan_lines(
            "train",
            [
                f"backbone {backbone} ({task}), {train_cfg.optimizer}"
                f" lr={train_cfg.learning_rate} batch={train_cfg.batch_size}",
                f"train/val/test originals: {len(plan.train_ids)}/{len(plan.val_ids)}/{len(plan.test_ids)}",
                f"artifacts under {run_dir}",
            ],
        )
        return

    from .models.bundle import export_bundle
    from .training.datasets import ManifestDataset
    from .training.trainer import evaluate_split, train

    model = builder(train_cfg)
    pool = training_pool(manifest, plan)
    train_ds = ManifestDataset(pool, spec.preprocess)
    val_ds = ManifestDataset(manifest.subset(plan.val_ids), spec.preprocess)
    test_ds = ManifestDataset(manifest.subset(plan.test_ids), spec.preprocess)
    run = train(model, train_ds, val_ds, train_cfg, run_dir=run_dir)
    report, _batch = evaluate_split(model, test_ds, batch_size=train_cfg.batch_size)

    (run_dir / "run_meta.json").write_text(
        json.dumps(
            {
                "backbone": backbone,
                "task": task,
                "class_names": list(model.class_names),
                "seed": seed,
                "split": plan.to_dict(),
            },
            indent=2,
        )
    )
    (run_dir / "metrics.json").write_text(
        json.dumps({"model": backbone, "metrics": report.to_dict()}, indent=2)
    )
    export_bundle(model, report, run_dir / "bundle")
    csv_text = _write_reports(run_dir, {backbone: report})
    print(csv_text.strip())
    log.info(
        "trained %s for %d epochs (best %d), artifacts in %s",
        backbone,
        len(run.epoch_log),
        run.best_epoch,
        run_dir,
    )


def cmd_gridsearch(args, cfg):
    seed = _pick(args.seed, cfg, "seed", 0)
    manifest = _load_manifest(_pick(args.manifest, cfg, "manifest"))
    backbone, task, spec, builder = _resolve_model_parts(args, cfg, seed)
    base_cfg = _train_config_from(cfg, seed)
    plan = _split_from(args, cfg, manifest, seed)
    if not plan.val_ids:
        raise ConfigError("grid search needs a validation split")
    budget = _pick(args.budget, cfg, "budget")

    from .training.grid import HyperGrid

    grid_fields = {
        k: tuple(cfg[k])
        for k in ("learning_rates", "batch_sizes", "dropout_rates", "weight_decays", "optimizers")
        if k in cfg
    }
    if "selection_metric" in cfg:
        grid_fields["selection_metric"] = cfg["selection_metric"]
    grid = HyperGrid(**grid_fields)

    out_root = Path(_pick(args.out, cfg, "out", "runs"))
    run_dir = out_root / f"{_timestamp()}-grid-{backbone}"
    n_configs = grid.size() if budget is None else min(int(budget), grid.size())
    if args.dry_run:
        _plan_lines(
            "gridsearch",
            [
                f"{grid.size()} candidate configs ({n_configs} after budget)",
                f"backbone {backbone} ({task}), select by {grid.selection_metric}",
                f"artifacts under {run_dir}",
            ],
        )
        return

    from .training.datasets import ManifestDataset
    from .training.grid import grid_search

    pool = training_pool(manifest, plan)
    train_ds = ManifestDataset(pool, spec.preprocess)
    val_ds = ManifestDataset(manifest.subset(plan.val_ids), spec.preprocess)
    best_cfg, results = grid_search(
        builder,
        grid,
        train_ds,
        val_ds,
        base_config=base_cfg,
        budget=None if budget is None else int(budget),
        seed=derive_seed(seed, "grid"),
    )
    run_dir.mkdir(parents=True, exist_ok=True)
    (run_dir / "gridsearch.json").write_text(
        json.dumps(
            {
                "best": best_cfg.to_dict(),
                "results": [
                    {
                        "config": r.config.to_dict(),
                        "metric": r.metric_value,
                        "val_loss": r.val_loss,
                        "epochs": len(r.run.epoch_log),
                    }
                    for r in results
                ],
            },
            indent=2,
        )
    )
    print(json.dumps({"best": best_cfg.to_dict(), "candidates": len(results)}))


def cmd_evaluate(args, cfg):
    bundle_path = Path(_require(_pick(args.bundle, cfg, "bundle"), "--bundle"))
    if not bundle_path.is_dir():
        raise ConfigError(f"bundle directory not found: {bundle_path}")
    dataset_root = _pick(args.dataset, cfg, "dataset")
    manifest_path = _pick(args.manifest, cfg, "manifest")
    if not dataset_root and not manifest_path:
        raise ConfigError("need --dataset or --manifest")
    split_seed = _pick(args.split_seed, cfg, "split_seed", 0)
    test_fraction = float(_pick(args.test_fraction, cfg, "test_fraction", 0.2))
    rounding = _pick(args.rounding, cfg, "rounding", "half_up")
    out_dir = Path(_pick(args.out, cfg, "out", "."))
    if args.dry_run:
        _plan_lines(
            "evaluate",
            [
                f"load bundle {bundle_path}",
                f"test split: fraction={test_fraction} seed={split_seed} rounding={rounding}",
                f"reports into {out_dir}",
            ],
        )
        return

    from .models.bundle import load_bundle
    from .training.datasets import ManifestDataset
    from .training.trainer import evaluate_split

    model = load_bundle(bundle_path)
    task = model.head_spec.task
    if manifest_path:
        manifest = _load_manifest(manifest_path)
    else:
        manifest = ingest_dataset(dataset_root, task)
    if manifest.task != task:
        raise ConfigError(f"dataset task {manifest.task!r} does not match bundle task {task!r}")
    plan = stratified_split(
        manifest, test_fraction, seed=derive_seed(split_seed, "split"), rounding=rounding
    )
    test_ds = ManifestDataset(manifest.subset(plan.test_ids), model.spec.preprocess)
    report, _batch = evaluate_split(model, test_ds)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_text = _write_reports(out_dir, {model.spec.name: report})
    print(csv_text.strip())


def cmd_crossval(args, cfg):
    seed = _pick(args.seed, cfg, "seed", 0)
    manifest = _load_manifest(_pick(args.manifest, cfg, "manifest"))
    backbone, task, spec, builder = _resolve_model_parts(args, cfg, seed)
    if manifest.task != task:
        raise ConfigError(f"manifest task {manifest.task!r} does not match --task {task!r}")
    k = int(_pick(args.k, cfg, "k", 5))
    train_cfg = _train_config_from(cfg, seed)
    out_dir = Path(_pick(args.out, cfg, "out", "runs")) / f"{_timestamp()}-cv-{backbone}"
    if args.dry_run:
        _plan_lines(
            "crossval",
            [
                f"{k}-fold cross-validation of {backbone} on {manifest.total_originals} originals",
                f"artifacts under {out_dir}",
            ],
        )
        return

    from .evaluation.crossval import cross_validate

    folds = make_folds(manifest, k, seed=derive_seed(seed, "folds"))
    fold_reports, aggregate = cross_validate(
        lambda: builder(train_cfg), manifest, folds, train_cfg, run_dir=out_dir
    )
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "folds.json").write_text(
        json.dumps(
            [{"fold": i, "metrics": r.to_dict()} for i, r in enumerate(fold_reports)], indent=2
        )
    )
    (out_dir / "aggregate.json").write_text(
        json.dumps({"model": backbone, "metrics": aggregate.to_dict()}, indent=2)
    )
    csv_text = _write_reports(out_dir, {backbone: aggregate})
    print(csv_text.strip())


def cmd_export(args, cfg):
    run_dir = Path(_require(_pick(args.run, cfg, "run"), "--run"))
    out = Path(_require(_pick(args.out, cfg, "out"), "--out"))
    meta_path = run_dir / "run_meta.json"
    if not meta_path.exists():
        raise ConfigError(f"no run_meta.json in {run_dir}")
    if args.dry_run:
        _plan_lines("export", [f"rebuild model from {run_dir}", f"bundle into {out}"])
        return

    import torch

    from .models import build_model, get_spec
    from .models.bundle import export_bundle
    from .models.heads import HeadSpec
    from .training.trainer import TrainConfig

    meta = json.loads(meta_path.read_text())
    train_cfg = TrainConfig.from_dict(json.loads((run_dir / "config.json").read_text()))
    spec = get_spec(meta["backbone"])
    model = build_model(
        spec,
        HeadSpec(task=meta["task"], dropout_rate=train_cfg.dropout_rate),
        pretrained=False,
        class_names=meta["class_names"],
    )
    model.load_state_dict(torch.load(run_dir / "best.pt", map_location="cpu"))
    model.epochs_trained = 1
    metrics = None
    metrics_path = run_dir / "metrics.json"
    if metrics_path.exists():
        metrics = MetricReport.from_dict(json.loads(metrics_path.read_text())["metrics"])
    bundle = export_bundle(model, metrics, out)
    print(json.dumps({"bundle": str(out), "checksum": bundle.checksum}))


def cmd_serve(args, cfg_unused):
    from .service.config import ServiceConfig
    from .service.app import serve

    config = ServiceConfig.from_file(args.config) if args.config else ServiceConfig()
    overrides = {}
    if args.bundle:
        overrides["bundle_path"] = Path(args.bundle)
    if args.store:
        overrides["store_path"] = Path(args.store)
    if args.centers:
        overrides["centers_csv"] = Path(args.centers)
    if args.token:
        overrides["api_token"] = args.token
    if args.host:
        overrides["host"] = args.host
    if args.port is not None:
        overrides["port"] = args.port
    if args.frontend:
        overrides["frontend_dist"] = Path(args.frontend)
    if overrides:
        from dataclasses import replace

        config = replace(config, **overrides)
    config = config.with_env()
    if args.dry_run:
        _plan_lines(
            "serve",
            [
                f"bundle: {config.bundle_path}",
                f"store: {config.store_path}",
                f"listen on {config.host}:{config.port}",
                f"frontend: {config.frontend_dist or '(none)'}",
            ],
        )
        return
    serve(config)


def cmd_report(args, cfg):
    runs_root = Path(_require(_pick(args.runs, cfg, "runs"), "--runs"))
    if not runs_root.is_dir():
        raise ConfigError(f"runs directory not found: {runs_root}")
    out_dir = _pick(args.out, cfg, "out")
    loss_field = _pick(args.loss, cfg, "loss", "cross_entropy_loss")
    metric_files = sorted(runs_root.glob("*/metrics.json"))
    if args.dry_run:
        _plan_lines("report", [f"aggregate {len(metric_files)} run(s) from {runs_root}"])
        return
    reports = {}
    for path in metric_files:
        payload = json.loads(path.read_text())
        reports[payload["model"]] = MetricReport.from_dict(payload["metrics"])
    if not reports:
        raise ConfigError(f"no metrics.json files under {runs_root}")
    from .evaluation.report import render_report

    csv_text = render_report(reports, "csv", loss_field=loss_field)
    if out_dir:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        _write_reports(out, reports, loss_field)
    print(csv_text.strip())


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="itmainn",
        description="Skin-lesion classification pipeline and case service.",
    )
    sub = parser.add_subparsers(dest="command")

    def common(p):
        p.add_argument("--config", help="JSON config file; flags override its values")
        p.add_argument("--seed", type=int, default=None, help="base seed for all stages")
        p.add_argument("--dry-run", action="store_true", help="validate and print the plan only")

    p = sub.add_parser("ingest", help="scan a dataset tree into a manifest")
    common(p)
    p.add_argument("--root", help="dataset root directory")
    p.add_argument("--task", choices=TASKS)
    p.add_argument(
        "--include-augmented", action=argparse.BooleanOptionalAction, default=None
    )
    p.add_argument("--on-undecodable", choices=("fail", "skip"))
    p.add_argument("--out", help="manifest output path")
    p.set_defaults(handler=cmd_ingest)

    p = sub.add_parser("augment", help="expand classes to target counts")
    common(p)
    p.add_argument("--manifest")
    p.add_argument("--out-root", help="directory for generated images")
    p.add_argument("--targets", help='JSON object {"class name": total count}')
    p.add_argument("--out", help="merged manifest output path")
    p.set_defaults(handler=cmd_augment)

    p = sub.add_parser("split", help="stratified train/val/test split")
    common(p)
    p.add_argument("--manifest")
    p.add_argument("--test-fraction", type=float)
    p.add_argument("--val-fraction", type=float)
    p.add_argument("--rounding", choices=("half_up", "ceil", "floor"))
    p.add_argument("--out", help="split plan output path")
    p.set_defaults(handler=cmd_split)

    def train_like(p, with_split=True):
        common(p)
        p.add_argument("--manifest")
        p.add_argument("--backbone")
        p.add_argument("--task", choices=TASKS)
        p.add_argument("--pretrained", dest="pretrained", action="store_const", const=True, default=None)
        p.add_argument("--no-pretrained", dest="pretrained", action="store_const", const=False)
        p.add_argument("--weights-dir", help="local pretrained-weight cache directory")
        p.add_argument("--out", help="runs root directory")
        if with_split:
            p.add_argument("--split", help="existing split plan JSON")
            p.add_argument("--test-fraction", type=float)
            p.add_argument("--val-fraction", type=float)
            p.add_argument("--rounding", choices=("half_up", "ceil", "floor"))

    p = sub.add_parser("train", help="fine-tune one backbone")
    train_like(p)
    p.set_defaults(handler=cmd_train)

    p = sub.add_parser("gridsearch", help="sweep the hyperparameter grid")
    train_like(p)
    p.add_argument("--budget", type=int, help="max configs to try (seeded subsample)")
    p.set_defaults(handler=cmd_gridsearch)

    p = sub.add_parser("evaluate", help="evaluate a bundle on a held-out split")
    common(p)
    p.add_argument("--bundle")
    p.add_argument("--dataset", help="dataset root (ingested on the fly)")
    p.add_argument("--manifest", help="pre-built manifest (alternative to --dataset)")
    p.add_argument("--split-seed", type=int, dest="split_seed")
    p.add_argument("--test-fraction", type=float)
    p.add_argument("--rounding", choices=("half_up", "ceil", "floor"))
    p.add_argument("--out")
    p.set_defaults(handler=cmd_evaluate)

    p = sub.add_parser("crossval", help="k-fold cross-validation")
    train_like(p, with_split=False)
    p.add_argument("--k", type=int)
    p.set_defaults(handler=cmd_crossval)

    p = sub.add_parser("export", help="re-export a bundle from a training run")
    common(p)
    p.add_argument("--run", help="training run directory")
    p.add_argument("--out", help="bundle output directory")
    p.set_defaults(handler=cmd_export)

    p = sub.add_parser("serve", help="start the case service")
    common(p)
    p.add_argument("--bundle")
    p.add_argument("--store")
    p.add_argument("--centers", help="health-center registry CSV")
    p.add_argument("--token", help="bearer token for authority endpoints")
    p.add_argument("--host")
    p.add_argument("--port", type=int)
    p.add_argument("--frontend", help="static frontend directory served under /app")
    p.set_defaults(handler=cmd_serve)

    p = sub.add_parser("report", help="aggregate run metrics into a comparison table")
    common(p)
    p.add_argument("--runs", help="runs root directory")
    p.add_argument("--out", help="directory for report.csv / report.md")
    p.add_argument("--loss", choices=("cross_entropy_loss", "mse_loss"))
    p.set_defaults(handler=cmd_report)

    return parser


VALIDATION_ERRORS = (ConfigError, ValueError, KeyError, SplitError, DatasetError)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 1
        return EXIT_OK if code == 0 else EXIT_CONFIG
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(message)s")
    if getattr(args, "handler", None) is None:
        parser.print_help(sys.stderr)
        return EXIT_CONFIG
    try:
        cfg = _load_config(getattr(args, "config", None))
        args.handler(args, cfg)
    except VALIDATION_ERRORS as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    except KeyboardInterrupt:
        return EXIT_RUNTIME
    except Exception as exc:  # runtime failures map to exit 2
        log.error("%s: %s", type(exc).__name__, exc)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

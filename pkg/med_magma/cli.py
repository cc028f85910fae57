# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Command line interface."""

import argparse
import logging
import os
import sys
import time
from dataclasses import replace
from pathlib import Path

from . import __version__
from .bench import run_benchmark, summarize
from .config import (
    METHODS,
    BenchConfig,
    FitConfig,
    SweepConfig,
    SynthConfig,
    load_config,
)
from .errors import ConvergenceError, InputError, MedMagmaError
from .extract import (
    DenseOptions,
    dataset_extract,
    is_matrixmarket,
    read_edges,
    read_factor,
    read_labels,
)
from .load import BundleWriter, DatasetWriter, FileLoad, FitWriter, TableWriter
from .load.files import write_json
from .manifest import MANIFEST_NAME, RunManifest
from .metrics import evaluate_graph
from .streams import Stream
from .synth import generate_experiment
from .transform import Chain, DenoiseTransform, FitTransform, PreprocessTransform

logger = logging.getLogger(__name__)

OUTPUT_ROOT_ENV = "MED_MAGMA_OUTPUT_ROOT"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
METRICS_SCHEMA_VERSION = 1


def _outdir(args):
    if args.outdir:
        return Path(args.outdir)
    return Path(os.environ.get(OUTPUT_ROOT_ENV, ".")) / args.command


def _override(cfg, **changes):
    changes = {key: value for key, value in changes.items() if value is not None}
    try:
        return replace(cfg, **changes) if changes else cfg
    except TypeError as err:
        raise InputError(str(err)) from err


def _dense_options(args):
    return DenseOptions(
        delimiter=args.delimiter,
        header=not args.no_header,
        index=not args.no_index,
        label_column=args.label_column,
    )


class _Recorder:
    """Keep the last entry passing through a stream."""

    def __init__(self, transform):
        self.transform = transform
        self.last = None

    def run(self, entries):
        for entry in self.transform.run(entries):
            self.last = entry
            yield entry


def cmd_denoise(args, argv):
    """Write the denoised matrix, in the input's format, next to its manifest."""
    output = Path(args.output)
    started = time.perf_counter()
    recorder = _Recorder(DenoiseTransform())
    writer = DatasetWriter(
        output.name, args.delimiter, matrixmarket=is_matrixmarket(args.input)
    )
    stream = Stream(
        dataset_extract(args.input, _dense_options(args)),
        recorder,
        FileLoad(output.parent, [writer]),
        name="denoise",
    )
    written = stream.run(cleanup=True)
    step = recorder.last.provenance[-1]
    print(
        f"nnz={step['nnz']} residual_row={step['residuals']['row']:.3e} "
        f"residual_col={step['residuals']['col']:.3e}"
    )
    manifest = RunManifest.for_inputs(
        "denoise",
        argv,
        [args.input],
        timings={"total": time.perf_counter() - started},
        outputs=[str(path) for path in written],
    )
    manifest.write(output.with_name(f"{output.name}.{MANIFEST_NAME}"))
    return 0


def _fit_config(args):
    cfg = load_config(args.config, FitConfig)
    cfg = _override(
        cfg,
        seed=args.seed,
        em_tol=args.em_tol,
        em_max_iters=args.max_iters,
        correction_enabled=False if args.no_correction else None,
    )
    return cfg


def cmd_fit(args, argv):
    """Fit the factors of one dataset and write them with the fit report."""
    cfg = _fit_config(args)
    outdir = _outdir(args)
    started = time.perf_counter()
    steps = [FitTransform(cfg)]
    if args.preprocess:
        steps.insert(0, PreprocessTransform(n_genes=args.n_genes))
    recorder = _Recorder(Chain(*steps))
    stream = Stream(
        dataset_extract(args.input, _dense_options(args)),
        recorder,
        FileLoad(outdir, [FitWriter()]),
        name="fit",
    )
    written = stream.run(cleanup=True)
    manifest = RunManifest.for_inputs(
        "fit",
        argv,
        [args.input, args.config],
        config=cfg.to_dict(),
        seed=cfg.seed,
        timings={"total": time.perf_counter() - started},
        outputs=[path.name for path in written],
    )
    manifest.write(outdir / MANIFEST_NAME)
    report = recorder.last.report
    if report.failure:
        raise ConvergenceError(f"{report.failure}; artifacts written with the flag")
    if not report.converged:
        raise ConvergenceError("EM did not converge; artifacts written with the flag")
    return 0


def cmd_synth(args, argv):
    """Write synthetic replicates."""
    cfg = load_config(args.config, SynthConfig)
    cfg = _override(
        cfg,
        seed=args.seed,
        alpha=args.alpha,
        replicates=args.replicates,
        d_rows=args.d_rows,
        d_cols=args.d_cols,
    )
    outdir = _outdir(args)
    started = time.perf_counter()
    bundles = generate_experiment(cfg)
    written = FileLoad(outdir, [BundleWriter()]).run(enumerate(bundles), cleanup=True)
    RunManifest.for_inputs(
        "synth",
        argv,
        [args.config],
        config=cfg.to_dict(),
        seed=cfg.seed,
        timings={"total": time.perf_counter() - started},
        outputs=[str(path.relative_to(outdir)) for path in written],
    ).write(outdir / MANIFEST_NAME)
    return 0


def cmd_eval(args, argv):
    """Score a fitted graph against labels and, optionally, a truth graph."""
    sweep = load_config(args.config, SweepConfig)
    graphdir = Path(args.graphdir)
    outdir = Path(args.outdir) if args.outdir else graphdir
    started = time.perf_counter()
    psi_path = graphdir / f"psi_{args.axis}.csv"
    psi = read_factor(psi_path)
    truth = read_edges(args.truth, psi.shape[0]) if args.truth else None
    if args.aupr_only and truth is None:
        raise InputError("--aupr-only needs --truth")
    labels = read_labels(args.labels)

    evaluation = evaluate_graph(psi, labels, sweep, truth=truth)
    metrics = {
        "schema_version": METRICS_SCHEMA_VERSION,
        "version": __version__,
        "axis": args.axis,
        **evaluation.to_dict(),
    }
    if args.aupr_only:
        metrics = {key: metrics[key] for key in ("schema_version", "version", "axis")}
        metrics["metrics"] = {"aupr": evaluation.metrics["aupr"]}
    outputs = [write_json(outdir / f"metrics_{args.axis}.json", metrics)]
    if not args.aupr_only:
        outputs += FileLoad(outdir, [TableWriter(f"sweep_{args.axis}.csv")]).run(
            [evaluation.table]
        )
    RunManifest.for_inputs(
        "eval",
        argv,
        [psi_path, args.labels, args.truth, args.config],
        config=sweep.to_dict(),
        seed=sweep.seed,
        timings={"total": time.perf_counter() - started},
        outputs=[path.name for path in outputs],
    ).write(outdir / f"eval_{args.axis}.{MANIFEST_NAME}")
    return 0


def cmd_bench(args, argv):
    """Run the paired benchmark and write its long-format table."""
    cfg = load_config(args.config, BenchConfig)
    cfg = _override(
        cfg,
        seed=args.seed,
        jobs=args.jobs,
        replicates=args.replicates,
        alphas=tuple(args.alphas) if args.alphas else None,
        methods=tuple(args.methods) if args.methods else None,
    )
    outdir = _outdir(args)
    started = time.perf_counter()
    rows = run_benchmark(cfg)
    written = FileLoad(outdir, [TableWriter("bench.csv")]).run([rows])
    summary = [
        {"method": method, "alpha": alpha, **scores}
        for (method, alpha), scores in summarize(rows).items()
    ]
    written.append(write_json(outdir / "summary.json", summary))
    RunManifest.for_inputs(
        "bench",
        argv,
        [args.config],
        config=cfg.to_dict(),
        seed=cfg.seed,
        timings={"total": time.perf_counter() - started},
        outputs=[path.name for path in written],
    ).write(outdir / MANIFEST_NAME)
    return 0


def cmd_replay(args, argv):
    """Re-run the command recorded in a manifest."""
    manifest = RunManifest.read(args.manifest)
    manifest.verify_inputs()
    if args.outdir and manifest.command in ("denoise", "eval"):
        raise InputError(f"{manifest.command} runs cannot be redirected")
    logger.info("replaying %s from %s", manifest.command, args.manifest)
    return run(manifest.replay_argv(args.outdir))


def _add_read_options(parser):
    parser.add_argument("--delimiter", default=",", help="field delimiter")
    parser.add_argument("--no-header", action="store_true", help="no header row")
    parser.add_argument("--no-index", action="store_true", help="no row-name column")
    parser.add_argument("--label-column", help="column holding row labels")


def build_parser():
    """Argument parser with one subcommand per pipeline step."""
    parser = argparse.ArgumentParser(
        prog="med-magma",
        description="Multi-axis graph learning under multiplicative noise.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true")
    verbosity.add_argument("-q", "--quiet", action="store_true")
    commands = parser.add_subparsers(dest="command", required=True)

    denoise = commands.add_parser("denoise", help="remove multiplicative noise")
    denoise.add_argument("input")
    denoise.add_argument("output")
    _add_read_options(denoise)
    denoise.set_defaults(handler=cmd_denoise)

    fit = commands.add_parser("fit", help="fit row and column precisions")
    fit.add_argument("input")
    fit.add_argument("--config", help="JSON fit config")
    fit.add_argument("--outdir")
    fit.add_argument("--seed", type=int)
    fit.add_argument("--em-tol", type=float)
    fit.add_argument("--max-iters", type=int)
    fit.add_argument("--no-correction", action="store_true")
    fit.add_argument(
        "--preprocess", action="store_true", help="select genes and squarify"
    )
    fit.add_argument("--n-genes", type=int, default=2000)
    _add_read_options(fit)
    fit.set_defaults(handler=cmd_fit)

    synth = commands.add_parser("synth", help="generate synthetic datasets")
    synth.add_argument("--config", help="JSON synth config")
    synth.add_argument("--outdir")
    synth.add_argument("--seed", type=int)
    synth.add_argument("--alpha", type=float)
    synth.add_argument("--replicates", type=int)
    synth.add_argument("--d-rows", type=int)
    synth.add_argument("--d-cols", type=int)
    synth.set_defaults(handler=cmd_synth)

    evaluate = commands.add_parser("eval", help="score a fitted graph")
    evaluate.add_argument("graphdir")
    evaluate.add_argument("--labels", required=True)
    evaluate.add_argument("--truth", help="truth edge list (TSV)")
    evaluate.add_argument("--axis", choices=("rows", "cols"), default="rows")
    evaluate.add_argument("--config", help="JSON sweep config")
    evaluate.add_argument("--outdir")
    evaluate.add_argument("--aupr-only", action="store_true")
    evaluate.set_defaults(handler=cmd_eval)

    bench = commands.add_parser("bench", help="paired noise-strength benchmark")
    bench.add_argument("--config", help="JSON bench config")
    bench.add_argument("--outdir")
    bench.add_argument("--seed", type=int)
    bench.add_argument("--jobs", type=int)
    bench.add_argument("--replicates", type=int)
    bench.add_argument("--alphas", type=float, nargs="+")
    bench.add_argument("--methods", choices=METHODS, nargs="+")
    bench.set_defaults(handler=cmd_bench)

    replay = commands.add_parser("replay", help="re-run a recorded command")
    replay.add_argument("manifest")
    replay.add_argument("--outdir")
    replay.set_defaults(handler=cmd_replay)
    return parser


def run(argv):
    """Parse and dispatch; errors propagate."""
    args = build_parser().parse_args(argv)
    return args.handler(args, argv)


def main(argv=None):
    """Entry point returning the process exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)
    try:
        return args.handler(args, argv)
    except MedMagmaError as err:
        print(f"med-magma: error: {err}", file=sys.stderr)
        return err.exit_code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: generate, cluster, evaluate, visualize, pipeline.

Exit codes: 0 success, 1 runtime or I/O failure, 2 usage or validation
error. Results go to stdout, diagnostics to stderr.

Seeds resolve as: --seed flag, then the seed in the spec/config/params,
then $SUBSPACE_KIT_SEED, then DEFAULT_SEED.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

import jsonschema

from . import __version__
from .algorithms import REGISTRY, algorithm_names, coerce_params, takes_seed
from .errors import InvalidParams, SubspaceKitError, ValidationError
from .evaluation import MEASURES, evaluate
from .formats import (atomic_write_text, read_clu, read_dataset, write_clu, write_cluster_tables,
                      write_csv)
from .generator import GeneratorSpec, generate
from .model import Clustering, Dataset
from .visualization import emit_colored_table, emit_subspace_matrix, parse_color

DEFAULT_SEED = 0
SEED_ENV = "SUBSPACE_KIT_SEED"

EXIT_OK, EXIT_RUNTIME, EXIT_USAGE = 0, 1, 2


class UsageError(ValidationError):
    pass


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def resolve_seed(cli_seed: Optional[int], config_seed: Optional[int] = None) -> int:
    if cli_seed is not None:
        return cli_seed
    if config_seed is not None:
        return config_seed
    env = os.environ.get(SEED_ENV)
    if env is not None and env.strip():
        try:
            value = int(env.strip())
        except ValueError:
            raise UsageError(f"{SEED_ENV}={env!r} is not an integer") from None
        if not 0 <= value < 2**64:
            raise UsageError(f"{SEED_ENV}={env!r} does not fit in 64 unsigned bits")
        return value
    return DEFAULT_SEED


def _seed_arg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def build_algorithm(name: str, raw_params: dict, seed: Optional[int], cli_seed: Optional[int] = None):
    """Look up ``name`` and construct its parameter record; UsageError/InvalidParams on bad input."""
    if name not in REGISTRY:
        raise UsageError(f"unknown algorithm {name!r}; available: {', '.join(algorithm_names())}")
    params_cls, runner = REGISTRY[name]
    raw = dict(raw_params)
    if takes_seed(name):
        raw["seed"] = resolve_seed(cli_seed, raw.get("seed", seed))
    return coerce_params(params_cls, raw), runner


def maximal_only(c: Clustering) -> Clustering:
    """Drop clusters whose subspace is strictly contained in another reported subspace."""
    spaces = {cl.dims for cl in c}
    keep = tuple(cl for cl in c if not any(cl.dims < s for s in spaces))
    return Clustering(keep, c.n_ref, c.d_ref, label=c.label)


def cluster_summary(c: Clustering, dim_names: Sequence[str]) -> list[str]:
    return [f"cluster {i}: {len(cl.objects)} objects, dims {{{', '.join(dim_names[j] for j in cl.sorted_dims())}}}"
            for i, cl in enumerate(c)]


def _parse_kv(items: Sequence[str]) -> dict:
    out = {}
    for item in items or ():
        if "=" not in item:
            raise UsageError(f"--param expects name=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _parse_measures(text: str) -> list[str]:
    names = [m.strip().lower() for m in text.split(",") if m.strip()]
    if not names:
        raise UsageError("--measure needs at least one measure name")
    for m in names:
        if m not in MEASURES:
            raise UsageError(f"unknown measure {m!r}; available: {', '.join(sorted(MEASURES))}")
    return names


def _load_data(path, fmt, no_header=False, delimiter=",") -> Dataset:
    return read_dataset(path, fmt, has_header=not no_header, delimiter=delimiter)


# -- commands -----------------------------------------------------------------


def cmd_generate(args) -> int:
    try:
        with open(args.spec, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as e:
        raise UsageError(f"{args.spec}: invalid JSON ({e})") from None
    if not isinstance(raw, dict):
        raise UsageError(f"{args.spec}: expected a JSON object")
    seed = resolve_seed(args.seed, raw.get("seed"))
    spec = GeneratorSpec.from_dict(raw, seed=seed)
    data, truth = generate(spec)
    write_csv(data, args.out)
    write_clu(truth, args.truth)
    print(f"n={data.n} d={data.d} k={len(truth)}")
    return EXIT_OK


def cmd_cluster(args) -> int:
    params, runner = build_algorithm(args.algo, _parse_kv(args.param), None, args.seed)
    data = _load_data(args.input, args.format, args.no_header, args.delimiter)
    result = runner(data, params)
    if args.maximal_only:
        result = maximal_only(result)
    write_clu(result, args.out)
    if args.tables:
        write_cluster_tables(result, f"{args.tables}_dims.csv", f"{args.tables}_objects.csv", data.dim_names)
    for line in cluster_summary(result, data.dim_names):
        print(line)
    return EXIT_OK


def _append_csv_row(path, found_path, ref_path, report) -> None:
    p = Path(path)
    new = not p.exists() or p.stat().st_size == 0
    with open(p, "a", encoding="utf-8", newline="\n") as fh:
        if new:
            fh.write("found,reference," + report.csv_header() + "\n")
        fh.write(f"{found_path},{ref_path}," + report.csv_row() + "\n")


def cmd_evaluate(args) -> int:
    measures = _parse_measures(args.measure)
    ref_path = args.truth or args.compare
    data = _load_data(args.data, args.format, args.no_header, args.delimiter)
    found = read_clu(args.found, data.n, data.d)
    ref = read_clu(ref_path, data.n, data.d)
    report = evaluate(measures, found, ref, data, per_cluster=args.per_cluster)
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    for line in report.lines(per_cluster=args.per_cluster):
        print(line)
    if args.csv:
        _append_csv_row(args.csv, args.found, ref_path, report)
    return EXIT_OK


def _palette(text: Optional[str]):
    if not text:
        return None
    return [parse_color(c) for c in text.split(",") if c.strip()]


def cmd_visualize(args) -> int:
    if not args.html and not args.matrix:
        raise UsageError("visualize needs --html and/or --matrix")
    palette = _palette(args.palette)
    data = _load_data(args.data, args.format, args.no_header, args.delimiter)
    clustering = read_clu(args.clusters, data.n, data.d)
    if args.html:
        emit_colored_table(data, clustering, palette, args.html, show_unclustered=not args.hide_unclustered)
    if args.matrix:
        emit_subspace_matrix(clustering, data.dim_names, args.matrix, palette)
    return EXIT_OK


# -- pipeline -------------------------------------------------------------------


def pipeline_schema() -> dict:
    text = resources.files("subspace_kit").joinpath("schemas/pipeline.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def load_pipeline_config(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            config = json.load(fh)
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: invalid JSON ({e})") from None
    validator = jsonschema.Draft202012Validator(pipeline_schema())
    errors = sorted(validator.iter_errors(config), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        where = "/".join(str(p) for p in e.absolute_path) or "(root)"
        raise UsageError(f"{path}: config invalid at {where}: {e.message}")
    return config


def cmd_pipeline(args) -> int:
    config = load_pipeline_config(args.config)
    base = Path(args.config).resolve().parent

    def resolve(p):
        p = Path(p)
        return p if p.is_absolute() else base / p

    global_seed = resolve_seed(args.seed, config.get("seed"))
    source = config["source"]
    measures = list(config.get("measures", []))
    outputs = config.get("outputs", {})

    # validate everything that can be validated before running anything
    spec = None
    if "generator" in source:
        gen = dict(source["generator"])
        gen_seed = args.seed if args.seed is not None else gen.get("seed", global_seed)
        spec = GeneratorSpec.from_dict(gen, seed=gen_seed)
    elif measures and "truth" not in source:
        raise UsageError("truth required: measures requested for a file source without a 'truth' path")
    steps = []
    for i, step in enumerate(config["steps"], 1):
        try:
            params, runner = build_algorithm(step["algorithm"], step.get("params") or {}, global_seed, args.seed)
        except (UsageError, InvalidParams) as e:
            raise UsageError(f"step {i}: {e}") from None
        steps.append((step["algorithm"], params, runner))

    lines = []
    if spec is not None:
        data, truth = generate(spec)
        lines.append(f"source: generator n={data.n} d={data.d} k={len(truth)} seed={spec.seed}")
    else:
        data = _load_data(resolve(source["file"]), source.get("format"),
                          not source.get("has_header", True), source.get("delimiter", ","))
        truth = read_clu(resolve(source["truth"]), data.n, data.d) if "truth" in source else None
        lines.append(f"source: file {source['file']} n={data.n} d={data.d}")

    result = None
    for i, (name, params, runner) in enumerate(steps, 1):
        try:
            result = runner(data, params)
        except SubspaceKitError as e:
            for line in lines:
                print(line)
            _err(f"step {i} ({name}) failed: {e}")
            return EXIT_RUNTIME
        lines.append(f"step {i}: {name} -> {len(result)} clusters")
    lines.extend(cluster_summary(result, data.dim_names))
    if measures:
        report = evaluate(measures, result, truth, data)
        for w in report.warnings:
            print(f"warning: {w}", file=sys.stderr)
        lines.extend(report.lines())

    if "clusters" in outputs:
        write_clu(result, resolve(outputs["clusters"]))
    if "html" in outputs:
        emit_colored_table(data, result, None, resolve(outputs["html"]))
    if "matrix" in outputs:
        emit_subspace_matrix(result, data.dim_names, resolve(outputs["matrix"]))
    if "report" in outputs:
        atomic_write_text(resolve(outputs["report"]), "\n".join(lines) + "\n")
    for line in lines:
        print(line)
    return EXIT_OK


# -- entry point ------------------------------------------------------------------


def _add_data_options(p) -> None:
    p.add_argument("--format", choices=["arff", "csv"], help="dataset format (default: by file extension)")
    p.add_argument("--no-header", action="store_true", help="CSV input has no header row")
    p.add_argument("--delimiter", default=",", help="CSV field delimiter (default ',')")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subspace-kit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="synthesize data with hidden subspace clusters")
    p.add_argument("--spec", required=True, help="generator spec (JSON object)")
    p.add_argument("--out", required=True, help="dataset CSV to write")
    p.add_argument("--truth", required=True, help="ground-truth .clu to write")
    p.add_argument("--seed", type=_seed_arg)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("cluster", help="run a subspace clustering algorithm")
    p.add_argument("--algo", required=True, help=f"one of: {', '.join(algorithm_names())}")
    p.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")
    p.add_argument("--in", dest="input", required=True, help="dataset (ARFF or CSV)")
    p.add_argument("--out", required=True, help=".clu file to write")
    p.add_argument("--tables", metavar="PREFIX", help="also write PREFIX_dims.csv and PREFIX_objects.csv")
    p.add_argument("--maximal-only", action="store_true",
                   help="keep only clusters in subspaces not contained in another reported subspace")
    p.add_argument("--seed", type=_seed_arg)
    _add_data_options(p)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("evaluate", help="score a clustering against a reference")
    p.add_argument("--found", required=True, help="found clustering (.clu)")
    ref = p.add_mutually_exclusive_group(required=True)
    ref.add_argument("--truth", help="ground-truth clustering (.clu)")
    ref.add_argument("--compare", help="second found clustering used as the reference")
    p.add_argument("--data", required=True, help="dataset the clusterings refer to")
    p.add_argument("--measure", required=True, help=f"comma list from: {', '.join(sorted(MEASURES))}")
    p.add_argument("--per-cluster", action="store_true", help="also print per-cluster scores")
    p.add_argument("--csv", help="append one result row to this sweep file")
    _add_data_options(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("visualize", help="render HTML table and/or SVG subspace matrix")
    p.add_argument("--data", required=True)
    p.add_argument("--clusters", required=True, help="clustering (.clu)")
    p.add_argument("--html", help="colored object table to write")
    p.add_argument("--matrix", help="SVG cluster x dimension matrix to write")
    p.add_argument("--palette", help="comma list of #rrggbb colors, cycled over clusters")
    p.add_argument("--hide-unclustered", action="store_true", help="omit objects in no cluster")
    _add_data_options(p)
    p.set_defaults(func=cmd_visualize)

    p = sub.add_parser("pipeline", help="run a generate/cluster/evaluate pipeline from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=_seed_arg)
    p.set_defaults(func=cmd_pipeline)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as e:
        _err(str(e))
        return EXIT_USAGE
    except (SubspaceKitError, OSError) as e:
        _err(str(e))
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())

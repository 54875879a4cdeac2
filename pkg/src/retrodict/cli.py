"""Command-line interface.

Subcommands::

    retrodict measure CHANNEL.json [--kind subjectivity|divergence|both] [--normalize]
    retrodict sample {classical|trit|qubit} [--count N] [--dim D] [--D x] [--grid N]
    retrodict experiment {bit|qubit|trit}
    retrodict verify {dpi|theorems|absorbing} [--dim D] [--pairs N]
    retrodict heatmap DATA.csv X Y VALUE

Global flags: ``--seed``, ``--samples``, ``--out``, ``--format`` and
``--config FILE``. The config file holds ``key = value`` lines using the long
flag names (``samples = 500``); flags given on the command line win.

Exit codes: 0 success, 1 property failure, 2 usage or config error, 3 I/O error.
"""

import argparse
import json
import logging
import sys

import numpy as np

from . import classical, experiments, heatmap, io, measures, quantum, samplers
from . import rng as rng_mod
from .errors import RetrodictError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

# config keys and their types, mirroring the long flags
_CONFIG_TYPES = {"seed": int, "samples": int, "quantum_samples": int, "out": str, "format": str,
                 "grid": int, "quota": int, "count": int, "quantum_count": int, "injected": int,
                 "dim": int, "pairs": int, "workers": int, "cache": str, "svg": bool, "check": bool}


class UsageError(Exception):
    pass


def _bool(text):
    low = str(text).strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"not a boolean: {text!r}")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="master seed (default 0)")
    common.add_argument("--samples", type=int, help="prior pairs per Monte Carlo estimate")
    common.add_argument("--quantum-samples", type=int, help="prior pairs for quantum estimates")
    common.add_argument("--out", help="output path (default: stdout or a name derived from the command)")
    common.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")
    common.add_argument("--config", help="flat key = value file with defaults for these flags")
    common.add_argument("--workers", type=int, help="threads for Monte Carlo loops")
    common.add_argument("--cache", help="JSON file caching erasure reference values")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="retrodict", description="Bayesian retrodiction irreversibility measures.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", parents=[common], help="measures of one channel file")
    p.add_argument("channel", help="channel JSON (classical, dilation or kraus)")
    p.add_argument("--kind", choices=("subjectivity", "divergence", "both"), default="both")
    p.add_argument("--normalize", action="store_true", help="divide by the erasure reference value")

    p = sub.add_parser("sample", parents=[common], help="write random channels as JSON")
    p.add_argument("family", choices=("classical", "trit", "qubit"))
    p.add_argument("--count", type=int)
    p.add_argument("--dim", type=int)
    p.add_argument("--D", type=float, default=0.0, help="restriction parameter of the trit sampler")
    p.add_argument("--grid", type=int, help="qubit grid size; one channel per cell")

    p = sub.add_parser("experiment", parents=[common], help="figure data sets")
    p.add_argument("name", choices=experiments.EXPERIMENTS)
    p.add_argument("--grid", type=int)
    p.add_argument("--quota", type=int)
    p.add_argument("--count", type=int, help="random trit channels per D value")
    p.add_argument("--injected", type=int, help="members of each special trit family")
    p.add_argument("--check", action="store_true", default=None, help="add quadrature cross-checks (bit)")
    p.add_argument("--svg", action="store_true", default=None, help="also write an SVG heatmap")

    p = sub.add_parser("verify", parents=[common], help="property suites; exit 1 on failure")
    p.add_argument("suite", choices=experiments.SUITES)
    p.add_argument("--dim", type=int)
    p.add_argument("--pairs", type=int, help="random pairs or instances")
    p.add_argument("--quantum-count", type=int, help="random qubit pairs or instances")

    p = sub.add_parser("heatmap", parents=[common], help="SVG heatmap from a CSV file")
    p.add_argument("data")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("value")
    p.add_argument("--bins", type=int, default=64)
    return parser


def resolve(args):
    """Merge the config file under the command-line flags; returns a plain dict."""
    opts = {}
    if args.config:
        for key, text in io.read_config(args.config).items():
            if key not in _CONFIG_TYPES:
                raise UsageError(f"unknown config key {key!r}")
            kind = _CONFIG_TYPES[key]
            try:
                opts[key] = _bool(text) if kind is bool else kind(text)
            except ValueError as exc:
                raise UsageError(f"bad value for {key}: {text!r}") from exc
    for key, value in vars(args).items():
        if value is not None:
            opts[key] = value
    opts.setdefault("seed", 0)
    opts.setdefault("format", "csv")
    return opts


def _experiment_config(opts, name="bit"):
    count = opts.get("pairs", opts.get("count"))
    return experiments.ExperimentConfig(
        experiment=name, seed=opts["seed"], samples=opts.get("samples"),
        quantum_samples=opts.get("quantum_samples"), grid=opts.get("grid"), quota=opts.get("quota", 1),
        count=count, quantum_count=opts.get("quantum_count"), injected=opts.get("injected", 40),
        dim=opts.get("dim", 3), check=bool(opts.get("check")), out=opts.get("out"),
        fmt=opts["format"], svg=bool(opts.get("svg")), workers=opts.get("workers", 1),
        cache_path=opts.get("cache"))


def cmd_measure(opts):
    chan = io.load_channel(opts["channel"])
    if chan.ndim == 2:
        npairs = opts.get("samples")
    else:
        npairs = opts.get("quantum_samples") or opts.get("samples")
    cfg = measures.IntegrationConfig(npairs=npairs, seed=opts["seed"], normalize=bool(opts.get("normalize")),
                                     workers=opts.get("workers", 1), cache_path=opts.get("cache"))
    out = {}
    if chan.ndim == 2:
        out.update(kind="classical", cad=classical.abs_determinant(chan), cfd=classical.cfd(chan),
                   cls=str(classical.classify(chan)))
        if chan.shape[0] == 3:
            out["skew"] = classical.skew(chan)
        fns = (measures.classical_subjectivity, measures.classical_avg_div_change)
    else:
        out.update(kind="quantum", qad=quantum.qad(chan), qfd=quantum.qfd(chan))
        fns = (measures.quantum_subjectivity, measures.quantum_avg_div_change)
    if opts["kind"] in ("subjectivity", "both"):
        out["subjectivity"] = fns[0](chan, cfg).to_dict()
    if opts["kind"] in ("divergence", "both"):
        out["divergence"] = fns[1](chan, cfg).to_dict()
    _emit_json(out, opts.get("out"))
    return EXIT_OK


def cmd_sample(opts):
    seed, count = opts["seed"], opts.get("count", 1)
    records = []
    if opts["family"] == "qubit":
        n = opts.get("grid", 4)
        for s in samplers.fill_grid(samplers.grid_cells(n), seed)[: count if "count" in opts else None]:
            records.append(io.dilation_to_json(s))
    else:
        for i in range(count):
            gen = rng_mod.stream(seed, i, tag=rng_mod.CHANNEL)
            if opts["family"] == "trit":
                m = samplers.sample_trit_channel_restricted(opts["D"], gen)
            else:
                m = samplers.random_stochastic(opts.get("dim", 3), gen)
            records.append(io.classical_to_json(m))
    _emit_json(records[0] if len(records) == 1 else records, opts.get("out"))
    return EXIT_OK


def cmd_experiment(opts):
    name = opts["name"]
    cfg = _experiment_config(opts, name)
    out = opts.get("out") or f"{name}_figure.{cfg.fmt}"
    if name == "bit":
        rows, extra = experiments.run_bit_figure(cfg), None
        axes = ("D", "F", "Is_norm")
    elif name == "qubit":
        rows, extra = experiments.run_qubit_figure(cfg)
        axes = ("qad", "qfd", "Is")
    else:
        rows, extra = experiments.run_trit_figure(cfg), None
        axes = ("cad", "cfd", "Is")
    io.write_rows(rows, out, cfg.fmt)
    written = [out]
    if extra is not None:
        stem, dot, ext = out.rpartition(".")
        cells_path = f"{stem}_cells.{ext}" if dot else f"{out}_cells"
        io.write_rows(extra, cells_path, cfg.fmt)
        written.append(cells_path)
    if cfg.svg:
        svg_path = out.rpartition(".")[0] + ".svg" if "." in out else out + ".svg"
        bins = (cfg.grid or 64) if name == "bit" else 32
        heatmap.emit_heatmap(rows, *axes, svg_path, nx=bins, ny=bins)
        written.append(svg_path)
    print("\n".join(written))
    return EXIT_OK


def cmd_verify(opts):
    cfg = _experiment_config(opts)
    report = experiments.verify_suite(cfg, opts["suite"])
    out = opts.get("out") or f"verify_{opts['suite']}.json"
    io.save_json(_clean(report), out)
    for prop in report["properties"]:
        print(f"{'PASS' if prop['pass'] else 'FAIL'}  {prop['name']}  statistic={prop['statistic']}")
    print(out)
    return EXIT_OK if report["pass"] else EXIT_FAIL


def cmd_heatmap(opts):
    rows = io.read_csv(opts["data"])
    out = opts.get("out") or opts["data"].rpartition(".")[0] + ".svg"
    heatmap.emit_heatmap(rows, opts["x"], opts["y"], opts["value"], out, nx=opts["bins"], ny=opts["bins"])
    print(out)
    return EXIT_OK


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if np.isfinite(v) else str(v)
    if isinstance(obj, (np.integer, np.bool_)):
        return obj.item()
    return obj


def _emit_json(obj, path):
    if path:
        io.save_json(_clean(obj), path)
    else:
        json.dump(_clean(obj), sys.stdout, indent=1)
        sys.stdout.write("\n")


_COMMANDS = {"measure": cmd_measure, "sample": cmd_sample, "experiment": cmd_experiment,
             "verify": cmd_verify, "heatmap": cmd_heatmap}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        opts = resolve(args)
        return _COMMANDS[args.command](opts)
    except (UsageError, ValueError, KeyError, RetrodictError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

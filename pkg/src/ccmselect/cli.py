"""Command-line interface.

Subcommands: ingest, stats, volume, evidence, select, fit-prior, simulate,
report. Every randomized stage takes an explicit --seed; outputs are
UTF-8 JSON written atomically, each embedding a run manifest with a
content digest of its inputs. Canonical graph files are the exception:
they keep the fixed serialization, and their manifest goes to the summary
printed on stdout.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import math
import os
import sys
import time
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

import numpy as np

from .errors import CCMError, SchemaError
from .evidence import (
    EvidenceResult,
    ModelId,
    ModelSpec,
    evidence_m1,
    evidence_m2,
    evidence_m3,
    evidence_m4,
    evidence_m5,
    posterior_probabilities,
)
from .enumeration import ORACLE_LIMIT_DEFAULT, volume_for_statistic
from .graph import (
    Graph,
    NodeType,
    StatisticKind,
    compute_statistic,
    graph_to_json,
    load_graph,
)
from .ingest import (
    IngestConfig,
    build_state_graph,
    load_ingest_config,
    parse_provider_file,
    parse_shared_patient_file,
)
from .priorfit import fit_prior
from .simulate import (
    BlockMixing,
    DegreeMixingLogistic,
    ErdosRenyi,
    ExponentialDegree,
    SimConfig,
    sample_network,
)

TOOL_VERSION = "1.0.0"

__all__ = ["main", "TOOL_VERSION"]


class _Stages:
    """Wall-clock stage timings in milliseconds."""

    def __init__(self):
        self.timings: dict[str, float] = {}

    def run(self, name, fn):
        start = time.perf_counter()
        out = fn()
        self.timings[name] = round((time.perf_counter() - start) * 1000.0, 3)
        return out


def _file_digest(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def _manifest(command: str, inputs: dict, params: dict, seed, stages: _Stages) -> dict:
    digest_basis = {
        "command": command,
        "inputs": {name: _file_digest(Path(p)) for name, p in sorted(inputs.items())},
        "params": {k: params[k] for k in sorted(params)},
    }
    blob = json.dumps(digest_basis, sort_keys=True, separators=(",", ":"))
    return {
        "command": command,
        "config_digest": hashlib.sha256(blob.encode()).hexdigest(),
        "seed": seed,
        "tool_version": TOOL_VERSION,
        "timings": stages.timings,
    }


def _dump_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _atomic_write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(f"{path.name}.tmp{os.getpid()}")
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _emit(payload: dict, out: str | None) -> None:
    text = _dump_json(payload)
    if out:
        _atomic_write_text(Path(out), text)
    sys.stdout.write(text)


def _log_or_none(value) -> float | None:
    return None if value.is_zero else value.log_magnitude


def _evidence_payload(model: ModelId, res: EvidenceResult) -> dict:
    log_e = _log_or_none(res.log_evidence)
    return {
        "model": model.value,
        "model_role": model.describe(),
        "log_evidence": log_e,
        "log10_evidence": None if log_e is None else log_e / math.log(10.0),
        "log_integral": _log_or_none(res.log_integral),
        "log_volume": _log_or_none(res.log_volume),
        "method": res.method.value,
        "diagnostics": dict(res.diagnostics),
    }


def _load_priors_file(path: str) -> dict:
    with open(path, "rb") as fh:
        raw = tomllib.load(fh)
    if not isinstance(raw, dict):
        raise SchemaError(f"{path}: prior file must contain model sections")
    return raw


def _require_keys(section: dict, keys: tuple[str, ...], where: str) -> None:
    missing = [k for k in keys if k not in section]
    if missing:
        raise SchemaError(f"prior section {where}: missing keys {missing}")


def _model_spec(model: ModelId, sections: dict, prob: float) -> ModelSpec:
    sec = sections.get(model.value, {})
    if model is ModelId.M1:
        return ModelSpec(ModelId.M1, prior_model_prob=prob)
    if model is ModelId.M2:
        _require_keys(sec, ("alpha", "beta"), "m2")
        return ModelSpec(
            ModelId.M2,
            beta_prior=(float(sec["alpha"]), float(sec["beta"])),
            prior_model_prob=prob,
        )
    if model is ModelId.M3:
        _require_keys(sec, ("mu", "sigma"), "m3")
        return ModelSpec(
            ModelId.M3,
            lambda_prior=(float(sec["mu"]), float(sec["sigma"])),
            prior_model_prob=prob,
        )
    if model is ModelId.M4:
        keys = ("alpha_pp", "beta_pp", "alpha_ps", "beta_ps", "alpha_ss", "beta_ss")
        _require_keys(sec, keys, "m4")
        blocks = (
            (float(sec["alpha_pp"]), float(sec["beta_pp"])),
            (float(sec["alpha_ps"]), float(sec["beta_ps"])),
            (float(sec["alpha_ss"]), float(sec["beta_ss"])),
        )
        return ModelSpec(ModelId.M4, beta_priors_blocks=blocks, prior_model_prob=prob)
    if model is ModelId.M5:
        _require_keys(sec, ("mean", "cov"), "m5")
        mean = tuple(float(x) for x in sec["mean"])
        cov = tuple(tuple(float(x) for x in row) for row in sec["cov"])
        return ModelSpec(ModelId.M5, mvn_prior=(mean, cov), prior_model_prob=prob)
    raise SchemaError(f"unknown model {model!r}")


def _model_probs(models: list[ModelId], sections: dict) -> list[float]:
    given = [
        sections.get(m.value, {}).get("prior_model_prob") for m in models
    ]
    if all(v is None for v in given):
        return [1.0 / len(models)] * len(models)
    if any(v is None for v in given):
        raise SchemaError(
            "either every selected model sets prior_model_prob or none does"
        )
    return [float(v) for v in given]


def _run_evidence(g: Graph, spec: ModelSpec, args) -> EvidenceResult:
    sampling = {
        "samples": args.samples,
        "seed": args.seed,
        "jobs": args.jobs,
        "oracle_limit": args.oracle_limit,
    }
    if spec.id is ModelId.M1:
        return evidence_m1(g)
    if spec.id is ModelId.M2:
        return evidence_m2(g, spec.beta_prior)
    if spec.id is ModelId.M3:
        return evidence_m3(
            g,
            spec.lambda_prior,
            normalized_pmf=getattr(args, "normalized_pmf", False),
            **sampling,
        )
    if spec.id is ModelId.M4:
        return evidence_m4(g, spec.beta_priors_blocks)
    return evidence_m5(
        g,
        spec.mvn_prior,
        mc_check_samples=getattr(args, "mc_check", 0),
        mc_seed=getattr(args, "mc_seed", None),
        **sampling,
    )


def _needs_seed(models: list[ModelId], g: Graph, oracle_limit: int) -> bool:
    return g.n > oracle_limit and any(
        m in (ModelId.M3, ModelId.M5) for m in models
    )


def _parse_models(text: str, parser) -> list[ModelId]:
    out = []
    for token in text.split(","):
        token = token.strip().lower()
        try:
            out.append(ModelId(token))
        except ValueError:
            parser.error(f"unknown model {token!r} (choose from m1..m5)")
    if len(set(out)) != len(out):
        parser.error("duplicate model in --models")
    return out


# ---------------------------------------------------------------- handlers


def _cmd_ingest(args) -> int:
    stages = _Stages()
    cfg = load_ingest_config(args.config) if args.config else IngestConfig()
    overrides = {}
    if args.threshold is not None:
        overrides["threshold"] = args.threshold
    if args.include_isolates:
        overrides["include_isolates"] = True
    if overrides:
        cfg = dataclasses.replace(cfg, **overrides)
    shared = stages.run(
        "parse_shared", lambda: parse_shared_patient_file(args.shared, cfg)
    )
    providers = stages.run(
        "parse_providers", lambda: parse_provider_file(args.providers, cfg)
    )
    g = stages.run(
        "build_graph",
        lambda: build_state_graph(
            shared, providers, args.state, include_isolates=cfg.include_isolates
        ),
    )
    stages.run("write_graph", lambda: _atomic_write_text(Path(args.out), graph_to_json(g)))
    inputs = {"shared": args.shared, "providers": args.providers}
    if args.config:
        inputs["config"] = args.config
    params = {
        "state": args.state,
        "threshold": cfg.threshold,
        "include_isolates": cfg.include_isolates,
    }
    by_type = _type_counts(g)
    summary = {
        "graph_file": str(args.out),
        "n": g.n,
        "edges": g.edge_count,
        "primary": by_type["primary"],
        "specialty": by_type["specialty"],
        "unmapped_specialties": dict(sorted(providers.unmapped_counts.items())),
        "manifest": _manifest("ingest", inputs, params, None, stages),
    }
    sys.stdout.write(_dump_json(summary))
    return 0


def _type_counts(g: Graph) -> dict:
    counts = {"primary": 0, "specialty": 0, "untyped": 0}
    for t in g.node_type:
        counts[t.value] += 1
    return counts


def _cmd_stats(args) -> int:
    stages = _Stages()
    g = stages.run("load", lambda: load_graph(args.graph))
    by_type = _type_counts(g)
    payload = {
        "n": g.n,
        "edges": g.edge_count,
        "primary": by_type["primary"],
        "specialty": by_type["specialty"],
        "untyped": by_type["untyped"],
        "manifest": _manifest("stats", {"graph": args.graph}, {}, None, stages),
    }
    _emit(payload, args.out)
    return 0


def _cmd_volume(args) -> int:
    stages = _Stages()
    g = stages.run("load", lambda: load_graph(args.graph))
    kind = StatisticKind(args.statistic)
    sv = stages.run("statistic", lambda: compute_statistic(g, kind))
    est = stages.run(
        "volume",
        lambda: volume_for_statistic(
            sv,
            samples=args.samples,
            seed=args.seed,
            jobs=args.jobs,
            oracle_limit=args.oracle_limit,
        ),
    )
    params = {
        "statistic": args.statistic,
        "samples": args.samples,
        "oracle_limit": args.oracle_limit,
    }
    payload = {
        "log_count": _log_or_none(est.log_count),
        "std_error_log": est.std_error_log,
        "method": est.method.value,
        "samples": est.samples,
        "manifest": _manifest("volume", {"graph": args.graph}, params, args.seed, stages),
    }
    _emit(payload, args.out)
    return 0


def _cmd_evidence(args) -> int:
    stages = _Stages()
    g = stages.run("load", lambda: load_graph(args.graph))
    model = _parse_models(args.model, args.parser)[0]
    if args.seed is None and _needs_seed([model], g, args.oracle_limit):
        args.parser.error(
            f"--seed is required: {model.value} estimates its volume by sampling"
        )
    sections = _load_priors_file(args.priors) if args.priors else {}
    if model is not ModelId.M1 and not args.priors:
        args.parser.error(f"--priors is required for {model.value}")
    spec = _model_spec(model, sections, 1.0)
    res = stages.run("evidence", lambda: _run_evidence(g, spec, args))
    payload = _evidence_payload(model, res)
    inputs = {"graph": args.graph}
    if args.priors:
        inputs["priors"] = args.priors
    params = {
        "model": model.value,
        "samples": args.samples,
        "oracle_limit": args.oracle_limit,
        "normalized_pmf": getattr(args, "normalized_pmf", False),
    }
    payload["manifest"] = _manifest("evidence", inputs, params, args.seed, stages)
    _emit(payload, args.out)
    return 0


def _cmd_select(args) -> int:
    stages = _Stages()
    g = stages.run("load", lambda: load_graph(args.graph))
    models = _parse_models(args.models, args.parser)
    if len(models) < 2:
        args.parser.error("--models needs at least two of m1..m5")
    if args.seed is None and _needs_seed(models, g, args.oracle_limit):
        args.parser.error("--seed is required: a selected model samples its volume")
    sections = _load_priors_file(args.priors) if args.priors else {}
    if not args.priors and any(m is not ModelId.M1 for m in models):
        args.parser.error("--priors is required for models other than m1")
    probs = _model_probs(models, sections)
    specs = [_model_spec(m, sections, p) for m, p in zip(models, probs)]
    results = []
    for spec in specs:
        res = stages.run(f"evidence_{spec.id.value}", lambda s=spec: _run_evidence(g, s, args))
        results.append((spec, res))
    posts = posterior_probabilities(results)
    rows = []
    for (spec, res), post in zip(results, posts):
        row = _evidence_payload(spec.id, res)
        row["prior_model_prob"] = spec.prior_model_prob
        row["posterior"] = post
        rows.append(row)
    best = max(rows, key=lambda r: r["posterior"])
    inputs = {"graph": args.graph}
    if args.priors:
        inputs["priors"] = args.priors
    params = {
        "models": [m.value for m in models],
        "samples": args.samples,
        "oracle_limit": args.oracle_limit,
    }
    payload = {
        "models": rows,
        "best_model": best["model"],
        "manifest": _manifest("select", inputs, params, args.seed, stages),
    }
    _emit(payload, args.out)
    return 0


def _priors_toml_text(spec: ModelSpec) -> str:
    lines = [f"[{spec.id.value}]"]
    if spec.id is ModelId.M2:
        alpha, beta = spec.beta_prior
        lines += [f"alpha = {float(alpha)!r}", f"beta = {float(beta)!r}"]
    elif spec.id is ModelId.M3:
        mu, sigma = spec.lambda_prior
        lines += [f"mu = {float(mu)!r}", f"sigma = {float(sigma)!r}"]
    elif spec.id is ModelId.M4:
        names = ("pp", "ps", "ss")
        for name, (alpha, beta) in zip(names, spec.beta_priors_blocks):
            lines += [
                f"alpha_{name} = {float(alpha)!r}",
                f"beta_{name} = {float(beta)!r}",
            ]
    elif spec.id is ModelId.M5:
        mean, cov = spec.mvn_prior
        lines.append("mean = [" + ", ".join(repr(float(x)) for x in mean) + "]")
        rows = ",\n  ".join(
            "[" + ", ".join(repr(float(x)) for x in row) + "]" for row in cov
        )
        lines.append("cov = [\n  " + rows + ",\n]")
    else:
        raise SchemaError("m1 has no hyperparameters to write")
    return "\n".join(lines) + "\n"


def _cmd_fit_prior(args) -> int:
    stages = _Stages()
    model = _parse_models(args.model, args.parser)[0]
    directory = Path(args.graphs)
    files = sorted(directory.glob("*.json"))
    if not files:
        raise SchemaError(f"no .json graphs found in {directory}")
    graphs = stages.run(
        "load", lambda: {f.stem: load_graph(f) for f in files}
    )
    report = stages.run(
        "fit", lambda: fit_prior(model, graphs, exclude=args.exclude)
    )
    stages.run(
        "write", lambda: _atomic_write_text(Path(args.out), _priors_toml_text(report.fitted))
    )
    inputs = {f.stem: f for f in files}
    params = {"model": model.value, "exclude": args.exclude}
    report_path = Path(args.out).with_suffix(".report.json")
    payload = {
        "model": model.value,
        "target_state": report.target_state,
        "priors_file": str(args.out),
        "per_state_summaries": report.per_state_summaries,
        "states_used": sorted(report.per_state_summaries),
        "manifest": _manifest("fit-prior", inputs, params, None, stages),
    }
    _atomic_write_text(report_path, _dump_json(payload))
    sys.stdout.write(_dump_json(payload))
    return 0


def _mechanism_from_args(args, parser):
    def need(flag, value):
        if value is None:
            parser.error(f"--{flag} is required for mechanism {args.mechanism!r}")
        return value

    if args.mechanism == "er":
        return ErdosRenyi(need("p", args.p))
    if args.mechanism == "expdeg":
        return ExponentialDegree(need("rate", args.rate))
    if args.mechanism == "blockmix":
        return BlockMixing(
            int(need("n-primary", args.n_primary)),
            need("p-pp", args.p_pp),
            need("p-ps", args.p_ps),
            need("p-ss", args.p_ss),
        )
    if args.mechanism == "degmixlog":
        raw = need("coefficients", args.coefficients)
        parts = [p.strip() for p in raw.split(",")]
        if len(parts) != 3:
            parser.error("--coefficients must be three comma-separated numbers")
        return DegreeMixingLogistic(
            need("rate", args.rate),
            tuple(float(p) for p in parts),
            swap_factor=args.swap_factor,
        )
    parser.error(f"unknown mechanism {args.mechanism!r}")


def _cmd_simulate(args) -> int:
    stages = _Stages()
    mech = _mechanism_from_args(args, args.parser)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    rep_seeds = [
        int(s) for s in np.random.SeedSequence(args.seed).generate_state(args.reps, np.uint64)
    ]
    files = []
    rows = []

    def run_all():
        width = max(3, len(str(args.reps - 1)))
        for i, rep_seed in enumerate(rep_seeds):
            g = sample_network(SimConfig(args.n, mech, seed=rep_seed))
            name = f"g{i:0{width}d}.json"
            _atomic_write_text(out_dir / name, graph_to_json(g))
            files.append(name)
            rows.append({"file": name, "n": g.n, "edges": g.edge_count, "seed": rep_seed})

    stages.run("simulate", run_all)
    params = {
        "mechanism": args.mechanism,
        "n": args.n,
        "reps": args.reps,
        "settings": {
            k: getattr(args, k)
            for k in ("p", "rate", "n_primary", "p_pp", "p_ps", "p_ss", "coefficients", "swap_factor")
            if getattr(args, k, None) is not None
        },
    }
    payload = {
        "directory": str(out_dir),
        "replicates": rows,
        "manifest": _manifest("simulate", {}, params, args.seed, stages),
    }
    _atomic_write_text(out_dir / "replicates.json", _dump_json(payload))
    sys.stdout.write(_dump_json(payload))
    return 0


def _cmd_report(args) -> int:
    stages = _Stages()
    g = stages.run("load", lambda: load_graph(args.graph))
    kind = StatisticKind(args.kind)
    sv = stages.run("statistic", lambda: compute_statistic(g, kind))
    if kind is StatisticKind.EDGE_COUNT:
        rows = [["edges", sv.edge_count]]
    elif kind is StatisticKind.DEGREE_DISTRIBUTION:
        rows = [
            [k, c] for k, c in enumerate(sv.degree_distribution) if c > 0
        ]
    elif kind is StatisticKind.TYPE_MIXING:
        e_pp, e_ps, e_ss = sv.type_mixing
        rows = [["pp", e_pp], ["ps", e_ps], ["ss", e_ss]]
    else:
        rows = [[k, l, c] for (k, l), c in sorted(sv.degree_mixing.items())]
    payload = {
        "kind": kind.value,
        "rows": rows,
        "manifest": _manifest("report", {"graph": args.graph}, {"kind": kind.value}, None, stages),
    }
    _emit(payload, args.out)
    return 0


# ---------------------------------------------------------------- parser


def _add_sampling_flags(sub) -> None:
    sub.add_argument("--samples", type=int, default=10_000,
                     help="importance samples for estimated volumes (default 10000)")
    sub.add_argument("--seed", type=int, default=None,
                     help="RNG seed; required whenever sampling is involved")
    sub.add_argument("--jobs", type=int, default=1,
                     help="worker processes for sampling (default 1)")
    sub.add_argument("--oracle-limit", type=int, default=ORACLE_LIMIT_DEFAULT,
                     help="largest n counted exactly (default %(default)s)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ccmselect",
        description="Bayesian selection among congruence class network models",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {TOOL_VERSION}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("ingest", help="parse claims-style files into a state graph")
    p.add_argument("--shared", required=True, help="shared-activity pair file")
    p.add_argument("--providers", required=True, help="provider roster file")
    p.add_argument("--state", required=True, help="two-letter state code")
    p.add_argument("--threshold", type=int, default=None,
                   help="minimum shared count to keep an edge")
    p.add_argument("--config", default=None, help="TOML ingest configuration")
    p.add_argument("--include-isolates", action="store_true",
                   help="keep in-state providers with no retained edges")
    p.add_argument("--out", required=True, help="output graph JSON path")
    p.set_defaults(handler=_cmd_ingest)

    p = subs.add_parser("stats", help="node, edge, and type counts of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_stats)

    p = subs.add_parser("volume", help="congruence class size for one statistic")
    p.add_argument("--graph", required=True)
    p.add_argument("--statistic", required=True,
                   choices=[k.value for k in StatisticKind])
    _add_sampling_flags(p)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_volume)

    p = subs.add_parser("evidence", help="log evidence of one model")
    p.add_argument("--graph", required=True)
    p.add_argument("--model", required=True, help="one of m1..m5")
    p.add_argument("--priors", "--prior", dest="priors", default=None,
                   help="TOML file with hyperparameter sections")
    p.add_argument("--normalized-pmf", action="store_true",
                   help="m3 only: normalize the geometric degree weights")
    p.add_argument("--mc-check", type=int, default=0,
                   help="m5 only: Monte Carlo cross-check sample count")
    p.add_argument("--mc-seed", type=int, default=None,
                   help="m5 only: seed for the Monte Carlo cross-check")
    _add_sampling_flags(p)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_evidence)

    p = subs.add_parser("select", help="posterior model probabilities")
    p.add_argument("--graph", required=True)
    p.add_argument("--models", required=True, help="comma list, e.g. m2,m3")
    p.add_argument("--priors", "--prior", dest="priors", default=None,
                   help="TOML file with hyperparameter sections")
    _add_sampling_flags(p)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_select)

    p = subs.add_parser("fit-prior", help="leave-one-out empirical priors")
    p.add_argument("--graphs", required=True, help="directory of state graph JSONs")
    p.add_argument("--exclude", default=None, help="state to hold out")
    p.add_argument("--model", required=True, help="m2, m3, m4, or m5")
    p.add_argument("--out", required=True, help="output priors TOML path")
    p.set_defaults(handler=_cmd_fit_prior)

    p = subs.add_parser("simulate", help="draw synthetic networks")
    p.add_argument("--mechanism", required=True,
                   choices=["er", "expdeg", "blockmix", "degmixlog"])
    p.add_argument("--n", type=int, required=True, help="node count")
    p.add_argument("--p", type=float, default=None, help="er edge probability")
    p.add_argument("--rate", type=float, default=None,
                   help="expdeg/degmixlog degree rate")
    p.add_argument("--n-primary", type=int, default=None, help="blockmix primary count")
    p.add_argument("--p-pp", type=float, default=None)
    p.add_argument("--p-ps", type=float, default=None)
    p.add_argument("--p-ss", type=float, default=None)
    p.add_argument("--coefficients", default=None,
                   help="degmixlog: three comma-separated cell coefficients")
    p.add_argument("--swap-factor", type=int, default=10,
                   help="degmixlog: swap attempts per edge (default 10)")
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(handler=_cmd_simulate)

    p = subs.add_parser("report", help="statistic table for a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--kind", required=True, choices=[k.value for k in StatisticKind])
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    # each handler can signal usage errors through the parser it came from
    args.parser = parser
    try:
        return args.handler(args)
    except CCMError as exc:
        detail = {"type": type(exc).__name__, "message": str(exc)}
        for extra in ("line", "violated_index", "trace"):
            value = getattr(exc, extra, None)
            if value is not None:
                detail[extra] = value
        sys.stderr.write(_dump_json({"error": detail}))
        return 1
    except OSError as exc:
        sys.stderr.write(
            _dump_json({"error": {"type": type(exc).__name__, "message": str(exc)}})
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())

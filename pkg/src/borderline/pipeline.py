"""End-to-end runs: generation, boundary walks, analysis, artifact layout.

A run directory holds the manifest, one JSONL file per test set, a JSONL walk
log per mutator preset, and per-metric CSV/JSON analysis outputs. Everything
except manifest timestamps is a pure function of (config, seed), so repeated
runs produce byte-identical set and analysis files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .analysis import (
    BoundaryVerdict,
    ComparisonReport,
    boundary_verdict,
    cross_metric_analysis,
    write_distances_csv,
    write_summary_csv,
    write_verdict_json,
)
from .candidates import Candidate, TestSet, read_jsonl, write_jsonl
from .config import RunConfig
from .distance import build_metric
from .errors import BorderlineError, ConfigError, GeneratorValidityError
from .generators import build_generator, nmcs_step1
from .mutation import build_mutator_set
from .oracles import build_oracle, random_valid_set, reference_invalid_dates
from .seeding import derive_rng
from .switchsearch import run_step2


@dataclass
class RunResult:
    output_dir: Path
    manifest: dict
    verdicts: dict[tuple[str, str], BoundaryVerdict]  # (preset, metric) -> verdict
    reports: dict[tuple[str, str], ComparisonReport] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return 0 if all(v.holds for v in self.verdicts.values()) else 2


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _build_oracle_for(config: RunConfig):
    return build_oracle(
        config.sut,
        date_formats=config.generator_options.date_formats,
        command_path=config.command.path or None,
        command_args=config.command.args,
        timeout_ms=config.command.timeout_ms,
        max_parallel=config.command.max_parallel,
    )


def _build_metrics(names, distance_options, generator_options):
    return [
        build_metric(
            name,
            compressor=distance_options.compressor,
            penalty=distance_options.incomparable_penalty,
            date_formats=tuple(generator_options.date_formats),
        )
        for name in names
    ]


def _set_rows(members, origin: str, seed: int, extra=None):
    rows = []
    for i, c in enumerate(members):
        row = {"string": c.string, "valid": c.valid, "origin": origin, "seed": seed, "index": i}
        if extra:
            row.update(extra(c))
        rows.append(row)
    return rows


def _analysis_paths(out: Path, generation_metric: str, preset: str, metric: str):
    stem = f"{generation_metric}_{preset}_{metric}"
    base = out / "analysis"
    return (
        base / f"distances_{stem}.csv",
        base / f"summary_{stem}.csv",
        base / f"verdict_{stem}.json",
    )


def run_pipeline(
    config: RunConfig,
    output_dir: str | Path | None = None,
    jobs: int = 1,
    quiet: bool = True,
    echo=print,
) -> RunResult:
    """Execute both steps plus analysis, writing all artifacts under output_dir."""
    target = output_dir or config.output_dir
    if target is None:
        raise ConfigError("no output directory: pass one or set output_dir in the config")
    out = Path(target)
    out.mkdir(parents=True, exist_ok=True)

    def say(msg: str) -> None:
        if not quiet:
            echo(msg)

    manifest: dict = {
        "tool": "borderline",
        "version": __version__,
        "created_at": _now(),
        "status": "running",
        "seed": config.seed,
        "config": config.snapshot(),
        "stages": {},
    }
    try:
        result = _run_stages(config, out, jobs, say, manifest)
        manifest["status"] = "ok"
    except BorderlineError as exc:
        manifest["status"] = "failed"
        manifest["error"] = str(exc)
        manifest["finished_at"] = _now()
        _write_manifest(out, manifest)
        raise
    manifest["finished_at"] = _now()
    _write_manifest(out, manifest)
    return result


def _write_manifest(out: Path, manifest: dict) -> None:
    with open(out / "manifest.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")


def _run_stages(config: RunConfig, out: Path, jobs: int, say, manifest: dict) -> RunResult:
    oracle = _build_oracle_for(config)
    generator = build_generator(config.generator, config.generator_options)
    generation_metric = _build_metrics(
        [config.generation_metric], config.distance, config.generator_options
    )[0]

    # step 1: one random valid seed, then grow by maximizing min-distance
    initial_rng = derive_rng(config.seed, "initial")
    initial = TestSet("tset")
    for _ in range(1000):
        s = generator.generate_random(initial_rng)
        if oracle.check(s).valid:
            initial.add(Candidate(s, True, "step1"))
            break
    if len(initial) == 0:
        raise GeneratorValidityError(
            f"oracle {config.sut!r} rejected 1000 straight {config.generator!r} samples"
        )
    say(f"step 1: growing test set to {config.tset_size} ({config.generation_metric})")
    tset = nmcs_step1(
        generator,
        initial,
        generation_metric,
        config.tset_size,
        config.nmcs,
        derive_rng(config.seed, "step1"),
        stream_seed=config.seed,
    )
    dropped = []
    validated = TestSet("tset")
    for c in tset.candidates:
        if oracle.check(c.string).valid:
            validated.add(c)
        elif config.sut == "command":
            dropped.append(c.string)  # external program disagrees with the generator
        else:
            raise GeneratorValidityError(
                f"generator {config.generator!r} emitted a string its paired oracle "
                f"rejects: {c.string!r}"
            )
    tset.candidates = validated
    write_jsonl(out / "tset.jsonl", _set_rows(tset.candidates, "step1", config.seed))
    manifest["stages"]["step1"] = {
        "tset_size": len(tset.candidates),
        "playouts": tset.playouts,
        "dropped_by_oracle": dropped,
    }

    say(f"building random comparison set (n={config.random_set_size})")
    random_set = random_valid_set(
        generator, oracle, config.random_set_size, derive_rng(config.seed, "random_set")
    )
    write_jsonl(out / "random.jsonl", _set_rows(random_set, "random", config.seed))

    reference = None
    if config.include_reference_invalid:
        reference = reference_invalid_dates(
            oracle, config.random_set_size, derive_rng(config.seed, "reference_invalid")
        )
        write_jsonl(
            out / "reference_invalid.jsonl",
            _set_rows(reference, "reference_invalid", config.seed,
                      extra=lambda c: {"kind": c.meta.get("kind")}),
        )

    analysis_metrics = _build_metrics(
        config.analysis_metrics, config.distance, config.generator_options
    )

    mvs_by_preset: dict[str, TestSet] = {}
    mis_by_preset: dict[str, TestSet] = {}
    step2_stats: dict[str, dict] = {}
    for preset in config.mutator_presets:
        say(f"step 2: boundary walks with preset {preset!r}")
        mutators = build_mutator_set(preset)
        pairs, notes = run_step2(
            tset,
            mutators,
            oracle,
            config.walk.budget,
            config.seed,
            preset,
            config.walk.walk_mode,
            config.walk.no_site_limit,
        )
        walk_rows = []
        mvs_all = TestSet("mvs")
        mis_all = TestSet("mis")
        for seed_index, pair in enumerate(pairs):
            for ev in pair.evaluations:
                walk_rows.append({
                    "string": ev.string,
                    "valid": ev.valid,
                    "origin": "step2",
                    "seed_index": seed_index,
                    "step_index": ev.step_index,
                    "operator": ev.operator,
                })
            for c in pair.mvs:
                mvs_all.add(Candidate(c.string, True, "step2", {**c.meta, "seed_index": seed_index}))
            for c in pair.mis:
                mis_all.add(Candidate(c.string, False, "step2", {**c.meta, "seed_index": seed_index}))
        write_jsonl(out / f"walk_{preset}.jsonl", walk_rows)

        def step2_extra(c):
            return {
                "preset": preset,
                "seed_index": c.meta.get("seed_index"),
                "step_index": c.meta.get("step"),
                "operator": c.meta.get("operator"),
            }

        write_jsonl(out / f"mvs_{preset}.jsonl", _set_rows(mvs_all, "step2", config.seed, step2_extra))
        write_jsonl(out / f"mis_{preset}.jsonl", _set_rows(mis_all, "step2", config.seed, step2_extra))
        mvs_by_preset[preset] = mvs_all
        mis_by_preset[preset] = mis_all
        step2_stats[preset] = {
            "walks": len(pairs),
            "switches": sum(p.switches for p in pairs),
            "oracle_evaluations": sum(p.oracle_evaluations for p in pairs),
            "mvs_size": len(mvs_all),
            "mis_size": len(mis_all),
            "stalled_walks": notes,
        }
    manifest["stages"]["step2"] = step2_stats

    say("analysis: min-distance comparisons")
    verdicts: dict[tuple[str, str], BoundaryVerdict] = {}
    reports: dict[tuple[str, str], ComparisonReport] = {}
    verdict_manifest: dict[str, dict] = {}
    for preset in config.mutator_presets:
        others = {
            "random": random_set,
            "tset": tset.candidates,
            "mis": mis_by_preset[preset],
        }
        if reference is not None:
            others["reference_invalid"] = reference
        alts = [p for p in config.mutator_presets if p != preset]
        if alts:
            others["alt_mvs"] = mvs_by_preset[alts[0]]
        for report in cross_metric_analysis(mvs_by_preset[preset], others, analysis_metrics, jobs):
            d_path, s_path, v_path = _analysis_paths(
                out, config.generation_metric, preset, report.metric_name
            )
            write_distances_csv(report, d_path)
            write_summary_csv(report, s_path)
            verdict = boundary_verdict(report)
            write_verdict_json(verdict, v_path)
            verdicts[(preset, report.metric_name)] = verdict
            reports[(preset, report.metric_name)] = report
            verdict_manifest[f"{preset}/{report.metric_name}"] = {
                "holds": verdict.holds,
                "margin": verdict.margin,
                "medians": verdict.medians,
            }
            say(
                f"  {preset}/{report.metric_name}: "
                f"{'boundary confirmed' if verdict.holds else 'boundary NOT confirmed'} "
                f"(margin {verdict.margin:.4g})"
            )
    manifest["stages"]["analysis"] = {
        "metrics": list(config.analysis_metrics),
        "comparisons": {
            f"{preset}/{metric}": [r.comparison for r in reports[(preset, metric)].rows]
            for (preset, metric) in reports
        },
    }
    manifest["verdicts"] = verdict_manifest
    manifest["oracle_evaluations_total"] = oracle.evaluation_count
    return RunResult(out, manifest, verdicts, reports)


def analyze_run_dir(
    run_dir: str | Path,
    metric_names: list[str] | None = None,
    jobs: int = 1,
    quiet: bool = True,
    echo=print,
) -> RunResult:
    """Recompute comparisons and verdicts for an existing run directory.

    Reads the persisted sets, so different analysis metrics can be tried
    without regenerating anything.
    """
    out = Path(run_dir)
    manifest_path = out / "manifest.json"
    if not manifest_path.exists():
        raise ConfigError(f"not a run directory (no manifest.json): {out}")
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    snapshot = manifest.get("config", {})
    try:
        saved = replace(
            _config_from_snapshot(snapshot),
            analysis_metrics=tuple(metric_names or snapshot["analysis_metrics"]),
        )
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"manifest config snapshot is unusable: {exc}") from exc

    def load_set(path: Path, role: str) -> TestSet:
        if not path.exists():
            raise ConfigError(f"missing artifact: {path.name}")
        ts = TestSet(role)
        for row in read_jsonl(path):
            ts.add(Candidate(row["string"], row["valid"], row["origin"]))
        return ts

    tset = load_set(out / "tset.jsonl", "tset")
    random_set = load_set(out / "random.jsonl", "random")
    reference = None
    if (out / "reference_invalid.jsonl").exists():
        reference = load_set(out / "reference_invalid.jsonl", "reference_invalid")

    metrics = _build_metrics(saved.analysis_metrics, saved.distance, saved.generator_options)
    presets = list(saved.mutator_presets)
    mvs_by_preset = {p: load_set(out / f"mvs_{p}.jsonl", "mvs") for p in presets}
    mis_by_preset = {p: load_set(out / f"mis_{p}.jsonl", "mis") for p in presets}

    def say(msg: str) -> None:
        if not quiet:
            echo(msg)

    verdicts: dict[tuple[str, str], BoundaryVerdict] = {}
    reports: dict[tuple[str, str], ComparisonReport] = {}
    for preset in presets:
        others = {"random": random_set, "tset": tset, "mis": mis_by_preset[preset]}
        if reference is not None:
            others["reference_invalid"] = reference
        alts = [p for p in presets if p != preset]
        if alts:
            others["alt_mvs"] = mvs_by_preset[alts[0]]
        for report in cross_metric_analysis(mvs_by_preset[preset], others, metrics, jobs):
            d_path, s_path, v_path = _analysis_paths(
                out, saved.generation_metric, preset, report.metric_name
            )
            write_distances_csv(report, d_path)
            write_summary_csv(report, s_path)
            verdict = boundary_verdict(report)
            write_verdict_json(verdict, v_path)
            verdicts[(preset, report.metric_name)] = verdict
            reports[(preset, report.metric_name)] = report
            say(
                f"  {preset}/{report.metric_name}: "
                f"{'boundary confirmed' if verdict.holds else 'boundary NOT confirmed'} "
                f"(margin {verdict.margin:.4g})"
            )
    return RunResult(out, manifest, verdicts, reports)


def _config_from_snapshot(snapshot: dict) -> RunConfig:
    from .config import config_from_dict

    data = {k: v for k, v in snapshot.items() if v is not None}
    data.pop("output_dir", None)
    if not data.get("command", {}).get("path"):
        data.pop("command", None)
    return config_from_dict(data)

"""Run configuration: YAML loading, strict validation, explicit defaults.

Unknown keys are errors at every nesting level, so a typo never silently
falls back to a default. Every limit the pipeline obeys lives here.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import yaml

from .dates import DATE_FORMATS
from .distance import COMPRESSOR_NAMES, DEFAULT_PENALTY, METRIC_NAMES
from .errors import ConfigError
from .generators import GENERATOR_NAMES, GeneratorOptions, NmcsBudget
from .mutation import PRESETS
from .oracles import ORACLE_NAMES
from .switchsearch import DEFAULT_NO_SITE_LIMIT, WALK_MODES, SwitchBudget

MAX_SEED = 2**64 - 1

_DEFAULT_PRESETS = {"date": ("int",), "json": ("chars",), "xml": ("chars",),
                    "regex": ("chars",), "command": ("chars",)}


@dataclass(frozen=True)
class CommandOptions:
    path: str = ""
    args: tuple[str, ...] = ()
    timeout_ms: int = 5000
    max_parallel: int = 1


@dataclass(frozen=True)
class DistanceOptions:
    compressor: str = "bz2"
    incomparable_penalty: float = DEFAULT_PENALTY


@dataclass(frozen=True)
class WalkOptions:
    budget: SwitchBudget = SwitchBudget()
    walk_mode: str = "advance_always"
    no_site_limit: int = DEFAULT_NO_SITE_LIMIT


@dataclass(frozen=True)
class RunConfig:
    sut: str
    generator: str
    seed: int = 0
    output_dir: str | None = None
    generation_metric: str = "ncd"
    analysis_metrics: tuple[str, ...] = ("ncd", "levenshtein")
    mutator_presets: tuple[str, ...] = ("chars",)
    tset_size: int = 10
    random_set_size: int = 50
    include_reference_invalid: bool = False
    nmcs: NmcsBudget = NmcsBudget()
    walk: WalkOptions = WalkOptions()
    distance: DistanceOptions = DistanceOptions()
    generator_options: GeneratorOptions = GeneratorOptions()
    command: CommandOptions = CommandOptions()

    def snapshot(self) -> dict:
        """Fully-defaulted plain dict, written into run manifests."""
        return {
            "sut": self.sut,
            "generator": self.generator,
            "seed": self.seed,
            "output_dir": self.output_dir,
            "generation_metric": self.generation_metric,
            "analysis_metrics": list(self.analysis_metrics),
            "mutator_presets": list(self.mutator_presets),
            "tset_size": self.tset_size,
            "random_set_size": self.random_set_size,
            "include_reference_invalid": self.include_reference_invalid,
            "nmcs": {
                "choices_evaluated": self.nmcs.choices_evaluated,
                "playouts_per_choice": self.nmcs.playouts_per_choice,
                "max_choice_points": self.nmcs.max_choice_points,
            },
            "switch": {
                "target_switches": self.walk.budget.target_switches,
                "max_mutations_per_switch": self.walk.budget.max_mutations_per_switch,
                "max_total_mutations": self.walk.budget.max_total_mutations,
                "walk_mode": self.walk.walk_mode,
                "no_site_limit": self.walk.no_site_limit,
            },
            "distance": {
                "compressor": self.distance.compressor,
                "incomparable_penalty": self.distance.incomparable_penalty,
            },
            "generator_options": {
                "max_depth": self.generator_options.max_depth,
                "max_fanout": self.generator_options.max_fanout,
                "date_formats": list(self.generator_options.date_formats),
            },
            "command": {
                "path": self.command.path,
                "args": list(self.command.args),
                "timeout_ms": self.command.timeout_ms,
                "max_parallel": self.command.max_parallel,
            },
        }


def _require_mapping(value, fieldname: str) -> dict:
    if not isinstance(value, dict):
        raise ConfigError(f"expected a mapping, got {type(value).__name__}", fieldname)
    return value


def _reject_unknown(section: dict, allowed: tuple[str, ...], prefix: str) -> None:
    for key in section:
        if key not in allowed:
            raise ConfigError(f"unknown key (allowed: {', '.join(allowed)})",
                              f"{prefix}{key}")


def _get_int(section: dict, key: str, default: int, prefix: str,
             minimum: int | None = None, maximum: int | None = None) -> int:
    value = section.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"expected an integer, got {value!r}", prefix + key)
    if minimum is not None and value < minimum:
        raise ConfigError(f"must be >= {minimum}, got {value}", prefix + key)
    if maximum is not None and value > maximum:
        raise ConfigError(f"must be <= {maximum}, got {value}", prefix + key)
    return value


def _get_bool(section: dict, key: str, default: bool, prefix: str) -> bool:
    value = section.get(key, default)
    if not isinstance(value, bool):
        raise ConfigError(f"expected true/false, got {value!r}", prefix + key)
    return value


def _get_choice(section: dict, key: str, default: str, choices: tuple[str, ...],
                prefix: str) -> str:
    value = section.get(key, default)
    if value not in choices:
        raise ConfigError(f"must be one of {', '.join(choices)}; got {value!r}", prefix + key)
    return value


def _get_str_list(section: dict, key: str, default: tuple[str, ...], choices: tuple[str, ...],
                  prefix: str, min_len: int = 1, max_len: int | None = None,
                  distinct: bool = True) -> tuple[str, ...]:
    value = section.get(key)
    if value is None:
        return tuple(default)
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ConfigError(f"expected a list of names, got {value!r}", prefix + key)
    for v in value:
        if v not in choices:
            raise ConfigError(f"unknown name {v!r} (allowed: {', '.join(choices)})", prefix + key)
    if len(value) < min_len:
        raise ConfigError(f"needs at least {min_len} entries", prefix + key)
    if max_len is not None and len(value) > max_len:
        raise ConfigError(f"allows at most {max_len} entries", prefix + key)
    if distinct and len(set(value)) != len(value):
        raise ConfigError("entries must be distinct", prefix + key)
    return tuple(value)


_TOP_KEYS = (
    "sut", "generator", "seed", "output_dir", "generation_metric", "analysis_metrics",
    "mutator_presets", "tset_size", "random_set_size", "include_reference_invalid",
    "nmcs", "switch", "distance", "generator_options", "command",
)


def config_from_dict(data: dict) -> RunConfig:
    data = _require_mapping(data, "<config>")
    _reject_unknown(data, _TOP_KEYS, "")

    if "sut" not in data:
        raise ConfigError("required (one of " + ", ".join(ORACLE_NAMES) + ")", "sut")
    sut = _get_choice(data, "sut", ORACLE_NAMES[0], ORACLE_NAMES, "")
    default_generator = sut if sut != "command" else None
    generator = data.get("generator", default_generator)
    if generator is None:
        raise ConfigError("required when sut is 'command'", "generator")
    if generator not in GENERATOR_NAMES:
        raise ConfigError(f"must be one of {', '.join(GENERATOR_NAMES)}; got {generator!r}",
                          "generator")

    seed = _get_int(data, "seed", 0, "", minimum=0, maximum=MAX_SEED)
    output_dir = data.get("output_dir")
    if output_dir is not None and not isinstance(output_dir, str):
        raise ConfigError(f"expected a path string, got {output_dir!r}", "output_dir")

    generation_metric = _get_choice(data, "generation_metric", "ncd", METRIC_NAMES, "")
    analysis_metrics = _get_str_list(
        data, "analysis_metrics", ("ncd", "levenshtein"), METRIC_NAMES, "", min_len=1
    )
    preset_names = tuple(PRESETS)
    mutator_presets = _get_str_list(
        data, "mutator_presets", _DEFAULT_PRESETS[sut], preset_names, "",
        min_len=1, max_len=2,
    )
    tset_size = _get_int(data, "tset_size", 10, "", minimum=1)
    random_set_size = _get_int(data, "random_set_size", 50, "", minimum=1)
    include_reference = _get_bool(data, "include_reference_invalid", False, "")
    if include_reference and sut != "date":
        raise ConfigError("the reference invalid set is date-specific; sut must be 'date'",
                          "include_reference_invalid")

    nmcs_raw = _require_mapping(data.get("nmcs", {}), "nmcs")
    _reject_unknown(nmcs_raw, ("choices_evaluated", "playouts_per_choice", "max_choice_points"),
                    "nmcs.")
    nmcs = NmcsBudget(
        choices_evaluated=_get_int(nmcs_raw, "choices_evaluated", 2, "nmcs.", minimum=1),
        playouts_per_choice=_get_int(nmcs_raw, "playouts_per_choice", 1, "nmcs.", minimum=1),
        max_choice_points=_get_int(nmcs_raw, "max_choice_points", 10_000, "nmcs.", minimum=1),
    )

    switch_raw = _require_mapping(data.get("switch", {}), "switch")
    _reject_unknown(
        switch_raw,
        ("target_switches", "max_mutations_per_switch", "max_total_mutations",
         "walk_mode", "no_site_limit"),
        "switch.",
    )
    walk = WalkOptions(
        budget=SwitchBudget(
            target_switches=_get_int(switch_raw, "target_switches", 20, "switch.", minimum=1),
            max_mutations_per_switch=_get_int(
                switch_raw, "max_mutations_per_switch", 500, "switch.", minimum=1
            ),
            max_total_mutations=_get_int(
                switch_raw, "max_total_mutations", 5000, "switch.", minimum=1
            ),
        ),
        walk_mode=_get_choice(switch_raw, "walk_mode", "advance_always", WALK_MODES, "switch."),
        no_site_limit=_get_int(switch_raw, "no_site_limit", DEFAULT_NO_SITE_LIMIT, "switch.",
                               minimum=1),
    )

    distance_raw = _require_mapping(data.get("distance", {}), "distance")
    _reject_unknown(distance_raw, ("compressor", "incomparable_penalty"), "distance.")
    penalty = distance_raw.get("incomparable_penalty", DEFAULT_PENALTY)
    if isinstance(penalty, bool) or not isinstance(penalty, (int, float)) or penalty <= 0:
        raise ConfigError(f"expected a positive number, got {penalty!r}",
                          "distance.incomparable_penalty")
    distance = DistanceOptions(
        compressor=_get_choice(distance_raw, "compressor", "bz2", COMPRESSOR_NAMES, "distance."),
        incomparable_penalty=float(penalty),
    )

    gen_raw = _require_mapping(data.get("generator_options", {}), "generator_options")
    _reject_unknown(gen_raw, ("max_depth", "max_fanout", "date_formats"), "generator_options.")
    generator_options = GeneratorOptions(
        max_depth=_get_int(gen_raw, "max_depth", 6, "generator_options.", minimum=0),
        max_fanout=_get_int(gen_raw, "max_fanout", 5, "generator_options.", minimum=1),
        date_formats=_get_str_list(
            gen_raw, "date_formats", ("ymd",), DATE_FORMATS, "generator_options.", min_len=1
        ),
    )

    command_raw = _require_mapping(data.get("command", {}), "command")
    _reject_unknown(command_raw, ("path", "args", "timeout_ms", "max_parallel"), "command.")
    if command_raw and sut != "command":
        raise ConfigError("only valid when sut is 'command'", "command")
    command_path = command_raw.get("path", "")
    if sut == "command" and not command_path:
        raise ConfigError("required when sut is 'command'", "command.path")
    if not isinstance(command_path, str):
        raise ConfigError(f"expected a path string, got {command_path!r}", "command.path")
    args = command_raw.get("args", [])
    if not isinstance(args, list) or not all(isinstance(a, str) for a in args):
        raise ConfigError(f"expected a list of strings, got {args!r}", "command.args")
    command = CommandOptions(
        path=command_path,
        args=tuple(args),
        timeout_ms=_get_int(command_raw, "timeout_ms", 5000, "command.", minimum=1),
        max_parallel=_get_int(command_raw, "max_parallel", 1, "command.", minimum=1),
    )

    return RunConfig(
        sut=sut,
        generator=generator,
        seed=seed,
        output_dir=output_dir,
        generation_metric=generation_metric,
        analysis_metrics=analysis_metrics,
        mutator_presets=mutator_presets,
        tset_size=tset_size,
        random_set_size=random_set_size,
        include_reference_invalid=include_reference,
        nmcs=nmcs,
        walk=walk,
        distance=distance,
        generator_options=generator_options,
        command=command,
    )


def load_config(path: str | Path) -> RunConfig:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid YAML in {path}: {exc}") from exc
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"top level of {path} must be a mapping")
    return config_from_dict(data)

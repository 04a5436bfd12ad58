"""CLI behavior: subcommands, exit codes, output resolution."""

import json

import pytest

from borderline.cli import OUTPUT_ROOT_ENV, main
from borderline.distance import METRIC_NAMES
from borderline.oracles import ORACLE_NAMES


def write_config(tmp_path, **extra):
    lines = [
        "sut: date",
        "seed: 3",
        "analysis_metrics: [levenshtein]",
        "mutator_presets: [int]",
        "tset_size: 3",
        "random_set_size: 5",
        "switch:",
        "  target_switches: 2",
        "  max_mutations_per_switch: 200",
        "  max_total_mutations: 300",
    ]
    for k, v in extra.items():
        lines.append(f"{k}: {v}")
    path = tmp_path / "run.yaml"
    path.write_text("\n".join(lines) + "\n")
    return path


class TestListing:
    def test_oracles_list(self, capsys):
        assert main(["oracles", "list"]) == 0
        out = capsys.readouterr().out
        for name in ORACLE_NAMES:
            assert name in out

    def test_metrics_list(self, capsys):
        assert main(["metrics", "list"]) == 0
        out = capsys.readouterr().out
        for name in METRIC_NAMES:
            assert name in out

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as stop:
            main(["--version"])
        assert stop.value.code == 0
        assert "borderline" in capsys.readouterr().out


class TestRun:
    def test_run_writes_artifacts_and_exits_cleanly(self, tmp_path, capsys):
        config = write_config(tmp_path)
        out = tmp_path / "out"
        code = main(["run", str(config), "--output", str(out)])
        assert code in (0, 2)
        assert (out / "manifest.json").exists()
        stdout = capsys.readouterr().out
        assert "run complete" in stdout and "verdict int/levenshtein" in stdout

    def test_quiet_suppresses_progress(self, tmp_path, capsys):
        config = write_config(tmp_path)
        main(["run", str(config), "--output", str(tmp_path / "out"), "--quiet"])
        assert capsys.readouterr().out == ""

    def test_seed_override_lands_in_manifest(self, tmp_path):
        config = write_config(tmp_path)
        out = tmp_path / "out"
        main(["run", str(config), "--output", str(out), "--seed", "11", "--quiet"])
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["seed"] == 11

    def test_bad_seed_override(self, tmp_path, capsys):
        config = write_config(tmp_path)
        assert main(["run", str(config), "--seed", "-4"]) == 1
        assert "error:" in capsys.readouterr().err

    def test_output_root_env_used(self, tmp_path, monkeypatch):
        config = write_config(tmp_path)
        monkeypatch.setenv(OUTPUT_ROOT_ENV, str(tmp_path / "root"))
        assert main(["run", str(config), "--quiet"]) in (0, 2)
        assert (tmp_path / "root" / "run-seed3" / "manifest.json").exists()

    def test_config_output_dir_respected(self, tmp_path):
        target = tmp_path / "from-config"
        config = write_config(tmp_path, output_dir=str(target))
        assert main(["run", str(config), "--quiet"]) in (0, 2)
        assert (target / "manifest.json").exists()

    def test_missing_config_is_error_exit(self, tmp_path, capsys):
        assert main(["run", str(tmp_path / "none.yaml")]) == 1
        assert "not found" in capsys.readouterr().err

    def test_config_error_names_field(self, tmp_path, capsys):
        path = tmp_path / "bad.yaml"
        path.write_text("sut: date\nswitch:\n  walk_mod: x\n")
        assert main(["run", str(path)]) == 1
        assert "walk_mod" in capsys.readouterr().err


class TestAnalyze:
    @pytest.fixture()
    def run_dir(self, tmp_path):
        config = write_config(tmp_path)
        out = tmp_path / "out"
        main(["run", str(config), "--output", str(out), "--quiet"])
        return out

    def test_round_trip_with_new_metrics(self, run_dir, capsys):
        code = main(["analyze", str(run_dir), "--metrics", "msid,day"])
        assert code in (0, 2)
        stdout = capsys.readouterr().out
        assert "int/msid" in stdout and "int/day" in stdout
        assert (run_dir / "analysis" / "verdict_ncd_int_msid.json").exists()

    def test_unknown_metric_rejected(self, run_dir, capsys):
        assert main(["analyze", str(run_dir), "--metrics", "cosine"]) == 1
        assert "cosine" in capsys.readouterr().err

    def test_non_run_dir(self, tmp_path, capsys):
        assert main(["analyze", str(tmp_path)]) == 1
        assert "manifest" in capsys.readouterr().err

import json
import subprocess
import sys

import numpy as np
import pytest

from shapcond.cli import main
from shapcond.errors import ConfigError, RowCapExceededError
from shapcond.experiment import (config_from_dict, emit_results, load_config, load_csv,
                                 run_experiment)
from shapcond.experiment.runner import ExperimentReport


def base_doc(**overrides):
    doc = {
        "data": {"family": "gaussian", "rho": 0.5, "m": 4, "n_train": 200,
                 "n_test": 8, "seed": 7},
        "true_model": {"name": "lm_no"},
        "predictive": {"kind": "lm_formula"},
        "run": {"k": 60, "oracle_k": 500, "output_dir": "unused"},
        "methods": [{"name": "independence"}],
    }
    for key, value in overrides.items():
        doc[key] = value
    return doc


def write_toml(path, doc):
    # minimal TOML writer sufficient for these test documents
    def fmt(v):
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, str):
            return f'"{v}"'
        return str(v)

    lines = []
    for section, content in doc.items():
        if isinstance(content, list):
            for item in content:
                lines.append(f"[[{section}]]")
                lines.extend(f"{k} = {fmt(v)}" for k, v in item.items())
                lines.append("")
        else:
            lines.append(f"[{section}]")
            lines.extend(f"{k} = {fmt(v)}" for k, v in content.items())
            lines.append("")
    path.write_text("\n".join(lines), encoding="utf-8")
    return path


class TestConfig:
    def test_requires_explicit_seed(self):
        doc = base_doc()
        del doc["data"]["seed"]
        with pytest.raises(ConfigError, match="seed"):
            config_from_dict(doc)

    def test_requires_methods(self):
        with pytest.raises(ConfigError, match="method"):
            config_from_dict(base_doc(methods=[]))

    def test_unknown_method_rejected(self):
        with pytest.raises(ConfigError, match="unknown method"):
            config_from_dict(base_doc(methods=[{"name": "vaeac"}]))

    def test_duplicate_method_rejected(self):
        with pytest.raises(ConfigError, match="twice"):
            config_from_dict(base_doc(methods=[{"name": "gaussian"}, {"name": "gaussian"}]))

    def test_row_cap_refuses_m16_surrogate(self):
        doc = base_doc(methods=[{"name": "lm_surrogate"}])
        doc["data"]["m"] = 16
        doc["data"]["n_train"] = 1000
        with pytest.raises(RowCapExceededError, match="65,534,000"):
            config_from_dict(doc)

    def test_row_cap_ignores_non_surrogate(self):
        doc = base_doc(methods=[{"name": "independence"}])
        doc["data"]["m"] = 16
        doc["data"]["n_train"] = 1000
        config_from_dict(doc)  # no surrogate methods: cap not triggered


class TestRunArtifacts:
    def run_minimal(self, tmp_path, doc=None):
        config = config_from_dict(doc or base_doc())
        report = run_experiment(config)
        paths = emit_results(report, tmp_path / "out")
        return report, paths

    def test_minimal_smoke_artifacts(self, tmp_path):
        report, paths = self.run_minimal(tmp_path)
        for name in ("shapley_values", "mae", "summary", "manifest"):
            assert paths[name].exists()

        header, rows = load_csv(paths["shapley_values"])
        assert header == ["method", "observation", "feature", "phi"]
        assert len(rows) == 1 * 8 * 5  # methods x observations x (M+1)

        header, rows = load_csv(paths["mae"])
        assert header == ["method", "observation", "mae"]
        assert len(rows) == 8

        header, rows = load_csv(paths["summary"])
        assert len(rows) == 1
        manifest = json.loads(paths["manifest"].read_text())
        assert manifest["partial"] is False
        assert manifest["config"]["data"]["seed"] == 7

    def test_summary_mae_is_mean_of_per_observation(self, tmp_path):
        doc = base_doc(methods=[{"name": "independence"}, {"name": "gaussian"}])
        report, paths = self.run_minimal(tmp_path, doc)
        _, mae_rows = load_csv(paths["mae"])
        _, summary_rows = load_csv(paths["summary"])
        for summary in summary_rows:
            method = summary[0]
            per_obs = [float(r[2]) for r in mae_rows if r[0] == method]
            assert float(summary[2]) == pytest.approx(np.mean(per_obs), rel=1e-9)

    def test_round_trip_matches_report(self, tmp_path):
        report, paths = self.run_minimal(tmp_path)
        _, rows = load_csv(paths["shapley_values"])
        phi = report.methods[0].explanation.phi
        for method, obs, feature, value in rows:
            assert float(value) == pytest.approx(phi[int(feature), int(obs)], rel=1e-9)

    def test_rerun_same_seed_byte_identical(self, tmp_path):
        config = config_from_dict(base_doc(methods=[{"name": "gaussian"},
                                                    {"name": "ctree"}]))
        a = emit_results(run_experiment(config), tmp_path / "a")
        b = emit_results(run_experiment(config), tmp_path / "b")
        assert a["shapley_values"].read_bytes() == b["shapley_values"].read_bytes()
        assert a["mae"].read_bytes() == b["mae"].read_bytes()

    def test_thread_count_does_not_change_results(self, tmp_path):
        doc = base_doc(methods=[{"name": "gaussian"}, {"name": "empirical"}])
        one = dict(doc)
        one["run"] = {**doc["run"], "threads": 1}
        four = dict(doc)
        four["run"] = {**doc["run"], "threads": 4}
        a = emit_results(run_experiment(config_from_dict(one)), tmp_path / "a")
        b = emit_results(run_experiment(config_from_dict(four)), tmp_path / "b")
        assert a["shapley_values"].read_bytes() == b["shapley_values"].read_bytes()

    def test_seed_override_changes_data(self, tmp_path):
        doc = base_doc()
        a = emit_results(run_experiment(config_from_dict(doc)), tmp_path / "a")
        b = emit_results(run_experiment(config_from_dict(doc, seed_override=8)),
                         tmp_path / "b")
        assert a["shapley_values"].read_bytes() != b["shapley_values"].read_bytes()

    def test_empty_method_report_writes_headers_only(self, tmp_path):
        config = config_from_dict(base_doc())
        report = run_experiment(config)
        empty = ExperimentReport(config=config, methods=[], oracle=report.oracle,
                                 oracle_v=report.oracle_v, f_test=report.f_test,
                                 phi0=report.phi0, timing_mode="cpu", wall_seconds=0.0)
        paths = emit_results(empty, tmp_path / "empty")
        for name in ("shapley_values", "mae", "summary"):
            header, rows = load_csv(paths[name])
            assert rows == []

    def test_failing_method_flagged_partial(self, tmp_path):
        # burr requires positive data; gaussian features violate its domain
        doc = base_doc(methods=[{"name": "gaussian"}, {"name": "burr"}])
        report = run_experiment(config_from_dict(doc))
        assert list(report.failures) == ["burr"]
        paths = emit_results(report, tmp_path / "out")
        manifest = json.loads(paths["manifest"].read_text())
        assert manifest["partial"] is True
        assert "burr" in manifest["failures"]

    def test_efficiency_invariant_small_run(self, tmp_path):
        doc = base_doc(methods=[{"name": "independence"}, {"name": "gaussian"},
                                {"name": "empirical"}, {"name": "ctree"},
                                {"name": "lm_separate"}, {"name": "lm_surrogate"}])
        report, _ = self.run_minimal(tmp_path, doc)
        for method in report.methods:
            gaps = np.abs(method.explanation.efficiency_gap(method.v))
            bound = 1e-4 * np.maximum(1.0, np.abs(report.f_test))
            assert np.all(gaps <= bound), method.name

    def test_timing_accounting(self, tmp_path):
        doc = base_doc(methods=[{"name": "gaussian", "K": 4000}])
        doc["data"]["m"] = 6
        doc["data"]["n_test"] = 16
        doc["run"] = {"k": 4000, "oracle": False, "output_dir": "unused"}
        report = run_experiment(config_from_dict(doc))
        phases = sum(report.methods[0].timings.values())
        assert report.loop_seconds > 0.2  # enough work for the 5% comparison
        assert phases == pytest.approx(report.loop_seconds, rel=0.05)


class TestCli:
    def test_run_and_exit_codes(self, tmp_path):
        config_path = write_toml(tmp_path / "exp.toml", base_doc())
        out = tmp_path / "cli_out"
        assert main(["run", "--config", str(config_path), "--output", str(out)]) == 0
        assert (out / "shapley_values.csv").exists()

    def test_row_cap_exit_code(self, tmp_path, capsys):
        doc = base_doc(methods=[{"name": "lm_surrogate"}])
        doc["data"]["m"] = 16
        doc["data"]["n_train"] = 1000
        config_path = write_toml(tmp_path / "exp.toml", doc)
        assert main(["run", "--config", str(config_path)]) == 2
        assert "row cap" in capsys.readouterr().err

    def test_partial_failure_exit_code(self, tmp_path, capsys):
        doc = base_doc(methods=[{"name": "gaussian"}, {"name": "burr"}])
        config_path = write_toml(tmp_path / "exp.toml", doc)
        out = tmp_path / "out"
        assert main(["run", "--config", str(config_path), "--output", str(out)]) == 1
        assert "burr" in capsys.readouterr().err
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["partial"] is True

    def test_list_methods(self, capsys):
        assert main(["list-methods"]) == 0
        out = capsys.readouterr().out
        for name in ("independence", "empirical", "gaussian", "copula", "burr", "gh",
                     "ctree", "lm_separate", "lm_surrogate", "ppr_separate"):
            assert name in out

    def test_console_script_installed(self, tmp_path):
        config_path = write_toml(tmp_path / "exp.toml", base_doc())
        out = tmp_path / "out"
        proc = subprocess.run(
            [sys.executable, "-m", "shapcond.cli", "run", "--config", str(config_path),
             "--output", str(out)],
            capture_output=True, text=True)
        assert proc.returncode == 0, proc.stderr
        assert (out / "summary.csv").exists()

    def test_env_var_threads(self, tmp_path, monkeypatch):
        monkeypatch.setenv("SHAPCOND_THREADS", "3")
        config = load_config(write_toml(tmp_path / "exp.toml", base_doc()))
        assert config.run.threads == 3

"""Command-line interface, driven in process through main()."""

import json
import math

import pytest

from ccmselect import evidence_m1, graph_to_json, load_graph, save_graph
from ccmselect.cli import TOOL_VERSION, main
from conftest import er_graph

SHARED = "npi_a,npi_b,shared_count\n1,2,5\n2,3,4\n3,9,9\n"
PROVIDERS = (
    "npi,state,specialty\n"
    "1,WY,Family Practice\n"
    "2,WY,Cardiology\n"
    "3,WY,Internal Medicine\n"
    "9,CO,Cardiology\n"
)


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, json.loads(out) if out else None, err


def write_inputs(tmp_path):
    shared = tmp_path / "shared.csv"
    providers = tmp_path / "providers.csv"
    shared.write_text(SHARED, encoding="utf-8")
    providers.write_text(PROVIDERS, encoding="utf-8")
    return shared, providers


def saved_graph(tmp_path, name="g.json", **kw):
    g = er_graph(**kw)
    path = tmp_path / name
    save_graph(g, path)
    return g, path


MANIFEST_KEYS = {"command", "config_digest", "seed", "tool_version", "timings"}


class TestIngestFlow:
    def test_summary_and_graph_file(self, tmp_path, capsys):
        shared, providers = write_inputs(tmp_path)
        out = tmp_path / "wy.json"
        code, summary, _ = run(
            ["ingest", "--shared", str(shared), "--providers", str(providers),
             "--state", "WY", "--out", str(out)],
            capsys,
        )
        assert code == 0
        assert summary["n"] == 3
        assert summary["edges"] == 2
        assert summary["primary"] == 2
        assert summary["specialty"] == 1
        assert summary["unmapped_specialties"] == {"Cardiology": 2}
        assert set(summary["manifest"]) == MANIFEST_KEYS
        assert summary["manifest"]["command"] == "ingest"
        assert summary["manifest"]["tool_version"] == TOOL_VERSION
        # the graph file holds the canonical serialization, nothing extra
        g = load_graph(out)
        assert out.read_text(encoding="utf-8") == graph_to_json(g)
        assert g.node_ids == ("1", "2", "3")

    def test_threshold_flag(self, tmp_path, capsys):
        shared, providers = write_inputs(tmp_path)
        out = tmp_path / "wy.json"
        code, summary, _ = run(
            ["ingest", "--shared", str(shared), "--providers", str(providers),
             "--state", "WY", "--threshold", "5", "--out", str(out)],
            capsys,
        )
        assert code == 0
        assert summary["edges"] == 1

    def test_empty_state_fails_cleanly(self, tmp_path, capsys):
        shared, providers = write_inputs(tmp_path)
        code, _, err = run(
            ["ingest", "--shared", str(shared), "--providers", str(providers),
             "--state", "TX", "--out", str(tmp_path / "tx.json")],
            capsys,
        )
        assert code == 1
        detail = json.loads(err)["error"]
        assert detail["type"] == "EmptyNetworkError"


class TestStatsAndReport:
    def test_stats_counts(self, tmp_path, capsys):
        g, path = saved_graph(tmp_path, n=10, p=0.4, seed=2, n_primary=4)
        code, payload, _ = run(["stats", "--graph", str(path)], capsys)
        assert code == 0
        assert payload["n"] == 10
        assert payload["edges"] == g.edge_count
        assert payload["primary"] == 4
        assert payload["specialty"] == 6
        assert payload["untyped"] == 0

    def test_report_degree_distribution_rows(self, tmp_path, capsys):
        g, path = saved_graph(tmp_path, n=8, p=0.5, seed=3)
        code, payload, _ = run(
            ["report", "--graph", str(path), "--kind", "degdist"], capsys
        )
        assert code == 0
        degs = g.degrees()
        expected = sorted({(d, degs.count(d)) for d in degs})
        assert [tuple(r) for r in payload["rows"]] == expected

    def test_missing_graph_file_is_reported(self, tmp_path, capsys):
        code, _, err = run(["stats", "--graph", str(tmp_path / "nope.json")], capsys)
        assert code == 1
        assert "error" in json.loads(err)

    def test_corrupt_graph_file_is_reported(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json", encoding="utf-8")
        code, _, err = run(["stats", "--graph", str(bad)], capsys)
        assert code == 1
        assert json.loads(err)["error"]["type"] == "ParseError"


class TestVolume:
    def test_exact_edge_count_volume(self, tmp_path, capsys):
        g, path = saved_graph(tmp_path, n=6, p=0.5, seed=4)
        code, payload, _ = run(
            ["volume", "--graph", str(path), "--statistic", "edges"], capsys
        )
        assert code == 0
        assert payload["method"] == "exact"
        assert payload["std_error_log"] == 0.0
        slots, e = 15, g.edge_count
        assert payload["log_count"] == pytest.approx(
            math.log(math.comb(slots, e)), rel=1e-12
        )

    def test_sampled_volume_requires_seed(self, tmp_path, capsys):
        _, path = saved_graph(tmp_path, n=12, p=0.4, seed=5)
        code, _, err = run(
            ["volume", "--graph", str(path), "--statistic", "degdist"], capsys
        )
        assert code == 1
        assert json.loads(err)["error"]["type"] == "DomainError"

    def test_sampled_volume_reruns_identically(self, tmp_path, capsys):
        _, path = saved_graph(tmp_path, n=12, p=0.4, seed=5)
        argv = ["volume", "--graph", str(path), "--statistic", "degdist",
                "--samples", "400", "--seed", "11"]
        payloads = []
        for _ in range(2):
            code, payload, _ = run(argv, capsys)
            assert code == 0
            del payload["manifest"]["timings"]
            payloads.append(payload)
        assert payloads[0] == payloads[1]
        assert payloads[0]["method"] == "importance_sampling"
        assert payloads[0]["samples"] == 400

    def test_out_file_matches_stdout(self, tmp_path, capsys):
        _, path = saved_graph(tmp_path, n=6, p=0.5, seed=4)
        out = tmp_path / "vol.json"
        code, payload, _ = run(
            ["volume", "--graph", str(path), "--statistic", "edges",
             "--out", str(out)],
            capsys,
        )
        assert code == 0
        assert json.loads(out.read_text(encoding="utf-8")) == payload


def priors_toml(tmp_path, text, name="priors.toml"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


class TestEvidence:
    def test_uniform_model_needs_no_priors(self, tmp_path, capsys):
        g, path = saved_graph(tmp_path, n=7, p=0.5, seed=6)
        code, payload, _ = run(
            ["evidence", "--graph", str(path), "--model", "m1"], capsys
        )
        assert code == 0
        expected = evidence_m1(g)
        assert payload["log_evidence"] == pytest.approx(
            expected.log_evidence.log_magnitude, rel=1e-12
        )
        assert payload["log10_evidence"] == pytest.approx(
            expected.log_evidence.log_magnitude / math.log(10), rel=1e-12
        )
        assert payload["method"] == "closed_form"

    def test_other_models_require_priors(self, tmp_path, capsys):
        _, path = saved_graph(tmp_path, n=7, p=0.5, seed=6)
        with pytest.raises(SystemExit) as exc:
            main(["evidence", "--graph", str(path), "--model", "m2"])
        assert exc.value.code == 2
        capsys.readouterr()

    def test_beta_model_with_priors_file(self, tmp_path, capsys):
        _, path = saved_graph(tmp_path, n=7, p=0.5, seed=6)
        priors = priors_toml(tmp_path, "[m2]\nalpha = 2.0\nbeta = 3.0\n")
        code, payload, _ = run(
            ["evidence", "--graph", str(path), "--model", "m2",
             "--priors", str(priors)],
            capsys,
        )
        assert code == 0
        assert payload["model"] == "m2"
        assert payload["log_evidence"] < 0.0
        assert payload["manifest"]["seed"] is None

    def test_sampling_model_demands_seed_on_large_graphs(self, tmp_path, capsys):
        _, path = saved_graph(tmp_path, n=12, p=0.4, seed=7)
        priors = priors_toml(tmp_path, "[m3]\nmu = 0.5\nsigma = 0.2\n")
        with pytest.raises(SystemExit) as exc:
            main(["evidence", "--graph", str(path), "--model", "m3",
                  "--priors", str(priors)])
        assert exc.value.code == 2
        capsys.readouterr()
        code, payload, _ = run(
            ["evidence", "--graph", str(path), "--model", "m3",
             "--priors", str(priors), "--samples", "400", "--seed", "9"],
            capsys,
        )
        assert code == 0
        assert payload["manifest"]["seed"] == 9

    def test_missing_prior_section_is_a_schema_error(self, tmp_path, capsys):
        _, path = saved_graph(tmp_path, n=7, p=0.5, seed=6)
        priors = priors_toml(tmp_path, "[m2]\nalpha = 2.0\n")
        code, _, err = run(
            ["evidence", "--graph", str(path), "--model", "m2",
             "--priors", str(priors)],
            capsys,
        )
        assert code == 1
        assert json.loads(err)["error"]["type"] == "SchemaError"


class TestSelect:
    def test_posteriors_sum_to_one(self, tmp_path, capsys):
        _, path = saved_graph(tmp_path, n=7, p=0.5, seed=8)
        priors = priors_toml(tmp_path, "[m2]\nalpha = 2.0\nbeta = 3.0\n")
        code, payload, _ = run(
            ["select", "--graph", str(path), "--models", "m1,m2",
             "--priors", str(priors)],
            capsys,
        )
        assert code == 0
        posts = [row["posterior"] for row in payload["models"]]
        assert sum(posts) == pytest.approx(1.0, abs=1e-12)
        assert payload["best_model"] in ("m1", "m2")
        assert [row["prior_model_prob"] for row in payload["models"]] == [0.5, 0.5]

    def test_explicit_model_prior_probabilities(self, tmp_path, capsys):
        _, path = saved_graph(tmp_path, n=7, p=0.5, seed=8)
        priors = priors_toml(
            tmp_path,
            "[m1]\nprior_model_prob = 0.3\n"
            "[m2]\nalpha = 2.0\nbeta = 3.0\nprior_model_prob = 0.7\n",
        )
        code, payload, _ = run(
            ["select", "--graph", str(path), "--models", "m1,m2",
             "--priors", str(priors)],
            capsys,
        )
        assert code == 0
        assert [row["prior_model_prob"] for row in payload["models"]] == [0.3, 0.7]

    def test_partial_model_priors_are_rejected(self, tmp_path, capsys):
        _, path = saved_graph(tmp_path, n=7, p=0.5, seed=8)
        priors = priors_toml(
            tmp_path,
            "[m1]\nprior_model_prob = 0.3\n[m2]\nalpha = 2.0\nbeta = 3.0\n",
        )
        code, _, err = run(
            ["select", "--graph", str(path), "--models", "m1,m2",
             "--priors", str(priors)],
            capsys,
        )
        assert code == 1
        assert json.loads(err)["error"]["type"] == "SchemaError"

    def test_single_model_is_a_usage_error(self, tmp_path, capsys):
        _, path = saved_graph(tmp_path, n=7, p=0.5, seed=8)
        with pytest.raises(SystemExit) as exc:
            main(["select", "--graph", str(path), "--models", "m1"])
        assert exc.value.code == 2
        capsys.readouterr()


class TestFitPriorAndSimulate:
    def test_fit_prior_writes_usable_toml(self, tmp_path, capsys):
        states = tmp_path / "states"
        states.mkdir()
        for i, dens in enumerate((0.2, 0.3, 0.4)):
            save_graph(er_graph(12, dens, 900 + i), states / f"st{i}.json")
        priors_path = tmp_path / "fitted.toml"
        code, payload, _ = run(
            ["fit-prior", "--graphs", str(states), "--model", "m2",
             "--exclude", "st1", "--out", str(priors_path)],
            capsys,
        )
        assert code == 0
        assert payload["target_state"] == "st1"
        assert sorted(payload["per_state_summaries"]) == ["st0", "st2"]
        assert priors_path.with_suffix(".report.json").exists()
        text = priors_path.read_text(encoding="utf-8")
        assert text.startswith("[m2]")
        _, target = saved_graph(tmp_path, n=12, p=0.3, seed=950)
        code, payload, _ = run(
            ["evidence", "--graph", str(target), "--model", "m2",
             "--priors", str(priors_path)],
            capsys,
        )
        assert code == 0
        assert math.isfinite(payload["log_evidence"])

    def test_simulate_writes_deterministic_replicates(self, tmp_path, capsys):
        payloads = []
        for d in ("a", "b"):
            out = tmp_path / d
            code, payload, _ = run(
                ["simulate", "--mechanism", "er", "--n", "20", "--p", "0.3",
                 "--reps", "2", "--seed", "5", "--out", str(out)],
                capsys,
            )
            assert code == 0
            payloads.append(payload)
        assert (tmp_path / "a" / "g000.json").read_bytes() == (
            tmp_path / "b" / "g000.json"
        ).read_bytes()
        assert [r["file"] for r in payloads[0]["replicates"]] == ["g000.json", "g001.json"]
        assert json.loads((tmp_path / "a" / "replicates.json").read_text())
        g = load_graph(tmp_path / "a" / "g001.json")
        assert g.n == 20

    def test_simulate_missing_mechanism_parameter(self, tmp_path, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["simulate", "--mechanism", "er", "--n", "20",
                  "--reps", "1", "--seed", "5", "--out", str(tmp_path / "x")])
        assert exc.value.code == 2
        capsys.readouterr()

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0
        out, _ = capsys.readouterr()
        assert out.strip() == f"ccmselect {TOOL_VERSION}"

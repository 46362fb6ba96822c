import csv
import json

import pytest

from sentireg.cli import EXIT_ESTIMATION, EXIT_IO, EXIT_OK, EXIT_SCHEMA, main
from sentireg.pipeline import (
    PipelineConfig,
    StageError,
    default_data_path,
    run_pipeline,
)

CORPUS = default_data_path("fixture_corpus.csv")
COVARIATES = default_data_path("state_covariates.csv")

ARTIFACTS = [
    "tokens.csv", "scored.csv", "state_summary.csv", "analysis_table.csv",
    "descriptives.csv", "fit_report.json", "fit_report.txt", "margins.csv", "qq.csv",
]


def run_fixture(out):
    config = PipelineConfig(corpus=CORPUS, covariates=COVARIATES, out=out)
    run_pipeline(config)
    return out


class TestRunPipeline:
    def test_all_artifacts_produced(self, tmp_path):
        out = run_fixture(tmp_path / "run")
        for name in ARTIFACTS + ["run_manifest.json"]:
            assert (out / name).exists(), name

    def test_fit_report_schema(self, tmp_path):
        out = run_fixture(tmp_path / "run")
        report = json.loads((out / "fit_report.json").read_text())
        assert {"coefficients", "cov", "ll", "ll0", "lr_chi2", "df", "lr_p",
                "pseudo_r2", "n_iter", "converged", "diagnostics"} <= set(report)
        for c in report["coefficients"]:
            assert {"name", "coef", "std_err", "z", "p"} == set(c)
        assert report["converged"] is True
        assert {"pearson", "classification"} == set(report["diagnostics"])

    def test_missing_covariates_names_join_stage(self, tmp_path):
        config = PipelineConfig(
            corpus=CORPUS, covariates=tmp_path / "nope.csv", out=tmp_path / "out"
        )
        with pytest.raises(StageError, match="join"):
            run_pipeline(config)

    def test_rerun_is_bit_identical(self, tmp_path):
        out1 = run_fixture(tmp_path / "a")
        out2 = run_fixture(tmp_path / "b")
        for name in ARTIFACTS:
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes(), name
        m1 = json.loads((out1 / "run_manifest.json").read_text())
        m2 = json.loads((out2 / "run_manifest.json").read_text())
        assert m1["inputs"] == m2["inputs"]
        assert m1["artifacts"] == m2["artifacts"]

    def test_manifest_lists_all_inputs(self, tmp_path):
        out = run_fixture(tmp_path / "run")
        manifest = json.loads((out / "run_manifest.json").read_text())
        assert set(manifest["inputs"]) == {
            "corpus", "covariates", "lexicon", "negators", "amplifiers",
            "stopwords", "slang", "stem_rules", "lemmas",
        }
        assert all(len(h) == 64 for h in manifest["inputs"].values())


class TestCli:
    def _args(self, command, out, **extra):
        args = [command, "--corpus", str(CORPUS), "--covariates", str(COVARIATES),
                "--out", str(out)]
        for k, v in extra.items():
            args += [f"--{k.replace('_', '-')}", str(v)]
        return args

    def test_run_exit_zero(self, tmp_path):
        assert main(self._args("run", tmp_path / "out")) == EXIT_OK

    def test_staged_equals_monolithic(self, tmp_path):
        mono = tmp_path / "mono"
        staged = tmp_path / "staged"
        assert main(self._args("run", mono)) == EXIT_OK
        for command in ("preprocess", "score", "join", "fit", "diagnose"):
            assert main(self._args(command, staged)) == EXIT_OK
        for name in ARTIFACTS:
            assert (mono / name).read_bytes() == (staged / name).read_bytes(), name

    def test_missing_corpus_file_is_io_error(self, tmp_path):
        args = ["run", "--corpus", str(tmp_path / "nope.csv"),
                "--covariates", str(COVARIATES), "--out", str(tmp_path / "out")]
        assert main(args) == EXIT_IO

    def test_bad_schema_is_schema_error(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("id,text\na,hello\n", encoding="utf-8")
        args = ["run", "--corpus", str(bad), "--covariates", str(COVARIATES),
                "--out", str(tmp_path / "out")]
        assert main(args) == EXIT_SCHEMA

    def test_diagnose_without_fit_names_missing_file(self, tmp_path, capsys):
        out = tmp_path / "out"
        out.mkdir()
        assert main(["diagnose", "--out", str(out)]) == EXIT_IO
        assert "fit_report.json" in capsys.readouterr().err

    def test_single_class_corpus_is_estimation_error(self, tmp_path):
        # every tweet scores positive -> y has one class -> exit 3
        rows = []
        with open(CORPUS, encoding="utf-8") as fh:
            for i, row in enumerate(csv.DictReader(fh)):
                # pad with varying filler so text width is not constant
                rows.append({"id": row["id"], "state": row["state"],
                             "text": "great wonderful happy " + "blah " * (i % 7)})
        corpus = tmp_path / "one_class.csv"
        with open(corpus, "w", newline="", encoding="utf-8") as fh:
            w = csv.DictWriter(fh, fieldnames=["id", "state", "text"])
            w.writeheader()
            w.writerows(rows)
        args = ["run", "--corpus", str(corpus), "--covariates", str(COVARIATES),
                "--out", str(tmp_path / "out")]
        assert main(args) == EXIT_ESTIMATION

    def test_invalid_cutoff_rejected(self, tmp_path):
        assert main(self._args("run", tmp_path / "out", cutoff="1.5")) == EXIT_SCHEMA


class TestStageOutputs:
    def test_scored_csv_schema(self, tmp_path):
        out = run_fixture(tmp_path / "run")
        with open(out / "scored.csv", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            assert reader.fieldnames == ["id", "state", "score", "class", "binary"]
            rows = list(reader)
        assert len(rows) == 40
        for row in rows:
            assert row["binary"] in ("0", "1")
            assert -2.0 <= float(row["score"]) <= 2.0

    def test_state_summary_shares(self, tmp_path):
        out = run_fixture(tmp_path / "run")
        with open(out / "state_summary.csv", encoding="utf-8") as fh:
            rows = list(csv.DictReader(fh))
        assert sum(int(r["n_docs"]) for r in rows) == 40
        states = [r["state"] for r in rows]
        assert states == sorted(states)
        for r in rows:
            total = (float(r["share_positive"]) + float(r["share_negative"])
                     + float(r["share_neutral"]))
            assert total == pytest.approx(1.0, abs=1e-12)

    def test_qq_rows_match_pattern_count(self, tmp_path):
        out = run_fixture(tmp_path / "run")
        report = json.loads((out / "fit_report.json").read_text())
        with open(out / "qq.csv", encoding="utf-8") as fh:
            n_rows = sum(1 for _ in csv.DictReader(fh))
        assert n_rows == report["diagnostics"]["pearson"]["n_patterns"]

    def test_margins_cover_all_predictors(self, tmp_path):
        out = run_fixture(tmp_path / "run")
        with open(out / "margins.csv", encoding="utf-8") as fh:
            rows = list(csv.DictReader(fh))
        names = [r["variable"] for r in rows]
        assert "Constant" not in names
        assert len(names) == 18
        kinds = {r["variable"]: r["kind"] for r in rows}
        assert kinds["NE"] == kinds["MW"] == kinds["WEST"] == "discrete"
        assert kinds["TW"] == "continuous"

    def test_human_report_mentions_fit_statistics(self, tmp_path):
        out = run_fixture(tmp_path / "run")
        text = (out / "fit_report.txt").read_text()
        for needle in ("LR chi2(", "Prob > chi2", "Pseudo R2", "Log-likelihood",
                       "Pearson chi2(", "Correctly classified"):
            assert needle in text

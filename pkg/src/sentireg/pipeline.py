"""File-based pipeline: ingest -> preprocess -> score -> join -> fit -> diagnose.

Each stage reads the previous stage's artifact and writes its own, so a
monolithic run and a staged run produce byte-identical files. The run
manifest records content hashes of every input and artifact.
"""

from __future__ import annotations

import csv
import hashlib
import json
import platform
import time
from dataclasses import dataclass
from importlib import metadata, resources
from pathlib import Path
from typing import NamedTuple

import numpy as np

from . import corpus as corpus_mod
from . import diagnostics as diag_mod
from . import logit as logit_mod
from . import sentiment as sent_mod
from . import tabulate as tab_mod
from .corpus import SchemaError

__all__ = [
    "PipelineConfig",
    "default_data_path",
    "stage_preprocess",
    "stage_score",
    "stage_join",
    "stage_fit",
    "stage_diagnose",
    "run_pipeline",
    "MARGIN_KINDS",
]

# Regional dummies change discretely; every other regressor is continuous.
MARGIN_KINDS = {name: ("discrete" if name in ("NE", "MW", "WEST") else "continuous")
                for name in tab_mod.ANALYSIS_COLUMNS[1:]}


def default_data_path(name: str) -> Path:
    """Path to a bundled data file (lexicons, rules, fixtures)."""
    return Path(str(resources.files("sentireg").joinpath("data", name)))


@dataclass
class PipelineConfig:
    corpus: Path
    covariates: Path
    out: Path
    lexicon: Path | None = None
    negators: Path | None = None
    amplifiers: Path | None = None
    stopwords: Path | None = None
    slang: Path | None = None
    stem_rules: Path | None = None
    lemmas: Path | None = None
    cutoff: float = 0.5
    tol: float = 1e-10
    max_iter: int = 100
    seed: int = 0

    def __post_init__(self):
        self.corpus = Path(self.corpus)
        self.covariates = Path(self.covariates)
        self.out = Path(self.out)
        defaults = {
            "lexicon": "lexicon.tsv", "negators": "negators.txt",
            "amplifiers": "amplifiers.tsv", "stopwords": "stopwords.txt",
            "slang": "slang.txt", "stem_rules": "stem_rules.tsv",
            "lemmas": "lemmas.tsv",
        }
        for field, filename in defaults.items():
            value = getattr(self, field)
            setattr(self, field, default_data_path(filename) if value is None else Path(value))
        if not 0.0 < self.cutoff < 1.0:
            raise ValueError(f"cutoff must be in (0, 1), got {self.cutoff}")

    def input_paths(self) -> dict[str, Path]:
        return {
            "corpus": self.corpus, "covariates": self.covariates,
            "lexicon": self.lexicon, "negators": self.negators,
            "amplifiers": self.amplifiers, "stopwords": self.stopwords,
            "slang": self.slang, "stem_rules": self.stem_rules,
            "lemmas": self.lemmas,
        }


class DocRef(NamedTuple):
    """The slice of a document the scoring and join stages need."""
    id: str
    state: str
    text_width: int


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def stage_preprocess(config: PipelineConfig) -> Path:
    """Tokenize and normalize the corpus; writes tokens.csv."""
    loaded = corpus_mod.load_corpus(config.corpus)
    stopwords = corpus_mod.load_wordlist(config.stopwords)
    slang = corpus_mod.load_wordlist(config.slang)
    rules = corpus_mod.load_stem_rules(config.stem_rules)
    lemmas = corpus_mod.load_tsv_map(config.lemmas)
    out = config.out / "tokens.csv"
    with open(out, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["id", "state", "text_width", "tokens"])
        for doc in loaded.documents:
            stream = corpus_mod.preprocess(
                doc.text, doc_id=doc.id, stopwords=stopwords, slang=slang,
                stem_rules=rules, lemmas=lemmas,
            )
            w.writerow([doc.id, doc.state, doc.text_width, " ".join(stream.normalized)])
    return out


def _read_tokens(path: Path) -> list[tuple[DocRef, corpus_mod.TokenStream]]:
    if not path.exists():
        raise FileNotFoundError(path)
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        required = {"id", "state", "text_width", "tokens"}
        if reader.fieldnames is None or required - set(reader.fieldnames):
            raise SchemaError(f"{path}: expected columns {sorted(required)}")
        for row in reader:
            ref = DocRef(id=row["id"], state=row["state"], text_width=int(row["text_width"]))
            words = row["tokens"].split() if row["tokens"] else []
            tokens = tuple(
                corpus_mod.Token(surface=wd, normalized=wd, position=i)
                for i, wd in enumerate(words)
            )
            out.append((ref, corpus_mod.TokenStream(doc_id=ref.id, tokens=tokens)))
    return out


def stage_score(config: PipelineConfig) -> tuple[Path, Path]:
    """Score normalized token streams; writes scored.csv and state_summary.csv."""
    lexicon = sent_mod.load_lexicon(config.lexicon, config.negators, config.amplifiers)
    records = _read_tokens(config.out / "tokens.csv")
    scored = [(ref, sent_mod.score(stream, lexicon)) for ref, stream in records]
    scored_path = config.out / "scored.csv"
    summary_path = config.out / "state_summary.csv"
    sent_mod.write_scored_csv(scored_path, scored)
    sent_mod.write_state_summary_csv(summary_path, sent_mod.aggregate_by_state(scored))
    return scored_path, summary_path


def stage_join(config: PipelineConfig) -> tuple[Path, Path]:
    """Join scored documents with state covariates; writes analysis_table.csv
    and descriptives.csv."""
    scored_path = config.out / "scored.csv"
    if not scored_path.exists():
        raise FileNotFoundError(scored_path)
    refs = {ref.id: ref for ref, _ in _read_tokens(config.out / "tokens.csv")}
    pairs = []
    with open(scored_path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        required = {"id", "state", "binary"}
        if reader.fieldnames is None or required - set(reader.fieldnames):
            raise SchemaError(f"{scored_path}: expected columns {sorted(required)}")
        for row in reader:
            if row["id"] not in refs:
                raise SchemaError(f"{scored_path}: id {row['id']!r} absent from tokens.csv")
            pairs.append((refs[row["id"]], int(row["binary"])))
    covars = tab_mod.load_covariates(config.covariates)
    rows = tab_mod.join(pairs, covars)
    table_path = config.out / "analysis_table.csv"
    desc_path = config.out / "descriptives.csv"
    tab_mod.write_analysis_csv(table_path, rows)
    tab_mod.write_descriptives_csv(desc_path, tab_mod.descriptive_stats(rows))
    return table_path, desc_path


def build_design(rows: list[tab_mod.AnalysisRow]) -> logit_mod.DesignMatrix:
    """Analysis rows -> design matrix with intercept, in the report's column order."""
    data = np.array([r.as_tuple() for r in rows], dtype=float)
    X = np.column_stack([np.ones(len(rows)), data[:, 1:]])
    return logit_mod.DesignMatrix(
        X=X, y=data[:, 0], names=("Constant",) + tab_mod.ANALYSIS_COLUMNS[1:]
    )


def fit_report_dict(result: logit_mod.LogitFit) -> dict:
    lr = logit_mod.lr_test(result)
    return {
        "coefficients": [
            {"name": result.names[j], "coef": float(result.beta[j]),
             "std_err": float(result.std_err[j]), "z": float(result.z[j]),
             "p": float(result.p[j])}
            for j in range(len(result.beta))
        ],
        "cov": [[float(v) for v in row] for row in result.cov],
        "ll": result.ll, "ll0": result.ll0,
        "lr_chi2": lr["chi2"], "df": lr["df"], "lr_p": lr["p"],
        "pseudo_r2": logit_mod.pseudo_r2(result),
        "n_obs": result.n_obs, "n_iter": result.n_iter, "converged": result.converged,
    }


def fit_from_report(report: dict) -> logit_mod.LogitFit:
    coefs = report["coefficients"]
    return logit_mod.LogitFit(
        names=tuple(c["name"] for c in coefs),
        beta=np.array([c["coef"] for c in coefs]),
        cov=np.array(report["cov"]),
        std_err=np.array([c["std_err"] for c in coefs]),
        z=np.array([c["z"] for c in coefs]),
        p=np.array([c["p"] for c in coefs]),
        ll=report["ll"], ll0=report["ll0"], n_obs=report["n_obs"],
        n_iter=report["n_iter"], converged=report["converged"],
    )


def _human_report(report: dict) -> str:
    lines = []
    lines.append(f"{'Sentiment':<12}{'Coef.':>12}{'Std. Err.':>12}{'z':>10}{'P>z':>8}")
    for c in report["coefficients"][1:] + report["coefficients"][:1]:
        lines.append(f"{c['name']:<12}{c['coef']:>12.6g}{c['std_err']:>12.6g}"
                     f"{c['z']:>10.3f}{c['p']:>8.3f}")
    lines.append(f"LR chi2({report['df']}) = {report['lr_chi2']:.3f}")
    lines.append(f"Prob > chi2 = {report['lr_p']:.3f}")
    lines.append(f"Pseudo R2 = {report['pseudo_r2']:.3f}")
    lines.append(f"Log-likelihood = {report['ll']:.3f}")
    diag = report.get("diagnostics")
    if diag:
        pearson = diag["pearson"]
        cls = diag["classification"]
        lines.append("")
        lines.append(f"Number of observations = {report['n_obs']}")
        lines.append(f"Number of covariate patterns = {pearson['n_patterns']}")
        lines.append(f"Pearson chi2({pearson['df']}) = {pearson['chi2']:.2f}")
        p = pearson["p"]
        lines.append(f"Prob > chi2 = {'n/a' if p is None else format(p, '.4f')}")
        lines.append("")
        lines.append(f"Correctly classified = {100 * cls['accuracy']:.2f}%")
        for label in ("sensitivity", "specificity"):
            v = cls[label]
            lines.append(f"{label.capitalize()} = "
                         f"{'n/a' if v is None else format(100 * v, '.2f') + '%'}")
    return "\n".join(lines) + "\n"


def _write_reports(config: PipelineConfig, report: dict) -> tuple[Path, Path]:
    json_path = config.out / "fit_report.json"
    txt_path = config.out / "fit_report.txt"
    with open(json_path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    txt_path.write_text(_human_report(report), encoding="utf-8")
    return json_path, txt_path


def stage_fit(config: PipelineConfig) -> tuple[Path, Path]:
    """Fit the binary logit; writes fit_report.json and fit_report.txt."""
    rows = tab_mod.read_analysis_csv(config.out / "analysis_table.csv")
    design = build_design(rows)
    result = logit_mod.fit(design, tol=config.tol, max_iter=config.max_iter)
    return _write_reports(config, fit_report_dict(result))


def stage_diagnose(config: PipelineConfig) -> tuple[Path, Path]:
    """Goodness-of-fit, classification, QQ, and margins for an existing fit;
    appends to the fit report and writes margins.csv and qq.csv."""
    report_path = config.out / "fit_report.json"
    if not report_path.exists():
        raise FileNotFoundError(report_path)
    report = json.loads(report_path.read_text(encoding="utf-8"))
    result = fit_from_report(report)
    rows = tab_mod.read_analysis_csv(config.out / "analysis_table.csv")
    design = build_design(rows)

    p = logit_mod.predict_prob(design.X, result.beta)
    patterns = diag_mod.covariate_patterns(design.X, y=design.y, p=p)
    pearson = diag_mod.pearson_chi2(result, patterns)
    cls = diag_mod.classification_summary(result, design, cutoff=config.cutoff)
    effects = diag_mod.marginal_effects(result, design, MARGIN_KINDS)

    margins_path = config.out / "margins.csv"
    qq_path = config.out / "qq.csv"
    diag_mod.write_margins_csv(margins_path, effects)
    diag_mod.write_qq_csv(qq_path, diag_mod.qq_export(patterns))

    report["diagnostics"] = {
        "pearson": pearson,
        "classification": {
            "tp": cls.tp, "tn": cls.tn, "fp": cls.fp, "fn": cls.fn,
            "accuracy": cls.accuracy, "sensitivity": cls.sensitivity,
            "specificity": cls.specificity, "cutoff": cls.cutoff,
        },
    }
    _write_reports(config, report)
    return margins_path, qq_path


_STAGES = (
    ("preprocess", stage_preprocess),
    ("score", stage_score),
    ("join", stage_join),
    ("fit", stage_fit),
    ("diagnose", stage_diagnose),
)


class StageError(RuntimeError):
    """Wraps a stage failure with the name of the stage that raised it."""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage '{stage}' failed: {cause}")


def run_pipeline(config: PipelineConfig) -> Path:
    """Run every stage in order and write run_manifest.json; returns the
    output directory."""
    config.out.mkdir(parents=True, exist_ok=True)
    timings = {}
    for name, stage in _STAGES:
        start = time.perf_counter()
        try:
            stage(config)
        except Exception as exc:
            raise StageError(name, exc) from exc
        timings[name] = time.perf_counter() - start

    artifacts = ["tokens.csv", "scored.csv", "state_summary.csv", "analysis_table.csv",
                 "descriptives.csv", "fit_report.json", "fit_report.txt",
                 "margins.csv", "qq.csv"]
    manifest = {
        "inputs": {name: _sha256(path) for name, path in config.input_paths().items()},
        "artifacts": {name: _sha256(config.out / name) for name in artifacts},
        "options": {"cutoff": config.cutoff, "tol": config.tol,
                    "max_iter": config.max_iter, "seed": config.seed},
        "versions": {"sentireg": metadata.version("sentireg"),
                     "python": platform.python_version()},
        "timings_sec": timings,
    }
    with open(config.out / "run_manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return config.out

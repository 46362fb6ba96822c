"""Corpus ingestion and text processing.

Raw documents come in as CSV rows (id, state, text). Everything downstream
works on token streams: tokenize, lowercase, drop stopwords/slang, stem or
lemmatize, then count (bag of words, document-term matrix, n-grams) or tag.
All functions here are pure; the same input always yields the same output.
"""

from __future__ import annotations

import csv
import re
from collections import Counter
from dataclasses import dataclass, replace
from pathlib import Path

__all__ = [
    "STATE_CODES",
    "Document",
    "Token",
    "TokenStream",
    "BagOfWords",
    "DocumentTermMatrix",
    "PosTaggedStream",
    "CorpusLoadResult",
    "SchemaError",
    "load_corpus",
    "tokenize",
    "lowercase",
    "remove_stopwords",
    "stem",
    "lemmatize",
    "bag_of_words",
    "build_dtm",
    "ngrams",
    "pos_tag",
    "preprocess",
    "load_wordlist",
    "load_tsv_map",
    "load_stem_rules",
    "POS_TAGS",
]

# 50 states plus DC
STATE_CODES = frozenset({
    "AL", "AK", "AZ", "AR", "CA", "CO", "CT", "DE", "DC", "FL", "GA", "HI",
    "ID", "IL", "IN", "IA", "KS", "KY", "LA", "ME", "MD", "MA", "MI", "MN",
    "MS", "MO", "MT", "NE", "NV", "NH", "NJ", "NM", "NY", "NC", "ND", "OH",
    "OK", "OR", "PA", "RI", "SC", "SD", "TN", "TX", "UT", "VT", "VA", "WA",
    "WV", "WI", "WY",
})

POS_TAGS = ("NOUN", "VERB", "ADJ", "ART", "PRON", "OTHER")


class SchemaError(ValueError):
    """An input file does not match its documented schema."""


@dataclass(frozen=True)
class Document:
    id: str
    state: str
    text: str
    text_width: int

    def __post_init__(self):
        if not self.id:
            raise ValueError("document id must be non-empty")
        if self.state not in STATE_CODES:
            raise ValueError(f"unknown state code {self.state!r}")
        if self.text_width != len(self.text):
            raise ValueError("text_width must equal the character count of text")


@dataclass(frozen=True)
class Token:
    surface: str
    normalized: str
    position: int


@dataclass(frozen=True)
class TokenStream:
    doc_id: str
    tokens: tuple[Token, ...]

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def normalized(self) -> list[str]:
        return [t.normalized for t in self.tokens]


@dataclass(frozen=True)
class BagOfWords:
    counts: dict[str, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True)
class DocumentTermMatrix:
    """Sparse doc x term count matrix; only nonzero cells are stored."""

    doc_ids: tuple[str, ...]
    terms: tuple[str, ...]
    cells: dict[tuple[int, int], int]  # (row, col) -> count > 0

    def row_sum(self, i: int) -> int:
        return sum(v for (r, _), v in self.cells.items() if r == i)

    def to_dense(self) -> list[list[int]]:
        dense = [[0] * len(self.terms) for _ in self.doc_ids]
        for (r, c), v in self.cells.items():
            dense[r][c] = v
        return dense


@dataclass(frozen=True)
class PosTaggedStream:
    doc_id: str
    pairs: tuple[tuple[Token, str], ...]


@dataclass(frozen=True)
class CorpusLoadResult:
    documents: list[Document]
    dropped: int  # rows discarded for unknown state codes


def load_corpus(path: str | Path) -> CorpusLoadResult:
    """Read a corpus CSV (columns id, state, text; extras ignored).

    Rows whose state code is not a US state/DC are dropped and counted.
    Duplicate ids and malformed rows are hard errors.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(path)
    documents: list[Document] = []
    seen: set[str] = set()
    dropped = 0
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise SchemaError(f"{path}: empty file, header row required")
        missing = {"id", "state", "text"} - set(reader.fieldnames)
        if missing:
            raise SchemaError(f"{path}: missing required column(s) {sorted(missing)}")
        for lineno, row in enumerate(reader, start=2):
            if row.get("id") is None or row.get("state") is None or row.get("text") is None:
                raise SchemaError(f"{path}:{lineno}: malformed row")
            doc_id, state, text = row["id"], row["state"], row["text"]
            if not doc_id:
                raise SchemaError(f"{path}:{lineno}: empty id")
            if doc_id in seen:
                raise SchemaError(f"{path}:{lineno}: duplicate id {doc_id!r}")
            seen.add(doc_id)
            if state not in STATE_CODES:
                dropped += 1
                continue
            documents.append(Document(id=doc_id, state=state, text=text, text_width=len(text)))
    return CorpusLoadResult(documents=documents, dropped=dropped)


# A token is a maximal run of letters/digits with internal apostrophes;
# everything else separates. The leading # or @ of hashtags/mentions is
# therefore stripped while the word itself survives.
_WORD_RE = re.compile(r"[^\W_]+(?:['’][^\W_]+)*", re.UNICODE)
# URLs are dropped wholesale before tokenization.
_URL_RE = re.compile(r"(?<!\S)http\S*", re.IGNORECASE)


def tokenize(text: str, doc_id: str = "") -> TokenStream:
    """Split text into tokens, removing URLs, punctuation, and special characters."""
    cleaned = _URL_RE.sub(" ", text)
    tokens = tuple(
        Token(surface=m, normalized=m, position=i)
        for i, m in enumerate(_WORD_RE.findall(cleaned))
    )
    return TokenStream(doc_id=doc_id, tokens=tokens)


def lowercase(stream: TokenStream) -> TokenStream:
    return TokenStream(
        doc_id=stream.doc_id,
        tokens=tuple(replace(t, normalized=t.normalized.lower()) for t in stream.tokens),
    )


def remove_stopwords(stream: TokenStream, stoplist: set[str]) -> TokenStream:
    """Drop tokens whose lowercased surface is in the stoplist; positions are kept."""
    return TokenStream(
        doc_id=stream.doc_id,
        tokens=tuple(t for t in stream.tokens if t.surface.lower() not in stoplist),
    )


def stem(stream: TokenStream, rules: list[tuple[str, str]], min_stem: int = 3) -> TokenStream:
    """Apply the first suffix rule (in table order) that leaves a stem of
    at least min_stem characters; tokens matching no rule pass through."""

    def apply(word: str) -> str:
        for suffix, repl in rules:
            if word.endswith(suffix) and len(word) > len(suffix):
                candidate = word[: -len(suffix)] + repl
                if len(candidate) >= min_stem:
                    return candidate
        return word

    return TokenStream(
        doc_id=stream.doc_id,
        tokens=tuple(replace(t, normalized=apply(t.normalized)) for t in stream.tokens),
    )


def lemmatize(stream: TokenStream, dictionary: dict[str, str]) -> TokenStream:
    """Replace dictionary hits by their lemma; misses pass through unchanged."""
    return TokenStream(
        doc_id=stream.doc_id,
        tokens=tuple(
            replace(t, normalized=dictionary.get(t.normalized, t.normalized))
            for t in stream.tokens
        ),
    )


def bag_of_words(stream: TokenStream) -> BagOfWords:
    return BagOfWords(counts=dict(Counter(stream.normalized)))


def build_dtm(corpus: list[TokenStream]) -> DocumentTermMatrix:
    if not corpus:
        raise ValueError("cannot build a document-term matrix from an empty corpus")
    vocab = sorted({term for s in corpus for term in s.normalized})
    index = {term: j for j, term in enumerate(vocab)}
    cells: dict[tuple[int, int], int] = {}
    for i, s in enumerate(corpus):
        for term, count in Counter(s.normalized).items():
            cells[(i, index[term])] = count
    return DocumentTermMatrix(
        doc_ids=tuple(s.doc_id for s in corpus), terms=tuple(vocab), cells=cells
    )


def ngrams(stream: TokenStream, n: int) -> list[tuple[str, ...]]:
    """All contiguous n-token windows, in order, over normalized forms."""
    if n < 1:
        raise ValueError("n must be at least 1")
    words = stream.normalized
    return [tuple(words[i : i + n]) for i in range(len(words) - n + 1)]


def pos_tag(stream: TokenStream, tag_lexicon: dict[str, str]) -> PosTaggedStream:
    """Lexicon-lookup tagging; unknown tokens get OTHER."""
    pairs = tuple((t, tag_lexicon.get(t.normalized, "OTHER")) for t in stream.tokens)
    return PosTaggedStream(doc_id=stream.doc_id, pairs=pairs)


def preprocess(
    text: str,
    *,
    doc_id: str = "",
    stopwords: set[str] | None = None,
    slang: set[str] | None = None,
    stem_rules: list[tuple[str, str]] | None = None,
    lemmas: dict[str, str] | None = None,
    normalizer: str = "lemma_then_stem",
) -> TokenStream:
    """Run the full pipeline: URL strip -> tokenize -> lowercase ->
    stopword/slang removal -> lemmatize and/or stem -> ready for counting.

    normalizer is one of "lemma_then_stem" (dictionary hits lemmatized,
    misses stemmed), "lemma", "stem", or "none".
    """
    stream = lowercase(tokenize(text, doc_id=doc_id))
    if stopwords:
        stream = remove_stopwords(stream, stopwords)
    if slang:
        stream = remove_stopwords(stream, slang)
    lemmas = lemmas or {}
    stem_rules = stem_rules or []
    if normalizer == "lemma_then_stem":
        hits = tuple(t.normalized in lemmas for t in stream.tokens)
        stream = lemmatize(stream, lemmas)
        stemmed = stem(stream, stem_rules)
        stream = TokenStream(
            doc_id=stream.doc_id,
            tokens=tuple(
                t if hit else s for t, s, hit in zip(stream.tokens, stemmed.tokens, hits)
            ),
        )
    elif normalizer == "lemma":
        stream = lemmatize(stream, lemmas)
    elif normalizer == "stem":
        stream = stem(stream, stem_rules)
    elif normalizer != "none":
        raise ValueError(f"unknown normalizer {normalizer!r}")
    return stream


def load_wordlist(path: str | Path) -> set[str]:
    """Newline-delimited word list; blank lines and '#' comments ignored."""
    words: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                words.add(line)
    return words


def load_tsv_map(path: str | Path) -> dict[str, str]:
    """Two-column TSV (key<TAB>value) into a dict; comments and blanks ignored."""
    mapping: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise SchemaError(f"{path}:{lineno}: expected two tab-separated fields")
            mapping[parts[0]] = parts[1]
    return mapping


def load_stem_rules(path: str | Path) -> list[tuple[str, str]]:
    """Ordered suffix rules from a TSV (suffix<TAB>replacement), file order kept."""
    rules: list[tuple[str, str]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) == 1:
                parts = [parts[0], ""]
            if len(parts) != 2 or not parts[0]:
                raise SchemaError(f"{path}:{lineno}: expected suffix<TAB>replacement")
            rules.append((parts[0], parts[1]))
    return rules

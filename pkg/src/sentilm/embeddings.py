"""Word vectors, averaged sentence embeddings, and context-gloss similarity.

Two interchangeable similarity sources feed sense attention: averaging
pre-trained word vectors and taking the cosine (the default), or a table of
precomputed scores keyed by (context_key, gloss_key) so that externally
computed similarities can be plugged in without the encoder that produced
them.
"""

from __future__ import annotations

import re

import numpy as np

from .errors import LengthMismatch, MissingSimilarity, ParseError

_GLOSS_TOKEN = re.compile(r"[0-9a-z]+")


class VectorStore:
    """Immutable word -> vector table with a fixed dimension."""

    def __init__(self, dim: int, table: dict[str, np.ndarray]):
        if dim < 1:
            raise ValueError("dim must be >= 1")
        self.dim = dim
        self._table = table

    def __contains__(self, word: str) -> bool:
        return word in self._table

    def __len__(self) -> int:
        return len(self._table)

    def get(self, word: str):
        return self._table.get(word)


def load_vectors(source) -> VectorStore:
    """Load a text vector file: one word plus whitespace-separated floats per line.

    The first data line fixes the dimension; duplicate words keep their first
    vector.  Blank lines are skipped.
    """
    dim = None
    table: dict[str, np.ndarray] = {}
    for line_number, raw in enumerate(source, start=1):
        parts = raw.split()
        if not parts:
            continue
        word, values = parts[0], parts[1:]
        if dim is None:
            if not values:
                raise ParseError(line_number, "no vector components on first data line")
            dim = len(values)
        if len(values) != dim:
            raise ParseError(line_number, f"expected {dim} components, found {len(values)}")
        try:
            vec = np.array([float(v) for v in values], dtype=np.float64)
        except ValueError:
            raise ParseError(line_number, "non-numeric vector component") from None
        if word not in table:
            table[word] = vec
    if dim is None:
        raise ParseError(0, "empty vector file")
    return VectorStore(dim, table)


def sentence_embedding(store: VectorStore, tokens) -> tuple[np.ndarray, int]:
    """Mean of the in-store token vectors, plus how many tokens were in store.

    Zero coverage yields the zero vector.  Vectors are summed in sorted token
    order so the result is exactly permutation-invariant.
    """
    if not tokens:
        raise ValueError("tokens must be non-empty")
    total = np.zeros(store.dim, dtype=np.float64)
    coverage = 0
    for token in sorted(tokens):
        vec = store.get(token)
        if vec is not None:
            total += vec
            coverage += 1
    if coverage == 0:
        return total, 0
    return total / coverage, coverage


def cosine(u, v) -> float:
    """u.v / (|u| |v|); 0.0 when either norm is zero."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise LengthMismatch(f"vector lengths differ: {u.shape} vs {v.shape}")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v) / (nu * nv))


def tokenize_gloss(text: str) -> list[str]:
    """Lowercase and split on non-alphanumeric runs."""
    return _GLOSS_TOKEN.findall(text.lower())


class WordVectorAverage:
    """Similarity = cosine of averaged word vectors; gloss embeddings cached by key."""

    def __init__(self, store: VectorStore):
        self.store = store
        self._gloss_cache: dict[str, np.ndarray] = {}

    def score(self, context_tokens, context_key, gloss_tokens, gloss_key) -> float:
        ctx_vec, _ = sentence_embedding(self.store, context_tokens)
        gloss_vec = self._gloss_cache.get(gloss_key)
        if gloss_vec is None:
            gloss_vec, _ = sentence_embedding(self.store, gloss_tokens)
            self._gloss_cache[gloss_key] = gloss_vec
        return cosine(ctx_vec, gloss_vec)


class PrecomputedSimilarity:
    """Similarity read from a (context_key, gloss_key) -> score table; no fallback."""

    def __init__(self, table: dict[tuple[str, str], float]):
        for key, value in table.items():
            if not -1.0 <= value <= 1.0:
                raise ValueError(f"precomputed score {value} for {key!r} outside [-1, 1]")
        self.table = dict(table)

    def score(self, context_tokens, context_key, gloss_tokens, gloss_key) -> float:
        try:
            return self.table[(context_key, gloss_key)]
        except KeyError:
            raise MissingSimilarity(context_key, gloss_key) from None


class RecordingSimilarity:
    """Wraps a source and records every score it returns, keyed like Precomputed."""

    def __init__(self, inner):
        self.inner = inner
        self.log: dict[tuple[str, str], float] = {}

    def score(self, context_tokens, context_key, gloss_tokens, gloss_key) -> float:
        value = self.inner.score(context_tokens, context_key, gloss_tokens, gloss_key)
        self.log[(context_key, gloss_key)] = value
        return value


def similarity(src, context_tokens, context_key, gloss_tokens, gloss_key) -> float:
    """Dispatch to the similarity source; errors propagate from the source."""
    return src.score(context_tokens, context_key, gloss_tokens, gloss_key)


def load_precomputed(source) -> PrecomputedSimilarity:
    """Parse tab-separated "context_key<TAB>gloss_key<TAB>score" lines."""
    table: dict[tuple[str, str], float] = {}
    for line_number, raw in enumerate(source, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise ParseError(line_number, f"expected 3 fields, found {len(fields)}")
        ckey, gkey, score_text = fields
        try:
            score = float(score_text)
        except ValueError:
            raise ParseError(line_number, f"non-numeric score {score_text!r}") from None
        if not -1.0 <= score <= 1.0:
            raise ParseError(line_number, f"score {score} outside [-1, 1]")
        table[(ckey, gkey)] = score
    return PrecomputedSimilarity(table)


def dump_precomputed(table: dict[tuple[str, str], float], handle) -> None:
    """Write a similarity table in the precomputed file format, sorted by key.

    Scores are written with repr() so they round-trip through float() exactly.
    """
    for (ckey, gkey) in sorted(table):
        handle.write(f"{ckey}\t{gkey}\t{table[(ckey, gkey)]!r}\n")

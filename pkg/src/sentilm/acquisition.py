"""Word-level knowledge acquisition: POS classes, lemma candidates, sense
attention, and polarity assignment.

Each word is tagged, the tag collapsed to one of five classes, the word
lemmatized, and its lexicon senses weighted by a softmax over
similarity/sense_rank logits; the sign of the weighted positive-minus-negative
score is the word's polarity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .embeddings import similarity, tokenize_gloss
from .errors import EmptySenses, LengthMismatch, TagCountMismatch
from .lexicon import Lexicon, SenseMatch

POS5 = ("v", "n", "a", "r", "o")
CONTENT_POS = ("v", "n", "a", "r")

POSITIVE = "positive"
NEGATIVE = "negative"
NEUTRAL = "neutral"
POLARITIES = (POSITIVE, NEGATIVE, NEUTRAL)

CONTEXT_AWARE = "context_aware"
CONTEXT_FREE = "context_free"

# Treebank prefix -> five-class mapping. Anything unmatched collapses to 'o'.
_TREEBANK_PREFIXES = (("VB", "v"), ("NN", "n"), ("JJ", "a"), ("RB", "r"))

# Suffix heuristics for words unseen by the frequency tagger, checked in order.
UNKNOWN_SUFFIX_RULES = (
    ("ly", "r"),
    ("ing", "v"),
    ("ed", "v"),
    ("ous", "a"),
    ("ful", "a"),
    ("ive", "a"),
    ("able", "a"),
    ("ible", "a"),
    ("ish", "a"),
    ("less", "a"),
    ("al", "a"),
    ("ness", "n"),
    ("ment", "n"),
    ("tion", "n"),
    ("sion", "n"),
    ("ity", "n"),
    ("ism", "n"),
)

# Ordered suffix-replacement rules per POS class, applied after the identity
# candidate. Verb/adjective strips also try undoubling a final double
# consonant ("running" -> "runn" -> "run").
LEMMA_SUFFIX_RULES: dict[str, tuple[tuple[str, tuple[str, ...]], ...]] = {
    "n": (
        ("ses", ("s",)),
        ("ches", ("ch",)),
        ("shes", ("sh",)),
        ("xes", ("x",)),
        ("zes", ("z",)),
        ("ies", ("y",)),
        ("ves", ("f",)),
        ("men", ("man",)),
        ("es", ("",)),
        ("s", ("",)),
    ),
    "v": (
        ("ies", ("y",)),
        ("ing", ("", "e")),
        ("ed", ("", "e")),
        ("es", ("", "e")),
        ("s", ("",)),
    ),
    "a": (
        ("er", ("", "e")),
        ("est", ("", "e")),
    ),
    "r": (),
}

_UNDOUBLE_SUFFIXES = {"v": ("ing", "ed"), "a": ("er", "est")}
_VOWELS = set("aeiou")


def collapse_pos(treebank_tag: str) -> str:
    """Collapse a treebank tag to one of v/n/a/r/o by prefix."""
    for prefix, pos5 in _TREEBANK_PREFIXES:
        if treebank_tag.startswith(prefix):
            return pos5
    return "o"


class PreTagged:
    """Tags supplied alongside the input; tag_tokens only collapses them."""

    def __init__(self, treebank_tags: Iterable[str]):
        self.treebank_tags = list(treebank_tags)

    def tag(self, tokens) -> list[str]:
        if len(self.treebank_tags) != len(tokens):
            raise TagCountMismatch(
                f"{len(self.treebank_tags)} tags for {len(tokens)} tokens"
            )
        return [collapse_pos(t) for t in self.treebank_tags]


class FrequencyLexiconTagger:
    """Per-word most-frequent POS class learned from a tagged training file.

    Unknown words fall back to the suffix heuristics above, then to 'o'.
    Ties between classes break in POS5 order (v, n, a, r, o).
    """

    def __init__(self, word_pos: dict[str, str]):
        self.word_pos = word_pos

    @classmethod
    def from_tagged_stream(cls, source) -> "FrequencyLexiconTagger":
        counts: dict[str, dict[str, int]] = {}
        for raw in source:
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                continue
            word, tag = parts
            pos5 = collapse_pos(tag)
            per_word = counts.setdefault(word.lower(), {})
            per_word[pos5] = per_word.get(pos5, 0) + 1
        word_pos = {
            word: max(per_word, key=lambda p: (per_word[p], -POS5.index(p)))
            for word, per_word in counts.items()
        }
        return cls(word_pos)

    @classmethod
    def from_tagged_file(cls, path) -> "FrequencyLexiconTagger":
        with open(path, encoding="utf-8") as handle:
            return cls.from_tagged_stream(handle)

    def _tag_unknown(self, word: str) -> str:
        for suffix, pos5 in UNKNOWN_SUFFIX_RULES:
            if word.endswith(suffix) and len(word) > len(suffix):
                return pos5
        return "o"

    def tag(self, tokens) -> list[str]:
        out = []
        for token in tokens:
            word = token.lower()
            out.append(self.word_pos.get(word) or self._tag_unknown(word))
        return out


def tag_tokens(tagger, tokens) -> list[str]:
    """One POS class per token; errors propagate from the tagger."""
    if not tokens:
        raise ValueError("tokens must be non-empty")
    return tagger.tag(tokens)


def _undouble(stem: str) -> Optional[str]:
    if (
        len(stem) >= 3
        and stem[-1] == stem[-2]
        and stem[-1] not in _VOWELS
        and stem[-1].isalpha()
    ):
        return stem[:-1]
    return None


def lemmatize(word: str, pos5: str) -> list[str]:
    """Ordered lemma candidates: the word itself, then suffix-rule outputs.

    Candidates are not checked against any lexicon here; downstream lookup
    keeps the first candidate that has senses.
    """
    if pos5 not in CONTENT_POS:
        raise ValueError(f"pos5 must be one of {CONTENT_POS}, got {pos5!r}")
    candidates = [word]
    undouble_for = _UNDOUBLE_SUFFIXES.get(pos5, ())
    for suffix, replacements in LEMMA_SUFFIX_RULES[pos5]:
        if not word.endswith(suffix) or len(word) <= len(suffix):
            continue
        stem = word[: -len(suffix)]
        for repl in replacements:
            candidates.append(stem + repl)
        if suffix in undouble_for:
            undoubled = _undouble(stem)
            if undoubled:
                candidates.append(undoubled)
    seen = set()
    unique = []
    for cand in candidates:
        if cand and cand not in seen:
            seen.add(cand)
            unique.append(cand)
    return unique


def sense_attention(context_sim, sense_ranks) -> list[float]:
    """Softmax weights over senses with logits similarity/rank.

    Max-subtraction keeps the exponentials stable for any logit scale.
    """
    if len(context_sim) != len(sense_ranks):
        raise LengthMismatch(
            f"{len(context_sim)} similarities for {len(sense_ranks)} ranks"
        )
    if not sense_ranks:
        raise EmptySenses("no senses to weight")
    logits = [sim / rank for sim, rank in zip(context_sim, sense_ranks)]
    peak = max(logits)
    exps = [math.exp(x - peak) for x in logits]
    total = math.fsum(exps)
    return [e / total for e in exps]


def reciprocal_rank_weights(sense_ranks) -> list[float]:
    """Context-free prior: normalized reciprocal sense ranks."""
    if not sense_ranks:
        raise EmptySenses("no senses to weight")
    recips = [1.0 / rank for rank in sense_ranks]
    total = math.fsum(recips)
    return [r / total for r in recips]


def sentiment_score(weights, senses) -> float:
    """Convex combination of per-sense (pscore - nscore); lies in [-1, 1]."""
    if len(weights) != len(senses):
        raise LengthMismatch(f"{len(weights)} weights for {len(senses)} senses")
    if abs(math.fsum(weights) - 1.0) > 1e-9:
        raise ValueError("weights must sum to 1")
    return math.fsum(w * (s.pscore - s.nscore) for w, s in zip(weights, senses))


def assign_polarity(score: float) -> str:
    """Strict sign rule: positive, negative, or exactly-zero neutral."""
    if score > 0.0:
        return POSITIVE
    if score < 0.0:
        return NEGATIVE
    return NEUTRAL


@dataclass(frozen=True)
class KnowledgeToken:
    """A word with its POS class, polarity, weighted score, and sense count."""

    word: str
    pos5: str
    polarity: str
    score: float
    sense_count: int

    def __post_init__(self):
        if self.pos5 not in POS5:
            raise ValueError(f"bad pos5 {self.pos5!r}")
        if self.polarity not in POLARITIES:
            raise ValueError(f"bad polarity {self.polarity!r}")
        if self.sense_count < 0:
            raise ValueError("sense_count must be >= 0")
        if assign_polarity(self.score) != self.polarity:
            raise ValueError(
                f"polarity {self.polarity!r} inconsistent with score {self.score}"
            )
        if self.sense_count == 0 and self.score != 0.0:
            raise ValueError("sense_count 0 requires score 0")


@dataclass(frozen=True)
class KnowledgeSequence:
    """An annotated token sequence with an optional sequence-level label."""

    tokens: tuple[KnowledgeToken, ...]
    sentence_label: Optional[int] = None
    source_id: str = ""

    def __post_init__(self):
        if not self.tokens:
            raise ValueError("sequence must contain at least one token")
        object.__setattr__(self, "tokens", tuple(self.tokens))

    def words(self) -> list[str]:
        return [t.word for t in self.tokens]


def neutral_token(word: str, pos5: str, sense_count: int = 0) -> KnowledgeToken:
    return KnowledgeToken(word, pos5, NEUTRAL, 0.0, sense_count)


@dataclass
class Annotator:
    """Bundles the resources annotate() needs so corpora share caches.

    context_window limits the similarity context to +/- window tokens around
    the target word; None uses the whole sequence. With a window, precomputed
    context keys gain an "@position" suffix since each position sees its own
    context.
    """

    lexicon: Lexicon
    similarity_source: object
    tagger: object = None
    mode: str = CONTEXT_AWARE
    context_window: Optional[int] = None

    def annotate(self, tokens, sentence_label=None, source_id="", tagger=None):
        tagger = tagger if tagger is not None else self.tagger
        if tagger is None:
            raise ValueError("no tagger supplied")
        return annotate(
            self.lexicon,
            self.similarity_source,
            tagger,
            tokens,
            mode=self.mode,
            sentence_label=sentence_label,
            source_id=source_id,
            context_window=self.context_window,
        )


def _context_slice(lowered, index, window):
    if window is None:
        return lowered, ""
    lo = max(0, index - window)
    return lowered[lo : index + window + 1], f"@{index}"


def resolve_senses(lexicon: Lexicon, word: str, pos5: str) -> list[SenseMatch]:
    """First lemma candidate with a non-empty lookup wins; no merging."""
    for candidate in lemmatize(word, pos5):
        senses = lexicon.lookup(candidate, pos5)
        if senses:
            return senses
    return []


def annotate(
    lexicon: Lexicon,
    similarity_source,
    tagger,
    tokens,
    mode: str = CONTEXT_AWARE,
    sentence_label: Optional[int] = None,
    source_id: str = "",
    context_window: Optional[int] = None,
) -> KnowledgeSequence:
    """Tag, lemmatize, weight senses, and assign polarity for every token.

    'o'-class tokens never query the lexicon and come out neutral, as do
    words with no matching sense for any lemma candidate.
    """
    if mode not in (CONTEXT_AWARE, CONTEXT_FREE):
        raise ValueError(f"bad mode {mode!r}")
    pos_tags = tag_tokens(tagger, tokens)
    lowered = [t.lower() for t in tokens]
    out = []
    for i, (word, pos5) in enumerate(zip(tokens, pos_tags)):
        if pos5 == "o":
            out.append(neutral_token(word, pos5))
            continue
        senses = resolve_senses(lexicon, lowered[i], pos5)
        if not senses:
            out.append(neutral_token(word, pos5))
            continue
        ranks = [s.sense_rank for s in senses]
        if mode == CONTEXT_FREE:
            weights = reciprocal_rank_weights(ranks)
        else:
            context, key_suffix = _context_slice(lowered, i, context_window)
            sims = [
                similarity(
                    similarity_source,
                    context,
                    source_id + key_suffix,
                    tokenize_gloss(s.gloss),
                    s.synset_id,
                )
                for s in senses
            ]
            weights = sense_attention(sims, ranks)
        score = sentiment_score(weights, senses)
        out.append(
            KnowledgeToken(word, pos5, assign_polarity(score), score, len(senses))
        )
    return KnowledgeSequence(tuple(out), sentence_label, source_id)

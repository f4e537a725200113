"""SentiWordNet 3.0 parsing and ordered sense lookup.

The distribution file is UTF-8, tab-separated with '#' comment lines:

    POS <tab> ID <tab> PosScore <tab> NegScore <tab> SynsetTerms <tab> Gloss

SynsetTerms is a space-separated list of ``lemma#rank`` entries; multiword
lemmas join their parts with underscores.  Satellite-adjective lines (POS
field 's') are folded into the adjective class 'a'.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import ParseError

POS_CLASSES = ("v", "n", "a", "r")


@dataclass(frozen=True)
class SenseRecord:
    """One parsed lexicon line: a synset with its scores and member lemmas."""

    pos5: str
    synset_id: str
    pscore: float
    nscore: float
    terms: tuple[tuple[str, int], ...]  # (lemma, sense_rank), file order
    gloss: str


@dataclass(frozen=True)
class SenseMatch:
    """One sense of a (lemma, pos5) key, as returned by lookup."""

    sense_rank: int
    pscore: float
    nscore: float
    gloss: str
    synset_id: str


class Lexicon:
    """Immutable index from (lemma, pos5) to senses ordered by ascending rank."""

    def __init__(self, index: dict[tuple[str, str], tuple[SenseMatch, ...]], entry_count: int):
        self._index = index
        self.entry_count = entry_count

    def lookup(self, lemma: str, pos5: str) -> list[SenseMatch]:
        """Return the senses for (lemma, pos5), most-frequent rank first.

        Lemma matching is exact on the lowercased string; an unknown key
        yields an empty list.
        """
        return list(self._index.get((lemma.lower(), pos5), ()))

    def __contains__(self, key: tuple[str, str]) -> bool:
        lemma, pos5 = key
        return (lemma.lower(), pos5) in self._index

    def __len__(self) -> int:
        return len(self._index)

    def keys(self):
        return self._index.keys()


def _parse_terms(field: str, line_number: int) -> tuple[tuple[str, int], ...]:
    terms = []
    for entry in field.split():
        lemma, sep, rank_text = entry.rpartition("#")
        if not sep or not lemma:
            raise ParseError(line_number, f"term {entry!r} missing '#rank' suffix")
        try:
            rank = int(rank_text)
        except ValueError:
            raise ParseError(line_number, f"term {entry!r} has non-integer rank") from None
        if rank < 1:
            raise ParseError(line_number, f"term {entry!r} has rank < 1")
        terms.append((lemma.lower(), rank))
    if not terms:
        raise ParseError(line_number, "empty SynsetTerms field")
    return tuple(terms)


def _parse_score(text: str, name: str, line_number: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(line_number, f"non-numeric {name} {text!r}") from None
    if not 0.0 <= value <= 1.0:
        raise ParseError(line_number, f"{name} {value} outside [0, 1]")
    return value


def parse_record(line: str, line_number: int) -> SenseRecord:
    """Parse one non-comment data line into a SenseRecord."""
    fields = line.split("\t", 5)
    if len(fields) < 6:
        raise ParseError(line_number, f"expected 6 fields, found {len(fields)}")
    pos, synset_id, pscore_text, nscore_text, terms_field, gloss = fields
    pos = pos.strip()
    if pos == "s":  # satellite adjectives behave as adjectives
        pos = "a"
    if pos not in POS_CLASSES:
        raise ParseError(line_number, f"unknown POS class {pos!r}")
    pscore = _parse_score(pscore_text, "PosScore", line_number)
    nscore = _parse_score(nscore_text, "NegScore", line_number)
    if pscore + nscore > 1.0:
        raise ParseError(line_number, f"PosScore + NegScore = {pscore + nscore} exceeds 1")
    return SenseRecord(
        pos5=pos,
        synset_id=synset_id.strip(),
        pscore=pscore,
        nscore=nscore,
        terms=_parse_terms(terms_field, line_number),
        gloss=gloss,
    )


def parse_sentiwordnet(source: Iterable[str]) -> Lexicon:
    """Build a Lexicon from a line stream in the distribution format.

    Every non-comment, non-blank line becomes one SenseRecord, fanned out
    into one index entry per (lemma, pos5) in its terms list; entry_count
    counts those lines.  Parsing aborts on the first malformed line.
    """
    by_key: dict[tuple[str, str], dict[int, SenseMatch]] = {}
    entry_count = 0
    for line_number, raw in enumerate(source, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        record = parse_record(line, line_number)
        entry_count += 1
        for lemma, rank in record.terms:
            key = (lemma, record.pos5)
            ranks = by_key.setdefault(key, {})
            if rank in ranks:
                raise ParseError(line_number, f"duplicate sense rank {rank} for {key!r}")
            ranks[rank] = SenseMatch(
                sense_rank=rank,
                pscore=record.pscore,
                nscore=record.nscore,
                gloss=record.gloss,
                synset_id=record.synset_id,
            )
    index = {
        key: tuple(ranks[r] for r in sorted(ranks))
        for key, ranks in by_key.items()
    }
    return Lexicon(index, entry_count)


def load_lexicon(path) -> Lexicon:
    with open(path, encoding="utf-8") as handle:
        return parse_sentiwordnet(handle)

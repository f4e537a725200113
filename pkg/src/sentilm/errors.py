"""Exception types shared across the package."""


class SentilmError(Exception):
    """Base class for all package-specific errors."""


class ParseError(SentilmError):
    """A malformed line in a lexicon, vector, or similarity file. Aborts the parse."""

    def __init__(self, line_number: int, reason: str):
        self.line_number = line_number
        self.reason = reason
        super().__init__(f"line {line_number}: {reason}")


class LengthMismatch(SentilmError):
    pass


class MissingSimilarity(SentilmError):
    """A (context_key, gloss_key) pair absent from a precomputed similarity table."""

    def __init__(self, context_key: str, gloss_key: str):
        self.context_key = context_key
        self.gloss_key = gloss_key
        super().__init__(f"no precomputed similarity for ({context_key!r}, {gloss_key!r})")


class TagCountMismatch(SentilmError):
    pass


class EmptySenses(SentilmError):
    pass


class SchemaError(SentilmError):
    """A JSONL corpus line that does not match the corpus schema."""

    def __init__(self, line_number: int, field: str, reason: str = ""):
        self.line_number = line_number
        self.field = field
        msg = f"line {line_number}: bad field {field!r}"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)


class EmptyCorpus(SentilmError):
    pass


class ShapeError(SentilmError):
    pass


class InvalidConfig(SentilmError):
    pass


class NoMaskedPositions(SentilmError):
    pass


class MissingLabel(SentilmError):
    pass


class FormatError(SentilmError):
    pass


class EmptyDataset(SentilmError):
    pass


class InvalidSpec(SentilmError):
    pass


class ConfigError(SentilmError):
    """A bad key or value in a run-config file."""

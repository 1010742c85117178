"""Exception hierarchy shared across the package."""


class PruneTestError(Exception):
    """Base class for every error raised by prunetest."""


class ParseError(PruneTestError, ValueError):
    """A CoNLL-U line could not be read."""

    def __init__(self, message, line_number=None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class StructureError(PruneTestError, ValueError):
    """A parse was readable but does not form a valid dependency tree."""

    def __init__(self, message, sentence_id=None):
        self.sentence_id = sentence_id
        if sentence_id is not None:
            message = f"sentence {sentence_id!r}: {message}"
        super().__init__(message)


class ProtocolError(PruneTestError, ValueError):
    """A parser service returned a body that does not match the wire shape."""


class ContractError(PruneTestError):
    """An operation was called on input outside its precondition."""


class ExtractionError(PruneTestError):
    """No basic clause structure could be found in a simple sentence."""


class ConsistencyError(PruneTestError, ValueError):
    """Generated sentences reference parents that do not exist."""


class TranslationError(PruneTestError):
    """A translation backend failed after exhausting its retries."""


class CacheMiss(TranslationError, KeyError):
    """A read-only translation cache has no entry for the request."""

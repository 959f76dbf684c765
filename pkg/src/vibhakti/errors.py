"""Exception types raised by the declension engine."""

from __future__ import annotations


class VibhaktiError(Exception):
    """Base class for every error raised by this package."""


# -- phonology ---------------------------------------------------------------

class InvalidCharacter(VibhaktiError, ValueError):
    def __init__(self, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(
            f"invalid IAST character {text[position]!r} at position {position} in {text!r}"
        )


class UndefinedOperation(VibhaktiError):
    def __init__(self, op: str, symbol: str, context: str = ""):
        self.op = op
        self.symbol = symbol
        msg = f"operation {op!r} is undefined for {symbol!r}"
        if context:
            msg += f" ({context})"
        super().__init__(msg)


class NotAMute(UndefinedOperation):
    pass


class EmptyWord(VibhaktiError, ValueError):
    pass


# -- data files ----------------------------------------------------------------

class DataError(VibhaktiError):
    """A data file (lexicon, rules, x' table) could not be used."""


class ParseError(DataError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class UnknownCategory(ParseError):
    pass


class XmlError(DataError):
    pass


class FormulaSyntaxError(DataError):
    def __init__(self, message: str, text: str = "", position: int | None = None,
                 path: str | None = None):
        self.text = text
        self.position = position
        self.path = path
        parts = [message]
        if position is not None:
            parts.append(f"at position {position} in {text!r}")
        if path:
            parts.append(f"[{path}]")
        super().__init__(" ".join(parts))


class UnknownOpCode(FormulaSyntaxError):
    pass


class StemIndexOutOfRange(FormulaSyntaxError, IndexError):
    pass


# -- lookup ----------------------------------------------------------------------

class UnknownWord(VibhaktiError, LookupError):
    pass


class UnsupportedEnding(VibhaktiError, LookupError):
    pass


class NoRecipe(VibhaktiError, LookupError):
    pass


class NoRuleData(VibhaktiError, LookupError):
    pass


class CorpusIOError(VibhaktiError, OSError):
    def __init__(self, path: str, reason: str):
        self.path = path
        super().__init__(f"{path}: {reason}")

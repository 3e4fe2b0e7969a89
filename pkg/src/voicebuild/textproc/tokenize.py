import unicodedata
from dataclasses import dataclass, field

WORD = "word"
NUMBER = "number"
PUNCTUATION = "punctuation"


@dataclass(frozen=True)
class Token:
    surface: str
    kind: str
    normalized: tuple = field(default=())


def _is_letter(ch):
    return unicodedata.category(ch)[0] in "LM"


def _is_digit(ch):
    return "0" <= ch <= "9"


def tokenize(text):
    """Split text into word, number and single-character punctuation tokens.

    Numbers are ASCII digit runs, optionally grouped by ``.`` or ``,``
    (a separator only counts when digits follow it).
    """
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        j = i + 1
        if _is_digit(ch):
            while j < n:
                if _is_digit(text[j]):
                    j += 1
                elif text[j] in ".," and j + 1 < n and _is_digit(text[j + 1]):
                    j += 2
                else:
                    break
            tokens.append(Token(text[i:j], NUMBER))
        elif _is_letter(ch):
            while j < n and _is_letter(text[j]):
                j += 1
            surface = text[i:j]
            tokens.append(Token(surface, WORD, (surface.lower(),)))
        else:
            tokens.append(Token(ch, PUNCTUATION))
        i = j
    return tokens

"""From raw text to a structured utterance."""

from dataclasses import dataclass

from ..errors import TextError
from .numbers import expand_number
from .syllables import Syllable, syllabify
from .tokenize import NUMBER, PUNCTUATION, Token, tokenize

PHRASE_PUNCTUATION = frozenset(",;:")


@dataclass(frozen=True)
class Word:
    text: str
    token_index: int  # -1 for inserted pauses
    phones: tuple
    stress: tuple
    syllables: tuple  # phone indices relative to the word
    source: str = ""

    @property
    def is_pause(self):
        return self.token_index < 0


@dataclass(frozen=True)
class Segment:
    phone: str
    syllable: int
    word: int


@dataclass(frozen=True)
class Utterance:
    text: str
    tokens: tuple
    words: tuple
    syllables: tuple  # (start, end, stressed, word) in segment indices
    segments: tuple
    phrase_boundaries: tuple  # index of the last segment before , ; :

    @property
    def phones(self):
        return tuple(s.phone for s in self.segments)

    def word_segments(self, w):
        return [i for i, s in enumerate(self.segments) if s.word == w]


def normalize_token(tok, lang="en", in_lexicon=None):
    if tok.kind == PUNCTUATION:
        raise TextError(f"punctuation token {tok.surface!r} has no spoken form")
    if tok.kind == NUMBER:
        return expand_number(tok.surface, lang)
    surface = tok.surface
    known = in_lexicon is not None and in_lexicon(surface.lower())
    if surface.isupper() and len(surface) <= 5 and not known:
        return [c for c in surface.lower()]
    return [surface.lower()]


def analyze(text, language, pad_silence=False):
    """Tokenise, normalise, phonemise and syllabify one sentence."""
    ps = language.phoneme_set
    tokens = []
    words = []
    boundary_after_word = set()
    for ti, tok in enumerate(tokenize(text)):
        if tok.kind == PUNCTUATION:
            tokens.append(tok)
            if tok.surface in PHRASE_PUNCTUATION and words:
                boundary_after_word.add(len(words) - 1)
            continue
        norm = normalize_token(tok, language.language, language.in_lexicon)
        tokens.append(Token(tok.surface, tok.kind, tuple(norm)))
        for w in norm:
            pron = language.phonemise(w)
            sylls = syllabify(pron.phones, pron.stress, ps, language.onsets)
            words.append(Word(w, ti, pron.phones, pron.stress, tuple(sylls), pron.source))
    if not words:
        raise TextError(f"nothing to say in {text!r}")
    if pad_silence:
        pause = Word("", -1, (ps.silence_symbol,), (0,), (Syllable(0, 1, False),))
        words = [pause] + words + [pause]
        boundary_after_word = {w + 1 for w in boundary_after_word}

    segments, syllables, boundaries = [], [], []
    for wi, word in enumerate(words):
        offset = len(segments)
        for syl in word.syllables:
            si = len(syllables)
            syllables.append((offset + syl.start, offset + syl.end, syl.stressed, wi))
            for k in range(syl.start, syl.end):
                segments.append(Segment(word.phones[k], si, wi))
        if wi in boundary_after_word:
            boundaries.append(len(segments) - 1)
    return Utterance(text, tuple(tokens), tuple(words), tuple(syllables),
                     tuple(segments), tuple(boundaries))

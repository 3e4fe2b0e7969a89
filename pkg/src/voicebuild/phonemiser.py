"""Lexicon lookup with G2P fallback, and the bundled language component."""

from dataclasses import dataclass

from .binio import Reader, Writer
from .errors import FormatError, G2pError
from .fst import compile_fst, dump_fst, fst_lookup, load_fst
from .g2p import dump_g2p, load_g2p, train_g2p
from .phoneset import format_phoneme_set, parse_phoneme_set

LEXICON = "lexicon"
G2P = "g2p"


@dataclass(frozen=True)
class Pronunciation:
    phones: tuple
    stress: tuple
    source: str

    def __iter__(self):
        return iter((self.phones, self.stress, self.source))


def phonemise(word, fst, g2p):
    word = word.strip()
    if not word:
        raise G2pError("cannot phonemise an empty word")
    hit = fst_lookup(fst, word)
    if hit is not None:
        return Pronunciation(hit[0], hit[1], LEXICON)
    phones, stress = g2p.predict(word)
    if not phones:
        raise G2pError(f"unpronounceable word {word!r}: G2P emitted no phones")
    return Pronunciation(phones, stress, G2P)


def format_pronunciation(phones, stress):
    """``h @ l 'ou`` notation: an apostrophe precedes each stressed phone."""
    return " ".join(("'" + p) if s else p for p, s in zip(phones, stress))


MAGIC = b"MLNG"
VERSION = 1


@dataclass
class LanguageComponent:
    """Everything text analysis needs for one language."""

    phoneme_set: object
    fst: object
    g2p: object
    onsets: frozenset
    language: str = "en"

    def phonemise(self, word):
        return phonemise(word, self.fst, self.g2p)

    def in_lexicon(self, word):
        return fst_lookup(self.fst, word) is not None

    @classmethod
    def from_lexicon(cls, lexicon, g2p=None, language=None):
        return cls(lexicon.phoneme_set, compile_fst(lexicon),
                   g2p if g2p is not None else train_g2p(lexicon.spelling_free()),
                   lexicon.onset_inventory(),
                   language or lexicon.phoneme_set.language)


def dump_language(lang):
    w = Writer()
    w.raw(MAGIC)
    w.u32(VERSION)
    w.string(lang.language)
    w.string(format_phoneme_set(lang.phoneme_set))
    onsets = sorted(lang.onsets)
    w.u32(len(onsets))
    for onset in onsets:
        w.string(" ".join(onset))
    w.blob(dump_fst(lang.fst))
    w.blob(dump_g2p(lang.g2p))
    return w.getvalue()


def load_language(data):
    r = Reader(data, "MLNG file")
    r.expect_magic(MAGIC)
    version = r.u32()
    if version != VERSION:
        raise FormatError(f"unsupported MLNG version {version}")
    language = r.string()
    ps = parse_phoneme_set(r.string())
    onsets = frozenset(tuple(r.string().split()) for _ in range(r.u32()))
    fst = load_fst(r.blob())
    g2p = load_g2p(r.blob())
    if not r.at_end():
        raise FormatError("trailing bytes in MLNG file")
    return LanguageComponent(ps, fst, g2p, onsets, language)

"""Phoneme inventories and their text file format.

A phoneme-set file lists one phoneme per line::

    @language en
    _   silence
    a   vowel length=long height=low frontness=front rounding=unrounded ipa=aː
    t   consonant manner=stop place=alveolar voicing=voiceless

``#`` starts a comment, blank lines are ignored.
"""

from dataclasses import dataclass, field

from .errors import ParseError

VOWEL_FEATURES = {
    "length": ("short", "long", "diphthong", "schwa"),
    "height": ("high", "mid-high", "mid", "mid-low", "low"),
    "frontness": ("front", "central", "back"),
    "rounding": ("rounded", "unrounded"),
}

CONSONANT_FEATURES = {
    "manner": ("stop", "fricative", "affricate", "nasal", "lateral",
               "approximant", "trill", "tap"),
    "place": ("bilabial", "labiodental", "dental", "alveolar", "postalveolar",
              "retroflex", "palatal", "velar", "uvular", "pharyngeal", "glottal"),
    "voicing": ("voiced", "voiceless"),
}

KINDS = ("vowel", "consonant", "silence")

#: Every phonological feature name, in the fixed order used by feature vectors.
FEATURE_NAMES = tuple(VOWEL_FEATURES) + tuple(CONSONANT_FEATURES)

#: Value used for a feature that does not apply to a phoneme's kind.
NOT_APPLICABLE = "0"


@dataclass(frozen=True)
class Phoneme:
    symbol: str
    kind: str
    features: dict = field(default_factory=dict)
    ipa: str = ""

    @property
    def is_vowel(self):
        return self.kind == "vowel"

    @property
    def is_silence(self):
        return self.kind == "silence"

    @property
    def is_voiced(self):
        if self.kind == "vowel":
            return True
        return self.kind == "consonant" and self.features.get("voicing") == "voiced"

    def feature(self, name):
        return self.features.get(name, NOT_APPLICABLE)


@dataclass(frozen=True)
class PhonemeSet:
    language: str
    phonemes: tuple
    silence_symbol: str

    def __post_init__(self):
        object.__setattr__(self, "_index", {p.symbol: p for p in self.phonemes})

    def __contains__(self, symbol):
        return symbol in self._index

    def __getitem__(self, symbol):
        return self._index[symbol]

    def __iter__(self):
        return iter(self.phonemes)

    def __len__(self):
        return len(self.phonemes)

    @property
    def symbols(self):
        return [p.symbol for p in self.phonemes]

    def is_vowel(self, symbol):
        p = self._index.get(symbol)
        return p is not None and p.is_vowel

    def is_silence(self, symbol):
        p = self._index.get(symbol)
        return p is not None and p.is_silence

    def vowels(self):
        return [p.symbol for p in self.phonemes if p.is_vowel]


def parse_phoneme_set(text, language="und"):
    """Parse a phoneme-set file into a validated :class:`PhonemeSet`."""
    phonemes = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "@language":
            if len(fields) != 2:
                raise ParseError("@language takes exactly one tag", lineno)
            language = fields[1]
            continue
        if len(fields) < 2:
            raise ParseError(f"expected 'symbol kind ...', got {line!r}", lineno)
        symbol, kind = fields[0], fields[1]
        if symbol in seen:
            raise ParseError(
                f"duplicate symbol {symbol!r} at line {lineno} "
                f"(first defined at line {seen[symbol]})", lineno)
        if kind not in KINDS:
            raise ParseError(f"unknown kind {kind!r} for {symbol!r}", lineno)
        allowed = {"vowel": VOWEL_FEATURES, "consonant": CONSONANT_FEATURES,
                   "silence": {}}[kind]
        features = {}
        ipa = symbol
        for item in fields[2:]:
            key, sep, value = item.partition("=")
            if not sep or not value:
                raise ParseError(f"expected key=value, got {item!r}", lineno)
            if key == "ipa":
                ipa = value
                continue
            if key not in allowed:
                raise ParseError(f"feature {key!r} not allowed for {kind} {symbol!r}", lineno)
            if value not in allowed[key]:
                raise ParseError(
                    f"unknown value {value!r} for feature {key!r} of {symbol!r}", lineno)
            features[key] = value
        missing = [k for k in allowed if k not in features]
        if missing:
            raise ParseError(
                f"{kind} {symbol!r} is missing feature(s): {', '.join(missing)}", lineno)
        seen[symbol] = lineno
        phonemes.append(Phoneme(symbol, kind, features, ipa))

    silences = [p.symbol for p in phonemes if p.is_silence]
    if not silences:
        raise ParseError("no silence phoneme defined")
    if not any(p.is_vowel for p in phonemes):
        raise ParseError("no vowel defined")
    if not any(p.kind == "consonant" for p in phonemes):
        raise ParseError("no consonant defined")
    return PhonemeSet(language, tuple(phonemes), silences[0])


def format_phoneme_set(ps):
    lines = [f"@language {ps.language}"]
    for p in ps.phonemes:
        parts = [p.symbol, p.kind]
        parts += [f"{k}={p.features[k]}" for k in FEATURE_NAMES if k in p.features]
        if p.ipa != p.symbol:
            parts.append(f"ipa={p.ipa}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"

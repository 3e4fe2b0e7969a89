"""Pronunciation lexicons in TSV form.

Each line is ``grapheme<TAB>phone phone ...``; a trailing ``1`` on a vowel
marks the nucleus of the stressed syllable (``0`` is accepted and means
unstressed).
"""

from dataclasses import dataclass

from .errors import ParseError


@dataclass(frozen=True)
class LexiconEntry:
    grapheme: str
    phones: tuple
    stress: tuple

    def tokens(self):
        """Phones with the stress digit re-attached, as written in the TSV."""
        return tuple(p + "1" if s else p for p, s in zip(self.phones, self.stress))


@dataclass
class Lexicon:
    phoneme_set: object
    entries: dict

    def __len__(self):
        return len(self.entries)

    def __contains__(self, word):
        return word.lower() in self.entries

    def __iter__(self):
        return iter(self.entries.values())

    def get(self, word):
        return self.entries.get(word.lower())

    def as_dict(self):
        return {g: (e.phones, e.stress) for g, e in self.entries.items()}

    def spelling_free(self):
        """Entries with multi-letter graphemes only.

        Single letters are letter names (spellings), not orthography, and
        would teach G2P rules like ``b -> b i``.
        """
        return Lexicon(self.phoneme_set,
                       {g: e for g, e in self.entries.items() if len(g) > 1})

    def onset_inventory(self):
        """Word-initial consonant clusters observed in the lexicon (incl. empty)."""
        ps = self.phoneme_set
        onsets = {()}
        for entry in self.entries.values():
            cluster = []
            for p in entry.phones:
                if ps.is_vowel(p):
                    break
                cluster.append(p)
            else:
                continue
            onsets.add(tuple(cluster))
        return frozenset(onsets)


def split_stress(token, ps):
    """Return ``(symbol, stressed)`` for one pronunciation token, or None."""
    if token in ps:
        return token, 0
    if token[-1:] in ("0", "1") and ps.is_vowel(token[:-1]):
        return token[:-1], int(token[-1])
    return None


def parse_pronunciation(text, ps, word="?", line=None):
    tokens = text.split()
    if not tokens:
        raise ParseError(f"empty pronunciation for {word!r}", line)
    phones, stress = [], []
    for tok in tokens:
        parsed = split_stress(tok, ps)
        if parsed is None:
            raise ParseError(f"word {word!r}: unknown phone symbol {tok!r}", line)
        phones.append(parsed[0])
        stress.append(parsed[1])
    return tuple(phones), tuple(stress)


def parse_lexicon(text, ps):
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "\t" not in line:
            raise ParseError(f"expected grapheme<TAB>phones, got {line!r}", lineno)
        grapheme, pron = line.split("\t", 1)
        grapheme = grapheme.strip().lower()
        if not grapheme or any(c.isspace() for c in grapheme):
            raise ParseError(f"malformed grapheme {grapheme!r}", lineno)
        phones, stress = parse_pronunciation(pron, ps, grapheme, lineno)
        # homographs: first entry wins
        if grapheme not in entries:
            entries[grapheme] = LexiconEntry(grapheme, phones, stress)
    return Lexicon(ps, entries)


def serialize_lexicon(lex):
    return "".join(f"{e.grapheme}\t{' '.join(e.tokens())}\n" for e in lex)

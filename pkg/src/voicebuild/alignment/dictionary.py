"""Pronunciation dictionary covering every word of a corpus."""

from dataclasses import dataclass

from ..errors import G2pError
from ..fst import fst_lookup
from ..lexicon import LexiconEntry
from ..phonemiser import phonemise
from ..textproc.tokenize import PUNCTUATION, tokenize
from ..textproc.utterance import normalize_token


@dataclass
class AlignmentDictionary:
    entries: dict  # word -> LexiconEntry
    sources: dict  # word -> "lexicon" | "g2p"

    def __len__(self):
        return len(self.entries)

    def __contains__(self, word):
        return word in self.entries

    def to_tsv(self):
        return "".join(f"{w}\t{' '.join(e.tokens())}\n" for w, e in sorted(self.entries.items()))


def corpus_words(sentences, lang="en", in_lexicon=None):
    words = []
    seen = set()
    for sentence in sentences:
        for tok in tokenize(sentence):
            if tok.kind == PUNCTUATION:
                continue
            for w in normalize_token(tok, lang, in_lexicon):
                if w not in seen:
                    seen.add(w)
                    words.append(w)
    return words


def build_alignment_dictionary(sentences, fst, g2p, lang="en"):
    entries, sources, failed = {}, {}, []
    for w in corpus_words(sentences, lang, lambda x: fst_lookup(fst, x) is not None):
        try:
            pron = phonemise(w, fst, g2p)
        except G2pError:
            failed.append(w)
            continue
        entries[w] = LexiconEntry(w, pron.phones, pron.stress)
        sources[w] = pron.source
    if failed:
        raise G2pError("unpronounceable words: " + ", ".join(failed))
    return AlignmentDictionary(entries, sources)

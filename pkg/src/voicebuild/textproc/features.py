"""Per-segment linguistic feature vectors.

Every vector has the same keys (see :func:`feature_names`) and string
values, so vectors can be compared symbol by symbol.  ``accent`` is a
reserved name: no predictor exists for it yet.
"""

import hashlib

from ..phoneset import FEATURE_NAMES

CONTEXT_FEATURES = (
    "position_in_syllable",
    "syllable_stress",
    "position_of_syllable_in_word",
    "segments_to_word_end",
    "words_to_sentence_end",
    "words_to_phrase_boundary",
    "pos_tag",
)

RESERVED_FEATURES = ("accent",)

POS_STUB = "x"


def feature_names():
    return ("phone", "kind") + FEATURE_NAMES + CONTEXT_FEATURES


def schema_hash(names=None):
    names = feature_names() if names is None else names
    return hashlib.sha256("\n".join(names).encode("utf-8")).hexdigest()


def extract_linguistic_features(utt, ps, pos_tagger=None):
    """One feature dict per segment of ``utt``."""
    lexical = [wi for wi, w in enumerate(utt.words) if not w.is_pause]
    rank = {wi: r for r, wi in enumerate(lexical)}
    n_lex = len(lexical)
    boundary_words = sorted({rank[utt.segments[b].word] for b in utt.phrase_boundaries
                             if utt.segments[b].word in rank})

    def word_rank(wi):
        if wi in rank:
            return rank[wi]
        # pauses: the leading one sits before word 0, any later one after the last
        return -1 if wi < (lexical[0] if lexical else 0) else n_lex - 1

    out = []
    for i, seg in enumerate(utt.segments):
        phone = ps[seg.phone]
        word = utt.words[seg.word]
        start, end, stressed, _ = utt.syllables[seg.syllable]
        word_start = min(j for j, s in enumerate(utt.segments) if s.word == seg.word)
        pos_in_word = i - word_start
        if phone.is_silence:
            where = "pause"
        else:
            nucleus = next((j for j in range(start, end) if ps.is_vowel(utt.segments[j].phone)), start)
            where = "onset" if i < nucleus else "nucleus" if i == nucleus else "coda"
        first_syl = min(j for j, s in enumerate(utt.syllables) if s[3] == seg.word)
        r = word_rank(seg.word)
        if word.is_pause and r == n_lex - 1 and lexical:
            to_end = 0
            to_phrase = 0
        else:
            to_end = n_lex - 1 - r
            nxt = next((b for b in boundary_words if b >= r), n_lex - 1)
            to_phrase = nxt - r
        vec = {"phone": phone.symbol, "kind": phone.kind}
        for name in FEATURE_NAMES:
            vec[name] = phone.feature(name)
        vec.update({
            "position_in_syllable": where,
            "syllable_stress": "1" if stressed else "0",
            "position_of_syllable_in_word": str(seg.syllable - first_syl),
            "segments_to_word_end": str(len(word.phones) - 1 - pos_in_word),
            "words_to_sentence_end": str(to_end),
            "words_to_phrase_boundary": str(to_phrase),
            "pos_tag": pos_tagger(word.text) if pos_tagger and not word.is_pause else POS_STUB,
        })
        out.append(vec)
    return out

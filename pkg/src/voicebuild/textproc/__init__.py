"""Text analysis: tokens, normalisation, syllables and linguistic features."""

from .features import (CONTEXT_FEATURES, RESERVED_FEATURES, extract_linguistic_features,
                       feature_names, schema_hash)
from .numbers import english_number, expand_number
from .syllables import Syllable, syllabify
from .tokenize import NUMBER, PUNCTUATION, WORD, Token, tokenize
from .utterance import Segment, Utterance, Word, analyze, normalize_token

__all__ = [
    "CONTEXT_FEATURES", "RESERVED_FEATURES", "extract_linguistic_features", "feature_names",
    "schema_hash", "english_number", "expand_number", "Syllable", "syllabify", "NUMBER",
    "PUNCTUATION", "WORD", "Token", "tokenize", "Segment", "Utterance", "Word", "analyze",
    "normalize_token",
]

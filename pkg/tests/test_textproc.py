import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from voicebuild.errors import TextError
from voicebuild.textproc import feature_names
from voicebuild.textproc.features import extract_linguistic_features
from voicebuild.textproc.numbers import english_number, expand_number
from voicebuild.textproc.syllables import syllabify
from voicebuild.textproc.tokenize import NUMBER, PUNCTUATION, WORD, Token, tokenize
from voicebuild.textproc.utterance import analyze, normalize_token

# hand-written reference for 0..100, independent of the rule table
_REF = {0: "zero", 1: "one", 2: "two", 3: "three", 4: "four", 5: "five", 6: "six", 7: "seven",
        8: "eight", 9: "nine", 10: "ten", 11: "eleven", 12: "twelve", 13: "thirteen",
        14: "fourteen", 15: "fifteen", 16: "sixteen", 17: "seventeen", 18: "eighteen",
        19: "nineteen", 20: "twenty", 30: "thirty", 40: "forty", 50: "fifty", 60: "sixty",
        70: "seventy", 80: "eighty", 90: "ninety", 100: "one hundred"}


def _reference(n):
    if n in _REF:
        return _REF[n].split()
    return [_REF[n // 10 * 10], _REF[n % 10]]


def test_tokenize_examples():
    assert [(t.kind, t.surface) for t in tokenize("Hello, world!")] == [
        (WORD, "Hello"), (PUNCTUATION, ","), (WORD, "world"), (PUNCTUATION, "!")]
    assert [(t.kind, t.surface) for t in tokenize("42 cats")] == [(NUMBER, "42"), (WORD, "cats")]
    assert tokenize("") == []
    assert tokenize("   \n") == []


def test_number_separators():
    assert [t.surface for t in tokenize("1,000.5 and 7.")] == ["1,000.5", "and", "7", "."]


@settings(max_examples=200)
@given(st.text(alphabet=st.characters(blacklist_categories=("Cs",)), max_size=40))
def test_surfaces_partition_non_whitespace(text):
    toks = tokenize(text)
    assert "".join(t.surface for t in toks) == "".join(text.split())
    for t in toks:
        if t.kind == PUNCTUATION:
            assert t.normalized == () and len(t.surface) == 1


def test_english_numbers_0_to_100():
    for n in range(101):
        assert english_number(n) == _reference(n), n


def test_number_examples():
    assert expand_number("42") == ["forty", "two"]
    assert expand_number("999,999")[-1] == "nine"
    assert expand_number("1,205") == ["one", "thousand", "two", "hundred", "five"]
    assert expand_number("3.14") == ["three", "point", "one", "four"]
    with pytest.raises(TextError):
        expand_number("1000000")


def test_normalize_token_rules():
    assert normalize_token(Token("NASA", WORD)) == ["n", "a", "s", "a"]
    assert normalize_token(Token("NASA", WORD), in_lexicon=lambda w: w == "nasa") == ["nasa"]
    assert normalize_token(Token("ABCDEF", WORD)) == ["abcdef"]
    assert normalize_token(Token("Hello", WORD)) == ["hello"]
    with pytest.raises(TextError):
        normalize_token(Token(",", PUNCTUATION))


def test_syllabify_hello(demo_language):
    ps, onsets = demo_language.phoneme_set, demo_language.onsets
    sylls = syllabify(("h", "@", "l", "ou"), (0, 0, 0, 1), ps, onsets)
    assert [(s.start, s.end, s.stressed) for s in sylls] == [(0, 2, False), (2, 4, True)]
    assert [(s.start, s.end) for s in syllabify(("a",), (1,), ps, onsets)] == [(0, 1)]
    with pytest.raises(TextError, match="no nucleus"):
        syllabify(("t", "s", "t"), (0, 0, 0), ps, onsets)


def test_maximal_onset_prefers_longest_known_cluster(demo_language):
    ps = demo_language.phoneme_set
    onsets = frozenset({(), ("t",), ("s", "t"), ("r",)})
    sylls = syllabify(("a", "n", "s", "t", "a"), (1, 0, 0, 0, 0), ps, onsets)
    assert [(s.start, s.end) for s in sylls] == [(0, 2), (2, 5)]
    sylls = syllabify(("a", "n", "k", "a"), (1, 0, 0, 0), ps, onsets)
    assert [(s.start, s.end) for s in sylls] == [(0, 3), (3, 4)]


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sampled_from(["a", "e", "ou", "t", "s", "r", "n", "l", "k"]), min_size=1, max_size=9))
def test_syllabify_exhaustive(demo_language, phones):
    ps = demo_language.phoneme_set
    vowels = sum(ps.is_vowel(p) for p in phones)
    if not vowels:
        return
    sylls = syllabify(tuple(phones), (0,) * len(phones), ps, demo_language.onsets)
    assert len(sylls) == vowels
    assert sylls[0].start == 0 and sylls[-1].end == len(phones)
    assert all(a.end == b.start for a, b in zip(sylls, sylls[1:]))


def test_single_word_features(demo_language):
    utt = analyze("a", demo_language)
    (vec,) = extract_linguistic_features(utt, demo_language.phoneme_set)
    assert vec["position_in_syllable"] == "nucleus"
    assert vec["segments_to_word_end"] == "0"
    assert vec["words_to_sentence_end"] == "0"
    assert vec["pos_tag"] == "x"


def test_hello_world_counts(demo_language):
    utt = analyze("hello world", demo_language)
    feats = extract_linguistic_features(utt, demo_language.phoneme_set)
    assert feats[0]["words_to_sentence_end"] == "1"
    assert feats[-1]["words_to_sentence_end"] == "0"
    for w in range(len(utt.words)):
        counts = [int(feats[i]["segments_to_word_end"]) for i in utt.word_segments(w)]
        assert counts == list(range(len(counts) - 1, -1, -1))


def test_schema_fixed_and_deterministic(demo_language):
    ps = demo_language.phoneme_set
    a = extract_linguistic_features(analyze("The cat sat, on 12 mats.", demo_language, True), ps)
    b = extract_linguistic_features(analyze("NASA", demo_language), ps)
    names = set(feature_names())
    assert all(set(v) == names for v in a + b)
    again = extract_linguistic_features(analyze("The cat sat, on 12 mats.", demo_language, True), ps)
    assert a == again


def test_phrase_boundaries(demo_language):
    utt = analyze("hello, world", demo_language)
    assert utt.phrase_boundaries == (3,)
    feats = extract_linguistic_features(utt, demo_language.phoneme_set)
    assert feats[0]["words_to_phrase_boundary"] == "0"


def test_utterance_invariants(demo_language):
    utt = analyze("Hello world, 42 cats.", demo_language, pad_silence=True)
    assert utt.phones[0] == utt.phones[-1] == demo_language.phoneme_set.silence_symbol
    for w, word in enumerate(utt.words):
        assert tuple(utt.segments[i].phone for i in utt.word_segments(w)) == word.phones
    covered = [i for start, end, _, _ in utt.syllables for i in range(start, end)]
    assert covered == list(range(len(utt.segments)))


def test_nothing_to_say(demo_language):
    with pytest.raises(TextError):
        analyze("?!", demo_language)

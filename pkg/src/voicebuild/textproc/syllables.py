from dataclasses import dataclass

from ..errors import TextError


@dataclass(frozen=True)
class Syllable:
    start: int  # first phone index
    end: int  # one past the last phone index
    stressed: bool
    nucleus: int = -1


def syllabify(phones, stress, ps, onsets):
    """Split a word's phones into syllables by maximal onset.

    Each vowel is a nucleus.  Between two nuclei the longest suffix of the
    consonant cluster found in ``onsets`` (word-initial clusters seen in the
    lexicon) opens the next syllable; the rest closes the previous one.
    """
    if not phones:
        raise TextError("cannot syllabify an empty phone sequence")
    nuclei = [i for i, p in enumerate(phones) if ps.is_vowel(p)]
    if not nuclei:
        raise TextError(f"no nucleus in {' '.join(phones)}")
    starts = [0]
    for a, b in zip(nuclei, nuclei[1:]):
        cluster = tuple(phones[a + 1:b])
        split = len(cluster)
        for k in range(len(cluster) + 1):
            if cluster[k:] in onsets:
                split = k
                break
        starts.append(a + 1 + split)
    ends = starts[1:] + [len(phones)]
    return [Syllable(s, e, bool(stress[n]), n) for s, e, n in zip(starts, ends, nuclei)]

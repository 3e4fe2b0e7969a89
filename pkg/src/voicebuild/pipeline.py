"""Pipeline stages shared by the command line, the build actions and the service.

Each stage takes and returns plain in-memory objects; file handling lives in
the callers.
"""

from dataclasses import dataclass

import numpy as np

from .alignment import (TextGrid, build_alignment_dictionary, force_align, tier_from_segments,
                        train_acoustic_models)
from .dsp import FrameFeatures, FrameSpec, analyse, frame_centers
from .errors import AlignmentError
from .textproc import analyze
from .voicedb import AlignedUtterance, build_unit_database, package_voice, train_prosody_models

PHONES_TIER = "phones"
WORDS_TIER = "words"


@dataclass
class Recording:
    utterance_id: str
    text: str
    clip: object


def _textgrid(utt, segments, duration):
    phones = tier_from_segments(PHONES_TIER, segments, 0.0, duration)
    words = []
    for wi, word in enumerate(utt.words):
        idx = utt.word_segments(wi)
        label = word.text if not word.is_pause else ""
        words.append((label, segments[idx[0]][1], segments[idx[-1]][2]))
    return TextGrid(0.0, duration, [phones, tier_from_segments(WORDS_TIER, words, 0.0, duration)])


def align_corpus(recordings, language, spec=FrameSpec(), iterations=5, optional_silence=False):
    """Dictionary check, flat-start training and forced alignment.

    Returns ``(models, {utterance_id: TextGrid})``.
    """
    build_alignment_dictionary([r.text for r in recordings], language.fst, language.g2p,
                               language.language)
    ps = language.phoneme_set
    utts = {r.utterance_id: analyze(r.text, language, pad_silence=True) for r in recordings}
    models = train_acoustic_models([(r.clip, utts[r.utterance_id].phones) for r in recordings],
                                   spec, iterations, silence=ps.silence_symbol, phone_set=ps)
    grids = {}
    for r in recordings:
        utt = utts[r.utterance_id]
        ends = [utt.word_segments(wi)[-1] for wi in range(len(utt.words))]
        try:
            segs = force_align(r.clip, utt.phones, models, spec, ends, optional_silence)
        except AlignmentError as exc:
            raise AlignmentError(f"{r.utterance_id}: {exc}") from None
        if [s[0] for s in segs] != list(utt.phones):
            raise AlignmentError(f"{r.utterance_id}: aligned phones differ from the transcript "
                                 "(inserted pauses are not supported by voice building)")
        grids[r.utterance_id] = _textgrid(utt, segs, r.clip.duration)
    return models, grids


def extract_features(clip, spec=FrameSpec()):
    return analyse(clip, spec)


def features_matrix(feats):
    """MFCC columns followed by one F0 column, as stored in the feature cache."""
    return np.column_stack([feats.mfcc, feats.f0])


def features_from_matrix(matrix, clip, spec=FrameSpec()):
    rate = clip.sample_rate
    times = frame_centers(len(clip.samples), spec.window_samples(rate), spec.hop_samples(rate)) / rate
    m = np.asarray(matrix, dtype=np.float64)
    if len(m) != len(times):
        raise AlignmentError(f"feature cache has {len(m)} frames, audio has {len(times)}")
    f0 = m[:, -1]
    return FrameFeatures(times, m[:, :-1], f0, f0 > 0)


def build_voice(items, language, manifest, config=None):
    """``items``: iterable of (Recording, TextGrid, FrameFeatures); returns MVOX bytes."""
    corpus = []
    for rec, grid, feats in items:
        utt = analyze(rec.text, language, pad_silence=True)
        corpus.append(AlignedUtterance(rec.utterance_id, utt, grid, rec.clip, feats))
    db = build_unit_database(corpus, language.phoneme_set, PHONES_TIER)
    prosody = train_prosody_models(db)
    manifest = dict(manifest)
    manifest.setdefault("language", language.language)
    return package_voice(db, prosody, manifest, config, language)

from ..errors import SynthesisError
from ..textproc import analyze, extract_linguistic_features
from ..voicedb.units import LEFT, RIGHT
from .costs import TargetUnit


def predict_targets(text, language, prosody, pad_silence=True):
    """Two targets (left and right half) per segment of the analysed text."""
    if not text or not text.strip():
        raise SynthesisError("empty text")
    ps = language.phoneme_set
    utt = analyze(text, language, pad_silence=pad_silence)
    targets = []
    for seg, vec in zip(utt.segments, extract_linguistic_features(utt, ps)):
        dur = prosody.duration(vec) / 2.0
        f0 = prosody.f0(vec) if ps[seg.phone].is_voiced else 0.0
        for half in (LEFT, RIGHT):
            targets.append(TargetUnit(seg.phone, half, vec, dur, f0))
    return targets

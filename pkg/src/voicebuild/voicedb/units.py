"""Halfphone unit extraction from aligned recordings."""

from dataclasses import dataclass

import numpy as np

from ..errors import VoiceError
from ..textproc.features import extract_linguistic_features, feature_names

NO_UNIT = 0xFFFFFFFF
LEFT, RIGHT = "left", "right"


@dataclass
class HalfphoneUnit:
    unit_id: int
    phone: str
    half: str
    utterance_id: str
    start_sample: int
    end_sample: int
    prev_unit_id: int
    next_unit_id: int
    mean_f0: float
    duration_s: float
    boundary_mfcc_left: np.ndarray
    boundary_mfcc_right: np.ndarray
    linguistic: dict

    def __eq__(self, other):
        if not isinstance(other, HalfphoneUnit):
            return NotImplemented
        return all(
            np.array_equal(getattr(self, f), getattr(other, f))
            if f.startswith("boundary") else getattr(self, f) == getattr(other, f)
            for f in self.__dataclass_fields__)

    @property
    def length(self):
        return self.end_sample - self.start_sample


@dataclass
class UnitDatabase:
    units: list
    audio: dict  # utterance id -> int16 samples
    sample_rate: int
    feature_names: tuple
    phone_index: dict = None

    def __post_init__(self):
        if self.phone_index is None:
            index = {}
            for u in self.units:
                index.setdefault((u.phone, u.half), []).append(u.unit_id)
            self.phone_index = index

    def candidates(self, phone, half):
        return self.phone_index.get((phone, half), [])

    def samples(self, unit):
        return self.audio[unit.utterance_id][unit.start_sample:unit.end_sample]

    def utterance_units(self, utterance_id):
        return [u for u in self.units if u.utterance_id == utterance_id]

    def __eq__(self, other):
        if not isinstance(other, UnitDatabase):
            return NotImplemented
        return (self.units == other.units and self.sample_rate == other.sample_rate
                and tuple(self.feature_names) == tuple(other.feature_names)
                and self.audio.keys() == other.audio.keys()
                and all(np.array_equal(self.audio[k], other.audio[k]) for k in self.audio))


@dataclass
class AlignedUtterance:
    utterance_id: str
    utterance: object  # textproc.Utterance
    textgrid: object
    clip: object  # dsp.AudioClip
    frames: object  # dsp.FrameFeatures with f0


def build_unit_database(corpus, phoneme_set, tier_name="phones"):
    """Split every aligned phone at its midpoint into left and right halfphones."""
    units = []
    audio = {}
    rate = None
    names = feature_names()
    for item in corpus:
        uid = item.utterance_id
        clip = item.clip
        if rate is None:
            rate = clip.sample_rate
        elif clip.sample_rate != rate:
            raise VoiceError(f"{uid}: sample rate {clip.sample_rate} differs from {rate}")
        tier = item.textgrid.tier(tier_name)
        expected = item.utterance.phones
        found = tier.labels()
        for pos in range(max(len(expected), len(found))):
            e = expected[pos] if pos < len(expected) else "<end>"
            f = found[pos] if pos < len(found) else "<end>"
            if e != f:
                raise VoiceError(f"{uid} pos {pos}: expected {e}, found {f}")
        feats = extract_linguistic_features(item.utterance, phoneme_set)
        pcm = np.round(clip.samples * 32768.0)
        if np.any(pcm < -32768) or np.any(pcm > 32767):
            raise VoiceError(f"{uid}: samples outside 16-bit range")
        audio[uid] = pcm.astype(np.int16)
        centers = np.round(item.frames.times * rate, 6)
        mfcc, f0 = item.frames.mfcc, item.frames.f0
        voicing = [phoneme_set[iv.text].is_voiced for iv in tier.intervals]
        first = len(units)
        for k, iv in enumerate(tier.intervals):
            start = int(round(iv.xmin * rate))
            end = min(int(round(iv.xmax * rate)), len(clip.samples))
            if end - start < 2:
                raise VoiceError(f"{uid} pos {k}: phone {iv.text!r} shorter than 2 samples")
            mid = start + (end - start + 1) // 2
            for half, lo, hi in ((LEFT, start, mid), (RIGHT, mid, end)):
                inside = np.nonzero((centers >= lo) & (centers < hi))[0]
                if len(inside) == 0:
                    nearest = int(np.argmin(np.abs(centers - (lo + hi) / 2.0)))
                    inside = np.array([nearest])
                # unvoiced phone classes carry no F0, whatever the tracker saw
                voiced = f0[inside][f0[inside] > 0] if voicing[k] else f0[:0]
                units.append(HalfphoneUnit(
                    unit_id=len(units), phone=iv.text, half=half, utterance_id=uid,
                    start_sample=lo, end_sample=hi, prev_unit_id=NO_UNIT, next_unit_id=NO_UNIT,
                    mean_f0=float(voiced.mean()) if len(voiced) else 0.0,
                    duration_s=(hi - lo) / rate,
                    boundary_mfcc_left=np.array(mfcc[inside[0]], dtype=np.float64),
                    boundary_mfcc_right=np.array(mfcc[inside[-1]], dtype=np.float64),
                    linguistic=dict(feats[k])))
        for a, b in zip(units[first:], units[first + 1:]):
            a.next_unit_id = b.unit_id
            b.prev_unit_id = a.unit_id
    return UnitDatabase(units, audio, rate or 0, names)

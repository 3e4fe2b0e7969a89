"""Bundled demo voice: phone set, lexicon, prompts and rendered recordings.

The recordings are rendered by a small formant-style generator so that the
whole pipeline can be exercised without shipping audio.  Rendering is fully
deterministic: the noise generator is seeded from the utterance id.
"""

import functools
import zlib
from importlib import resources

import numpy as np
from scipy.signal import butter, sosfilt

from ..dsp.wav import AudioClip, to_pcm16
from ..lexicon import parse_lexicon
from ..phonemiser import LanguageComponent
from ..phoneset import parse_phoneme_set
from ..textproc import analyze

SAMPLE_RATE = 16000

# F1, F2, F3 in Hz
FORMANTS = {
    "a": (700, 1700, 2600), "e": (550, 1800, 2600), "i": (300, 2300, 3000),
    "I": (400, 2000, 2600), "o": (600, 950, 2500), "u": (320, 900, 2300),
    "U": (450, 1100, 2400), "@": (500, 1500, 2500), "V": (650, 1250, 2600),
    "A": (750, 1100, 2500), "O": (500, 850, 2500), "3": (500, 1400, 1700),
    "ou": (480, 1000, 2400), "ai": (700, 1500, 2600), "ei": (450, 2000, 2600),
    "au": (720, 1150, 2500),
    "m": (280, 1100, 2300), "n": (280, 1500, 2500), "N": (280, 1900, 2600),
    "l": (350, 1100, 2700), "r": (400, 1200, 1600), "w": (300, 700, 2300),
    "j": (280, 2200, 3000),
    "b": (250, 900, 2300), "d": (250, 1600, 2600), "g": (250, 1900, 2500),
    "v": (300, 1200, 2400), "D": (300, 1400, 2500), "z": (300, 1600, 2600),
}

NOISE_BANDS = {
    "bilabial": (300, 2000), "labiodental": (1500, 7000), "dental": (2500, 7500),
    "alveolar": (3800, 7500), "postalveolar": (2000, 5000), "velar": (1200, 3000),
    "glottal": (600, 4000), "palatal": (2500, 4500),
}

VOWEL_DURATION = {"short": 0.09, "long": 0.13, "diphthong": 0.15, "schwa": 0.06}
CONSONANT_DURATION = {"stop": 0.07, "fricative": 0.09, "affricate": 0.10, "nasal": 0.07,
                      "lateral": 0.06, "approximant": 0.06}


def _data(name):
    return resources.files(__package__).joinpath("data", name).read_text(encoding="utf-8")


def demo_text(name):
    """Raw text of a bundled file: phoneset.txt, lexicon.tsv or prompts.txt."""
    return _data(name)


def load_demo_phoneset():
    return parse_phoneme_set(_data("phoneset.txt"))


def load_demo_lexicon():
    return parse_lexicon(_data("lexicon.tsv"), load_demo_phoneset())


@functools.lru_cache(maxsize=1)
def load_demo_language():
    return LanguageComponent.from_lexicon(load_demo_lexicon())


def parse_prompts(text):
    out = []
    for line in text.splitlines():
        if line.strip() and not line.startswith("#"):
            uid, _, sentence = line.partition("\t")
            out.append((uid.strip(), sentence.strip()))
    return out


def load_demo_prompts():
    return parse_prompts(_data("prompts.txt"))


def _phone_duration(phone, stressed, final):
    if phone.is_silence:
        dur = 0.20
    elif phone.is_vowel:
        dur = VOWEL_DURATION[phone.feature("length")]
    else:
        dur = CONSONANT_DURATION[phone.feature("manner")]
    if stressed and not phone.is_silence:
        dur *= 1.3
    if final and not phone.is_silence:
        dur *= 1.15
    return dur


def _envelope(freqs, formants):
    gain = np.zeros_like(freqs)
    for k, fc in enumerate(formants):
        bw = 80.0 + 40.0 * k
        gain += 1.0 / (1.0 + ((freqs - fc) / bw) ** 2) / (k + 1)
    return gain


def _harmonics(phase, f0, formants, tilt):
    out = np.zeros(len(phase))
    for h in range(1, 40):
        freq = f0 * h
        amp = _envelope(freq, formants) * np.where(freq < SAMPLE_RATE / 2 - 200, 1.0, 0.0)
        out += amp * np.sin(h * phase) * tilt ** h
    return out


def _band_noise(rng, n, band):
    lo, hi = band
    sos = butter(4, [lo / (SAMPLE_RATE / 2), min(hi, SAMPLE_RATE / 2 - 100) / (SAMPLE_RATE / 2)],
                 btype="band", output="sos")
    return sosfilt(sos, rng.standard_normal(n))


def render_utterance(utt_id, text, language, final_silence=0.25):
    """Render one prompt; returns (AudioClip, [(phone, start_s, end_s), ...])."""
    ps = language.phoneme_set
    utt = analyze(text, language, pad_silence=True)
    seed = zlib.crc32(utt_id.encode("utf-8"))
    rng = np.random.default_rng(seed)
    base_f0 = 105.0 + seed % 30
    colour = 0.85 + (seed % 7) * 0.02

    n_seg = len(utt.segments)
    lengths = []
    for i, seg in enumerate(utt.segments):
        phone = ps[seg.phone]
        stressed = utt.syllables[seg.syllable][2]
        final = i in utt.phrase_boundaries or i == n_seg - 2
        dur = final_silence if (phone.is_silence and i == n_seg - 1) else _phone_duration(
            phone, stressed, final)
        lengths.append(int(round(dur * SAMPLE_RATE)))
    total = sum(lengths)

    # one F0 contour with declination, bumped on stressed syllables
    f0 = np.empty(total)
    pos = 0
    for seg, n in zip(utt.segments, lengths):
        stressed = utt.syllables[seg.syllable][2]
        t = np.arange(pos, pos + n) / total
        f0[pos:pos + n] = base_f0 * (1.0 - 0.15 * t) + (20.0 if stressed else 0.0)
        pos += n
    phase = 2 * np.pi * np.cumsum(f0) / SAMPLE_RATE

    out = np.zeros(total)
    segments = []
    pos = 0
    for seg, n in zip(utt.segments, lengths):
        phone = ps[seg.phone]
        sl = slice(pos, pos + n)
        ramp = np.minimum(1.0, np.minimum(np.arange(n) + 1, n - np.arange(n)) / 80.0)
        if phone.is_silence:
            sig = 0.002 * rng.standard_normal(n)
        elif phone.is_vowel or phone.feature("manner") in ("nasal", "lateral", "approximant"):
            gain = 0.5 if phone.is_vowel else 0.25
            sig = gain * _harmonics(phase[sl], f0[sl], FORMANTS[phone.symbol], colour) * ramp
        else:
            manner = phone.feature("manner")
            band = NOISE_BANDS[phone.feature("place")]
            noise = _band_noise(rng, n, band)
            noise /= max(np.max(np.abs(noise)), 1e-9)
            if manner in ("stop", "affricate"):
                closure = int(n * (0.6 if manner == "stop" else 0.4))
                env = np.zeros(n)
                env[closure:] = np.exp(-np.arange(n - closure) / (0.3 * (n - closure) + 1))
                sig = 0.25 * noise * env + 0.002 * rng.standard_normal(n)
            else:
                sig = 0.12 * noise * ramp
            if phone.is_voiced:
                sig += 0.12 * _harmonics(phase[sl], f0[sl], FORMANTS[phone.symbol], colour) * ramp
        out[sl] = sig
        segments.append((phone.symbol, pos / SAMPLE_RATE, (pos + n) / SAMPLE_RATE))
        pos += n
    peak = np.max(np.abs(out))
    out *= 0.6 / peak
    pcm = to_pcm16(out)
    return AudioClip(pcm.astype(np.float64) / 32768.0, SAMPLE_RATE), segments


BUILDFILE = """\
# Demo voice: lexicon -> language, recordings -> alignment + features -> voice
task lexicon {
    action=lexicon.compile
    in=phoneset.txt,lexicon.tsv
    out=build/lexicon.mfst
}
task g2p {
    action=g2p.train
    in=phoneset.txt,lexicon.tsv
    out=build/g2p.mg2p
}
task language {
    action=language.bundle
    in=phoneset.txt,lexicon.tsv,build/lexicon.mfst,build/g2p.mg2p
    out=build/language.mlng
}
task align {
    action=data.align
    in=build/language.mlng,prompts.txt,wav
    out=build/textgrid
    param.iterations=5
}
task features {
    action=features.extract
    in=wav
    out=build/features
}
task voice {
    action=voice.build
    in=build/language.mlng,prompts.txt,wav,build/textgrid,build/features
    out=build/voice.mvox
    param.name=demo
    param.version=1.0.0
}
"""


def write_demo_project(root):
    """Write phone set, lexicon, prompts, rendered WAVs, reference TextGrids
    and ``voice.build`` under ``root``; returns the root path."""
    from pathlib import Path

    from ..alignment import TextGrid, tier_from_segments, write_textgrid
    from ..dsp import write_wav

    root = Path(root)
    (root / "wav").mkdir(parents=True, exist_ok=True)
    (root / "reference").mkdir(exist_ok=True)
    for name in ("phoneset.txt", "lexicon.tsv", "prompts.txt"):
        (root / name).write_text(_data(name), encoding="utf-8")
    (root / "voice.build").write_text(BUILDFILE, encoding="utf-8")
    lang = load_demo_language()
    for uid, text in load_demo_prompts():
        clip, segs = render_utterance(uid, text, lang)
        (root / "wav" / f"{uid}.wav").write_bytes(write_wav(clip))
        tier = tier_from_segments("phones", segs, 0.0, clip.duration)
        grid = TextGrid(0.0, clip.duration, [tier])
        (root / "reference" / f"{uid}.TextGrid").write_text(write_textgrid(grid), encoding="utf-8")
    return root

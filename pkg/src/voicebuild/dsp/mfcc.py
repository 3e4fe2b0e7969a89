"""Frame-wise MFCC analysis."""

from dataclasses import dataclass, field

import numpy as np
import scipy.fft

from ..errors import AudioError


@dataclass(frozen=True)
class FrameSpec:
    window_ms: float = 25.0
    hop_ms: float = 10.0
    preemphasis: float = 0.97
    mel_filters: int = 26
    cepstral_coeffs: int = 13
    log_floor: float = 1e-10

    def __post_init__(self):
        if self.window_ms < self.hop_ms:
            raise ValueError("window_ms must be >= hop_ms")
        if self.cepstral_coeffs > self.mel_filters:
            raise ValueError("cepstral_coeffs must be <= mel_filters")

    def window_samples(self, rate):
        return int(round(self.window_ms * rate / 1000.0))

    def hop_samples(self, rate):
        return int(round(self.hop_ms * rate / 1000.0))

    def fft_size(self, rate):
        return 1 << (self.window_samples(rate) - 1).bit_length()


@dataclass
class FrameFeatures:
    times: np.ndarray
    mfcc: np.ndarray
    f0: np.ndarray = field(default=None)
    voicing: np.ndarray = field(default=None)

    @property
    def frame_count(self):
        return len(self.times)


def frame_count(n, window, hop):
    if n < window:
        return 0
    return (n - window) // hop + 1


def frame_centers(n, window, hop):
    """Centre sample (may be fractional) of every analysis frame."""
    return np.arange(frame_count(n, window, hop)) * hop + window / 2.0


def hz_to_mel(f):
    return 2595.0 * np.log10(1.0 + np.asarray(f) / 700.0)


def mel_to_hz(m):
    return 700.0 * (10.0 ** (np.asarray(m) / 2595.0) - 1.0)


def mel_filterbank(n_filters, n_fft, rate):
    """Triangular filters on the mel scale over the ``n_fft // 2 + 1`` bins."""
    edges = mel_to_hz(np.linspace(0.0, hz_to_mel(rate / 2.0), n_filters + 2))
    bins = np.arange(n_fft // 2 + 1) * rate / n_fft
    fb = np.zeros((n_filters, len(bins)))
    for m in range(n_filters):
        lo, mid, hi = edges[m], edges[m + 1], edges[m + 2]
        rising = (bins - lo) / (mid - lo)
        falling = (hi - bins) / (hi - mid)
        fb[m] = np.maximum(0.0, np.minimum(rising, falling))
    return fb


def compute_mfcc(clip, spec=FrameSpec()):
    rate = clip.sample_rate
    w, h, n_fft = spec.window_samples(rate), spec.hop_samples(rate), spec.fft_size(rate)
    x = clip.samples
    if len(x) < w:
        raise AudioError(f"clip of {len(x)} samples is shorter than one {w}-sample window")
    emph = np.empty_like(x)
    emph[0] = x[0]
    emph[1:] = x[1:] - spec.preemphasis * x[:-1]
    n = frame_count(len(x), w, h)
    idx = np.arange(w)[None, :] + h * np.arange(n)[:, None]
    frames = emph[idx] * np.hamming(w)
    mag = np.abs(np.fft.rfft(frames, n_fft, axis=1))
    energies = mag @ mel_filterbank(spec.mel_filters, n_fft, rate).T
    logmel = np.log(np.maximum(energies, spec.log_floor))
    cep = scipy.fft.dct(logmel, type=2, norm="ortho", axis=1)[:, :spec.cepstral_coeffs]
    times = frame_centers(len(x), w, h) / rate
    return FrameFeatures(times, cep)


def analyse(clip, spec=FrameSpec(), **f0_args):
    """MFCC plus F0 on the same frame grid."""
    from .pitch import estimate_f0

    feats = compute_mfcc(clip, spec)
    feats.f0, feats.voicing = estimate_f0(clip, spec, **f0_args)
    return feats



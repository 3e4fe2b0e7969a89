"""Autocorrelation F0 tracking on the MFCC frame grid."""

import numpy as np

from ..errors import AudioError
from .mfcc import FrameSpec, frame_centers

#: a later local maximum must be this close (relative) to the best one to be skipped
OCTAVE_RATIO = 0.9


def _normalized_autocorr(frames, max_lag):
    """r[f, tau] for tau in 0..max_lag, normalised by the energies of both overlapping parts."""
    n_frames, length = frames.shape
    size = 1 << (2 * length - 1).bit_length()
    spec = np.fft.rfft(frames, size, axis=1)
    acf = np.fft.irfft(spec * np.conj(spec), size, axis=1)[:, :max_lag + 1]
    cs = np.concatenate([np.zeros((n_frames, 1)), np.cumsum(frames ** 2, axis=1)], axis=1)
    lags = np.arange(max_lag + 1)
    head = cs[:, length - lags]
    tail = cs[:, length:length + 1] - cs[:, lags]
    denom = np.sqrt(head * tail)
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(denom > 1e-20, acf / denom, 0.0)
    return np.clip(r, -1.0, 1.0)


def estimate_f0(clip, spec=FrameSpec(), fmin=60.0, fmax=400.0, voicing_threshold=0.30,
                analysis_ms=40.0):
    """Return per-frame ``(f0, voicing)``; unvoiced frames have ``f0 == 0``."""
    rate = clip.sample_rate
    if not 0 < fmin < fmax < rate / 2.0:
        raise AudioError(f"invalid F0 band [{fmin}, {fmax}] for rate {rate}")
    w, h = spec.window_samples(rate), spec.hop_samples(rate)
    centers = frame_centers(len(clip.samples), w, h)
    if len(centers) == 0:
        return np.zeros(0), np.zeros(0)
    length = int(round(analysis_ms * rate / 1000.0))
    lag_lo = int(np.floor(rate / fmax))
    lag_hi = int(np.ceil(rate / fmin))
    if lag_hi + 1 >= length:
        raise AudioError("analysis window too short for the F0 band")
    padded = np.concatenate([np.zeros(length), clip.samples, np.zeros(length)])
    starts = (np.floor(centers).astype(int) - length // 2) + length
    frames = padded[starts[:, None] + np.arange(length)[None, :]]
    frames = frames - frames.mean(axis=1, keepdims=True)
    r = _normalized_autocorr(frames, lag_hi + 1)

    f0 = np.zeros(len(centers))
    voicing = np.zeros(len(centers))
    lo = max(lag_lo, 2)
    for i, row in enumerate(r):
        seg = row[lo:lag_hi + 1]
        left, right = row[lo - 1:lag_hi], row[lo + 1:lag_hi + 2]
        peaks = np.nonzero((seg >= left) & (seg > right))[0]
        if len(peaks) == 0:
            continue
        best = seg[peaks].max()
        if best < voicing_threshold:
            voicing[i] = max(best, 0.0)
            continue
        k = peaks[np.argmax(seg[peaks] >= OCTAVE_RATIO * best)] + lo
        a, b, c = row[k - 1], row[k], row[k + 1]
        denom = a - 2.0 * b + c
        delta = 0.5 * (a - c) / denom if denom < 0 else 0.0
        peak = b - 0.25 * (a - c) * delta
        freq = rate / (k + delta)
        voicing[i] = min(max(peak, 0.0), 1.0)
        if peak >= voicing_threshold and fmin <= freq <= fmax:
            f0[i] = freq
    return f0, voicing

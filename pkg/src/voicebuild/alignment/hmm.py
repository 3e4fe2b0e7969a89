"""Monophone HMMs: flat-start Viterbi training and forced alignment.

Each phone is a 3-state left-to-right model without skips whose states emit
a single diagonal Gaussian over MFCC + delta + delta-delta frames.  Training
starts from a uniform segmentation of every utterance and then alternates
Viterbi alignment with maximum-likelihood re-estimation (segmental k-means).
Transition probabilities stay fixed, which keeps the total Viterbi score
non-decreasing from one iteration to the next.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ..dsp.deltas import compute_deltas
from ..dsp.mfcc import FrameSpec, compute_mfcc, frame_centers
from ..errors import AlignmentError

N_STATES = 3
VARIANCE_FLOOR = 1e-4
LOG_HALF = math.log(0.5)


@dataclass
class AcousticModelSet:
    means: dict  # phone -> (N_STATES, D)
    variances: dict
    silence: str = "_"
    log_likelihoods: list = field(default_factory=list)

    @property
    def phones(self):
        return sorted(self.means)

    def state_loglik(self, phone, obs):
        """(N_STATES, T) log densities of ``obs`` under each state of ``phone``."""
        if phone not in self.means:
            raise AlignmentError(f"no acoustic model for phone {phone!r}")
        mu, var = self.means[phone], self.variances[phone]
        diff = obs[None, :, :] - mu[:, None, :]
        return -0.5 * (np.sum(np.log(2 * np.pi * var), axis=1)[:, None]
                       + np.sum(diff * diff / var[:, None, :], axis=2))


def observations(clip, spec=FrameSpec()):
    return compute_deltas(compute_mfcc(clip, spec).mfcc)


def _chain(phones, word_ends, optional_silence, silence):
    """Expand phones into blocks; returns list of (phone, optional)."""
    blocks = []
    ends = set(word_ends or ())
    for i, p in enumerate(phones):
        blocks.append((p, False))
        if (optional_silence and i in ends and 0 < i < len(phones) - 1
                and p != silence and phones[i + 1] != silence):
            blocks.append((silence, True))
    return blocks


def _viterbi(loglik, blocks):
    """Best left-to-right path; ``loglik`` is (S, T).  Returns (score, state path)."""
    n_states, n_frames = loglik.shape
    skips_src, skips_dst = [], []
    for b, (_, optional) in enumerate(blocks):
        if optional:
            skips_src.append(b * N_STATES - 1)
            skips_dst.append((b + 1) * N_STATES)
    skips_src = np.array(skips_src, dtype=int)
    skips_dst = np.array(skips_dst, dtype=int)

    delta = np.full(n_states, -np.inf)
    delta[0] = loglik[0, 0]
    back = np.zeros((n_frames, n_states), dtype=np.int32)
    back[0] = np.arange(n_states)
    idx = np.arange(n_states)
    for t in range(1, n_frames):
        stay = delta + LOG_HALF
        adv = np.full(n_states, -np.inf)
        adv[1:] = delta[:-1] + LOG_HALF
        best = np.where(adv > stay, adv, stay)
        arg = np.where(adv > stay, idx - 1, idx)
        if len(skips_src):
            cand = delta[skips_src] + LOG_HALF
            better = cand > best[skips_dst]
            best[skips_dst[better]] = cand[better]
            arg[skips_dst[better]] = skips_src[better]
        delta = best + loglik[:, t]
        back[t] = arg
    score = delta[-1]
    if not np.isfinite(score):
        raise AlignmentError(
            f"no valid alignment path: {n_frames} frames for {n_states} states")
    path = np.empty(n_frames, dtype=np.int32)
    path[-1] = n_states - 1
    for t in range(n_frames - 1, 0, -1):
        path[t - 1] = back[t, path[t]]
    return float(score), path


def _chain_loglik(models, blocks, obs):
    return np.vstack([models.state_loglik(p, obs) for p, _ in blocks])


def align_frames(obs, phones, models, word_ends=None, optional_silence=False):
    """Viterbi-align observation frames; returns (score, blocks, state path)."""
    blocks = _chain(phones, word_ends, optional_silence, models.silence)
    if len(obs) < N_STATES * sum(1 for _, opt in blocks if not opt):
        raise AlignmentError(
            f"utterance too short: {len(obs)} frames for {len(phones)} phones "
            f"(need at least {N_STATES} frames per phone)")
    score, path = _viterbi(_chain_loglik(models, blocks, obs), blocks)
    return score, blocks, path


def force_align(clip, phones, models, spec=FrameSpec(), word_ends=None, optional_silence=False):
    """Return ``[(phone, start_s, end_s), ...]`` covering the whole clip."""
    if not phones:
        raise AlignmentError("empty phone sequence")
    obs = observations(clip, spec)
    _, blocks, path = align_frames(obs, list(phones), models, word_ends, optional_silence)
    rate = clip.sample_rate
    centers = frame_centers(len(clip.samples), spec.window_samples(rate), spec.hop_samples(rate))
    block_of = path // N_STATES
    out = []
    start_frame = 0
    for t in range(1, len(path) + 1):
        if t == len(path) or block_of[t] != block_of[t - 1]:
            phone = blocks[block_of[t - 1]][0]
            start = 0.0 if start_frame == 0 else (centers[start_frame - 1] + centers[start_frame]) / 2 / rate
            end = clip.duration if t == len(path) else (centers[t - 1] + centers[t]) / 2 / rate
            out.append((phone, float(start), float(end)))
            start_frame = t
    return out


def flat_start_path(obs, n_blocks):
    """Initial state path for a chain that starts and ends with silence.

    Frames below an energy threshold (on c0) at either end go to the edge
    silences; the frames in between are spread uniformly over the inner
    states.  Falls back to a plain uniform split when the speech region is
    too short for its states.
    """
    n = len(obs)
    n_chain = N_STATES * n_blocks
    uniform = ((np.arange(n) * n_chain) // max(n, 1)).astype(np.int32)
    if n_blocks < 3:
        return uniform
    c0 = obs[:, 0]
    lo, hi = np.percentile(c0, 5), np.percentile(c0, 95)
    loud = np.nonzero(c0 > lo + 0.5 * (hi - lo))[0]
    if len(loud) == 0:
        return uniform
    first, last = int(loud[0]), int(loud[-1]) + 1
    inner = N_STATES * (n_blocks - 2)
    if first < N_STATES or n - last < N_STATES or last - first < inner:
        return uniform
    path = np.empty(n, dtype=np.int32)
    path[:first] = (np.arange(first) * N_STATES) // first
    path[first:last] = N_STATES + (np.arange(last - first) * inner) // (last - first)
    tail = n - last
    path[last:] = N_STATES + inner + (np.arange(tail) * N_STATES) // tail
    return path


def _accumulate(stats, blocks, path, obs):
    block_of, state_of = path // N_STATES, path % N_STATES
    for b, (phone, _) in enumerate(blocks):
        for s in range(N_STATES):
            frames = obs[(block_of == b) & (state_of == s)]
            if len(frames):
                acc = stats.setdefault((phone, s), [0, 0.0, 0.0])
                acc[0] += len(frames)
                acc[1] = acc[1] + frames.sum(axis=0)
                acc[2] = acc[2] + (frames * frames).sum(axis=0)


def _estimate(stats, phones, dim, silence, floor):
    means, variances = {}, {}
    for phone in phones:
        mu = np.zeros((N_STATES, dim))
        var = np.zeros((N_STATES, dim))
        for s in range(N_STATES):
            acc = stats.get((phone, s))
            if acc is None or acc[0] == 0:
                raise AlignmentError(f"phone {phone!r} state {s} has no frames assigned")
            n = acc[0]
            mu[s] = acc[1] / n
            var[s] = np.maximum(acc[2] / n - mu[s] ** 2, floor)
        means[phone], variances[phone] = mu, var
    return AcousticModelSet(means, variances, silence)


def train_acoustic_models(corpus, spec=FrameSpec(), iterations=5, variance_floor=VARIANCE_FLOOR,
                          silence="_", phone_set=None):
    """Train monophone models from ``[(clip, phones), ...]``.

    ``phone_set``, when given, gets a model for every phoneme: phones that never
    occur in the corpus receive the global mean and variance of all frames.
    """
    if not corpus:
        raise AlignmentError("training needs at least one utterance")
    data = []
    for i, (clip, phones) in enumerate(corpus):
        phones = list(phones)
        if not phones or phones[0] != silence or phones[-1] != silence:
            raise AlignmentError(f"utterance {i}: phone sequence must start and end with {silence!r}")
        data.append((observations(clip, spec), phones))
    dim = data[0][0].shape[1]
    labelled = sorted({p for _, phones in data for p in phones})

    # flat start: edge silences from an energy threshold, the rest uniform
    stats = {}
    for obs, phones in data:
        blocks = [(p, False) for p in phones]
        _accumulate(stats, blocks, flat_start_path(obs, len(blocks)), obs)
    for phone in labelled:
        if any((phone, s) not in stats for s in range(N_STATES)):
            raise AlignmentError(f"phone {phone!r} has no frames after flat start")
    models = _estimate(stats, labelled, dim, silence, variance_floor)

    history = []
    for _ in range(iterations):
        stats = {}
        total = 0.0
        for i, (obs, phones) in enumerate(data):
            try:
                score, blocks, path = align_frames(obs, phones, models)
            except AlignmentError as exc:
                raise AlignmentError(f"utterance {i}: {exc}") from None
            total += score
            _accumulate(stats, blocks, path, obs)
        history.append(total)
        models = _estimate(stats, labelled, dim, silence, variance_floor)
    models.log_likelihoods = history

    if phone_set is not None:
        frames = np.vstack([obs for obs, _ in data])
        g_mu = frames.mean(axis=0)
        g_var = np.maximum(frames.var(axis=0), variance_floor)
        for phone in phone_set.symbols:
            if phone not in models.means:
                models.means[phone] = np.tile(g_mu, (N_STATES, 1))
                models.variances[phone] = np.tile(g_var, (N_STATES, 1))
    return models

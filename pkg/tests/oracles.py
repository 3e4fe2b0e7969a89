"""Independent reference implementations used as test oracles.

Nothing here imports the code under test except plain data types.
"""

import itertools
import math

import numpy as np


# -- MFCC: direct DFT, explicit mel triangles, explicit DCT -------------------

def slow_mfcc(x, rate, window_ms=25.0, hop_ms=10.0, n_filters=26, n_ceps=13, alpha=0.97):
    w = int(round(window_ms * rate / 1000.0))
    h = int(round(hop_ms * rate / 1000.0))
    n_fft = 1
    while n_fft < w:
        n_fft *= 2
    y = [x[0]] + [x[i] - alpha * x[i - 1] for i in range(1, len(x))]
    y = np.array(y)
    ham = np.array([0.54 - 0.46 * math.cos(2 * math.pi * i / (w - 1)) for i in range(w)])
    k = np.arange(n_fft // 2 + 1)[:, None]
    n = np.arange(w)[None, :]
    basis = np.exp(-2j * np.pi * k * n / n_fft)

    def mel(f):
        return 2595.0 * math.log10(1.0 + f / 700.0)

    def inv(m):
        return 700.0 * (10.0 ** (m / 2595.0) - 1.0)

    top = mel(rate / 2.0)
    edges = [inv(top * i / (n_filters + 1)) for i in range(n_filters + 2)]
    freqs = [b * rate / n_fft for b in range(n_fft // 2 + 1)]
    fb = np.zeros((n_filters, len(freqs)))
    for m in range(n_filters):
        lo, c, hi = edges[m], edges[m + 1], edges[m + 2]
        for b, f in enumerate(freqs):
            if lo < f <= c:
                fb[m, b] = (f - lo) / (c - lo)
            elif c < f < hi:
                fb[m, b] = (hi - f) / (hi - c)
    dct = np.zeros((n_ceps, n_filters))
    for q in range(n_ceps):
        scale = math.sqrt(1.0 / n_filters) if q == 0 else math.sqrt(2.0 / n_filters)
        for m in range(n_filters):
            dct[q, m] = scale * math.cos(math.pi * q * (2 * m + 1) / (2 * n_filters))
    rows = []
    start = 0
    while start + w <= len(y):
        frame = y[start:start + w] * ham
        spec = np.abs(basis @ frame)
        energies = fb @ spec
        rows.append(dct @ np.log(np.maximum(energies, 1e-10)))
        start += h
    return np.array(rows)


def enumerate_frames(n, w, h):
    count = 0
    start = 0
    while start + w <= n:
        count += 1
        start += h
    return count


# -- unit selection -----------------------------------------------------------

def brute_force_min(targets, candidates, target_cost, join_cost):
    """Exhaustive minimum over all candidate sequences, summed left to right."""
    best = None
    for seq in itertools.product(*candidates):
        total = target_cost(targets[0], seq[0])
        for k in range(1, len(seq)):
            total = (total + join_cost(seq[k - 1], seq[k])) + target_cost(targets[k], seq[k])
        if best is None or total < best[0]:
            best = (total, seq)
    return best


def target_cost_formula(t_feats, t_dur, t_f0, u_feats, u_dur, u_f0, w=(1.0, 1.0, 1.0)):
    mism = sum(1 for k in t_feats if t_feats[k] != u_feats.get(k)) / len(t_feats)
    return (w[0] * mism + w[1] * abs(math.log(u_dur) - math.log(t_dur))
            + w[2] * abs(math.log(u_f0 + 1.0) - math.log(t_f0 + 1.0)))


def join_cost_formula(right, f0_u, left, f0_v, natural, w=(1.0, 1.0)):
    if natural:
        return 0.0
    d = math.sqrt(sum((a - b) ** 2 for a, b in zip(right, left)))
    return w[0] * d + w[1] * abs(f0_u - f0_v) / 100.0


# -- build graph --------------------------------------------------------------

def _inside(outer, inner):
    return inner == outer or inner.startswith(outer.rstrip("/") + "/")


def reachability_oracle(task_specs, changed_files):
    """Tasks to re-run after ``changed_files`` change.

    ``task_specs``: {name: (inputs, outputs, deps)}.  Uses networkx.
    """
    import networkx as nx

    g = nx.DiGraph()
    g.add_nodes_from(task_specs)
    for name, (ins, _, deps) in task_specs.items():
        for d in deps:
            g.add_edge(d, name)
        for other, (_, outs, _) in task_specs.items():
            if other != name and any(_inside(o, i) or _inside(i, o) for o in outs for i in ins):
                g.add_edge(other, name)
    direct = {n for n, (ins, _, _) in task_specs.items()
              if any(_inside(i, f) for i in ins for f in changed_files)}
    out = set(direct)
    for n in direct:
        out |= nx.descendants(g, n)
    return out


# -- config -------------------------------------------------------------------

def precedence_oracle(default, voice, user, key):
    for layer in (user, voice, default):
        if key in layer:
            return layer[key]
    return None

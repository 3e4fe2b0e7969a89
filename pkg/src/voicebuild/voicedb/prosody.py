"""Regression trees predicting phone duration and F0 from linguistic features."""

import logging
import math
from dataclasses import dataclass

import numpy as np

from ..errors import VoiceError
from .units import LEFT

log = logging.getLogger(__name__)

DEFAULT_F0 = 120.0


@dataclass(frozen=True)
class RegLeaf:
    value: float
    count: int = 0


@dataclass(frozen=True)
class RegSplit:
    feature: str
    value: str
    yes: object
    no: object


def predict_tree(node, vec):
    while isinstance(node, RegSplit):
        node = node.yes if vec.get(node.feature) == node.value else node.no
    return node.value


def tree_depth(node):
    if isinstance(node, RegLeaf):
        return 0
    return 1 + max(tree_depth(node.yes), tree_depth(node.no))


def grow_regression_tree(vectors, targets, names, min_node_size=8, max_depth=10, depth=0):
    """Greedy CART on ``feature == value`` questions, splitting on SSE reduction.

    Equal reductions go to the earliest feature in ``names``, then the
    smallest value.
    """
    y = np.asarray(targets, dtype=np.float64)
    n = len(y)
    leaf = RegLeaf(float(y.mean()), n)
    if n < min_node_size or depth >= max_depth or n < 2:
        return leaf
    sse = float(((y - y.mean()) ** 2).sum())
    if sse <= 1e-12 * max(1.0, float((y ** 2).sum())):
        return leaf
    best = None
    for name in names:
        column = [v[name] for v in vectors]
        for value in sorted(set(column)):
            mask = np.array([c == value for c in column])
            k = int(mask.sum())
            if k in (0, n):
                continue
            a, b = y[mask], y[~mask]
            child = float(((a - a.mean()) ** 2).sum() + ((b - b.mean()) ** 2).sum())
            gain = sse - child
            if gain > 1e-12 * max(sse, 1.0) and (best is None or gain > best[0] * (1 + 1e-12)):
                best = (gain, name, value, mask)
    if best is None:
        return leaf
    _, name, value, mask = best
    yes_v = [v for v, m in zip(vectors, mask) if m]
    no_v = [v for v, m in zip(vectors, mask) if not m]
    return RegSplit(
        name, value,
        grow_regression_tree(yes_v, y[mask], names, min_node_size, max_depth, depth + 1),
        grow_regression_tree(no_v, y[~mask], names, min_node_size, max_depth, depth + 1))


@dataclass
class ProsodyModels:
    duration_tree: object  # predicts log seconds
    f0_tree: object
    default_f0: float = DEFAULT_F0

    def duration(self, vec):
        return math.exp(predict_tree(self.duration_tree, vec))

    def f0(self, vec):
        return predict_tree(self.f0_tree, vec)


def phone_samples(db):
    """``(features, duration_s, f0)`` per phone segment (left + right halves)."""
    out = []
    units = db.units
    for u in units:
        if u.half != LEFT:
            continue
        right = units[u.next_unit_id]
        voiced = [x.mean_f0 for x in (u, right) if x.mean_f0 > 0]
        out.append((u.linguistic, u.duration_s + right.duration_s,
                    float(np.mean(voiced)) if voiced else 0.0))
    return out


def train_prosody_models(db, min_node_size=8, max_depth=10, default_f0=DEFAULT_F0):
    samples = phone_samples(db)
    if len(samples) < 2:
        raise VoiceError("prosody training needs at least 2 phone segments")
    names = list(db.feature_names)
    vectors = [s[0] for s in samples]
    dur = grow_regression_tree(vectors, [math.log(s[1]) for s in samples], names,
                               min_node_size, max_depth)
    voiced = [s for s in samples if s[2] > 0]
    if voiced:
        f0 = grow_regression_tree([s[0] for s in voiced], [s[2] for s in voiced], names,
                                  min_node_size, max_depth)
    else:
        log.warning("no voiced phones in corpus; F0 model falls back to %.1f Hz", default_f0)
        f0 = RegLeaf(default_f0, 0)
    return ProsodyModels(dur, f0, default_f0)

"""Target and join costs for unit selection."""

import math
from dataclasses import dataclass, replace

import numpy as np

from ..errors import SynthesisError
from ..voicedb.units import NO_UNIT


@dataclass(frozen=True)
class Weights:
    features: float = 1.0
    duration: float = 1.0
    f0: float = 1.0
    join_mfcc: float = 1.0
    join_f0: float = 1.0

    @classmethod
    def from_config(cls, cfg):
        return cls(cfg.get_float("synth.weight.target.features"),
                   cfg.get_float("synth.weight.target.duration"),
                   cfg.get_float("synth.weight.target.f0"),
                   cfg.get_float("synth.weight.join.mfcc"),
                   cfg.get_float("synth.weight.join.f0"))

    def scaled(self, c):
        return replace(self, features=self.features * c, duration=self.duration * c,
                       f0=self.f0 * c, join_mfcc=self.join_mfcc * c, join_f0=self.join_f0 * c)


@dataclass(frozen=True)
class TargetUnit:
    phone: str
    half: str
    features: dict
    duration_s: float
    f0: float


def target_cost(t, u, weights=Weights()):
    if t.phone != u.phone or t.half != u.half:
        raise SynthesisError(
            f"target {t.phone}/{t.half} compared with unit {u.unit_id} ({u.phone}/{u.half})")
    names = list(t.features)
    mismatched = sum(1 for n in names if u.linguistic.get(n) != t.features[n])
    return (weights.features * mismatched / len(names)
            + weights.duration * abs(math.log(u.duration_s / t.duration_s))
            + weights.f0 * abs(math.log((u.mean_f0 + 1.0) / (t.f0 + 1.0))))


def join_cost(u, v, weights=Weights()):
    if u.next_unit_id != NO_UNIT and u.next_unit_id == v.unit_id:
        return 0.0
    # same arithmetic as search.join_matrix, so scalar and batched costs agree bit for bit
    diff = u.boundary_mfcc_right - v.boundary_mfcc_left
    dist = float(np.sqrt(np.sum(diff * diff)))
    return weights.join_mfcc * dist + weights.join_f0 * abs(u.mean_f0 - v.mean_f0) / 100.0

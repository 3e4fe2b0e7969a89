"""Dynamic-programming unit search."""

import numpy as np

from ..errors import SynthesisError
from ..voicedb.units import NO_UNIT
from .costs import Weights, target_cost


class _UnitArrays:
    """Column views of the database used to price joins in bulk."""

    def __init__(self, db):
        units = db.units
        self.left = np.array([u.boundary_mfcc_left for u in units])
        self.right = np.array([u.boundary_mfcc_right for u in units])
        self.f0 = np.array([u.mean_f0 for u in units])
        self.next = np.array([u.next_unit_id for u in units], dtype=np.int64)


def _arrays(db):
    cached = getattr(db, "_search_arrays", None)
    if cached is None:
        cached = _UnitArrays(db)
        db._search_arrays = cached
    return cached


def join_matrix(prev_ids, cur_ids, arrays, weights):
    """Join costs from every unit in ``prev_ids`` to every unit in ``cur_ids``."""
    diff = arrays.right[prev_ids][:, None, :] - arrays.left[cur_ids][None, :, :]
    dist = np.sqrt(np.sum(diff * diff, axis=2))
    cost = (weights.join_mfcc * dist
            + weights.join_f0 * np.abs(arrays.f0[prev_ids][:, None] - arrays.f0[cur_ids][None, :]) / 100.0)
    nxt = arrays.next[prev_ids]
    natural = (nxt[:, None] == cur_ids[None, :]) & (nxt[:, None] != NO_UNIT)
    cost[natural] = 0.0
    return cost


def candidate_lists(targets, db):
    out = []
    for t in targets:
        ids = sorted(db.candidates(t.phone, t.half))
        if not ids:
            raise SynthesisError(f"no units for phone {t.phone} ({t.half} half)")
        out.append(np.array(ids, dtype=np.int64))
    return out


def viterbi_select(targets, db, weights=Weights(), return_cost=False):
    """Unit ids minimising the summed target and join costs.

    Ties are resolved towards the lowest unit id at every back-pointer.
    """
    if not targets:
        raise SynthesisError("no targets to select units for")
    arrays = _arrays(db)
    cands = candidate_lists(targets, db)
    tcs = [np.array([target_cost(t, db.units[i], weights) for i in ids])
           for t, ids in zip(targets, cands)]
    score = tcs[0]
    backs = []
    for k in range(1, len(targets)):
        total = score[:, None] + join_matrix(cands[k - 1], cands[k], arrays, weights)
        arg = np.argmin(total, axis=0)  # first minimum == lowest unit id
        backs.append(arg)
        score = total[arg, np.arange(len(cands[k]))] + tcs[k]
    j = int(np.argmin(score))
    best = float(score[j])
    path = [j]
    for arg in reversed(backs):
        j = int(arg[j])
        path.append(j)
    path.reverse()
    ids = [int(c[j]) for c, j in zip(cands, path)]
    return (ids, best) if return_cost else ids

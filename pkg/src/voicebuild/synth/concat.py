import numpy as np

from ..dsp.wav import AudioClip
from ..errors import SynthesisError


def concatenate(unit_ids, db, crossfade_ms=5.0):
    """Join unit audio; natural successors are spliced, other joins cross-faded."""
    if not unit_ids:
        raise SynthesisError("nothing to concatenate")
    for uid in unit_ids:
        if not 0 <= uid < len(db.units):
            raise SynthesisError(f"invalid unit id {uid}")
    fade = int(round(crossfade_ms * db.sample_rate / 1000.0))
    chunks = [db.samples(db.units[uid]).astype(np.float64) / 32768.0 for uid in unit_ids]
    overlaps = [0]
    length = len(chunks[0])
    for k in range(1, len(unit_ids)):
        prev = db.units[unit_ids[k - 1]]
        n = 0 if prev.next_unit_id == unit_ids[k] else min(fade, length, len(chunks[k]))
        overlaps.append(n)
        length += len(chunks[k]) - n
    out = np.zeros(length)
    pos = 0
    for chunk, n in zip(chunks, overlaps):
        pos -= n
        if n:
            ramp = (np.arange(n) + 0.5) / n
            out[pos:pos + n] = out[pos:pos + n] * (1.0 - ramp) + chunk[:n] * ramp
        out[pos + n:pos + len(chunk)] = chunk[n:]
        pos += len(chunk)
    return AudioClip(out, db.sample_rate)

"""``MFRM`` per-utterance feature cache: magic, frame_count u32, D u32, f32 rows."""

import struct

import numpy as np

from ..errors import FormatError

MAGIC = b"MFRM"


def dump_frames(matrix):
    m = np.asarray(matrix, dtype="<f4")
    if m.ndim != 2:
        raise ValueError("feature cache holds a 2-D matrix")
    return MAGIC + struct.pack("<II", *m.shape) + np.ascontiguousarray(m).tobytes()


def load_frames(data):
    if len(data) < 12 or data[:4] != MAGIC:
        raise FormatError("not an MFRM feature file")
    frames, dim = struct.unpack("<II", data[4:12])
    expected = 12 + 4 * frames * dim
    if len(data) != expected:
        raise FormatError(f"MFRM size mismatch: expected {expected} bytes, found {len(data)}")
    return np.frombuffer(data[12:], dtype="<f4").reshape(frames, dim).astype(np.float32)

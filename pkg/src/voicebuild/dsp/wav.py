"""Minimal RIFF/WAVE reader and writer for 16-bit PCM mono audio."""

import struct
from dataclasses import dataclass

import numpy as np

from ..errors import AudioError

PCM = 1


@dataclass
class AudioClip:
    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.float64)
        if self.samples.ndim != 1:
            raise AudioError("mono required")
        if self.sample_rate <= 0:
            raise AudioError(f"invalid sample rate {self.sample_rate}")

    def __len__(self):
        return len(self.samples)

    @property
    def duration(self):
        return len(self.samples) / self.sample_rate

    def scaled(self, factor):
        return AudioClip(self.samples * factor, self.sample_rate)


def read_wav(data):
    if len(data) < 12 or data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise AudioError("malformed header: not a RIFF/WAVE file")
    pos = 12
    fmt = None
    while pos + 8 <= len(data):
        cid, size = data[pos:pos + 4], struct.unpack("<I", data[pos + 4:pos + 8])[0]
        body = pos + 8
        if cid == b"fmt ":
            if size < 16 or body + 16 > len(data):
                raise AudioError("malformed header: short fmt chunk")
            fmt = struct.unpack("<HHIIHH", data[body:body + 16])
        elif cid == b"data":
            if fmt is None:
                raise AudioError("malformed header: data chunk before fmt chunk")
            tag, channels, rate, _, _, bits = fmt
            if tag != PCM:
                raise AudioError(f"non-PCM format tag {tag}")
            if bits != 16:
                raise AudioError(f"16-bit PCM required, got {bits}-bit")
            if channels != 1:
                raise AudioError(f"mono required, got {channels} channels")
            available = len(data) - body
            if available < size:
                raise AudioError(
                    f"truncated data chunk: expected {size} bytes, found {available}")
            if size % 2:
                raise AudioError(f"data chunk size {size} is not a whole number of samples")
            pcm = np.frombuffer(data[body:body + size], dtype="<i2")
            return AudioClip(pcm.astype(np.float64) / 32768.0, rate)
        pos = body + size + (size & 1)
    raise AudioError("malformed header: no data chunk")


def to_pcm16(samples):
    scaled = np.round(np.asarray(samples, dtype=np.float64) * 32768.0)
    return np.clip(scaled, -32768, 32767).astype("<i2")


def write_wav(clip):
    pcm = to_pcm16(clip.samples).tobytes()
    header = struct.pack("<4sI4s4sIHHIIHH4sI", b"RIFF", 36 + len(pcm), b"WAVE",
                         b"fmt ", 16, PCM, 1, clip.sample_rate, clip.sample_rate * 2,
                         2, 16, b"data", len(pcm))
    return header + pcm

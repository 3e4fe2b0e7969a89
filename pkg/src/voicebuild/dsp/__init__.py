"""Audio I/O and frame-wise acoustic features."""

from .cache import dump_frames, load_frames
from .deltas import compute_deltas
from .mfcc import FrameFeatures, FrameSpec, analyse, compute_mfcc, frame_centers, frame_count
from .pitch import estimate_f0
from .wav import AudioClip, read_wav, write_wav

__all__ = ["dump_frames", "load_frames", "compute_deltas", "FrameFeatures", "FrameSpec",
           "analyse", "compute_mfcc", "frame_centers", "frame_count", "estimate_f0",
           "AudioClip", "read_wav", "write_wav"]

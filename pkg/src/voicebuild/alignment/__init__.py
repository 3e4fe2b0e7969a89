"""TextGrids, the alignment dictionary and HMM forced alignment."""

from .dictionary import AlignmentDictionary, build_alignment_dictionary, corpus_words
from .hmm import (AcousticModelSet, align_frames, force_align, observations,
                  train_acoustic_models)
from .textgrid import (Interval, IntervalTier, TextGrid, check_tier, parse_textgrid,
                       tier_from_segments, write_textgrid)

__all__ = ["AlignmentDictionary", "build_alignment_dictionary", "corpus_words",
           "AcousticModelSet", "align_frames", "force_align", "observations",
           "train_acoustic_models", "Interval", "IntervalTier", "TextGrid", "check_tier",
           "parse_textgrid", "tier_from_segments", "write_textgrid"]

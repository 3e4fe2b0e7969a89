"""Runtime synthesis: layered config, target prediction, unit search, concatenation."""

from .concat import concatenate
from .config import (SCHEMA, ConfigLayer, EffectiveConfig, default_layer, parse_config,
                     resolve_config)
from .costs import TargetUnit, Weights, join_cost, target_cost
from .engine import effective_config, synthesize
from .search import viterbi_select
from .targets import predict_targets

__all__ = ["concatenate", "SCHEMA", "ConfigLayer", "EffectiveConfig", "default_layer",
           "parse_config", "resolve_config", "TargetUnit", "Weights", "join_cost", "target_cost",
           "effective_config", "synthesize", "viterbi_select", "predict_targets"]

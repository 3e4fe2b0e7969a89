"""Text in, waveform out."""

from ..errors import SynthesisError
from .concat import concatenate
from .config import ConfigLayer, default_layer, resolve_config
from .costs import Weights
from .search import viterbi_select
from .targets import predict_targets


def effective_config(voice, user=None):
    user_layer = user if isinstance(user, ConfigLayer) else ConfigLayer("user", dict(user or {}))
    return resolve_config(default_layer(), ConfigLayer("voice", dict(voice.config)), user_layer)


def synthesize(text, voice, user_config=None, language=None):
    language = language or voice.language
    if language is None:
        raise SynthesisError(f"voice {voice.name!r} carries no language component")
    cfg = effective_config(voice, user_config)
    targets = predict_targets(text, language, voice.prosody, cfg.get_bool("synth.pad_silence"))
    ids = viterbi_select(targets, voice.db, Weights.from_config(cfg))
    return concatenate(ids, voice.db, cfg.get_float("synth.crossfade_ms"))

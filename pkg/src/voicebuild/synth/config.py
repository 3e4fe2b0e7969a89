"""Layered runtime configuration: user > voice > default."""

from dataclasses import dataclass, field

from ..errors import ConfigError, ParseError

#: registered keys and their module defaults
SCHEMA = {
    "synth.weight.target.features": "1.0",
    "synth.weight.target.duration": "1.0",
    "synth.weight.target.f0": "1.0",
    "synth.weight.join.mfcc": "1.0",
    "synth.weight.join.f0": "1.0",
    "synth.crossfade_ms": "5.0",
    "synth.pad_silence": "true",
}

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


@dataclass(frozen=True)
class ConfigLayer:
    name: str
    values: dict = field(default_factory=dict)


def default_layer():
    return ConfigLayer("default", dict(SCHEMA))


@dataclass(frozen=True)
class EffectiveConfig:
    values: dict
    origin: dict  # key -> name of the layer that supplied it

    def __getitem__(self, key):
        return self.values[key]

    def get_float(self, key):
        try:
            return float(self.values[key])
        except ValueError:
            raise ConfigError(f"{key}: expected a number, got {self.values[key]!r}") from None

    def get_bool(self, key):
        v = self.values[key].strip().lower()
        if v in _TRUE:
            return True
        if v in _FALSE:
            return False
        raise ConfigError(f"{key}: expected a boolean, got {self.values[key]!r}")


def resolve_config(default, voice, user, schema=SCHEMA):
    """Merge the three layers; later layers win key by key."""
    values, origin = {}, {}
    for layer in (default, voice, user):
        if layer is None:
            continue
        for key, value in layer.values.items():
            if key not in schema:
                raise ConfigError(f"unknown config key {key!r} in {layer.name} layer")
            values[key] = str(value)
            origin[key] = layer.name
    return EffectiveConfig(values, origin)


def parse_config(text):
    """``key = value`` lines; ``#`` comments and blank lines are ignored."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise ParseError(f"expected 'key = value', got {raw!r}", lineno)
        out[key.strip()] = value.strip()
    return out

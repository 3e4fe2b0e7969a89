import hashlib
import re
from dataclasses import dataclass, field

from ..errors import ArtifactError, ParseError

TYPES = ("lexicon", "language", "data", "voice")
ALLOWED_DEPENDENCIES = {
    "lexicon": frozenset(),
    "language": frozenset({"lexicon"}),
    "data": frozenset({"language"}),
    "voice": frozenset({"language", "data"}),
}

_VERSION = re.compile(r"^\d+(\.\d+)*$")
_NAME = re.compile(r"^[A-Za-z0-9][A-Za-z0-9._-]*$")


@dataclass(frozen=True)
class Coordinate:
    group: str
    name: str
    version: str

    def __post_init__(self):
        for part, value in (("group", self.group), ("name", self.name)):
            if not _NAME.match(value):
                raise ArtifactError(f"invalid {part} {value!r}")
        if not _VERSION.match(self.version):
            raise ArtifactError(f"invalid version {self.version!r}: expected dotted integers")

    @classmethod
    def parse(cls, text):
        parts = text.strip().split(":")
        if len(parts) != 3:
            raise ArtifactError(f"expected group:name:version, got {text!r}")
        return cls(*parts)

    @property
    def key(self):
        return self.group, self.name

    @property
    def version_key(self):
        return tuple(int(x) for x in self.version.split("."))

    def path(self, ext):
        return f"{self.group}/{self.name}/{self.version}/{self.name}-{self.version}.{ext}"

    def __str__(self):
        return f"{self.group}:{self.name}:{self.version}"


def compare_versions(a, b):
    """Numeric dotted comparison; missing trailing parts count as zero."""
    ka, kb = Coordinate.parse(f"g:n:{a}").version_key, Coordinate.parse(f"g:n:{b}").version_key
    n = max(len(ka), len(kb))
    ka, kb = ka + (0,) * (n - len(ka)), kb + (0,) * (n - len(kb))
    return (ka > kb) - (ka < kb)


def sha256_hex(data):
    return hashlib.sha256(data).hexdigest()


@dataclass(frozen=True)
class Manifest:
    coordinate: Coordinate
    type: str
    dependencies: tuple = field(default_factory=tuple)
    sha256: str = ""

    def __post_init__(self):
        if self.type not in TYPES:
            raise ArtifactError(f"unknown artifact type {self.type!r}")

    def to_text(self):
        c = self.coordinate
        lines = [f"group={c.group}", f"name={c.name}", f"version={c.version}", f"type={self.type}"]
        lines += [f"dep.{i}={d}" for i, d in enumerate(self.dependencies)]
        lines.append(f"sha256={self.sha256}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text):
        values = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ParseError(f"expected key=value, got {line!r}", lineno)
            values[key.strip()] = value.strip()
        try:
            coord = Coordinate(values["group"], values["name"], values["version"])
            deps = sorted((k for k in values if k.startswith("dep.")), key=lambda k: int(k[4:]))
            return cls(coord, values["type"], tuple(Coordinate.parse(values[k]) for k in deps),
                       values.get("sha256", ""))
        except KeyError as exc:
            raise ParseError(f"manifest lacks {exc.args[0]!r}") from None
        except ValueError:
            raise ParseError("bad dep.N key in manifest") from None

"""Exception hierarchy shared by all voicebuild modules."""


class VoiceBuildError(Exception):
    """Base class for every error raised by this package."""


class ParseError(VoiceBuildError):
    """Malformed input text; carries the offending line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class FormatError(VoiceBuildError):
    """Malformed or corrupted binary artifact."""


class ChecksumError(FormatError):
    pass


class G2pError(VoiceBuildError):
    pass


class TextError(VoiceBuildError):
    pass


class AudioError(VoiceBuildError):
    pass


class AlignmentError(VoiceBuildError):
    pass


class VoiceError(VoiceBuildError):
    pass


class SynthesisError(VoiceBuildError):
    pass


class ConfigError(VoiceBuildError):
    pass


class BuildError(VoiceBuildError):
    pass


class CycleError(BuildError):
    def __init__(self, cycle):
        super().__init__("dependency cycle: " + " -> ".join(cycle))
        self.cycle = list(cycle)


class ArtifactError(VoiceBuildError):
    pass


class IntegrityError(ArtifactError):
    pass


class ResolutionError(ArtifactError):
    pass


class SchemaMismatchError(FormatError):
    pass


class DependencyCycleError(ResolutionError):
    def __init__(self, cycle):
        super().__init__("dependency cycle between artifacts: " + " -> ".join(cycle))
        self.cycle = list(cycle)

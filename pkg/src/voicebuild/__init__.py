"""Voice building toolkit: from a phone set, a lexicon and recordings to a
unit-selection voice, with an incremental build graph and artifact resolver."""

__version__ = "0.1.0"

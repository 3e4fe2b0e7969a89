"""Unit-selection voice building: halfphone units, prosody trees, packaging."""

from .package import VoicePackage, load_voice, package_voice
from .prosody import (ProsodyModels, RegLeaf, RegSplit, grow_regression_tree, phone_samples,
                      predict_tree, train_prosody_models)
from .units import (LEFT, NO_UNIT, RIGHT, AlignedUtterance, HalfphoneUnit, UnitDatabase,
                    build_unit_database)

__all__ = ["VoicePackage", "load_voice", "package_voice", "ProsodyModels", "RegLeaf",
           "RegSplit", "grow_regression_tree", "phone_samples", "predict_tree",
           "train_prosody_models", "LEFT", "NO_UNIT", "RIGHT", "AlignedUtterance",
           "HalfphoneUnit", "UnitDatabase", "build_unit_database"]

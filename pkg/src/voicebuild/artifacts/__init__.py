"""Versioned artifacts: coordinates, manifests, repositories and resolution."""

from .model import ALLOWED_DEPENDENCIES, TYPES, Coordinate, Manifest, compare_versions, sha256_hex
from .repository import HttpRepository, LocalRepository, open_repository, read_manifest
from .resolve import (InstallResult, ResolvedArtifact, fetch, install_voice, publish,
                      read_install_ledger, resolve)

__all__ = ["ALLOWED_DEPENDENCIES", "TYPES", "Coordinate", "Manifest", "compare_versions",
           "sha256_hex", "HttpRepository", "LocalRepository", "open_repository", "read_manifest",
           "InstallResult", "ResolvedArtifact", "fetch", "install_voice", "publish",
           "read_install_ledger", "resolve"]

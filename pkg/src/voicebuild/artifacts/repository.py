"""Artifact repositories: a local directory or a plain HTTP server.

Both use the same layout::

    <group>/<name>/<version>/<name>-<version>.artifact
    <group>/<name>/<version>/<name>-<version>.manifest
"""

import os
import tempfile
import threading
from pathlib import Path

import httpx

from ..errors import ArtifactError
from .model import Manifest


class LocalRepository:
    def __init__(self, root):
        self.root = Path(root)
        self._lock = threading.Lock()

    def __repr__(self):
        return f"LocalRepository({str(self.root)!r})"

    def read(self, path):
        p = self.root / path
        return p.read_bytes() if p.is_file() else None

    def exists(self, path):
        return (self.root / path).is_file()

    def store(self, files):
        """Write ``{layout path: bytes}`` atomically per file; refuses to overwrite."""
        with self._lock:
            for path in files:
                if self.exists(path):
                    raise ArtifactError(f"immutable coordinate: {path} already exists")
            for path, data in files.items():
                target = self.root / path
                target.parent.mkdir(parents=True, exist_ok=True)
                fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=".part-")
                with os.fdopen(fd, "wb") as fh:
                    fh.write(data)
                os.replace(tmp, target)


class HttpRepository:
    """GET (and, for publishing, PUT) over the layout path below ``base_url``."""

    def __init__(self, base_url, client=None):
        self.base_url = base_url.rstrip("/")
        self.client = client or httpx.Client(timeout=30.0)
        self._lock = threading.Lock()

    def __repr__(self):
        return f"HttpRepository({self.base_url!r})"

    def _url(self, path):
        return f"{self.base_url}/{path}"

    def read(self, path):
        try:
            resp = self.client.get(self._url(path))
        except httpx.HTTPError as exc:
            raise ArtifactError(f"GET {self._url(path)} failed: {exc}") from None
        if resp.status_code == 404:
            return None
        if resp.status_code != 200:
            raise ArtifactError(f"GET {self._url(path)}: HTTP {resp.status_code}")
        return resp.content

    def exists(self, path):
        return self.read(path) is not None

    def store(self, files):
        with self._lock:
            for path in files:
                if self.exists(path):
                    raise ArtifactError(f"immutable coordinate: {path} already exists")
            for path, data in files.items():
                resp = self.client.put(self._url(path), content=data)
                if resp.status_code == 409:
                    raise ArtifactError(f"immutable coordinate: {path} already exists")
                if resp.status_code not in (200, 201):
                    raise ArtifactError(f"PUT {self._url(path)}: HTTP {resp.status_code}")


def open_repository(spec, client=None):
    """``http(s)://...`` gives an HTTP repository, anything else a directory."""
    if spec.startswith(("http://", "https://")):
        return HttpRepository(spec, client)
    return LocalRepository(spec)


def read_manifest(repo, coord):
    data = repo.read(coord.path("manifest"))
    if data is None:
        return None
    manifest = Manifest.parse(data.decode("utf-8"))
    if manifest.coordinate != coord:
        raise ArtifactError(f"manifest at {coord.path('manifest')} describes {manifest.coordinate}")
    return manifest

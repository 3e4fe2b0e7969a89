"""Publishing, fetching, transitive resolution and voice installation."""

import os
from dataclasses import dataclass, replace
from pathlib import Path

from ..errors import (ArtifactError, DependencyCycleError, IntegrityError, ResolutionError)
from .model import ALLOWED_DEPENDENCIES, Coordinate, sha256_hex
from .repository import read_manifest

INSTALL_LEDGER = "installed.tsv"
INSTALL_EXT = {"voice": "mvox", "language": "mlng", "lexicon": "lexicon"}
INSTALLED_TYPES = tuple(INSTALL_EXT)


@dataclass(frozen=True)
class ResolvedArtifact:
    coordinate: Coordinate
    manifest: object
    repository: object


def publish(data, manifest, repo):
    """Store ``data`` with its manifest; the manifest's hash is filled in here."""
    manifest = replace(manifest, sha256=sha256_hex(data))
    coord = manifest.coordinate
    repo.store({coord.path("artifact"): data,
                coord.path("manifest"): manifest.to_text().encode("utf-8")})
    return coord


def _find(coord, repos):
    for repo in repos:
        manifest = read_manifest(repo, coord)
        if manifest is not None:
            return manifest, repo
    return None, None


def fetch(coord, repos):
    """Artifact bytes and manifest, verified against the manifest hash."""
    manifest, repo = _find(coord, repos)
    if manifest is None:
        raise ResolutionError(f"artifact {coord} not found in any repository")
    return _fetch_from(coord, manifest, repo), manifest


def _fetch_from(coord, manifest, repo):
    data = repo.read(coord.path("artifact"))
    if data is None:
        raise IntegrityError(f"{coord}: manifest present but artifact file missing in {repo!r}")
    digest = sha256_hex(data)
    if digest != manifest.sha256:
        raise IntegrityError(f"{coord}: sha256 {digest} does not match manifest {manifest.sha256}")
    return data


def _chain_text(chain, missing):
    return " → ".join([c.name for c in chain] + [f"(missing) {missing.name}"])


def resolve(root, repos):
    """Dependency closure of ``root``, dependencies first.

    Breadth-first over manifests; when two paths ask for different versions
    of the same group:name, the highest version wins and the loser (with its
    own dependencies) drops out.  Re-traversal repeats until the selected
    versions stop changing.
    """
    repos = list(repos)
    selected = {root.key: root}
    found = {}
    while True:
        changed = False
        missing = None
        reached = []
        seen = set()
        queue = [(root, (root,))]
        while queue:
            req, chain = queue.pop(0)
            coord = selected[req.key]
            if coord in seen:
                continue
            seen.add(coord)
            if coord not in found:
                found[coord] = _find(coord, repos)
            manifest, _ = found[coord]
            if manifest is None:
                missing = missing or (chain[:-1], coord)
                continue
            reached.append(coord)
            for dep in manifest.dependencies:
                cur = selected.get(dep.key)
                if cur is None or (dep.version_key > cur.version_key and dep.key != root.key):
                    selected[dep.key] = dep
                    changed = changed or cur is not None
                queue.append((dep, chain + (dep,)))
        if not changed:
            break
    if missing is not None:
        chain, coord = missing
        raise ResolutionError(f"artifact {coord} not found in any repository "
                              f"(required by {_chain_text(chain, coord)})")

    # edges use the selected version of each dependency
    edges = {c: [selected[d.key] for d in found[c][0].dependencies] for c in reached}
    for c in reached:
        parent = found[c][0]
        for d in edges[c]:
            child = found[d][0]
            if child.type not in ALLOWED_DEPENDENCIES[parent.type]:
                raise ResolutionError(
                    f"{c} ({parent.type}) may not depend on {d} ({child.type})")
    order, state = [], {}

    def visit(c, path):
        if state.get(c) == 2:
            return
        if state.get(c) == 1:
            cycle = path[path.index(c):] + [c]
            raise DependencyCycleError([x.name for x in cycle])
        state[c] = 1
        for d in edges[c]:
            visit(d, path + [c])
        state[c] = 2
        order.append(c)

    visit(root, [])
    return [ResolvedArtifact(c, found[c][0], found[c][1]) for c in order]


@dataclass(frozen=True)
class InstallResult:
    path: Path
    status: str  # "installed" | "already installed"
    components: tuple


def read_install_ledger(install_dir):
    path = Path(install_dir) / INSTALL_LEDGER
    if not path.exists():
        return []
    rows = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if line:
            coord, typ, digest, filename = line.split("\t")
            rows.append((Coordinate.parse(coord), typ, digest, filename))
    return rows


def install_voice(coord, repos, install_dir):
    """Resolve, verify every hash, then unpack voice, language and lexicon
    artifacts and record them.  Nothing is written unless all checks pass."""
    install_dir = Path(install_dir)
    ledger = read_install_ledger(install_dir)
    for c, typ, _, filename in ledger:
        if c == coord and typ == "voice":
            return InstallResult(install_dir / filename, "already installed",
                                 tuple(r[0] for r in ledger))
    closure = resolve(coord, repos)
    if closure[-1].manifest.type != "voice":
        raise ArtifactError(f"{coord} is a {closure[-1].manifest.type} artifact, not a voice")
    payloads = []
    for item in closure:
        data = _fetch_from(item.coordinate, item.manifest, item.repository)
        if item.manifest.type in INSTALLED_TYPES:
            payloads.append((item, data))
    install_dir.mkdir(parents=True, exist_ok=True)
    known = {r[0] for r in ledger}
    rows = list(ledger)
    voice_path = None
    for item, data in payloads:
        c = item.coordinate
        filename = f"{c.name}-{c.version}.{INSTALL_EXT[item.manifest.type]}"
        if c not in known:
            tmp = install_dir / (filename + ".part")
            tmp.write_bytes(data)
            os.replace(tmp, install_dir / filename)
            rows.append((c, item.manifest.type, item.manifest.sha256, filename))
        if c == coord:
            voice_path = install_dir / filename
    tmp = install_dir / (INSTALL_LEDGER + ".part")
    tmp.write_text("".join(f"{c}\t{t}\t{h}\t{f}\n" for c, t, h, f in rows), encoding="utf-8")
    os.replace(tmp, install_dir / INSTALL_LEDGER)
    return InstallResult(voice_path, "installed", tuple(i.coordinate for i, _ in payloads))

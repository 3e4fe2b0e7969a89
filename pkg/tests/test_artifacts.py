import pytest
from fastapi.testclient import TestClient

from voicebuild.artifacts import (
    Coordinate, HttpRepository, LocalRepository, Manifest, compare_versions, fetch, install_voice,
    open_repository, publish, read_install_ledger, resolve)
from voicebuild.errors import (
    ArtifactError, DependencyCycleError, IntegrityError, ParseError, ResolutionError)
from voicebuild.service import create_app

C = Coordinate.parse


def _stack(repo, version="1.0.0", lex_version="1.0.0"):
    """lexicon <- language <- data <- voice, all in one repository."""
    publish(b"lex" + lex_version.encode(), Manifest(C(f"g:lex:{lex_version}"), "lexicon"), repo)
    publish(b"lang", Manifest(C(f"g:lang:{version}"), "language", (C(f"g:lex:{lex_version}"),)), repo)
    publish(b"data", Manifest(C(f"g:data:{version}"), "data", (C(f"g:lang:{version}"),)), repo)
    publish(b"voice" + version.encode(),
            Manifest(C(f"g:voice:{version}"), "voice", (C(f"g:lang:{version}"), C(f"g:data:{version}"))),
            repo)
    return C(f"g:voice:{version}")


# -- coordinates and manifests ---------------------------------------------------

def test_coordinate_parse_and_path():
    c = C("org.demo:voice-x:1.2.0")
    assert (c.group, c.name, c.version) == ("org.demo", "voice-x", "1.2.0")
    assert str(c) == "org.demo:voice-x:1.2.0"
    assert c.path("manifest") == "org.demo/voice-x/1.2.0/voice-x-1.2.0.manifest"
    for bad in ("a:b", "a:b:c:d", "a:b:1.x", "a:/b:1", "a:b:"):
        with pytest.raises(ArtifactError):
            C(bad)


@pytest.mark.parametrize("a, b, sign", [
    ("1.10.0", "1.9.0", 1), ("1.0", "1.0.0", 0), ("2", "10", -1), ("0.0.1", "0.0.1", 0),
])
def test_compare_versions(a, b, sign):
    assert compare_versions(a, b) == sign
    assert compare_versions(b, a) == -sign


def test_manifest_round_trip():
    m = Manifest(C("g:lang:1.0"), "language", (C("g:lex:1.0"), C("g:lex2:3")), "ab" * 32)
    assert Manifest.parse(m.to_text()) == m
    with pytest.raises(ParseError):
        Manifest.parse("group=g\nname=x\n")
    with pytest.raises(ParseError):
        Manifest.parse("no equals\n")
    with pytest.raises(ArtifactError, match="unknown artifact type"):
        Manifest(C("g:x:1"), "plugin")


# -- publish and fetch -------------------------------------------------------------

def test_publish_fetch_and_immutability(tmp_path):
    repo = LocalRepository(tmp_path)
    coord = publish(b"payload", Manifest(C("g:lex:1.0"), "lexicon"), repo)
    data, manifest = fetch(coord, [repo])
    assert data == b"payload" and len(manifest.sha256) == 64
    with pytest.raises(ArtifactError, match="immutable"):
        publish(b"other", Manifest(C("g:lex:1.0"), "lexicon"), repo)
    assert fetch(coord, [repo])[0] == b"payload"
    with pytest.raises(ResolutionError, match="not found"):
        fetch(C("g:lex:2.0"), [repo])


def test_tampered_artifact_fails_integrity(tmp_path):
    repo = LocalRepository(tmp_path)
    coord = publish(b"payload", Manifest(C("g:lex:1.0"), "lexicon"), repo)
    (tmp_path / coord.path("artifact")).write_bytes(b"paylOad")
    with pytest.raises(IntegrityError, match="does not match"):
        fetch(coord, [repo])
    (tmp_path / coord.path("artifact")).unlink()
    with pytest.raises(IntegrityError, match="missing"):
        fetch(coord, [repo])


def test_repositories_searched_in_order(tmp_path):
    first, second = LocalRepository(tmp_path / "a"), LocalRepository(tmp_path / "b")
    publish(b"from-a", Manifest(C("g:lex:1.0"), "lexicon"), first)
    publish(b"from-b", Manifest(C("g:lex:1.0"), "lexicon"), second)
    assert fetch(C("g:lex:1.0"), [first, second])[0] == b"from-a"
    assert fetch(C("g:lex:1.0"), [second, first])[0] == b"from-b"


# -- resolution ------------------------------------------------------------------

def test_closure_is_dependency_ordered(tmp_path):
    repo = LocalRepository(tmp_path)
    root = _stack(repo)
    names = [r.coordinate.name for r in resolve(root, [repo])]
    assert names == ["lex", "lang", "data", "voice"]


def test_highest_version_wins(tmp_path):
    repo = LocalRepository(tmp_path)
    publish(b"l1", Manifest(C("g:lex:1.0"), "lexicon"), repo)
    publish(b"l2", Manifest(C("g:lex:1.10"), "lexicon"), repo)
    publish(b"a", Manifest(C("g:lang-a:1"), "language", (C("g:lex:1.0"),)), repo)
    publish(b"b", Manifest(C("g:lang-b:1"), "language", (C("g:lex:1.10"),)), repo)
    publish(b"v", Manifest(C("g:v:1"), "voice", (C("g:lang-a:1"), C("g:lang-b:1"))), repo)
    closure = [str(r.coordinate) for r in resolve(C("g:v:1"), [repo])]
    assert [c for c in closure if ":lex:" in c] == ["g:lex:1.10"]
    assert closure[-1] == "g:v:1"


def test_cycles_are_caught_before_the_walk(tmp_path):
    # the allowed type edges form a chain, so any cycle breaks a type rule
    repo = LocalRepository(tmp_path)
    for a, b, typ in (("x", "y", "data"), ("y", "x", "language")):
        m = Manifest(C(f"g:{a}:1"), typ, (C(f"g:{b}:1"),), "0" * 64)
        repo.store({C(f"g:{a}:1").path("manifest"): m.to_text().encode(),
                    C(f"g:{a}:1").path("artifact"): b""})
    with pytest.raises(ResolutionError, match="may not depend on") as info:
        resolve(C("g:x:1"), [repo])
    assert not isinstance(info.value, DependencyCycleError)


def test_type_constraint(tmp_path):
    repo = LocalRepository(tmp_path)
    publish(b"v", Manifest(C("g:v:1"), "voice"), repo)
    publish(b"l", Manifest(C("g:lex:1"), "lexicon", (C("g:v:1"),)), repo)
    with pytest.raises(ResolutionError, match=r"\(lexicon\) may not depend on g:v:1 \(voice\)"):
        resolve(C("g:lex:1"), [repo])


def test_missing_dependency_reports_chain(tmp_path):
    repo = LocalRepository(tmp_path)
    publish(b"l", Manifest(C("g:lang:1"), "language", (C("g:lex:9"),)), repo)
    publish(b"v", Manifest(C("g:voice:1"), "voice", (C("g:lang:1"),)), repo)
    with pytest.raises(ResolutionError, match="voice → lang → \\(missing\\) lex"):
        resolve(C("g:voice:1"), [repo])


# -- installation ------------------------------------------------------------------

def test_install_writes_components_and_ledger(tmp_path):
    repo = LocalRepository(tmp_path / "repo")
    root = _stack(repo)
    dest = tmp_path / "voices"
    res = install_voice(root, [repo], dest)
    assert res.status == "installed"
    assert res.path == dest / "voice-1.0.0.mvox" and res.path.read_bytes() == b"voice1.0.0"
    assert [str(c) for c in res.components] == ["g:lex:1.0.0", "g:lang:1.0.0", "g:voice:1.0.0"]
    assert not any("data" in p.name for p in dest.iterdir())
    rows = read_install_ledger(dest)
    assert [r[1] for r in rows] == ["lexicon", "language", "voice"]
    again = install_voice(root, [repo], dest)
    assert again.status == "already installed" and again.path == res.path


def test_install_shares_components_between_voices(tmp_path):
    repo = LocalRepository(tmp_path / "repo")
    first = _stack(repo)
    publish(b"v2", Manifest(C("g:voice2:1.0.0"), "voice", (C("g:lang:1.0.0"),)), repo)
    dest = tmp_path / "voices"
    install_voice(first, [repo], dest)
    install_voice(C("g:voice2:1.0.0"), [repo], dest)
    coords = [str(r[0]) for r in read_install_ledger(dest)]
    assert coords.count("g:lang:1.0.0") == 1 and "g:voice2:1.0.0" in coords


def test_corrupt_component_installs_nothing(tmp_path):
    repo = LocalRepository(tmp_path / "repo")
    root = _stack(repo)
    (tmp_path / "repo" / C("g:data:1.0.0").path("artifact")).write_bytes(b"bad")
    dest = tmp_path / "voices"
    with pytest.raises(IntegrityError):
        install_voice(root, [repo], dest)
    assert not dest.exists() or not any(dest.iterdir())


def test_install_requires_a_voice(tmp_path):
    repo = LocalRepository(tmp_path / "repo")
    _stack(repo)
    with pytest.raises(ArtifactError, match="not a voice"):
        install_voice(C("g:lang:1.0.0"), [repo], tmp_path / "voices")


# -- over HTTP ------------------------------------------------------------------------

@pytest.fixture
def http_repo(tmp_path):
    client = TestClient(create_app(repo_dir=tmp_path / "served"))
    return HttpRepository("http://testserver/repo", client=client), tmp_path / "served"


def test_http_repository_publish_resolve_install(http_repo, tmp_path):
    repo, served = http_repo
    root = _stack(repo)
    assert (served / root.path("manifest")).is_file()
    names = [r.coordinate.name for r in resolve(root, [repo])]
    assert names == ["lex", "lang", "data", "voice"]
    res = install_voice(root, [repo], tmp_path / "voices")
    assert res.path.read_bytes() == b"voice1.0.0"
    with pytest.raises(ArtifactError, match="immutable"):
        publish(b"x", Manifest(C("g:lex:1.0.0"), "lexicon"), repo)


def test_http_falls_back_to_local(http_repo, tmp_path):
    remote, _ = http_repo
    local = LocalRepository(tmp_path / "local")
    publish(b"only-local", Manifest(C("g:lex:1"), "lexicon"), local)
    assert fetch(C("g:lex:1"), [remote, local])[0] == b"only-local"


def test_open_repository():
    assert isinstance(open_repository("http://example.invalid/r"), HttpRepository)
    assert isinstance(open_repository("/tmp/somewhere"), LocalRepository)

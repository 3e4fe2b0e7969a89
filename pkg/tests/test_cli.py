import json
import subprocess
import sys

import pytest

from voicebuild.cli import build_parser, main
from voicebuild.dsp import read_wav, write_wav
from voicebuild.synth import synthesize

SUBCOMMANDS = ["compile-lexicon", "train-g2p", "bundle-language", "phonemise", "align",
               "extract-features", "build-voice", "synth", "publish", "resolve", "install",
               "build", "serve", "demo-project"]


@pytest.mark.parametrize("name", SUBCOMMANDS)
def test_help_exits_zero(name, capsys):
    with pytest.raises(SystemExit) as info:
        main([name, "--help"])
    assert info.value.code == 0
    assert "usage: voicebuild " + name in capsys.readouterr().out


def test_every_subcommand_listed():
    sub = next(a for a in build_parser()._actions if a.dest == "command")
    assert sorted(sub.choices) == sorted(SUBCOMMANDS)


def test_usage_errors_exit_one(capsys):
    for argv in (["no-such-command"], ["phonemise"], ["synth", "--text", "x", "--out", "o.wav"]):
        with pytest.raises(SystemExit) as info:
            code = main(argv)
            raise SystemExit(code)
        assert info.value.code == 1, argv
    assert "error" in capsys.readouterr().err


def test_runtime_failure_exits_two(tmp_path, capsys):
    assert main(["synth", "--voice", str(tmp_path / "missing.mvox"), "--text", "x",
                 "--out", str(tmp_path / "o.wav")]) == 2
    (tmp_path / "bad.mvox").write_bytes(b"MVOX junk")
    assert main(["synth", "--voice", str(tmp_path / "bad.mvox"), "--text", "x",
                 "--out", str(tmp_path / "o.wav")]) == 2
    assert "voicebuild synth:" in capsys.readouterr().err


def test_phonemise_with_language(demo_build, capsys):
    root, _, _ = demo_build
    assert main(["phonemise", "hello", "cat", "--language", str(root / "build/language.mlng")]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "h @ l 'ou"
    assert len(lines) == 2


def test_phonemise_with_lexicon_and_g2p(demo_build, capsys):
    root, _, _ = demo_build
    assert main(["phonemise", "hello", "--lexicon", str(root / "build/lexicon.mfst"),
                 "--g2p", str(root / "build/g2p.mg2p")]) == 0
    assert capsys.readouterr().out == "h @ l 'ou\n"


def test_synth_matches_library(demo_build, demo_voice, tmp_path):
    root, _, _ = demo_build
    out = tmp_path / "hello.wav"
    assert main(["synth", "--voice", str(root / "build/voice.mvox"), "--text", "hello world",
                 "--out", str(out), "--set", "synth.crossfade_ms=3"]) == 0
    expected = write_wav(synthesize("hello world", demo_voice, {"synth.crossfade_ms": "3"}))
    assert out.read_bytes() == expected
    assert read_wav(out.read_bytes()).sample_rate == 16000


def test_demo_project_build_and_rebuild(tmp_path, capsys):
    assert main(["demo-project", str(tmp_path / "proj")]) == 0
    buildfile = capsys.readouterr().out.strip() + "/voice.build"
    assert main(["build", buildfile]) == 0
    assert capsys.readouterr().out.startswith("6 executed, 0 up-to-date")
    assert main(["build", buildfile, "--report", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["summary"] == "0 executed, 6 up-to-date"


def test_publish_resolve_install(tmp_path, capsys):
    repo = str(tmp_path / "repo")
    (tmp_path / "lex").write_bytes(b"lex")
    (tmp_path / "voice").write_bytes(b"voice")
    assert main(["publish", "--repo", repo, "--file", str(tmp_path / "lex"),
                 "--coordinate", "g:lex:1.0", "--type", "lexicon"]) == 0
    assert main(["publish", "--repo", repo, "--file", str(tmp_path / "voice"),
                 "--coordinate", "g:v:1.0", "--type", "voice", "--dep", "g:lex:1.0"]) == 0
    # type rules are checked when resolving, since dependencies may live elsewhere
    assert main(["resolve", "g:v:1.0", "--repo", repo]) == 2
    assert "may not depend" in capsys.readouterr().err
    (tmp_path / "lang").write_bytes(b"lang")
    assert main(["publish", "--repo", repo, "--file", str(tmp_path / "lang"),
                 "--coordinate", "g:lang:1.0", "--type", "language", "--dep", "g:lex:1.0"]) == 0
    assert main(["publish", "--repo", repo, "--file", str(tmp_path / "voice"),
                 "--coordinate", "g:v:2.0", "--type", "voice", "--dep", "g:lang:1.0"]) == 0
    capsys.readouterr()
    assert main(["resolve", "g:v:2.0", "--repo", repo]) == 0
    assert capsys.readouterr().out == "g:lex:1.0\tlexicon\ng:lang:1.0\tlanguage\ng:v:2.0\tvoice\n"
    assert main(["install", "g:v:2.0", "--repo", repo, "--dir", str(tmp_path / "voices")]) == 0
    assert (tmp_path / "voices" / "v-2.0.mvox").read_bytes() == b"voice"
    assert main(["resolve", "g:nope:1", "--repo", repo]) == 2


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "voicebuild.cli", "--version"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip()

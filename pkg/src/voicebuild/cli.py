"""``voicebuild`` command line.  Every subcommand delegates to a library call."""

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .errors import VoiceBuildError

EXIT_OK, EXIT_USAGE, EXIT_FAILURE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _out(text):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _repos(specs):
    from .artifacts import open_repository

    return [open_repository(s) for s in specs]


# -- subcommands -------------------------------------------------------------

def cmd_compile_lexicon(a):
    from .build.actions import compile_lexicon_file

    fst = compile_lexicon_file(a.phoneset, a.lexicon, a.out)
    print(f"{fst.entry_count} entries, {len(fst.states)} states, {fst.arc_count} arcs -> {a.out}",
          file=sys.stderr)


def cmd_train_g2p(a):
    from .build.actions import train_g2p_file

    model = train_g2p_file(a.phoneset, a.lexicon, a.out, a.em_iterations, a.max_depth)
    print(f"{len(model.trees)} letter trees, depth {model.depth()} -> {a.out}", file=sys.stderr)


def cmd_bundle_language(a):
    from .build.actions import bundle_language_file

    bundle_language_file(a.phoneset, a.lexicon, a.fst, a.g2p, a.out, a.language)


def cmd_phonemise(a):
    from .phonemiser import format_pronunciation, phonemise

    if a.server:
        from .service.client import phonemise_remote

        for p in phonemise_remote(a.server, a.words):
            _out(p["notation"])
        return
    if a.language:
        from .build.actions import load_language_file

        lang = load_language_file(a.language)
        fst, g2p = lang.fst, lang.g2p
    elif a.lexicon and a.g2p:
        from .fst import load_fst
        from .g2p import load_g2p

        fst = load_fst(Path(a.lexicon).read_bytes())
        g2p = load_g2p(Path(a.g2p).read_bytes())
    else:
        raise _UsageError("phonemise needs --language, or both --lexicon and --g2p, or --server")
    for word in a.words:
        pron = phonemise(word, fst, g2p)
        _out(format_pronunciation(pron.phones, pron.stress))


def cmd_align(a):
    from .build.actions import align_files

    grids = align_files(a.language, a.prompts, a.wav_dir, a.out_dir, a.iterations)
    print(f"aligned {len(grids)} utterances -> {a.out_dir}", file=sys.stderr)


def cmd_extract_features(a):
    from .build.actions import extract_features_files

    n = extract_features_files(a.wav_dir, a.out_dir)
    print(f"extracted features for {n} recordings -> {a.out_dir}", file=sys.stderr)


def cmd_build_voice(a):
    from .build.actions import build_voice_file

    data = build_voice_file(a.language, a.prompts, a.wav_dir, a.textgrid_dir, a.features_dir,
                            a.out, a.name, a.version, a.config)
    print(f"voice package {len(data)} bytes -> {a.out}", file=sys.stderr)


def _user_config(a):
    from .synth import parse_config

    values = parse_config(Path(a.config).read_text(encoding="utf-8")) if a.config else {}
    for item in a.set or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise _UsageError(f"--set expects key=value, got {item!r}")
        values[key.strip()] = value.strip()
    return values


def cmd_synth(a):
    from .dsp import write_wav

    user = _user_config(a)
    if a.server:
        from .service.client import synthesize_remote

        data = synthesize_remote(a.server, a.text, user)
    else:
        from .synth import synthesize
        from .voicedb import load_voice

        if not a.voice:
            raise _UsageError("synth needs --voice or --server")
        data = write_wav(synthesize(a.text, load_voice(Path(a.voice).read_bytes()), user))
    Path(a.out).write_bytes(data)
    print(f"wrote {a.out}", file=sys.stderr)


def cmd_publish(a):
    from .artifacts import Coordinate, Manifest, publish

    manifest = Manifest(Coordinate.parse(a.coordinate), a.type,
                        tuple(Coordinate.parse(d) for d in a.dep or ()))
    coord = publish(Path(a.file).read_bytes(), manifest, _repos([a.repo])[0])
    _out(str(coord))


def cmd_resolve(a):
    from .artifacts import Coordinate, resolve

    for item in resolve(Coordinate.parse(a.coordinate), _repos(a.repo)):
        _out(f"{item.coordinate}\t{item.manifest.type}")


def cmd_install(a):
    from .artifacts import Coordinate, install_voice

    res = install_voice(Coordinate.parse(a.coordinate), _repos(a.repo), a.dir)
    print(res.status, file=sys.stderr)
    _out(str(res.path))


def cmd_build(a):
    from .build import execute, parse_buildfile

    path = Path(a.buildfile)
    graph = parse_buildfile(path.read_text(encoding="utf-8"))
    root = Path(a.root) if a.root else path.parent
    report = execute(graph, root, a.state_dir, jobs=a.jobs)
    for name in sorted(report.results):
        res = report.results[name]
        if res.message:
            print(f"{name}: {res.status}: {res.message}", file=sys.stderr)
    if a.report == "json":
        _out(report.to_json())
    else:
        _out(report.summary())
    return EXIT_OK if report.ok else EXIT_FAILURE


def cmd_serve(a):
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(a.voice, a.repo_dir), host=a.host, port=a.port)


def cmd_demo_project(a):
    from .demo.corpus import write_demo_project

    _out(str(write_demo_project(a.dir)))


class _UsageError(Exception):
    pass


def build_parser():
    p = _Parser(prog="voicebuild", description="Build and run unit-selection voices.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def cmd(name, func, help):
        sp = sub.add_parser(name, help=help, description=help)
        sp.set_defaults(func=func)
        return sp

    sp = cmd("compile-lexicon", cmd_compile_lexicon, "compile a lexicon TSV into an MFST transducer")
    sp.add_argument("--phoneset", required=True)
    sp.add_argument("--lexicon", required=True)
    sp.add_argument("--out", required=True)

    sp = cmd("train-g2p", cmd_train_g2p, "train letter-to-sound trees (MG2P)")
    sp.add_argument("--phoneset", required=True)
    sp.add_argument("--lexicon", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--em-iterations", type=int, default=10)
    sp.add_argument("--max-depth", type=int, default=12)

    sp = cmd("bundle-language", cmd_bundle_language, "bundle phone set, FST and G2P into MLNG")
    sp.add_argument("--phoneset", required=True)
    sp.add_argument("--lexicon", required=True)
    sp.add_argument("--fst", required=True)
    sp.add_argument("--g2p", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--language")

    sp = cmd("phonemise", cmd_phonemise, "print pronunciations, stressed phones marked with '")
    sp.add_argument("words", nargs="+")
    sp.add_argument("--lexicon", help="compiled MFST")
    sp.add_argument("--g2p", help="MG2P model")
    sp.add_argument("--language", help="MLNG bundle (instead of --lexicon/--g2p)")
    sp.add_argument("--server", help="base URL of a running service")

    sp = cmd("align", cmd_align, "train monophone HMMs and force-align a recorded corpus")
    sp.add_argument("--language", required=True)
    sp.add_argument("--prompts", required=True)
    sp.add_argument("--wav-dir", required=True)
    sp.add_argument("--out-dir", required=True)
    sp.add_argument("--iterations", type=int, default=5)

    sp = cmd("extract-features", cmd_extract_features, "MFCC + F0 feature cache for every WAV")
    sp.add_argument("--wav-dir", required=True)
    sp.add_argument("--out-dir", required=True)

    sp = cmd("build-voice", cmd_build_voice, "cut halfphone units, train prosody, write MVOX")
    sp.add_argument("--language", required=True)
    sp.add_argument("--prompts", required=True)
    sp.add_argument("--wav-dir", required=True)
    sp.add_argument("--textgrid-dir", required=True)
    sp.add_argument("--features-dir", required=True)
    sp.add_argument("--name", required=True)
    sp.add_argument("--version", default="1.0.0")
    sp.add_argument("--config", help="voice-layer config file (key = value)")
    sp.add_argument("--out", required=True)

    sp = cmd("synth", cmd_synth, "synthesise text to a 16-bit mono WAV")
    sp.add_argument("--voice")
    sp.add_argument("--text", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--config", help="user-layer config file (key = value)")
    sp.add_argument("--set", action="append", metavar="KEY=VALUE", help="user-layer override")
    sp.add_argument("--server", help="base URL of a running service")

    sp = cmd("publish", cmd_publish, "publish an artifact with its manifest")
    sp.add_argument("--repo", required=True, help="directory or http(s) URL")
    sp.add_argument("--file", required=True)
    sp.add_argument("--coordinate", required=True, help="group:name:version")
    sp.add_argument("--type", required=True, choices=["lexicon", "language", "data", "voice"])
    sp.add_argument("--dep", action="append", help="dependency coordinate (repeatable)")

    sp = cmd("resolve", cmd_resolve, "print the dependency closure, dependencies first")
    sp.add_argument("coordinate")
    sp.add_argument("--repo", action="append", required=True, help="repeatable; earlier wins")

    sp = cmd("install", cmd_install, "install a voice with its language and lexicon")
    sp.add_argument("coordinate")
    sp.add_argument("--repo", action="append", required=True)
    sp.add_argument("--dir", required=True)

    sp = cmd("build", cmd_build, "run a build definition file incrementally")
    sp.add_argument("buildfile")
    sp.add_argument("--root", help="project root (default: the build file's directory)")
    sp.add_argument("--state-dir", help="fingerprint ledger location (default: <root>/.voicebuild)")
    sp.add_argument("--jobs", type=int)
    sp.add_argument("--report", choices=["text", "json"], default="text")

    sp = cmd("serve", cmd_serve, "run the HTTP service")
    sp.add_argument("--voice")
    sp.add_argument("--repo-dir")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8000)

    sp = cmd("demo-project", cmd_demo_project, "write the bundled demo corpus and build file")
    sp.add_argument("dir")
    return p


def main(argv=None):
    parser = build_parser()
    a = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        code = a.func(a)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"voicebuild: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (VoiceBuildError, OSError) as exc:
        print(f"voicebuild {a.command}: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())

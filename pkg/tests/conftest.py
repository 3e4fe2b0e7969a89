import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_LINES = []


@pytest.fixture
def report(capsys):
    """Record one acceptance line; printed live and again in the summary."""
    def _report(number, ok, detail):
        line = f"acceptance criterion {number:2d}: {'PASS' if ok else 'FAIL'} | {detail}"
        ACCEPTANCE_LINES.append(line)
        with capsys.disabled():
            print("\n" + line)
        return ok
    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def demo_language():
    from voicebuild.demo.corpus import load_demo_language

    return load_demo_language()


@pytest.fixture(scope="session")
def demo_build(tmp_path_factory):
    """A fully built demo project: (root, report, seconds taken)."""
    import time

    from voicebuild.build import execute, parse_buildfile
    from voicebuild.demo.corpus import write_demo_project

    start = time.perf_counter()
    root = write_demo_project(tmp_path_factory.mktemp("demo"))
    graph = parse_buildfile((root / "voice.build").read_text(encoding="utf-8"))
    rep = execute(graph, root)
    return root, rep, time.perf_counter() - start


@pytest.fixture(scope="session")
def demo_voice(demo_build):
    from voicebuild.voicedb import load_voice

    root, _, _ = demo_build
    return load_voice((root / "build" / "voice.mvox").read_bytes())

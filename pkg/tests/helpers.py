"""Shared fixtures-in-code: random unit databases, toy lexicons, golden payloads."""

import random

import numpy as np

from voicebuild.lexicon import parse_lexicon
from voicebuild.synth.costs import TargetUnit
from voicebuild.textproc import feature_names
from voicebuild.voicedb import NO_UNIT, HalfphoneUnit, ProsodyModels, RegLeaf, RegSplit, UnitDatabase

SMALL_FEATURES = ("phone", "stress", "position", "word_end")


def random_unit_db(rng, n_targets, max_k, dim=4):
    """Random candidates per target plus some natural-successor links."""
    keys = [(rng.choice("ab"), rng.choice(("left", "right"))) for _ in range(n_targets)]
    units = []
    by_key = {}
    for key in dict.fromkeys(keys):
        for _ in range(rng.randint(1, max_k)):
            uid = len(units)
            feats = {"phone": key[0], "stress": rng.choice("01"), "position": rng.choice("xyz"),
                     "word_end": rng.choice("01")}
            units.append(HalfphoneUnit(
                unit_id=uid, phone=key[0], half=key[1], utterance_id="u0",
                start_sample=0, end_sample=1, prev_unit_id=NO_UNIT, next_unit_id=NO_UNIT,
                mean_f0=rng.choice([0.0, rng.uniform(60, 300)]),
                duration_s=rng.uniform(0.01, 0.2),
                boundary_mfcc_left=np.array([rng.uniform(-5, 5) for _ in range(dim)]),
                boundary_mfcc_right=np.array([rng.uniform(-5, 5) for _ in range(dim)]),
                linguistic=feats))
            by_key.setdefault(key, []).append(uid)
    for a, b in zip(keys, keys[1:]):
        for uid in by_key[a]:
            if rng.random() < 0.4:
                units[uid].next_unit_id = rng.choice(by_key[b])
    db = UnitDatabase(units, {"u0": np.zeros(1, dtype=np.int16)}, 16000, SMALL_FEATURES)
    targets = []
    for phone, half in keys:
        feats = {"phone": phone, "stress": rng.choice("01"), "position": rng.choice("xyz"),
                 "word_end": rng.choice("01")}
        targets.append(TargetUnit(phone, half, feats, rng.uniform(0.01, 0.2),
                                  rng.choice([0.0, rng.uniform(60, 300)])))
    return db, targets


def random_voice_parts(rng, n_utts=3, dim=13):
    names = feature_names()
    units, audio = [], {}
    for k in range(n_utts):
        uid = f"utt{k:02d}"
        n_phones = rng.randint(1, 6)
        lengths = [rng.randint(4, 60) for _ in range(2 * n_phones)]
        audio[uid] = np.array([rng.randint(-32768, 32767) for _ in range(sum(lengths))], dtype=np.int16)
        pos = 0
        first = len(units)
        for j, n in enumerate(lengths):
            phone = rng.choice(["a", "t", "_", "ou"]) if j % 2 == 0 else units[-1].phone
            units.append(HalfphoneUnit(
                unit_id=len(units), phone=phone, half="left" if j % 2 == 0 else "right",
                utterance_id=uid, start_sample=pos, end_sample=pos + n,
                prev_unit_id=NO_UNIT, next_unit_id=NO_UNIT,
                mean_f0=rng.choice([0.0, rng.uniform(60, 300)]), duration_s=n / 16000,
                boundary_mfcc_left=np.array([rng.gauss(0, 5) for _ in range(dim)]),
                boundary_mfcc_right=np.array([rng.gauss(0, 5) for _ in range(dim)]),
                linguistic={name: rng.choice(["0", "1", "x", "onset", "ŋ"]) for name in names}))
            pos += n
        for a, b in zip(units[first:], units[first + 1:]):
            a.next_unit_id, b.prev_unit_id = b.unit_id, a.unit_id
    db = UnitDatabase(units, audio, 16000, names)
    prosody = ProsodyModels(
        RegSplit("phone", "a", RegLeaf(rng.uniform(-3, -1), 3), RegLeaf(rng.uniform(-3, -1), 5)),
        RegLeaf(rng.uniform(80, 200), 7), 120.0)
    return db, prosody, {"name": f"rand{rng.randint(0, 999)}", "version": "0.1.0", "language": "en"}


# letters that map one-to-one onto demo phones; "ph" is the planted digraph
_TOY_MAP = {"a": "a", "e": "e", "i": "I", "o": "o", "u": "V", "b": "b", "d": "d", "g": "g",
            "k": "k", "l": "l", "m": "m", "n": "n", "p": "p", "r": "r", "s": "s", "t": "t",
            "v": "v", "z": "z", "h": "h", "f": "f"}
_VOWELS = "aeiou"


def _toy_pron(word):
    phones = []
    i = 0
    while i < len(word):
        if word[i:i + 2] == "ph":
            phones.append("f")
            i += 2
        else:
            phones.append(_TOY_MAP[word[i]])
            i += 1
    out, stressed = [], False
    for p in phones:
        if p in ("a", "e", "I", "o", "V") and not stressed:
            out.append(p + "1")
            stressed = True
        else:
            out.append(p)
    return " ".join(out)


def toy_g2p_lexicon(n_words=80, seed=2):
    from voicebuild.demo.corpus import load_demo_phoneset

    rng = random.Random(seed)
    cons = "bdgklmnrstvz"
    words = set()
    while len(words) < n_words:
        shape = rng.choice(["CVC", "CVCV", "CVCVC", "VCV", "phVC", "CVph", "CVphV", "hVC", "CVpVC"])
        w = ""
        for ch in shape.replace("ph", "P"):
            w += {"C": lambda: rng.choice(cons), "V": lambda: rng.choice(_VOWELS),
                  "P": lambda: "ph", "p": lambda: "p", "h": lambda: "h"}[ch]()
        words.add(w)
    text = "".join(f"{w}\t{_toy_pron(w)}\n" for w in sorted(words))
    return parse_lexicon(text, load_demo_phoneset())


def golden_payloads():
    """Deterministic bytes compared against tests/golden."""
    from voicebuild.alignment import Interval, IntervalTier, TextGrid, write_textgrid
    from voicebuild.demo.corpus import load_demo_lexicon
    from voicebuild.dsp import AudioClip, analyse, dump_frames
    from voicebuild.fst import compile_fst, dump_fst
    from voicebuild.g2p import dump_g2p, train_g2p
    from voicebuild.lexicon import serialize_lexicon
    from voicebuild.voicedb import package_voice

    lex = load_demo_lexicon()
    grid = TextGrid(0.0, 1.25, [
        IntervalTier("phones", 0.0, 1.25, [Interval(0.0, 0.2, "_"), Interval(0.2, 0.31, "h"),
                                           Interval(0.31, 0.4, "@"), Interval(0.4, 1.25, "_")]),
        IntervalTier("words", 0.0, 1.25, [Interval(0.0, 0.2, ""), Interval(0.2, 0.4, 'the "word"'),
                                          Interval(0.4, 1.25, "")])])
    t = np.arange(8000) / 16000
    clip = AudioClip(np.round(0.4 * np.sin(2 * np.pi * 150 * t) * 32767) / 32768, 16000)
    feats = analyse(clip)
    db, prosody, manifest = random_voice_parts(random.Random(0))
    return {
        "demo_lexicon.tsv": serialize_lexicon(lex).encode("utf-8"),
        "demo_lexicon.mfst": dump_fst(compile_fst(lex)),
        "demo_g2p.mg2p": dump_g2p(train_g2p(lex.spelling_free())),
        "sample.TextGrid": write_textgrid(grid).encode("utf-8"),
        "sample.mfrm": dump_frames(np.column_stack([feats.mfcc, feats.f0])),
        "small_voice.mvox": package_voice(db, prosody, manifest, {"synth.crossfade_ms": "5.0"}),
    }

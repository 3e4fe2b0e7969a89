"""``MVOX`` voice packages.

Layout: magic ``MVOX``, version u32, then six sections in a fixed order
(MANIFEST, UNITS, AUDIO, PROSODY, CONFIG, LANGUAGE).  Each section is a
length-prefixed tag, a u32 payload length, the payload and a CRC32 of the
payload.  All integers are little-endian.  See ``FORMATS.md``.
"""

import struct
import zlib
from dataclasses import dataclass, field

import numpy as np

from ..binio import Reader, Writer
from ..errors import ChecksumError, FormatError, SchemaMismatchError
from ..phonemiser import dump_language, load_language
from ..textproc.features import schema_hash
from .prosody import ProsodyModels, RegLeaf, RegSplit
from .units import HalfphoneUnit, UnitDatabase

MAGIC = b"MVOX"
VERSION = 1
SECTIONS = ("MANIFEST", "UNITS", "AUDIO", "PROSODY", "CONFIG", "LANGUAGE")
MANIFEST_KEYS = ("name", "language", "version", "sample_rate", "schema_hash")
HALVES = ("left", "right")


@dataclass
class VoicePackage:
    manifest: dict
    db: UnitDatabase
    prosody: ProsodyModels
    config: dict = field(default_factory=dict)
    language: object = None  # LanguageComponent

    @property
    def name(self):
        return self.manifest.get("name", "")


def _kv_lines(pairs):
    out = []
    for k, v in pairs:
        if "\n" in str(v) or "=" in k:
            raise FormatError(f"cannot store {k!r} in a key=value section")
        out.append(f"{k}={v}\n")
    return "".join(out).encode("utf-8")


def _parse_kv(data, what):
    result = {}
    for line in data.decode("utf-8").splitlines():
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise FormatError(f"malformed {what} line {line!r}")
        result[key] = value
    return result


def _manifest_pairs(manifest):
    keys = [k for k in MANIFEST_KEYS if k in manifest]
    deps = sorted((k for k in manifest if k.startswith("dep.")), key=lambda k: int(k[4:]))
    rest = sorted(k for k in manifest if k not in MANIFEST_KEYS and not k.startswith("dep."))
    return [(k, manifest[k]) for k in keys + deps + rest]


def _dump_units(db, utt_order):
    names = list(db.feature_names)
    vocab = {n: sorted({u.linguistic[n] for u in db.units}) for n in names}
    phones = sorted({u.phone for u in db.units})
    dim = len(db.units[0].boundary_mfcc_left) if db.units else 0
    w = Writer()
    w.u32(len(names))
    for n in names:
        w.string(n)
        w.u32(len(vocab[n]))
        for v in vocab[n]:
            w.string(v)
    w.u32(len(phones))
    for p in phones:
        w.string(p)
    w.u32(dim)
    w.u32(len(db.units))
    p_index = {p: i for i, p in enumerate(phones)}
    v_index = {n: {v: i for i, v in enumerate(vocab[n])} for n in names}
    u_index = {u: i for i, u in enumerate(utt_order)}
    rec = struct.Struct(f"<IHBIIIIIdd{2 * dim}d{len(names)}H")
    for u in db.units:
        w.raw(rec.pack(u.unit_id, p_index[u.phone], HALVES.index(u.half),
                       u_index[u.utterance_id], u.start_sample, u.end_sample,
                       u.prev_unit_id, u.next_unit_id, u.mean_f0, u.duration_s,
                       *u.boundary_mfcc_left, *u.boundary_mfcc_right,
                       *(v_index[n][u.linguistic[n]] for n in names)))
    return w.getvalue()


def _load_units(data, utt_order):
    r = Reader(data, "UNITS section")
    names, vocab = [], {}
    for _ in range(r.u32()):
        n = r.string()
        names.append(n)
        vocab[n] = [r.string() for _ in range(r.u32())]
    phones = [r.string() for _ in range(r.u32())]
    dim = r.u32()
    count = r.u32()
    rec = struct.Struct(f"<IHBIIIIIdd{2 * dim}d{len(names)}H")
    units = []
    for _ in range(count):
        f = rec.unpack(r.take(rec.size))
        try:
            units.append(HalfphoneUnit(
                unit_id=f[0], phone=phones[f[1]], half=HALVES[f[2]], utterance_id=utt_order[f[3]],
                start_sample=f[4], end_sample=f[5], prev_unit_id=f[6], next_unit_id=f[7],
                mean_f0=f[8], duration_s=f[9],
                boundary_mfcc_left=np.array(f[10:10 + dim]),
                boundary_mfcc_right=np.array(f[10 + dim:10 + 2 * dim]),
                linguistic={n: vocab[n][i] for n, i in zip(names, f[10 + 2 * dim:])}))
        except IndexError:
            raise FormatError("UNITS record references an unknown table entry") from None
    if not r.at_end():
        raise FormatError("trailing bytes in UNITS section")
    return units, tuple(names)


def _dump_audio(db, utt_order):
    w = Writer()
    w.u32(db.sample_rate)
    w.u32(len(utt_order))
    offset = 0
    for uid in utt_order:
        w.string(uid)
        w.u32(offset)
        w.u32(len(db.audio[uid]))
        offset += len(db.audio[uid])
    for uid in utt_order:
        w.raw(np.asarray(db.audio[uid], dtype="<i2").tobytes())
    return w.getvalue()


def _load_audio(data):
    r = Reader(data, "AUDIO section")
    rate = r.u32()
    table = [(r.string(), r.u32(), r.u32()) for _ in range(r.u32())]
    pcm = np.frombuffer(r.take(len(data) - r.pos), dtype="<i2")
    audio = {}
    for uid, offset, length in table:
        if offset + length > len(pcm):
            raise FormatError(f"AUDIO offset table points past the end for {uid!r}")
        audio[uid] = pcm[offset:offset + length].astype(np.int16)
    return rate, [t[0] for t in table], audio


def _write_tree(w, node):
    if isinstance(node, RegLeaf):
        w.u8(0)
        w.f64(node.value)
        w.u32(node.count)
    else:
        w.u8(1)
        w.string(node.feature)
        w.string(node.value)
        _write_tree(w, node.yes)
        _write_tree(w, node.no)


def _read_tree(r):
    tag = r.u8()
    if tag == 0:
        value = r.f64()
        return RegLeaf(value, r.u32())
    if tag != 1:
        raise FormatError(f"bad prosody tree node tag {tag}")
    feature, value = r.string(), r.string()
    yes = _read_tree(r)
    return RegSplit(feature, value, yes, _read_tree(r))


def package_voice(db, prosody, manifest, config=None, language=None):
    """Serialise a voice deterministically (no timestamps, fixed ordering)."""
    manifest = {k: str(v) for k, v in manifest.items()}
    manifest["sample_rate"] = str(db.sample_rate)
    manifest["schema_hash"] = schema_hash(tuple(db.feature_names))
    utt_order = list(dict.fromkeys(u.utterance_id for u in db.units))
    utt_order += sorted(k for k in db.audio if k not in utt_order)

    pw = Writer()
    pw.f64(prosody.default_f0)
    _write_tree(pw, prosody.duration_tree)
    _write_tree(pw, prosody.f0_tree)

    payloads = {
        "MANIFEST": _kv_lines(_manifest_pairs(manifest)),
        "UNITS": _dump_units(db, utt_order),
        "AUDIO": _dump_audio(db, utt_order),
        "PROSODY": pw.getvalue(),
        "CONFIG": _kv_lines(sorted((config or {}).items())),
        "LANGUAGE": dump_language(language) if language is not None else b"",
    }
    w = Writer()
    w.raw(MAGIC)
    w.u32(VERSION)
    for tag in SECTIONS:
        data = payloads[tag]
        w.string(tag)
        w.blob(data)
        w.u32(zlib.crc32(data))
    return w.getvalue()


def load_voice(data):
    r = Reader(data, "voice package")
    r.expect_magic(MAGIC)
    version = r.u32()
    if version != VERSION:
        raise FormatError(f"unsupported voice package version {version}")
    sections = {}
    for tag in SECTIONS:
        found = r.string()
        if found != tag:
            raise FormatError(f"expected section {tag}, found {found!r}")
        payload = r.blob()
        crc = r.u32()
        if zlib.crc32(payload) != crc:
            raise ChecksumError(f"checksum mismatch in {tag} section")
        sections[tag] = payload
    if not r.at_end():
        raise FormatError("trailing bytes after last section")

    manifest = _parse_kv(sections["MANIFEST"], "MANIFEST")
    rate, utt_order, audio = _load_audio(sections["AUDIO"])
    units, names = _load_units(sections["UNITS"], utt_order)
    if manifest.get("schema_hash") != schema_hash(names):
        raise SchemaMismatchError(
            f"feature schema hash {schema_hash(names)[:12]} does not match "
            f"manifest {manifest.get('schema_hash', '')[:12]}")
    pr = Reader(sections["PROSODY"], "PROSODY section")
    default_f0 = pr.f64()
    dur = _read_tree(pr)
    prosody = ProsodyModels(dur, _read_tree(pr), default_f0)
    config = _parse_kv(sections["CONFIG"], "CONFIG")
    language = load_language(sections["LANGUAGE"]) if sections["LANGUAGE"] else None
    db = UnitDatabase(units, audio, rate, names)
    return VoicePackage(manifest, db, prosody, config, language)

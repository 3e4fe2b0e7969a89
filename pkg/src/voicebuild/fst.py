"""Minimal deterministic acyclic transducer for pronunciation lookup.

The transducer reads the UTF-8 bytes of a lowercase word and emits a
sequence of ``(phone, stress)`` pairs.  It is built incrementally from
entries sorted by their byte strings: when a new word arrives, the part of
the previous word's path that can no longer change is frozen and merged
with an equivalent already-registered state, and outputs are pushed as
close to the root as the common prefixes allow.  The result is minimal
without a separate minimisation pass.

See ``FORMATS.md`` for the ``MFST`` binary layout.
"""

from bisect import bisect_left
from dataclasses import dataclass

from .binio import Reader, Writer
from .errors import FormatError, VoiceBuildError

MAGIC = b"MFST"
VERSION = 1


@dataclass(frozen=True)
class State:
    final: bool
    final_output: tuple
    labels: tuple  # input bytes, ascending
    outputs: tuple
    targets: tuple


@dataclass(frozen=True)
class PronunciationFst:
    states: tuple
    root: int
    entry_count: int

    @property
    def arc_count(self):
        return sum(len(s.labels) for s in self.states)

    def lookup(self, word):
        return fst_lookup(self, word)


class _Node:
    __slots__ = ("arcs", "final", "final_output")

    def __init__(self):
        self.arcs = []  # [label, output, target]; target is an int once frozen
        self.final = False
        self.final_output = ()


def _common_prefix(a, b):
    n = 0
    for x, y in zip(a, b):
        if x != y:
            break
        n += 1
    return n


def compile_fst(lexicon):
    """Compile a lexicon (or a ``{word: (phones, stress)}`` mapping)."""
    items = lexicon.as_dict() if hasattr(lexicon, "as_dict") else dict(lexicon)
    if not items:
        raise VoiceBuildError("cannot compile an empty lexicon")
    pairs = sorted(
        (w.lower().encode("utf-8"), tuple(zip(phones, stress)))
        for w, (phones, stress) in items.items())

    states = []
    register = {}

    def freeze(node):
        key = (node.final, node.final_output,
               tuple((lab, out, tgt) for lab, out, tgt in node.arcs))
        sid = register.get(key)
        if sid is None:
            sid = len(states)
            register[key] = sid
            states.append(State(node.final, node.final_output,
                                tuple(a[0] for a in node.arcs),
                                tuple(a[1] for a in node.arcs),
                                tuple(a[2] for a in node.arcs)))
        return sid

    path = [_Node()]
    prev = b""
    count = 0
    for word, output in pairs:
        if word == prev and count:
            continue  # duplicate key after case folding; first wins
        p = _common_prefix(prev, word)
        # freeze the tail of the previous word that diverges from this one
        for depth in range(len(prev), p, -1):
            sid = freeze(path[depth])
            path[depth - 1].arcs[-1][2] = sid
        del path[p + 1:]
        # push outputs along the shared prefix
        remaining = output
        for depth in range(p):
            arc = path[depth].arcs[-1]
            k = _common_prefix(arc[1], remaining)
            suffix = arc[1][k:]
            arc[1] = arc[1][:k]
            if suffix:
                child = path[depth + 1]
                for a in child.arcs:
                    a[1] = suffix + a[1]
                if child.final:
                    child.final_output = suffix + child.final_output
            remaining = remaining[k:]
        for depth in range(p, len(word)):
            node = _Node()
            path[depth].arcs.append([word[depth], remaining if depth == p else (), None])
            path.append(node)
        if len(word) == p:
            # only the empty word can end at the shared prefix
            path[p].final = True
            path[p].final_output = remaining
        else:
            path[len(word)].final = True
        prev = word
        count += 1

    for depth in range(len(prev), 0, -1):
        sid = freeze(path[depth])
        path[depth - 1].arcs[-1][2] = sid
    root = freeze(path[0])
    return PronunciationFst(tuple(states), root, count)


def fst_lookup(fst, word):
    """Return ``(phones, stress)`` for ``word`` or None if it is not an entry."""
    if not word:
        return None
    state = fst.states[fst.root]
    out = []
    for byte in word.lower().encode("utf-8"):
        i = bisect_left(state.labels, byte)
        if i == len(state.labels) or state.labels[i] != byte:
            return None
        out.extend(state.outputs[i])
        state = fst.states[state.targets[i]]
    if not state.final:
        return None
    out.extend(state.final_output)
    return tuple(p for p, _ in out), tuple(s for _, s in out)


def iter_entries(fst):
    """Yield every ``(word, phones, stress)`` accepted by the transducer."""
    stack = [(fst.root, b"", ())]
    while stack:
        sid, prefix, out = stack.pop()
        st = fst.states[sid]
        if st.final:
            full = out + st.final_output
            yield (prefix.decode("utf-8"), tuple(p for p, _ in full),
                   tuple(s for _, s in full))
        for lab, o, t in reversed(list(zip(st.labels, st.outputs, st.targets))):
            stack.append((t, prefix + bytes([lab]), out + o))


def dump_fst(fst):
    outputs = {(): 0}
    for st in fst.states:
        for o in (st.final_output,) + st.outputs:
            outputs.setdefault(o, len(outputs))
    w = Writer()
    w.raw(MAGIC)
    w.u32(VERSION)
    w.u32(fst.entry_count)
    w.u32(len(fst.states))
    w.u32(fst.arc_count)
    w.u32(fst.root)
    w.u32(len(outputs))
    for out in outputs:  # insertion order == index order
        w.u16(len(out))
        for phone, stress in out:
            w.u8(stress)
            w.string(phone)
    first = 0
    for st in fst.states:
        w.u8(1 if st.final else 0)
        w.u32(outputs[st.final_output])
        w.u32(first)
        w.u32(len(st.labels))
        first += len(st.labels)
    for st in fst.states:
        for lab, o, t in zip(st.labels, st.outputs, st.targets):
            w.u8(lab)
            w.u32(outputs[o])
            w.u32(t)
    return w.getvalue()


def load_fst(data):
    r = Reader(data, "MFST file")
    r.expect_magic(MAGIC)
    version = r.u32()
    if version != VERSION:
        raise FormatError(f"unsupported MFST version {version}")
    entry_count, n_states, n_arcs, root, n_outputs = (r.u32() for _ in range(5))
    outputs = []
    for _ in range(n_outputs):
        pairs = []
        for _ in range(r.u16()):
            stress = r.u8()
            pairs.append((r.string(), stress))
        outputs.append(tuple(pairs))
    headers = [(r.u8(), r.u32(), r.u32(), r.u32()) for _ in range(n_states)]
    arcs = [(r.u8(), r.u32(), r.u32()) for _ in range(n_arcs)]
    if not r.at_end():
        raise FormatError("trailing bytes after MFST arc table")
    states = []
    for flags, fo, first, n in headers:
        span = arcs[first:first + n]
        if len(span) != n or fo >= n_outputs:
            raise FormatError("MFST state table out of range")
        states.append(State(bool(flags & 1), outputs[fo],
                            tuple(a[0] for a in span),
                            tuple(outputs[a[1]] for a in span),
                            tuple(a[2] for a in span)))
    if root >= n_states or any(a[2] >= n_states for a in arcs):
        raise FormatError("MFST arc target out of range")
    return PronunciationFst(tuple(states), root, entry_count)

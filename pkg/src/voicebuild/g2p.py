"""Letter-to-sound rules for out-of-vocabulary words.

Training runs in two stages.  First every lexicon entry is aligned letter by
letter to chunks of zero, one or two phones; the chunk probabilities are
estimated with EM (forward-backward over the alignment lattice) starting
from a uniform table, and each word then gets its single best alignment.
Second, one classification tree per letter predicts the aligned chunk from
the surrounding letters, using questions of the form "the letter at offset
d is c".
"""

import math
from collections import Counter, defaultdict
from dataclasses import dataclass

from .binio import Reader, Writer
from .errors import FormatError, G2pError

MAGIC = b"MG2P"
VERSION = 1
PAD = "#"


@dataclass(frozen=True)
class G2pTrainConfig:
    em_iterations: int = 10
    max_depth: int = 12
    min_node_size: int = 2
    context: int = 3
    max_chunk: int = 2


@dataclass(frozen=True)
class Leaf:
    chunk: tuple


@dataclass(frozen=True)
class Split:
    offset: int
    char: str
    yes: object
    no: object


@dataclass
class G2pModel:
    trees: dict
    alignment_stats: dict
    vowels: frozenset
    context: int = 3

    def predict(self, word):
        """Return ``(phones, stress)``; stress marks the first vowel only."""
        word = word.lower()
        phones = []
        for i, letter in enumerate(word):
            tree = self.trees.get(letter)
            if tree is None:
                continue
            phones.extend(_descend(tree, _context(word, i, self.context)))
        stress = [0] * len(phones)
        for i, p in enumerate(phones):
            if p in self.vowels:
                stress[i] = 1
                break
        return tuple(phones), tuple(stress)

    def emissions(self, word):
        word = word.lower()
        return [_descend(self.trees[c], _context(word, i, self.context))
                if c in self.trees else () for i, c in enumerate(word)]

    def depth(self):
        def d(node):
            if isinstance(node, Leaf):
                return 0
            return 1 + max(d(node.yes), d(node.no))
        return max((d(t) for t in self.trees.values()), default=0)


def _context(word, i, width):
    padded = PAD * width + word + PAD * width
    j = i + width
    return padded[j - width:j + width + 1]


def _descend(node, ctx):
    width = len(ctx) // 2
    while isinstance(node, Split):
        node = node.yes if ctx[width + node.offset] == node.char else node.no
    return node.chunk


# -- stage 1: EM alignment ---------------------------------------------------

def _chunks(phones, j, max_chunk):
    """Chunks ending at phone position j: (k, chunk) for k in 0..max_chunk."""
    for k in range(max_chunk + 1):
        if j - k >= 0:
            yield k, tuple(phones[j - k:j])


def align_em(pairs, iterations=10, max_chunk=2):
    """Estimate P(chunk | letter) by EM over ``(letters, phones)`` pairs."""
    prob = None  # None == uniform
    for _ in range(iterations):
        counts = defaultdict(Counter)
        for letters, phones in pairs:
            n, m = len(letters), len(phones)

            def p(letter, chunk):
                return 1.0 if prob is None else prob[letter].get(chunk, 0.0)

            alpha = [[0.0] * (m + 1) for _ in range(n + 1)]
            alpha[0][0] = 1.0
            for i in range(1, n + 1):
                for j in range(m + 1):
                    alpha[i][j] = sum(alpha[i - 1][j - k] * p(letters[i - 1], c)
                                      for k, c in _chunks(phones, j, max_chunk))
            beta = [[0.0] * (m + 1) for _ in range(n + 1)]
            beta[n][m] = 1.0
            for i in range(n - 1, -1, -1):
                for j in range(m + 1):
                    beta[i][j] = sum(
                        p(letters[i], tuple(phones[j:j + k])) * beta[i + 1][j + k]
                        for k in range(max_chunk + 1) if j + k <= m)
            total = alpha[n][m]
            if total <= 0.0:
                continue
            for i in range(1, n + 1):
                for j in range(m + 1):
                    for k, c in _chunks(phones, j, max_chunk):
                        w = alpha[i - 1][j - k] * p(letters[i - 1], c) * beta[i][j]
                        if w > 0.0:
                            counts[letters[i - 1]][c] += w / total
        prob = {}
        for letter, cnt in counts.items():
            z = sum(cnt.values())
            prob[letter] = {c: v / z for c, v in sorted(cnt.items())}
    return prob or {}


# chunk lengths tried in this order; on equal scores the earlier one is kept
_PREFERENCE = (1, 2, 0)


def viterbi_align(letters, phones, prob, max_chunk=2):
    """Most probable letter->chunk alignment, or None if none exists."""
    n, m = len(letters), len(phones)
    neg = -math.inf
    score = [[neg] * (m + 1) for _ in range(n + 1)]
    back = [[0] * (m + 1) for _ in range(n + 1)]
    score[0][0] = 0.0
    for i in range(1, n + 1):
        table = prob.get(letters[i - 1], {})
        for j in range(m + 1):
            best, arg = neg, None
            for k in _PREFERENCE:
                if k > max_chunk or j - k < 0 or score[i - 1][j - k] == neg:
                    continue
                pr = table.get(tuple(phones[j - k:j]), 0.0)
                if pr <= 0.0:
                    continue
                s = score[i - 1][j - k] + math.log(pr)
                if s > best:
                    best, arg = s, k
            if arg is not None:
                score[i][j], back[i][j] = best, arg
    if score[n][m] == neg:
        return None
    chunks = []
    j = m
    for i in range(n, 0, -1):
        k = back[i][j]
        chunks.append(tuple(phones[j - k:j]))
        j -= k
    return chunks[::-1]


# -- stage 2: per-letter classification trees --------------------------------

def _entropy(labels):
    n = len(labels)
    return -sum((c / n) * math.log2(c / n) for c in Counter(labels).values())


def _majority(labels):
    counts = Counter(labels)
    top = max(counts.values())
    return min(lab for lab, c in counts.items() if c == top)


def grow_tree(samples, config, depth=0):
    """``samples`` is a list of ``(context_string, chunk)`` pairs."""
    labels = [lab for _, lab in samples]
    if (len(set(labels)) == 1 or depth >= config.max_depth
            or len(samples) < config.min_node_size):
        return Leaf(_majority(labels))
    width = config.context
    parent = _entropy(labels)
    best = None
    offsets = [d for d in range(-width, width + 1) if d != 0]
    for d in offsets:
        for ch in sorted({ctx[width + d] for ctx, _ in samples}):
            yes = [lab for ctx, lab in samples if ctx[width + d] == ch]
            if len(yes) == len(samples):
                continue
            no = [lab for ctx, lab in samples if ctx[width + d] != ch]
            gain = parent - (len(yes) * _entropy(yes) + len(no) * _entropy(no)) / len(samples)
            if gain > 1e-12 and (best is None or gain > best[0] + 1e-12):
                best = (gain, d, ch)
    if best is None:
        return Leaf(_majority(labels))
    _, d, ch = best
    yes = [s for s in samples if s[0][width + d] == ch]
    no = [s for s in samples if s[0][width + d] != ch]
    return Split(d, ch, grow_tree(yes, config, depth + 1), grow_tree(no, config, depth + 1))


def train_g2p(lexicon, config=None):
    config = config or G2pTrainConfig()
    entries = list(lexicon)
    if len(entries) < 2:
        raise G2pError("G2P training needs at least 2 lexicon entries")
    pairs = []
    for e in entries:
        if len(e.phones) > config.max_chunk * len(e.grapheme):
            raise G2pError(
                f"cannot align {e.grapheme!r}: {len(e.phones)} phones for "
                f"{len(e.grapheme)} letters")
        pairs.append((e.grapheme, e.phones))
    prob = align_em(pairs, config.em_iterations, config.max_chunk)
    samples = defaultdict(list)
    for letters, phones in pairs:
        chunks = viterbi_align(letters, phones, prob, config.max_chunk)
        if chunks is None:
            raise G2pError(f"no alignment found for {letters!r}")
        for i, chunk in enumerate(chunks):
            samples[letters[i]].append((_context(letters, i, config.context), chunk))
    trees = {letter: grow_tree(s, config) for letter, s in sorted(samples.items())}
    vowels = frozenset(lexicon.phoneme_set.vowels())
    return G2pModel(trees, prob, vowels, config.context)


# -- MG2P serialisation -------------------------------------------------------

def _write_node(w, node):
    if isinstance(node, Leaf):
        w.u8(0)
        w.u8(len(node.chunk))
        for p in node.chunk:
            w.string(p)
    else:
        w.u8(1)
        w.i8(node.offset)
        w.string(node.char)
        _write_node(w, node.yes)
        _write_node(w, node.no)


def _read_node(r):
    tag = r.u8()
    if tag == 0:
        return Leaf(tuple(r.string() for _ in range(r.u8())))
    if tag == 1:
        offset = r.i8()
        char = r.string()
        yes = _read_node(r)
        return Split(offset, char, yes, _read_node(r))
    raise FormatError(f"bad MG2P node tag {tag}")


def dump_g2p(model):
    w = Writer()
    w.raw(MAGIC)
    w.u32(VERSION)
    w.u8(model.context)
    vowels = sorted(model.vowels)
    w.u32(len(vowels))
    for v in vowels:
        w.string(v)
    w.u32(len(model.trees))
    for letter in sorted(model.trees):
        w.string(letter)
        _write_node(w, model.trees[letter])
    w.u32(len(model.alignment_stats))
    for letter in sorted(model.alignment_stats):
        table = model.alignment_stats[letter]
        w.string(letter)
        w.u32(len(table))
        for chunk in sorted(table):
            w.u8(len(chunk))
            for p in chunk:
                w.string(p)
            w.f64(table[chunk])
    return w.getvalue()


def load_g2p(data):
    r = Reader(data, "MG2P file")
    r.expect_magic(MAGIC)
    version = r.u32()
    if version != VERSION:
        raise FormatError(f"unsupported MG2P version {version}")
    context = r.u8()
    vowels = frozenset(r.string() for _ in range(r.u32()))
    trees = {}
    for _ in range(r.u32()):
        letter = r.string()
        trees[letter] = _read_node(r)
    stats = {}
    for _ in range(r.u32()):
        letter = r.string()
        table = {}
        for _ in range(r.u32()):
            chunk = tuple(r.string() for _ in range(r.u8()))
            table[chunk] = r.f64()
        stats[letter] = table
    if not r.at_end():
        raise FormatError("trailing bytes in MG2P file")
    return G2pModel(trees, stats, vowels, context)

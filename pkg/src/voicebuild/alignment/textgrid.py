"""Praat TextGrid (long text format, interval tiers only)."""

from dataclasses import dataclass, field

from ..errors import ParseError

TOLERANCE = 1e-9


@dataclass(frozen=True)
class Interval:
    xmin: float
    xmax: float
    text: str


@dataclass
class IntervalTier:
    name: str
    xmin: float
    xmax: float
    intervals: list = field(default_factory=list)

    def labels(self):
        return [iv.text for iv in self.intervals]


@dataclass
class TextGrid:
    xmin: float
    xmax: float
    tiers: list = field(default_factory=list)

    def tier(self, name):
        for t in self.tiers:
            if t.name == name:
                return t
        raise KeyError(name)


def check_tier(tier):
    prev = tier.xmin
    for i, iv in enumerate(tier.intervals, start=1):
        if iv.xmax < iv.xmin:
            raise ParseError(f"tier {tier.name!r} interval {i}: xmax < xmin")
        if abs(iv.xmin - prev) > TOLERANCE:
            kind = "overlapping" if iv.xmin < prev else "non-contiguous"
            raise ParseError(
                f"tier {tier.name!r} interval {i}: {kind} intervals "
                f"(starts at {iv.xmin}, previous ends at {prev})")
        prev = iv.xmax
    if tier.intervals and abs(prev - tier.xmax) > TOLERANCE:
        raise ParseError(f"tier {tier.name!r}: last interval ends at {prev}, tier at {tier.xmax}")


def _unquote(value):
    if len(value) < 2 or value[0] != '"' or value[-1] != '"':
        raise ParseError(f"expected a quoted string, got {value!r}")
    return value[1:-1].replace('""', '"')


def parse_textgrid(text):
    pairs = []
    # only \n ends a line; splitlines() would also break on separators inside labels
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip(" \t\r")
        if not line:
            continue
        if "=" in line:
            key, _, value = line.partition("=")
            pairs.append((key.strip(), value.strip(), lineno))
        else:
            pairs.append((line.rstrip(":").strip(), None, lineno))

    it = iter(pairs)

    def expect(key):
        # section headers such as 'item [1]:' carry no value and are skipped
        for k, v, lineno in it:
            if k == key:
                return v, lineno
        raise ParseError(f"missing {key!r}")

    def number(key):
        v, lineno = expect(key)
        try:
            return float(v)
        except (TypeError, ValueError):
            raise ParseError(f"bad number for {key}: {v!r}", lineno) from None

    v, lineno = expect("File type")
    if _unquote(v) != "ooTextFile":
        raise ParseError("not an ooTextFile", lineno)
    v, lineno = expect("Object class")
    if _unquote(v) != "TextGrid":
        raise ParseError("not a TextGrid", lineno)
    tg = TextGrid(number("xmin"), number("xmax"))
    size = int(number("size"))
    for t in range(size):
        v, lineno = expect("class")
        cls = _unquote(v)
        if cls != "IntervalTier":
            raise ParseError(f"unsupported tier type {cls!r}", lineno)
        name = _unquote(expect("name")[0])
        tier = IntervalTier(name, number("xmin"), number("xmax"))
        v, lineno = expect("intervals: size")
        for _ in range(int(v)):
            xmin, xmax = number("xmin"), number("xmax")
            tier.intervals.append(Interval(xmin, xmax, _unquote(expect("text")[0])))
        check_tier(tier)
        tg.tiers.append(tier)
    return tg


def _num(x):
    return repr(float(x))


def _quote(s):
    return '"' + s.replace('"', '""') + '"'


def write_textgrid(tg):
    out = ['File type = "ooTextFile"', 'Object class = "TextGrid"', "",
           f"xmin = {_num(tg.xmin)} ", f"xmax = {_num(tg.xmax)} ", "tiers? <exists> ",
           f"size = {len(tg.tiers)} ", "item []: "]
    for i, tier in enumerate(tg.tiers, start=1):
        check_tier(tier)
        out += [f"    item [{i}]:", '        class = "IntervalTier" ',
                f"        name = {_quote(tier.name)} ",
                f"        xmin = {_num(tier.xmin)} ", f"        xmax = {_num(tier.xmax)} ",
                f"        intervals: size = {len(tier.intervals)} "]
        for j, iv in enumerate(tier.intervals, start=1):
            out += [f"        intervals [{j}]:",
                    f"            xmin = {_num(iv.xmin)} ",
                    f"            xmax = {_num(iv.xmax)} ",
                    f"            text = {_quote(iv.text)} "]
    return "\n".join(out) + "\n"


def tier_from_segments(name, segments, xmin, xmax):
    """Build a tier from ``(label, start, end)`` triples."""
    tier = IntervalTier(name, xmin, xmax, [Interval(s, e, lab) for lab, s, e in segments])
    check_tier(tier)
    return tier

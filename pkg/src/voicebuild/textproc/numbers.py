"""Number expansion rule tables, one per language."""

from ..errors import TextError

_EN_ONES = ("zero one two three four five six seven eight nine ten eleven twelve "
            "thirteen fourteen fifteen sixteen seventeen eighteen nineteen").split()
_EN_TENS = "_ _ twenty thirty forty fifty sixty seventy eighty ninety".split()


def _en_below_thousand(n):
    words = []
    if n >= 100:
        words += [_EN_ONES[n // 100], "hundred"]
        n %= 100
        if n == 0:
            return words
    if n < 20:
        words.append(_EN_ONES[n])
    else:
        words.append(_EN_TENS[n // 10])
        if n % 10:
            words.append(_EN_ONES[n % 10])
    return words


def english_number(n):
    if not 0 <= n <= 999_999:
        raise TextError(f"number {n} outside supported range 0-999999")
    if n < 1000:
        return _en_below_thousand(n)
    words = _en_below_thousand(n // 1000) + ["thousand"]
    if n % 1000:
        words += _en_below_thousand(n % 1000)
    return words


NUMBER_RULES = {"en": english_number}


def expand_number(surface, lang="en"):
    """Expand a number token; ``,`` groups thousands and ``.`` is a decimal point."""
    rule = NUMBER_RULES.get(lang.split("-")[0])
    if rule is None:
        raise TextError(f"no number rules for language {lang!r}")
    integer, _, fraction = surface.partition(".")
    if "." in fraction:
        raise TextError(f"malformed number {surface!r}")
    words = rule(int(integer.replace(",", "")))
    if fraction:
        words.append("point")
        for digit in fraction.replace(",", ""):
            words += rule(int(digit))
    return words

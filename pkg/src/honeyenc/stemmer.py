"""Rule-table suffix stripper.

Rules are loaded from ``data/suffix_rules.tsv`` and applied until the word
stops changing, so ``stem(stem(w)) == stem(w)`` holds by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from honeyenc.errors import ParseError

VOWELS = frozenset("aeiouy")
_NO_UNDOUBLE = frozenset("lsz")


@dataclass(frozen=True)
class SuffixRule:
    suffix: str
    replacement: str
    min_stem: int
    undouble: bool = False


def parse_rules(text: str) -> list[SuffixRule]:
    """Parse ``suffix <TAB> replacement <TAB> min_stem [<TAB> flags]`` lines."""
    rules = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        fields = raw.split("\t")
        fields += [""] * (4 - len(fields))
        suffix, replacement, min_stem, flags = fields[:4]
        if not suffix or (len(replacement) >= len(suffix) and replacement != suffix):
            # rules must shorten the word (or guard it unchanged) so stemming settles
            raise ParseError(f"bad suffix rule {raw!r}", lineno)
        try:
            n = int(min_stem)
        except ValueError:
            raise ParseError(f"minimum stem length must be an integer, got {min_stem!r}", lineno) from None
        rules.append(SuffixRule(suffix, replacement, n, "undouble" in flags.split(",")))
    return rules


@lru_cache(maxsize=1)
def default_rules() -> tuple[SuffixRule, ...]:
    text = resources.files("honeyenc").joinpath("data/suffix_rules.tsv").read_text("utf-8")
    return tuple(parse_rules(text))


def _apply_once(word: str, rules) -> str:
    for rule in rules:
        if not word.endswith(rule.suffix):
            continue
        stem = word[: len(word) - len(rule.suffix)]
        if len(stem) < rule.min_stem or not VOWELS.intersection(stem):
            continue
        if (
            rule.undouble
            and len(stem) >= 2
            and stem[-1] == stem[-2]
            and stem[-1] not in VOWELS
            and stem[-1] not in _NO_UNDOUBLE
        ):
            stem = stem[:-1]
        return stem + rule.replacement
    return word


def stem(word: str, rules=None) -> str:
    if rules is None:
        rules = default_rules()
    # each productive step shortens or rewrites a suffix; the bound only guards
    # against a pathological user-supplied table that oscillates
    for _ in range(len(word) + 1):
        nxt = _apply_once(word, rules)
        if nxt == word:
            return word
        word = nxt
    return word

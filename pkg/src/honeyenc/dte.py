"""Decoy-table distribution-transforming encoder.

The encoder builds an associative array of T messages indexed by seed: the
plaintext sits at a uniformly drawn seed and every other slot holds a
freshly generated decoy. Decoding is a table lookup, total on [0, T).

Note that the table travels with the ciphertext in the clear. Security
rests on the plaintext being indistinguishable from its decoys, not on
hiding the candidate set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Protocol, Sequence

import numpy as np

from honeyenc.errors import EncodeError, HoneyError, InputError, SeedRangeError

DEFAULT_TABLE_SIZE = 256


class DecoySource(Protocol):
    def prepare(self, message: str, rng: np.random.Generator): ...

    def decoy(self, ctx, rng: np.random.Generator) -> str: ...

    def filler_word(self, ctx, rng: np.random.Generator) -> str: ...


@dataclass(frozen=True)
class Seed:
    value: int
    bit_width: int

    def __post_init__(self):
        if not 0 <= self.value < (1 << self.bit_width):
            raise SeedRangeError(f"seed {self.value} outside [0, 2^{self.bit_width})")

    def __int__(self):
        return self.value


@dataclass(frozen=True)
class DecoyTable:
    entries: tuple[str, ...]
    true_seed: int | None = None

    def __post_init__(self):
        t = len(self.entries)
        if t < 2 or t & (t - 1):
            raise InputError(f"table size must be a power of two >= 2, got {t}")
        if any(not e for e in self.entries):
            raise InputError("table entries must be non-empty")
        if self.true_seed is not None and not 0 <= self.true_seed < t:
            raise SeedRangeError("true seed outside the table")

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def bit_width(self) -> int:
        return self.size.bit_length() - 1

    def public(self) -> "DecoyTable":
        """The same table without the build-time record of the true seed."""
        return DecoyTable(self.entries)


def check_table_size(t: int) -> int:
    if not isinstance(t, (int, np.integer)) or t < 2 or t & (t - 1):
        raise InputError(f"table size must be a power of two >= 2, got {t!r}")
    return int(t)


def decoy_rng(entropy: int, index: int, attempt: int = 0) -> np.random.Generator:
    """Independent generator for one table slot, reproducible from the master entropy."""
    return np.random.default_rng(np.random.SeedSequence(entropy, spawn_key=(index, attempt)))


def encode(message: str, pipeline: DecoySource, t: int = DEFAULT_TABLE_SIZE,
           rng: np.random.Generator | None = None) -> tuple[DecoyTable, Seed]:
    t = check_table_size(t)
    if not message:
        raise InputError("message must be non-empty")
    rng = rng if rng is not None else np.random.default_rng()
    true_seed = int(rng.integers(t))
    entropy = int(rng.integers(2**63))
    try:
        ctx = pipeline.prepare(message, rng)
        entries = []
        for i in range(t):
            if i == true_seed:
                entries.append(message)
                continue
            decoy = pipeline.decoy(ctx, decoy_rng(entropy, i))
            if decoy == message or not decoy:
                decoy = pipeline.decoy(ctx, decoy_rng(entropy, i, 1))
            if decoy == message or not decoy:
                filler = pipeline.filler_word(ctx, decoy_rng(entropy, i, 2))
                decoy = f"{decoy} {filler}".strip() if decoy else filler
                if decoy == message:
                    decoy = f"{decoy} {filler}"
            entries.append(decoy)
    except HoneyError as exc:
        raise EncodeError(f"decoy generation failed: {exc}") from exc
    bits = t.bit_length() - 1
    return DecoyTable(tuple(entries), true_seed), Seed(true_seed, bits)


def decode(table: DecoyTable, seed: Seed | int) -> str:
    value = int(seed)
    if not 0 <= value < table.size:
        raise SeedRangeError(f"seed {value} outside [0, {table.size})")
    return table.entries[value]


TableBuilder = Callable[[np.random.Generator], tuple[DecoyTable, Seed]]
Distinguisher = Callable[[str, int], int]


def message_builder(messages: Sequence[str], pipeline: DecoySource,
                    t: int = DEFAULT_TABLE_SIZE) -> TableBuilder:
    """Builder that samples a plaintext uniformly from ``messages`` and encodes it."""
    messages = list(messages)
    if not messages:
        raise InputError("need at least one message")

    def build(rng):
        m = messages[int(rng.integers(len(messages)))]
        return encode(m, pipeline, t, rng)

    return build


def estimate_dte_advantage(builder: TableBuilder, distinguisher: Distinguisher, trials: int,
                           rng: np.random.Generator | None = None) -> float:
    """|Pr[G1 -> 1] - Pr[G0 -> 1]| estimated from ``trials`` runs of each game.

    G1 hands the distinguisher the plaintext and the seed it was encoded to.
    G0 draws a uniform seed and hands over whatever that seed decodes to.
    """
    if trials < 1:
        raise InputError("trials must be at least 1")
    rng = rng if rng is not None else np.random.default_rng()
    hits_real = 0
    hits_random = 0
    for _ in range(trials):
        table, seed = builder(rng)
        hits_real += int(bool(distinguisher(decode(table, seed), seed.value)))
        table, _ = builder(rng)
        s = int(rng.integers(table.size))
        hits_random += int(bool(distinguisher(decode(table, s), s)))
    return abs(hits_real - hits_random) / trials

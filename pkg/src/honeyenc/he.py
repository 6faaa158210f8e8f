"""Password-based honey encryption over the decoy-table DTE.

Encryption masks the table seed with a keyed hash of a random nonce;
decryption unmasks and looks the seed up. There is no authentication on
purpose: a wrong password lands on another table entry and yields a decoy.

Package layout (all integers big-endian)::

    b"HNYC" | version:1 | log2(T):1 | iterations:4 | r:16 | c:8 | T x (len:4 | utf-8 bytes)
"""

from __future__ import annotations

import hashlib
import hmac
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from honeyenc.dte import DecoySource, DecoyTable, Seed, check_table_size, decode, encode
from honeyenc.errors import InputError, ParseError

MAGIC = b"HNYC"
VERSION = 1
NONCE_BYTES = 16
KDF_ALGORITHM = "pbkdf2-hmac-sha256"
DEFAULT_ITERATIONS = 10_000
_HEADER = struct.Struct(">4sBBI16sQ")


def hmac_sha256(key: bytes, message: bytes) -> bytes:
    return hmac.new(key, message, hashlib.sha256).digest()


def strengthen(password: bytes, r: bytes, iterations: int) -> bytes:
    """Iterated-HMAC key stretching; zero iterations uses the password as-is."""
    if iterations == 0:
        return password
    return hashlib.pbkdf2_hmac("sha256", password, r, iterations)


def keyed_expand(password: bytes, r: bytes, bits: int, iterations: int = DEFAULT_ITERATIONS) -> int:
    """Keyed hash of ``r`` under ``password``, reduced to its ``bits`` low-order bits."""
    if not 1 <= bits <= 64:
        raise InputError(f"bits must be in [1, 64], got {bits}")
    if iterations < 0:
        raise InputError("iterations must be non-negative")
    key = strengthen(bytes(password), bytes(r), iterations)
    digest = hmac_sha256(key, bytes(r) + (0).to_bytes(4, "big"))
    return int.from_bytes(digest, "big") & ((1 << bits) - 1)


@dataclass(frozen=True)
class CiphertextPackage:
    r: bytes
    c: int
    table: tuple[str, ...]
    iterations: int = DEFAULT_ITERATIONS
    version: int = VERSION

    def __post_init__(self):
        t = check_table_size(len(self.table))
        if len(self.r) != NONCE_BYTES:
            raise InputError(f"nonce must be {NONCE_BYTES} bytes")
        if not 0 <= self.c < t:
            raise InputError("masked seed outside the table")
        if self.version != VERSION:
            raise InputError(f"unsupported package version {self.version}")
        if not 0 <= self.iterations < 2**32:
            raise InputError("iteration count must fit in 32 bits")

    @property
    def size(self) -> int:
        return len(self.table)

    @property
    def bit_width(self) -> int:
        return self.size.bit_length() - 1

    @property
    def kdf_params(self) -> dict:
        return {"algorithm": KDF_ALGORITHM, "iterations": self.iterations}

    def to_bytes(self) -> bytes:
        parts = [_HEADER.pack(MAGIC, self.version, self.bit_width, self.iterations, self.r, self.c)]
        for entry in self.table:
            data = entry.encode("utf-8")
            parts.append(struct.pack(">I", len(data)))
            parts.append(data)
        return b"".join(parts)

    @classmethod
    def from_bytes(cls, blob: bytes) -> "CiphertextPackage":
        if len(blob) < _HEADER.size:
            raise ParseError("package truncated in header")
        magic, version, log_t, iterations, r, c = _HEADER.unpack_from(blob)
        if magic != MAGIC:
            raise ParseError("not a honey-encryption package (bad magic)")
        if version != VERSION:
            raise ParseError(f"unsupported package version {version}")
        if not 1 <= log_t <= 63:
            raise ParseError(f"bad table size exponent {log_t}")
        t = 1 << log_t
        if c >= t:
            raise ParseError("masked seed outside the table")
        pos = _HEADER.size
        entries = []
        for i in range(t):
            if pos + 4 > len(blob):
                raise ParseError(f"package truncated at entry {i}")
            (n,) = struct.unpack_from(">I", blob, pos)
            pos += 4
            if pos + n > len(blob):
                raise ParseError(f"package truncated inside entry {i}")
            try:
                entries.append(blob[pos:pos + n].decode("utf-8"))
            except UnicodeDecodeError:
                raise ParseError(f"entry {i} is not valid UTF-8") from None
            pos += n
        if pos != len(blob):
            raise ParseError(f"{len(blob) - pos} trailing byte(s) after the table")
        try:
            return cls(r, c, tuple(entries), iterations, version)
        except InputError as exc:
            raise ParseError(str(exc)) from None

    def write(self, path: str | Path) -> None:
        Path(path).write_bytes(self.to_bytes())

    @classmethod
    def read(cls, path: str | Path) -> "CiphertextPackage":
        try:
            blob = Path(path).read_bytes()
        except OSError as exc:
            raise InputError(f"cannot read package {path}: {exc}") from exc
        return cls.from_bytes(blob)


def _password_bytes(password) -> bytes:
    if isinstance(password, str):
        password = password.encode("utf-8")
    if not password:
        raise InputError("password must be non-empty")
    return bytes(password)


def seal(password, table: DecoyTable, seed: Seed | int, rng: np.random.Generator,
         iterations: int = DEFAULT_ITERATIONS) -> CiphertextPackage:
    """Mask an already-built table's seed under ``password``."""
    password = _password_bytes(password)
    r = rng.bytes(NONCE_BYTES)
    mask = keyed_expand(password, r, table.bit_width, iterations)
    return CiphertextPackage(r, int(seed) ^ mask, table.entries, iterations)


def he_encrypt(password, message: str, pipeline: DecoySource, t: int = 256,
               rng: np.random.Generator | None = None,
               iterations: int = DEFAULT_ITERATIONS) -> CiphertextPackage:
    password = _password_bytes(password)
    if not message:
        raise InputError("message must be non-empty")
    rng = rng if rng is not None else np.random.default_rng()
    table, seed = encode(message, pipeline, t, rng)
    return seal(password, table, seed, rng, iterations)


def he_decrypt(password, package: CiphertextPackage) -> str:
    """Unmask and decode. Never signals a wrong password."""
    password = _password_bytes(password)
    mask = keyed_expand(password, package.r, package.bit_width, package.iterations)
    return decode(DecoyTable(package.table), package.c ^ mask)

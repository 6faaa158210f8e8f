"""Honey encryption with context-preserving decoy messages."""

from honeyenc.dte import DecoyTable, Seed, decode, encode
from honeyenc.he import CiphertextPackage, he_decrypt, he_encrypt
from honeyenc.kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CiphertextPackage",
    "DecoyTable",
    "Seed",
    "decode",
    "encode",
    "he_decrypt",
    "he_encrypt",
]

"""Regenerate the golden package used by the file-format stability test.

Only rerun this when the package format or the decoy pipeline changes on
purpose; the test exists to catch accidental drift.
"""

import json
from pathlib import Path

import numpy as np

from honeyenc.config import PipelineConfig
from honeyenc.he import he_encrypt
from honeyenc.pipeline import DecoyPipeline

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"


def main():
    params = json.loads((DATA / "golden_params.json").read_text())
    message = (DATA / "golden_plaintext.txt").read_text(encoding="utf-8").rstrip("\n")
    pipeline = DecoyPipeline.from_config(PipelineConfig())
    pkg = he_encrypt(params["password"], message, pipeline, params["table_size"],
                     np.random.default_rng(params["seed"]), params["iterations"])
    pkg.write(DATA / "golden.hny")
    print(f"wrote {DATA / 'golden.hny'} ({len(pkg.to_bytes())} bytes)")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Regenerate the committed non-realizability certificates.

For every named non-realizable class representative, search for the
minimal proof tree, validate it with the independent checker, and write
the byte-stable serialization to src/monopath/data/proofs/<name>.proof
(and a copy under fixtures/).  Run from the repository root:

    python3 scripts/generate_certificates.py
"""

import json
import pathlib
import sys
import time

from monopath.certify import prove_nonrealizable, proof_to_json
from monopath.checkcert import check_proof
from monopath.data import class_representatives, representative_order

ROOT = pathlib.Path(__file__).resolve().parent.parent
PROOF_DIR = ROOT / "src" / "monopath" / "data" / "proofs"
FIXTURE_DIR = ROOT / "fixtures"


def main() -> int:
    PROOF_DIR.mkdir(parents=True, exist_ok=True)
    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)
    names = sorted(
        name for name in class_representatives() if name.startswith("nr")
    )
    total = 0.0
    for name in names:
        order = representative_order(name)
        t0 = time.perf_counter()
        tree = prove_nonrealizable(order)
        dt = time.perf_counter() - t0
        total += dt
        if tree is None:
            print(f"{name}: NO PROOF FOUND ({dt:.1f}s)")
            return 1
        text = proof_to_json(tree)
        if not check_proof(order, json.loads(text)):
            print(f"{name}: generated proof failed the independent checker")
            return 1
        for target in (PROOF_DIR / f"{name}.proof", FIXTURE_DIR / f"{name}.proof"):
            target.write_text(text)
        print(
            f"{name}: {dt:.1f}s branches={tree.branch_count()} "
            f"leaf_rows={tree.leaf_row_count()} -> {PROOF_DIR / (name + '.proof')}"
        )
    print(f"total search time: {total:.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Committed fixtures: class lists, certificates, realizations, witnesses.

Every file in this package is either regenerable by a script under
``scripts/`` (regeneration commands are listed in the README) or is a
reference table whose derivation is documented outside the package.  No
consumer trusts a fixture: tests and the command-line ``verify`` /
``check-cert`` paths re-derive every claimed property from scratch.
"""

from __future__ import annotations

import json
from importlib import resources
from typing import Optional

from ..orientation import HamiltonOrder, parse_order
from ..polytope import Parameters


def _root():
    return resources.files(__name__)


def read_text(*parts: str) -> str:
    """Raw text of a fixture file, e.g. read_text("proofs", "nr1_4.proof")."""
    node = _root()
    for part in parts:
        node = node.joinpath(part)
    return node.read_text()


def fixture_names(subdir: str, suffix: str) -> list[str]:
    """Sorted fixture stems under a subdirectory, e.g. proof names."""
    node = _root().joinpath(subdir)
    if not node.is_dir():
        return []
    return sorted(
        entry.name[: -len(suffix)]
        for entry in node.iterdir()
        if entry.name.endswith(suffix)
    )


def proof_text(name: str) -> str:
    """Serialized certificate for a named non-realizable class."""
    return read_text("proofs", f"{name}.proof")


def proof_names() -> list[str]:
    return fixture_names("proofs", ".proof")


def realization_text(name: str) -> str:
    """Serialized realization fixture for a named class or witness."""
    return read_text("realizations", f"{name}.json")


def realization_names() -> list[str]:
    return fixture_names("realizations", ".json")


def class_representatives() -> dict[str, dict]:
    """Named reference representatives of the orientation classes.

    Keys are class names (nr1_4, r1_4, nr1_6, ...); values carry the
    dimension and the representative Hamilton sequence (1-based labels).
    """
    return json.loads(read_text("class_representatives.json"))


def representative_order(name: str) -> HamiltonOrder:
    entry = class_representatives()[name]
    return HamiltonOrder(tuple(tuple(lab) for lab in entry["sequence"]))


def class_list(d: int) -> tuple[Parameters, list[HamiltonOrder]]:
    """The committed canonical class list for a dimension, parsed.

    The file format is the one produced by
    ``enumeration.format_class_list``: a count line followed by one
    ``a < b < ...``-style line per class, labels as digit runs.
    """
    text = read_text(f"classes_d{d}.txt")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    count = int(lines[0])
    orders = [parse_order(line) for line in lines[1 : count + 1]]
    if len(orders) != count:
        raise ValueError(
            f"class list for d={d} announces {count} classes, "
            f"contains {len(orders)}"
        )
    return Parameters(d, d + 3), orders


def class_count(d: int) -> Optional[dict]:
    """Committed class-count record for dimensions whose full list is not
    checked in (only the count and spot checks)."""
    try:
        return json.loads(read_text(f"class_count_d{d}.json"))
    except FileNotFoundError:
        return None

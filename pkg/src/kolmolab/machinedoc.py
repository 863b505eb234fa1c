"""Loading and verification of the frozen machine documentation file.

The packaged machine_doc.json pins the constants of the enumeration (builtin
indices, table-zone layout, golden table indices).  The CLI echoes which doc
a run used; the env var KOLMOLAB_MACHINE_DOC (or --machine-doc) may point to
an alternative copy, which is verified against the compiled-in constants and
refused on mismatch, so outputs are never silently produced under a
mismatched description.
"""

import json
import os
from importlib import resources

from . import machines

ENV_VAR = "KOLMOLAB_MACHINE_DOC"

__all__ = ["ENV_VAR", "load_machine_doc", "verify_machine_doc", "resolve_machine_doc"]


def load_machine_doc(path: str | None = None) -> dict:
    if path is None:
        with resources.files("kolmolab").joinpath("machine_doc.json").open() as f:
            return json.load(f)
    with open(path) as f:
        return json.load(f)


def verify_machine_doc(doc: dict) -> None:
    """Raise ResourceRefusal when ``doc`` disagrees with the running code."""
    problems = []
    if doc.get("table_zone_start") != machines.TABLE_ZONE_START:
        problems.append("table_zone_start")
    builtins = {str(e): name for e, name in machines.BUILTIN_NAMES.items()}
    if doc.get("builtins") != builtins:
        problems.append("builtins")
    if doc.get("nesting_cap") != machines.NESTING_CAP:
        problems.append("nesting_cap")
    if doc.get("max_states") != machines.MAX_STATES:
        problems.append("max_states")
    if problems:
        raise machines.ResourceRefusal(
            f"machine doc disagrees with this build on: {', '.join(problems)}"
        )


def resolve_machine_doc(cli_path: str | None = None) -> tuple[str, dict]:
    """Pick the machine doc (flag > env var > packaged), verify, return (label, doc)."""
    path = cli_path or os.environ.get(ENV_VAR)
    doc = load_machine_doc(path)
    verify_machine_doc(doc)
    return path or "packaged", doc

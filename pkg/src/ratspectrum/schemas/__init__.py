"""JSON schemas for the command-line reports."""

import json
from importlib import resources

NAMES = ("spectrum", "member", "composite", "bounds", "transfer", "indecomp", "bertini",
         "certificate", "prob")


def load_schema(name: str) -> dict:
    if name not in NAMES:
        raise KeyError(f"no schema named {name!r}")
    text = resources.files(__name__).joinpath(f"{name}.schema.json").read_text()
    return json.loads(text)

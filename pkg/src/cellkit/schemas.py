"""JSON schemas for the CLI's ``--json`` outputs."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

# command name -> schema file stem
COMMAND_SCHEMAS = {
    "classify": "verdict",
    "cuspidal-scan": "scan",
    "verify-family": "family",
    "verify-paper": "suites",
    "klpoly": "klpoly",
    "mu": "mu",
    "cells": "cells",
    "rs": "rs",
    "rs-inverse": "rs-inverse",
    "tl": "tl",
    "cache": "cache",
}


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    """Schema by file stem (``verdict``) or by command name (``classify``)."""
    stem = COMMAND_SCHEMAS.get(name, name)
    text = resources.files("cellkit").joinpath("data", "schemas", f"{stem}.json").read_text()
    return json.loads(text)

"""Function-file and report serialization.

Function files are JSON {degree, constant, cos, sin}; reports are JSON with
sorted keys so identical inputs produce byte-identical outputs.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .trig import TrigPolynomial


def load_function(path: str | Path) -> TrigPolynomial:
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "cos" not in data or "sin" not in data:
        raise ValueError(f"{path}: not a function file (need cos/sin fields)")
    return TrigPolynomial.from_dict(data)


def save_function(f: TrigPolynomial, path: str | Path) -> None:
    write_json(f.to_dict(), path)


def dumps_report(data: dict) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def write_json(data: dict, path: str | Path) -> None:
    """Atomic write: the file appears complete or not at all."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(dumps_report(data))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise

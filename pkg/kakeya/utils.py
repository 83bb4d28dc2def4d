import os
import re
import tempfile
from pathlib import Path

import numpy as np

from kakeya.errors import InvalidParameter

_ANGLE = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*(deg|rad)?\s*$")


def parse_angle(text: str) -> float:
    """
    Parses an angle with an optional unit suffix, returning radians.

    Args:
        text (str): A number optionally followed by ``deg`` or ``rad``; bare numbers are radians.

    Returns:
        float: The angle in radians.

    Example:
        >>> parse_angle("45deg")
        0.7853981633974483
        >>> parse_angle("0.5")
        0.5
    """
    match = _ANGLE.match(str(text))
    if not match:
        raise InvalidParameter(f"Cannot read angle '{text}'; use e.g. '45deg', '0.25rad' or '0.25'.")
    value = float(match.group(1))
    return float(np.deg2rad(value)) if match.group(2) == "deg" else value


def atomic_write(path: str | Path, text: str) -> None:
    """
    Writes ``text`` to ``path`` through a temporary file in the same directory and a rename,
    so readers never see a half-written file.
    """
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    handle, temp_name = tempfile.mkstemp(dir=directory, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(handle, "w", encoding="utf-8") as f:
            f.write(text)
        os.replace(temp_name, path)
    except BaseException:
        if os.path.exists(temp_name):
            os.unlink(temp_name)
        raise


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """
    Random generator of one trial, derived from (master seed, trial index).

    Trials draw from independent streams, so results do not depend on execution order or on
    how trials are spread over workers.
    """
    return np.random.default_rng([int(seed) & 0xFFFFFFFFFFFFFFFF, int(trial)])

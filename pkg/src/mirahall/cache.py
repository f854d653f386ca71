"""Keyed store for computed tables.

An entry is addressed by (module, parameters, code tag); the tag is the
package version, so tables written by another version never satisfy a
lookup.  Payloads are JSON trees built from strings, ints and lists,
which keeps a cache hit byte-identical to a cold rebuild downstream.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from typing import Mapping

from . import __version__
from .errors import IOFailure

CODE_TAG = __version__


def default_dir() -> str:
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(
        os.path.expanduser("~"), ".cache"
    )
    return os.path.join(base, "mirahall")


def _entry_path(directory: str, module: str, params: Mapping) -> str:
    blob = json.dumps([CODE_TAG, module, params], sort_keys=True)
    digest = hashlib.sha256(blob.encode("utf-8")).hexdigest()[:24]
    return os.path.join(directory or default_dir(), f"{module}-{digest}.json")


def load(module: str, params: Mapping, directory: str = ""):
    """Stored payload, or None on a miss.

    Mismatched tag or parameters and unreadable files all count as
    misses; a stale or corrupt entry is never an error."""
    path = _entry_path(directory, module, params)
    try:
        with open(path, encoding="utf-8") as fh:
            entry = json.load(fh)
    except (OSError, ValueError):
        return None
    if not isinstance(entry, dict) or entry.get("tag") != CODE_TAG:
        return None
    if entry.get("module") != module or entry.get("params") != _plain(params):
        return None
    return entry.get("payload")


def store(module: str, params: Mapping, payload, directory: str = "") -> str:
    path = _entry_path(directory, module, params)
    entry = {
        "tag": CODE_TAG,
        "module": module,
        "params": _plain(params),
        "payload": payload,
    }
    try:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(entry, fh, sort_keys=True)
        os.replace(tmp, path)
    except OSError as exc:
        raise IOFailure(f"cannot write cache entry {path}: {exc}") from exc
    return path


def _plain(value):
    """Round-trip through JSON so tuples compare equal to stored lists."""
    return json.loads(json.dumps(value))

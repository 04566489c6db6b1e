"""Optional on-disk memo of lift-count profiles, keyed by canonical morphism keys.

The file stores a JSON payload together with its SHA-256 checksum.  A file
whose checksum does not match, or which fails to parse, is reported and
ignored; its contents are never used.
"""

from __future__ import annotations

import ast
import hashlib
import json
import logging
import os

from . import mobius

log = logging.getLogger(__name__)

ENV_VAR = "STABLEWORDS_CACHE"


def _digest(payload: str) -> str:
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def load(path) -> int:
    """Merge a cache file into the in-memory memo; returns the number of entries loaded."""
    if not path or not os.path.exists(path):
        return 0
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
        payload = doc["payload"]
        if _digest(payload) != doc["checksum"]:
            log.warning("cache %s failed its checksum and is ignored", path)
            return 0
        entries = [(ast.literal_eval(k), ast.literal_eval(v)) for k, v in json.loads(payload)]
    except (OSError, ValueError, KeyError, TypeError, SyntaxError) as exc:
        log.warning("cache %s is unreadable and is ignored: %s", path, exc)
        return 0
    for key, value in entries:
        mobius._PROFILE_MEMO.setdefault(key, value)
    return len(entries)


def save(path) -> int:
    """Write the in-memory memo atomically; returns the number of entries written."""
    if not path:
        return 0
    items = sorted((repr(k), repr(v)) for k, v in mobius._PROFILE_MEMO.items())
    payload = json.dumps(items)
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump({"checksum": _digest(payload), "payload": payload}, fh)
    os.replace(tmp, path)
    return len(items)

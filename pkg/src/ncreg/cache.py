"""On-disk cache of Gröbner bases and resolutions, keyed by content hash."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Optional

from . import __version__


def cache_key(kind: str, payload) -> str:
    blob = json.dumps({"kind": kind, "payload": payload, "version": __version__},
                      sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


class Cache:
    def __init__(self, directory):
        self.dir = Path(directory)

    def _path(self, key: str) -> Path:
        return self.dir / key[:2] / f"{key}.json"

    def get(self, kind: str, payload) -> Optional[dict]:
        p = self._path(cache_key(kind, payload))
        try:
            return json.loads(p.read_text())
        except (OSError, json.JSONDecodeError):
            return None

    def put(self, kind: str, payload, data) -> None:
        p = self._path(cache_key(kind, payload))
        p.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=p.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(data, fh, sort_keys=True)
            os.replace(tmp, p)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise


def open_cache(directory=None) -> Optional[Cache]:
    directory = directory or os.environ.get("NCREG_CACHE")
    return Cache(directory) if directory else None

"""A small JSON file cache with atomic writes (write-temp-then-rename).

Keys are grouped per catalog content hash, so editing the catalog
invalidates everything derived from it.
"""

from __future__ import annotations

import json
import os
import tempfile


def default_cache_dir() -> str:
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return os.path.join(base, "grouploc")


class ResultCache:
    def __init__(self, directory: str | None = None):
        self.directory = directory or default_cache_dir()

    def _path(self, namespace: str) -> str:
        return os.path.join(self.directory, f"{namespace}.json")

    def load(self, namespace: str) -> dict:
        try:
            with open(self._path(namespace)) as fh:
                return json.load(fh)
        except (OSError, ValueError):
            return {}

    def store(self, namespace: str, payload: dict) -> None:
        os.makedirs(self.directory, exist_ok=True)
        path = self._path(namespace)
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(payload, fh, indent=1, sort_keys=True)
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise

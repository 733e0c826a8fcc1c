"""Persistent JSON-lines memo for classical MZV values.

One record per line::

    {"index": [1, 2], "M": 1000000, "method": "dp_tail", "value": ..., "err": ..., "partial": ...}

Appends go through a lock file so several processes can share one cache.
Unreadable lines are skipped with a warning; for duplicate keys the last
line wins.
"""
from __future__ import annotations

import json
import logging
import math
import os
from pathlib import Path

from filelock import FileLock

from .mzv import METHOD, MzvResult

log = logging.getLogger(__name__)

ENV_VAR = "SCHURMZV_CACHE"
DEFAULT_PATH = "schurmzv-cache.jsonl"


def resolve_cache_path(flag: str | os.PathLike | None = None) -> Path:
    """CLI flag, then ``$SCHURMZV_CACHE``, then ``./schurmzv-cache.jsonl``."""
    if flag:
        return Path(flag)
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else Path(DEFAULT_PATH)


def _key(index, M: int, method: str = METHOD) -> tuple:
    return (tuple(int(x) for x in index), int(M), method)


def _parse_record(line: str):
    rec = json.loads(line)
    index, M, method = rec["index"], rec["M"], rec["method"]
    if not isinstance(index, list) or not all(isinstance(x, int) and x >= 1 for x in index):
        raise ValueError("bad index")
    if not isinstance(M, int) or not isinstance(method, str):
        raise ValueError("bad key")
    value, err = float(rec["value"]), float(rec["err"])
    if not (math.isfinite(value) and math.isfinite(err) and err >= 0):
        raise ValueError("bad value")
    partial = rec.get("partial")
    meta = {"method": method, "M": M, "cached": True}
    if partial is not None:
        meta["partial"] = float(partial)
    return _key(index, M, method), MzvResult(value, err, meta)


class MzvCache:
    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)
        self.lock = FileLock(str(self.path) + ".lock")
        self._data: dict[tuple, MzvResult] = {}
        self._skipped = 0
        self._lines = 0
        self._load()

    def _load(self) -> None:
        self._data.clear()
        self._skipped = self._lines = 0
        if not self.path.exists():
            return
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                self._lines += 1
                try:
                    key, res = _parse_record(line)
                except (ValueError, KeyError, TypeError) as exc:
                    self._skipped += 1
                    log.warning("%s:%d: skipping corrupt cache record (%s)", self.path, lineno, exc)
                    continue
                self._data[key] = res

    def get(self, index, M: int, method: str = METHOD) -> MzvResult | None:
        return self._data.get(_key(index, M, method))

    def put(self, index, M: int, res: MzvResult, method: str = METHOD) -> None:
        key = _key(index, M, method)
        rec = {"index": list(key[0]), "M": key[1], "method": method, "value": res.value, "err": res.err}
        if "partial" in res.meta:
            rec["partial"] = res.meta["partial"]
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.lock:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(rec) + "\n")
        self._data[key] = MzvResult(res.value, res.err, {**res.meta, "method": method, "M": key[1]})
        self._lines += 1

    def __len__(self) -> int:
        return len(self._data)

    def stats(self) -> dict:
        return {
            "path": str(self.path),
            "entries": len(self._data),
            "lines": self._lines,
            "skipped": self._skipped,
            "bytes": self.path.stat().st_size if self.path.exists() else 0,
        }

    def clear(self) -> None:
        with self.lock:
            if self.path.exists():
                self.path.unlink()
        self._load()

"""On-disk cache for expensive command outputs.

Each entry is a file plus a manifest record holding its SHA-256 digest and the
tool version that wrote it.  A digest or version mismatch makes the entry
invisible, so the caller recomputes and overwrites it.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
from pathlib import Path

from . import __version__

MANIFEST = "manifest.json"


def default_dir() -> Path:
    return Path(os.environ.get("WEBLAB_CACHE", "./.weblab-cache"))


class Cache:
    def __init__(self, root: Path | str | None = None, version: str = __version__) -> None:
        self.root = Path(root) if root is not None else default_dir()
        self.version = version

    @property
    def manifest_path(self) -> Path:
        return self.root / MANIFEST

    def _manifest(self) -> dict:
        try:
            data = json.loads(self.manifest_path.read_text())
        except (OSError, ValueError):
            return {"entries": {}}
        if not isinstance(data, dict) or not isinstance(data.get("entries"), dict):
            return {"entries": {}}
        return data

    @staticmethod
    def filename(key: str) -> str:
        return re.sub(r"[^A-Za-z0-9_.-]+", "_", key)

    def get(self, key: str) -> bytes | None:
        entry = self._manifest()["entries"].get(key)
        if not entry or entry.get("version") != self.version:
            return None
        try:
            data = (self.root / entry["file"]).read_bytes()
        except OSError:
            return None
        if hashlib.sha256(data).hexdigest() != entry.get("sha256"):
            return None
        return data

    def put(self, key: str, data: bytes) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        name = self.filename(key)
        tmp = self.root / (name + ".tmp")
        tmp.write_bytes(data)
        tmp.replace(self.root / name)
        manifest = self._manifest()
        manifest["entries"][key] = {
            "file": name,
            "sha256": hashlib.sha256(data).hexdigest(),
            "version": self.version,
            "bytes": len(data),
        }
        manifest["tool_version"] = self.version
        tmp = self.root / (MANIFEST + ".tmp")
        tmp.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
        tmp.replace(self.manifest_path)

    def get_or_compute(self, key: str, compute) -> tuple[bytes, bool]:
        """Return ``(data, hit)``."""
        data = self.get(key)
        if data is not None:
            return data, True
        data = compute()
        self.put(key, data)
        return data, False

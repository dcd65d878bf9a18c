"""Versioned proof persistence.

Proofs are keyed by what was asked: the canonical goal text plus the
sorted knowledge-base selection.  Each key owns an append-only JSON
lines file in the data directory; line n holds version n, so versions
are consecutive from 1 and survive restarts.  The key exposed in URLs
is a digest of the key payload, which keeps it filesystem- and
URL-safe.
"""

from __future__ import annotations

import hashlib
import json
import threading
import time
from pathlib import Path
from typing import Optional

from .documents import FormulaRef
from .search import ProofResult, proof_result_to_json

__all__ = ["proof_key", "ProofStore"]


def proof_key(goal_text: str, selection: tuple[FormulaRef, ...]) -> str:
    payload = json.dumps(
        {"goal": goal_text, "selection": sorted(str(ref) for ref in selection)},
        sort_keys=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


class ProofStore:
    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()

    def _path(self, key: str) -> Path:
        return self.data_dir / f"{key}.jsonl"

    def append(self, key: str, goal_text: str,
               selection: tuple[FormulaRef, ...], config_json: dict,
               result: ProofResult) -> int:
        """Persist a completed proof; returns its version number."""
        with self._lock:
            path = self._path(key)
            version = self.next_version_locked(path)
            record = {
                "version": version,
                "goal": goal_text,
                "selection": [
                    {"document": ref.document, "environment": ref.environment,
                     "label": ref.label} for ref in selection],
                "config": config_json,
                "created_at": time.time(),
                "result": proof_result_to_json(
                    ProofResult(result.outcome, version, result.tree,
                                result.nodes_expanded, result.elapsed_ms)),
            }
            with open(path, "a", encoding="utf-8") as handle:
                handle.write(json.dumps(record, sort_keys=True) + "\n")
            return version

    @staticmethod
    def next_version_locked(path: Path) -> int:
        if not path.exists():
            return 1
        with open(path, encoding="utf-8") as handle:
            return sum(1 for line in handle if line.strip()) + 1

    def get(self, key: str, version: int) -> Optional[dict]:
        path = self._path(key)
        if not path.exists() or version < 1:
            return None
        with open(path, encoding="utf-8") as handle:
            for index, line in enumerate(handle, start=1):
                if index == version:
                    return json.loads(line)
        return None

    def versions(self, key: str) -> int:
        path = self._path(key)
        if not path.exists():
            return 0
        with open(path, encoding="utf-8") as handle:
            return sum(1 for line in handle if line.strip())

"""Engine configuration and what-if sessions with an append-only audit log."""

from __future__ import annotations

import json
import os
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

CONFIG_ENV_VAR = "RECOURSE_CONFIG"


@dataclass(frozen=True)
class EngineConfig:
    model_path: str | None = None
    catalog_path: str | None = None
    templates_path: str | None = None
    dataset_path: str | None = None
    discount: float = 0.95
    epsilon: float = 1e-6
    seed: int = 0
    grid_steps: Mapping[str, float] = field(default_factory=dict)
    state_cap: int = 100_000
    bind: str = "127.0.0.1:8000"
    session_log: str = "sessions.ndjson"

    def __post_init__(self):
        if not (0.0 < self.discount < 1.0):
            raise ValueError(f"discount must be in (0,1), got {self.discount}")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be > 0")
        if self.state_cap < 1:
            raise ValueError("state_cap must be >= 1")
        for name, step in self.grid_steps.items():
            if step <= 0:
                raise ValueError(f"grid step for {name} must be > 0")

    @classmethod
    def from_file(cls, path: str | Path) -> "EngineConfig":
        data = json.loads(Path(path).read_text())
        return cls(**data)

    @classmethod
    def from_env(cls) -> "EngineConfig":
        path = os.environ.get(CONFIG_ENV_VAR)
        return cls.from_file(path) if path else cls()


@dataclass
class Session:
    id: str
    profile: dict[str, float]
    history: list[dict] = field(default_factory=list)


class SessionStore:
    """In-memory sessions with an append-only newline-delimited JSON log.

    Writes for one session id are serialized; distinct sessions do not order
    against each other.
    """

    def __init__(self, log_path: str | Path | None = None):
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        self._log_path = Path(log_path) if log_path else None
        self._log_lock = threading.Lock()

    def _append_log(self, record: dict) -> None:
        if self._log_path is None:
            return
        line = json.dumps(record, sort_keys=True)
        with self._log_lock:
            with open(self._log_path, "a") as fh:
                fh.write(line + "\n")

    def create(self, profile: Mapping[str, float]) -> Session:
        session = Session(id=uuid.uuid4().hex, profile=dict(profile))
        with self._registry_lock:
            self._sessions[session.id] = session
            self._locks[session.id] = threading.Lock()
        self._append_log({"ts": time.time(), "session": session.id, "event": "create", "profile": session.profile})
        return session

    def get(self, session_id: str) -> Session:
        with self._registry_lock:
            return self._sessions[session_id]

    def record(self, session_id: str, event: str, payload: Mapping, commit_profile: Mapping[str, float] | None = None) -> Session:
        """Append one history entry; optionally commit a new current profile."""
        with self._registry_lock:
            session = self._sessions[session_id]
            lock = self._locks[session_id]
        with lock:
            entry = {"ts": time.time(), "event": event, "payload": dict(payload)}
            session.history.append(entry)
            if commit_profile is not None:
                session.profile = dict(commit_profile)
            self._append_log({"session": session_id, **entry})
        return session

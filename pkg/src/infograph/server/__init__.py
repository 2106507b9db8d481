"""Session service: store, persistence, and the REST app."""

from .app import create_app
from .store import (
    EngineConfig,
    InvalidOp,
    Session,
    SessionNotFound,
    SessionStore,
    StorageError,
    UnknownAsset,
    UnknownResource,
)

__all__ = [
    "EngineConfig",
    "InvalidOp",
    "Session",
    "SessionNotFound",
    "SessionStore",
    "StorageError",
    "UnknownAsset",
    "UnknownResource",
    "create_app",
]

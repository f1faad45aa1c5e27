"""HTTP service: session endpoints, persistence, recovery, topic catalog."""

from tutorkit.service.app import create_app
from tutorkit.service.config import ServiceConfig, build_gateway
from tutorkit.service.store import (
    QuarantinedSession,
    SessionStore,
    SessionSummary,
)
from tutorkit.service.topics import TopicCatalog, TopicEntry, parse_catalog

__all__ = [
    "QuarantinedSession",
    "ServiceConfig",
    "SessionStore",
    "SessionSummary",
    "TopicCatalog",
    "TopicEntry",
    "build_gateway",
    "create_app",
    "parse_catalog",
]

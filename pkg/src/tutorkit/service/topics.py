"""The topic catalog: curated (category, objective, difficulty) rows.

The on-disk format is delimited text with a ``category,objective,difficulty``
header. A packaged default catalog ships with the library; an ingested
upload replaces the active catalog atomically — readers see either the old
rows or the new rows, never a half-written file.
"""

from __future__ import annotations

import csv
import io
import os
import tempfile
import threading

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from tutorkit.errors import TopicCatalogError

CATALOG_FILENAME = "topics.csv"
HEADER = ("category", "objective", "difficulty")


@dataclass(frozen=True)
class TopicEntry:
    category: str
    objective: str
    difficulty: int

    def __post_init__(self):
        if not self.objective.strip():
            raise ValueError("objective must be non-empty")
        if not 1 <= self.difficulty <= 5:
            raise ValueError("difficulty must be between 1 and 5")

    def to_dict(self) -> dict:
        return {
            "category": self.category,
            "objective": self.objective,
            "difficulty": self.difficulty,
        }


def parse_catalog(text: str) -> list[TopicEntry]:
    """Parse catalog text; a bad row fails with its 1-based line number.

    An empty upload is a valid, empty catalog; a non-empty one must lead
    with the standard header.
    """
    if not text.strip():
        return []
    reader = csv.reader(io.StringIO(text))
    rows = [(number, row) for number, row in enumerate(reader, start=1) if row]
    header = tuple(cell.strip() for cell in rows[0][1])
    if header != HEADER:
        raise TopicCatalogError(
            f"line 1: expected header {','.join(HEADER)!r}, got {','.join(header)!r}"
        )
    entries = []
    for number, row in rows[1:]:
        if len(row) != 3:
            raise TopicCatalogError(
                f"line {number}: expected 3 fields, got {len(row)}"
            )
        category, objective, raw_difficulty = (cell.strip() for cell in row)
        try:
            difficulty = int(raw_difficulty)
        except ValueError:
            raise TopicCatalogError(
                f"line {number}: difficulty {raw_difficulty!r} is not an integer"
            ) from None
        try:
            entries.append(TopicEntry(category, objective, difficulty))
        except ValueError as err:
            raise TopicCatalogError(f"line {number}: {err}") from None
    return entries


def render_catalog(entries: list[TopicEntry]) -> str:
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(HEADER)
    for entry in entries:
        writer.writerow([entry.category, entry.objective, entry.difficulty])
    return out.getvalue()


def default_catalog_text() -> str:
    """The catalog packaged with the library."""
    return (
        resources.files("tutorkit.data")
        .joinpath(CATALOG_FILENAME)
        .read_text(encoding="utf-8")
    )


class TopicCatalog:
    """The active catalog, backed by a file under the service data directory.

    On first use the packaged default is copied in; ``replace`` swaps the
    file atomically via rename so a crash mid-ingest never corrupts it.
    """

    def __init__(self, data_dir: Path):
        self.path = Path(data_dir) / CATALOG_FILENAME
        self._lock = threading.Lock()
        self._entries: list[TopicEntry] | None = None

    def entries(self) -> list[TopicEntry]:
        with self._lock:
            if self._entries is None:
                self._entries = self._load()
            return list(self._entries)

    def _load(self) -> list[TopicEntry]:
        if self.path.exists():
            return parse_catalog(self.path.read_text(encoding="utf-8"))
        return parse_catalog(default_catalog_text())

    def replace(self, text: str) -> int:
        """Validate, persist atomically, and activate a new catalog."""
        entries = parse_catalog(text)
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            handle = tempfile.NamedTemporaryFile(
                "w",
                encoding="utf-8",
                dir=self.path.parent,
                prefix=f".{CATALOG_FILENAME}.",
                delete=False,
            )
            try:
                with handle:
                    handle.write(render_catalog(entries))
                    handle.flush()
                    os.fsync(handle.fileno())
                os.replace(handle.name, self.path)
            except BaseException:
                os.unlink(handle.name)
                raise
            self._entries = entries
        return len(entries)

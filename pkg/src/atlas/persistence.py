"""Durability: append-only event log plus a periodic snapshot document.

One mechanism serves both analytics and persistence. Every mutation appends
one JSON line carrying the action-event fields (for the metrics) and a
replay payload (for reconstruction); restoring loads the latest snapshot and
replays the log tail past it. A log whose tail fails to parse is an error,
reported with the byte offset, never silently skipped.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterator, Optional

from .analytics import ActionEvent, AddSource, EventKind, ViewName
from .graph_core import (SYSTEM, AtlasError, GraphStore, Link, OfficeLocation,
                         Person)

LOG_NAME = "events.log"
SNAPSHOT_NAME = "snapshot.json"


class CorruptStoreError(Exception):
    """The on-disk store cannot be read; message carries the diagnostic."""


def rfc3339(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def parse_rfc3339(text: str) -> datetime:
    return datetime.strptime(text, "%Y-%m-%dT%H:%M:%SZ").replace(
        tzinfo=timezone.utc)


@dataclass(frozen=True)
class LogRecord:
    seq: int
    event: ActionEvent
    data: Optional[dict] = None  # replay payload for mutations

    def to_json(self) -> str:
        e = self.event
        return json.dumps({
            "seq": self.seq,
            "ts": rfc3339(e.timestamp),
            "actor": e.actor,
            "kind": e.kind.value,
            "view": e.view.value if e.view else None,
            "source": e.source.value if e.source else None,
            "target": e.target,
            "query": e.query,
            "data": self.data,
        }, separators=(",", ":"))


def record_from_dict(raw: dict) -> LogRecord:
    event = ActionEvent(
        actor=raw["actor"],
        kind=EventKind(raw["kind"]),
        timestamp=parse_rfc3339(raw["ts"]),
        view=ViewName(raw["view"]) if raw.get("view") else None,
        source=AddSource(raw["source"]) if raw.get("source") else None,
        target=raw.get("target"),
        query=raw.get("query"),
    )
    return LogRecord(seq=raw["seq"], event=event, data=raw.get("data"))


class EventLog:
    """Append-only newline-delimited JSON log.

    Appends are flushed (and by default fsynced) before returning, so an
    acknowledged mutation survives a crash.
    """

    def __init__(self, path: Path, fsync: bool = True):
        self.path = Path(path)
        self.fsync = fsync
        self._next_seq = 1
        if self.path.exists():
            for record in self.read_all():
                self._next_seq = record.seq + 1
        else:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self.path.touch()

    def append(self, event: ActionEvent, data: Optional[dict] = None) -> LogRecord:
        record = LogRecord(seq=self._next_seq, event=event, data=data)
        line = record.to_json() + "\n"
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(line)
            fh.flush()
            if self.fsync:
                os.fsync(fh.fileno())
        self._next_seq += 1
        return record

    def read_all(self) -> Iterator[LogRecord]:
        offset = 0
        with open(self.path, "rb") as fh:
            for raw_line in fh:
                text = raw_line.decode("utf-8", errors="replace").strip()
                if text:
                    try:
                        yield record_from_dict(json.loads(text))
                    except (json.JSONDecodeError, KeyError, ValueError,
                            AtlasError) as exc:
                        raise CorruptStoreError(
                            f"corrupt event log record at byte {offset} "
                            f"of {self.path}: {exc}") from exc
                offset += len(raw_line)


# -- replay ------------------------------------------------------------------


def person_to_dict(person: Person) -> dict:
    office = None
    if person.office is not None:
        office = {"floor_id": person.office.floor_id,
                  "x": person.office.x, "y": person.office.y}
    return {
        "id": person.id,
        "display_name": person.display_name,
        "group": person.group,
        "avatar_ref": person.avatar_ref,
        "office": office,
        "external_id": person.external_id,
    }


def person_from_dict(raw: dict) -> Person:
    office = raw.get("office")
    return Person(
        id=raw["id"],
        display_name=raw["display_name"],
        group=raw["group"],
        avatar_ref=raw.get("avatar_ref"),
        office=OfficeLocation(**office) if office else None,
        external_id=raw.get("external_id"),
    )


def link_to_dict(link: Link) -> dict:
    return {
        "id": link.id,
        "a": link.a,
        "b": link.b,
        "link_type": link.link_type,
        "created_by": link.created_by,
        "created_at": rfc3339(link.created_at),
        "a_confirmed": link.a_confirmed,
        "b_confirmed": link.b_confirmed,
    }


def link_from_dict(raw: dict) -> Link:
    return Link(
        id=raw["id"], a=raw["a"], b=raw["b"], link_type=raw["link_type"],
        created_by=raw["created_by"],
        created_at=parse_rfc3339(raw["created_at"]),
        a_confirmed=raw["a_confirmed"], b_confirmed=raw["b_confirmed"])


def apply_record(store: GraphStore, record: LogRecord) -> None:
    """Replay one mutation record against the store."""
    kind = record.event.kind
    data = record.data or {}
    if kind is EventKind.ADD_NODE:
        store.apply_add_person(person_from_dict(data["person"]))
    elif kind is EventKind.ADD_LINK:
        store.apply_add_link(link_from_dict(data["link"]))
    elif kind is EventKind.CONFIRM_LINK:
        store.apply_confirm(data["link_id"], data["endpoint"])
    elif kind is EventKind.DELETE_LINK:
        store.apply_delete(data["link_id"])
    # ViewSwitch/Search carry no state beyond actor registration
    if record.event.actor != SYSTEM:
        store.mark_registered(record.event.actor)


def replay(records, store: Optional[GraphStore] = None) -> GraphStore:
    """Rebuild a store purely from log records."""
    store = store or GraphStore()
    for record in records:
        apply_record(store, record)
    return store


# -- snapshots ----------------------------------------------------------------


def write_snapshot(path: Path, store: GraphStore, floors: dict,
                   seq: int) -> None:
    """Atomically write the full state as of log sequence `seq`."""
    doc = {
        "seq": seq,
        "people": [person_to_dict(p) for p in store.people()],
        "links": [link_to_dict(l) for l in store.links()],
        "registered": sorted(store.registered()),
        "floors": [floor for _, floor in sorted(floors.items())],
    }
    tmp = Path(str(path) + ".tmp")
    tmp.write_text(json.dumps(doc, indent=1), encoding="utf-8")
    os.replace(tmp, path)


def load_snapshot(path: Path) -> tuple[GraphStore, dict, int]:
    """Read a snapshot back into (store, floors, seq)."""
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
        store = GraphStore()
        for raw in doc["people"]:
            store.apply_add_person(person_from_dict(raw))
        for raw in doc["links"]:
            store.apply_add_link(link_from_dict(raw))
        for pid in doc.get("registered", []):
            store.mark_registered(pid)
        floors = {floor["floor_id"]: floor for floor in doc.get("floors", [])}
        return store, floors, doc["seq"]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise CorruptStoreError(f"corrupt snapshot {path}: {exc}") from exc


def restore(data_dir: Path, fsync: bool = True
            ) -> tuple[GraphStore, dict, EventLog]:
    """Load snapshot (if any) and replay the event-log tail past it."""
    data_dir = Path(data_dir)
    snapshot_path = data_dir / SNAPSHOT_NAME
    if snapshot_path.exists():
        store, floors, snapshot_seq = load_snapshot(snapshot_path)
    else:
        store, floors, snapshot_seq = GraphStore(), {}, 0
    log = EventLog(data_dir / LOG_NAME, fsync=fsync)
    for record in log.read_all():
        if record.seq > snapshot_seq:
            apply_record(store, record)
    return store, floors, log

"""File importers for seeding a deployment, plus the canonical dump.

All importers validate the whole file before committing anything, so an
abort leaves the store untouched. Skippable problems (duplicate ids,
already-present pairs) become warnings; structural problems abort with the
offending line number.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .core import AtlasService, FloorPlan
from .graph_core import SYSTEM, AtlasError, OfficeLocation, ValidationError

ROSTER_HEADER = ["external_id", "display_name", "group",
                 "floor_id", "x", "y", "avatar_ref"]
EDGES_HEADER = ["a_external_id", "b_external_id"]
IMPORT_LINK_TYPE = "coauthor"


class ImportAbort(AtlasError):
    """Structural import failure; nothing was committed."""

    code = "import_abort"


@dataclass(frozen=True)
class RosterRow:
    external_id: str
    display_name: str
    group: str
    office: Optional[OfficeLocation]
    avatar_ref: Optional[str]


def _read_csv(path: Path, header: list[str]) -> list[tuple[int, list[str]]]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != header:
        raise ImportAbort(
            f"{path}: line 1: expected header {','.join(header)}")
    numbered = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue  # blank line
        if len(row) != len(header):
            raise ImportAbort(
                f"{path}: line {lineno}: expected {len(header)} fields, "
                f"got {len(row)}")
        numbered.append((lineno, row))
    return numbered


def parse_roster(path: Path) -> list[tuple[int, RosterRow]]:
    out = []
    for lineno, row in _read_csv(path, ROSTER_HEADER):
        external_id, display_name, group, floor_id, x, y, avatar_ref = (
            field.strip() for field in row)
        if not external_id:
            raise ImportAbort(f"{path}: line {lineno}: empty external_id")
        if not display_name:
            raise ImportAbort(f"{path}: line {lineno}: empty display_name")
        office = None
        if floor_id or x or y:
            if not (floor_id and x and y):
                raise ImportAbort(
                    f"{path}: line {lineno}: floor_id, x and y must be "
                    "given together")
            try:
                office = OfficeLocation(floor_id, float(x), float(y))
            except ValueError:
                raise ImportAbort(
                    f"{path}: line {lineno}: x and y must be numbers")
        out.append((lineno, RosterRow(
            external_id=external_id, display_name=display_name, group=group,
            office=office, avatar_ref=avatar_ref or None)))
    return out


def import_roster(service: AtlasService, path: Path) -> tuple[int, list[str]]:
    """Create one person per roster row. Returns (created, warnings)."""
    rows = parse_roster(path)
    taken = {p.external_id for p in service.store.people()
             if p.external_id is not None}
    warnings, accepted = [], []
    for lineno, row in rows:
        if row.external_id in taken:
            warnings.append(
                f"{path}: line {lineno}: duplicate external_id "
                f"{row.external_id}; row skipped")
            continue
        taken.add(row.external_id)
        accepted.append(row)
    for row in accepted:
        service.add_person(SYSTEM, row.display_name, row.group,
                           avatar_ref=row.avatar_ref, office=row.office,
                           external_id=row.external_id)
    return len(accepted), warnings


def import_edges(service: AtlasService, path: Path) -> tuple[int, list[str]]:
    """Create one SYSTEM-authored coauthor link per edge row."""
    numbered = _read_csv(path, EDGES_HEADER)
    store = service.store
    live_pairs = {frozenset((l.a, l.b)) for l in store.links()}
    warnings, accepted = [], []
    seen = set(live_pairs)
    for lineno, row in numbered:
        a_ext, b_ext = (field.strip() for field in row)
        endpoints = []
        for ext in (a_ext, b_ext):
            person = store.person_by_external_id(ext) if ext else None
            if person is None:
                raise ImportAbort(
                    f"{path}: line {lineno}: unknown external_id {ext!r}")
            endpoints.append(person.id)
        a, b = endpoints
        if a == b:
            raise ImportAbort(
                f"{path}: line {lineno}: self-pair {a_ext!r}")
        pair = frozenset((a, b))
        if pair in seen:
            warnings.append(
                f"{path}: line {lineno}: duplicate pair "
                f"({a_ext}, {b_ext}); row skipped")
            continue
        seen.add(pair)
        accepted.append((a, b))
    for a, b in accepted:
        service.create_link(SYSTEM, a, b, link_type=IMPORT_LINK_TYPE)
    return len(accepted), warnings


def import_floors(service: AtlasService, path: Path) -> tuple[int, list[str]]:
    """Replace the floor set from a JSON manifest."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ImportAbort(f"{path}: not valid JSON: {exc}")
    raw_floors = doc.get("floors") if isinstance(doc, dict) else doc
    if not isinstance(raw_floors, list):
        raise ImportAbort(f"{path}: expected a list under 'floors'")
    floors = []
    for i, raw in enumerate(raw_floors):
        if not isinstance(raw, dict):
            raise ImportAbort(f"{path}: floor {i}: expected an object")
        try:
            plan = FloorPlan(
                floor_id=str(raw["floor_id"]), name=str(raw["name"]),
                image_ref=str(raw["image_ref"]),
                width=float(raw["width"]), height=float(raw["height"]))
        except KeyError as exc:
            raise ImportAbort(f"{path}: floor {i}: missing field {exc}")
        except (TypeError, ValueError):
            raise ImportAbort(
                f"{path}: floor {i}: width and height must be numbers")
        except ValidationError as exc:
            raise ImportAbort(f"{path}: floor {i}: {exc}")
        floors.append(plan)
    ids = [f.floor_id for f in floors]
    if len(set(ids)) != len(ids):
        raise ImportAbort(f"{path}: duplicate floor_id in manifest")
    warnings = service.set_floors(floors)
    return len(floors), warnings


# -- canonical dump ----------------------------------------------------------


def _external_key(person) -> str:
    # people created through the API have no external_id; fall back to the
    # stable internal id so dumps stay joinable
    return person.external_id if person.external_id is not None else person.id


def _format_coord(value: float) -> str:
    return f"{value:g}"


def dump_roster(service: AtlasService) -> str:
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(ROSTER_HEADER)
    people = sorted(service.store.people(), key=_external_key)
    for person in people:
        office = person.office
        writer.writerow([
            _external_key(person), person.display_name, person.group,
            office.floor_id if office else "",
            _format_coord(office.x) if office else "",
            _format_coord(office.y) if office else "",
            person.avatar_ref or "",
        ])
    return buf.getvalue()


def dump_edges(service: AtlasService) -> str:
    import io

    store = service.store
    keys = {p.id: _external_key(p) for p in store.people()}
    pairs = sorted(tuple(sorted((keys[l.a], keys[l.b])))
                   for l in store.links())
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(EDGES_HEADER)
    writer.writerows(pairs)
    return buf.getvalue()

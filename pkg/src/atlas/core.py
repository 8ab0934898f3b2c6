"""Service core: the store, the durable log, floors, stats, and rendering.

Framework-free so the CLI can drive it directly with the HTTP service
stopped. All mutations go through one lock; the event-log append happens
under the same lock, so log order always matches mutation order. A person
counts as registered once they appear as the actor of any logged event,
which also makes the flag reproducible from the log alone.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Callable, Optional

from . import analytics, community, layout, persistence, recommend
from .analytics import ActionEvent, AddSource, EventKind, ViewName
from .graph_core import (SYSTEM, EgoView, GraphStore, Link, NotFoundError,
                         OfficeLocation, Person, PersonId, ValidationError)
from .layout import PALETTE, LayoutParams


@dataclass(frozen=True)
class FloorPlan:
    floor_id: str
    name: str
    image_ref: str
    width: float
    height: float

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValidationError("floor dimensions must be positive")


@dataclass(frozen=True)
class ServiceConfig:
    data_dir: Path
    suggestion_limit: int = 10
    idle_timeout: timedelta = analytics.DEFAULT_IDLE_TIMEOUT
    global_cache_ttl: float = 60.0  # seconds
    fsync: bool = True
    static_dir: Optional[Path] = None


def _utcnow() -> datetime:
    return datetime.now(timezone.utc).replace(microsecond=0)


class AtlasService:
    """Everything the HTTP layer and the CLI need, behind one mutation lock."""

    def __init__(self, config: ServiceConfig,
                 clock: Callable[[], datetime] = _utcnow):
        self.config = config
        self.clock = clock
        self._lock = threading.RLock()
        store, floors, log = persistence.restore(
            Path(config.data_dir), fsync=config.fsync)
        self.store = store
        self.store._clock = clock
        self._floors: dict[str, dict] = floors
        self.log = log
        self._global_cache: Optional[tuple[float, bool, dict]] = None

    # -- mutations (each appends exactly one event) --------------------------

    def add_person(self, actor: PersonId, display_name: str, group: str,
                   avatar_ref: Optional[str] = None,
                   office: Optional[OfficeLocation] = None,
                   external_id: Optional[str] = None) -> Person:
        with self._lock:
            person = self.store.add_person(
                display_name, group, avatar_ref=avatar_ref, office=office,
                external_id=external_id)
            self._emit(ActionEvent(
                actor=actor, kind=EventKind.ADD_NODE,
                timestamp=self.clock(), target=person.id),
                data={"person": persistence.person_to_dict(person)})
            return self.store.person(person.id)

    def create_link(self, actor: PersonId, a: PersonId, b: PersonId,
                    link_type: str = "interaction",
                    source: Optional[AddSource] = None,
                    view: Optional[ViewName] = None) -> Link:
        if actor != SYSTEM and view is None:
            # adds from the floor map are tagged with it; everything else
            # happens in the default view unless the client says otherwise
            view = (ViewName.PHYSICAL if source is AddSource.PHYSICAL
                    else ViewName(analytics.DEFAULT_VIEW))
        with self._lock:
            link = self.store.create_link(actor, a, b, link_type)
            self._emit(ActionEvent(
                actor=actor, kind=EventKind.ADD_LINK, timestamp=self.clock(),
                view=view, source=source, target=link.id),
                data={"link": persistence.link_to_dict(link)})
            return link

    def confirm_link(self, actor: PersonId, link_id: str) -> Link:
        with self._lock:
            link = self.store.confirm_link(actor, link_id)
            self._emit(ActionEvent(
                actor=actor, kind=EventKind.CONFIRM_LINK,
                timestamp=self.clock(), target=link_id),
                data={"link_id": link_id, "endpoint": actor})
            return link

    def delete_link(self, actor: PersonId, link_id: str) -> Link:
        with self._lock:
            link = self.store.delete_link(actor, link_id)
            self._emit(ActionEvent(
                actor=actor, kind=EventKind.DELETE_LINK,
                timestamp=self.clock(), target=link_id),
                data={"link_id": link_id})
            return link

    def record_client_event(self, actor: PersonId, kind: EventKind,
                            view: Optional[ViewName] = None,
                            query: Optional[str] = None,
                            timestamp: Optional[datetime] = None) -> ActionEvent:
        """Log a client-side event (view switches and searches only)."""
        if kind not in (EventKind.VIEW_SWITCH, EventKind.SEARCH):
            raise ValidationError(
                "only ViewSwitch and Search events may be posted directly")
        event = ActionEvent(actor=actor, kind=kind, view=view, query=query,
                            timestamp=timestamp or self.clock())
        with self._lock:
            self._emit(event)
        return event

    def _emit(self, event: ActionEvent, data: Optional[dict] = None) -> None:
        self.log.append(event, data=data)
        if event.actor != SYSTEM:
            self.store.mark_registered(event.actor)
        self._global_cache = None

    # -- floors --------------------------------------------------------------

    def set_floors(self, floors: list[FloorPlan]) -> list[str]:
        """Replace the floor set; clears offices that point nowhere.

        Returns warnings for every cleared office. Floor changes persist via
        the snapshot, not the event log.
        """
        warnings = []
        with self._lock:
            self._floors = {
                f.floor_id: {"floor_id": f.floor_id, "name": f.name,
                             "image_ref": f.image_ref, "width": f.width,
                             "height": f.height}
                for f in floors}
            for person in self.store.people():
                office = person.office
                if office is None:
                    continue
                plan = self._floors.get(office.floor_id)
                if plan is None:
                    warnings.append(
                        f"person {person.id} references unknown floor "
                        f"{office.floor_id}; office cleared")
                    self.store.clear_office(person.id)
                elif not (0 <= office.x <= plan["width"]
                          and 0 <= office.y <= plan["height"]):
                    warnings.append(
                        f"person {person.id} office outside floor "
                        f"{office.floor_id} bounds; office cleared")
                    self.store.clear_office(person.id)
            self.save_snapshot()
        return warnings

    def floors(self) -> list[FloorPlan]:
        with self._lock:
            return [FloorPlan(**raw) for _, raw in sorted(self._floors.items())]

    def floor_occupants(self, floor_id: str) -> tuple[FloorPlan, list[Person]]:
        with self._lock:
            if floor_id not in self._floors:
                raise NotFoundError(f"unknown floor {floor_id}")
            plan = FloorPlan(**self._floors[floor_id])
            occupants = [p for p in self.store.people()
                         if p.office is not None
                         and p.office.floor_id == floor_id]
            return plan, occupants

    # -- queries and payloads -------------------------------------------------

    def suggestions(self, subject: PersonId,
                    limit: Optional[int] = None) -> list[dict]:
        view = self.store.global_network(include_unconfirmed=True)
        if limit is None:
            limit = self.config.suggestion_limit
        result = recommend.suggest(view, subject, limit)
        people = view.person_map()
        return [{
            "person": person_payload(people[s.person]),
            "score": s.score,
            "reason": s.reason.value,
        } for s in result]

    def global_payload(self, include_unconfirmed: bool = True) -> dict:
        """Nodes with community/color indices plus the link list; cached."""
        now = time.monotonic()
        cached = self._global_cache
        if (cached is not None and cached[1] == include_unconfirmed
                and now - cached[0] < self.config.global_cache_ttl):
            return cached[2]
        snapshot = self.store.global_network(include_unconfirmed)
        partition = community.louvain(snapshot.to_graph(), seed=0)
        colors = community.color_assignment(partition, len(PALETTE))
        payload = {
            "nodes": [
                dict(person_payload(p),
                     community=partition[p.id],
                     color=colors[partition[p.id]])
                for p in snapshot.people
            ],
            "links": [link_payload(l) for l in snapshot.links],
        }
        self._global_cache = (now, include_unconfirmed, payload)
        return payload

    # -- analytics -------------------------------------------------------------

    def events(self) -> list[ActionEvent]:
        return [record.event for record in self.log.read_all()]

    def stats_views(self) -> dict[str, float]:
        # imports are not user sessions; their gaps carry no view time
        events = sorted((e for e in self.events() if e.actor != SYSTEM),
                        key=lambda e: e.timestamp)
        sessions = analytics.sessionize(events, self.config.idle_timeout)
        totals = analytics.time_per_view(sessions)
        return {view.value: totals[view].total_seconds() for view in ViewName}

    def stats_sources(self) -> dict[str, int]:
        counts = analytics.add_source_breakdown(self.events())
        return {source.value: counts[source] for source in AddSource}

    def stats_confirmation(self) -> float:
        graph = self.store.global_network(include_unconfirmed=True)
        return analytics.confirmation_rate(graph, self.store.registered())

    def stats_third_party(self) -> float:
        graph = self.store.global_network(include_unconfirmed=True)
        return analytics.third_party_fraction(graph)

    # -- rendering and persistence ----------------------------------------------

    def render_global_svg(self, seed: int = 0,
                          include_unconfirmed: bool = True,
                          node_radius: float = 6.0) -> str:
        snapshot = self.store.global_network(include_unconfirmed)
        graph = snapshot.to_graph()
        return self._render(graph, seed, node_radius)

    def render_ego_svg(self, subject: PersonId, seed: int = 0,
                       node_radius: float = 6.0) -> str:
        ego = self.store.ego_network(subject, subject)
        from .graphs import Graph
        graph = Graph(nodes=(p.id for p in ego.neighbors))
        for link, _ in ego.links:
            if link.a != subject and link.b != subject:
                graph.add_edge(link.a, link.b)
        return self._render(graph, seed, node_radius)

    def _render(self, graph, seed: int, node_radius: float) -> str:
        partition = community.louvain(graph, seed=seed)
        params = LayoutParams()
        state = layout.init_layout(graph, seed, params)
        state = layout.run_until(state, graph, params,
                                 max_iters=300, tol=1e-3)
        return layout.export_svg(graph, state.positions, partition,
                                 node_radius=node_radius)

    def save_snapshot(self) -> None:
        with self._lock:
            persistence.write_snapshot(
                Path(self.config.data_dir) / persistence.SNAPSHOT_NAME,
                self.store, self._floors, seq=self.log._next_seq - 1)

    def ego_view(self, viewer: Optional[PersonId], subject: PersonId) -> EgoView:
        return self.store.ego_network(viewer, subject)


# -- wire payload helpers --------------------------------------------------


def person_payload(person: Person) -> dict:
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
        "is_registered": person.is_registered,
    }


def link_payload(link: Link) -> dict:
    from .graph_core import link_status
    return {
        "id": link.id,
        "a": link.a,
        "b": link.b,
        "link_type": link.link_type,
        "created_by": link.created_by,
        "created_at": persistence.rfc3339(link.created_at),
        "a_confirmed": link.a_confirmed,
        "b_confirmed": link.b_confirmed,
        "status": link_status(link).value,
    }


def ego_payload(view: EgoView) -> dict:
    return {
        "subject": view.subject,
        "neighbors": [person_payload(p) for p in view.neighbors],
        "links": [dict(link_payload(link), transparent=transparent)
                  for link, transparent in view.links],
        "stats": {"node_count": view.node_count,
                  "link_count": view.link_count},
    }

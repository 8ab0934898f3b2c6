"""Action logging and the usage metrics computed from it.

An ActionEvent records one user action: switching views, searching, adding
people or links, confirming, deleting. The service appends them to its
durable log; the functions here turn a list of events (plus the live link
graph) into per-view time totals, add-source breakdowns, the third-party
link fraction, and the confirmation rate.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timedelta
from enum import Enum
from typing import Iterable, Optional

from .graph_core import SYSTEM, GlobalGraph, PersonId, ValidationError

#: Sessionization gap after which a new session starts.
DEFAULT_IDLE_TIMEOUT = timedelta(minutes=30)

#: View shown right after login, before any explicit switch.
DEFAULT_VIEW = "Ego"


class EventKind(Enum):
    VIEW_SWITCH = "ViewSwitch"
    SEARCH = "Search"
    ADD_NODE = "AddNode"
    ADD_LINK = "AddLink"
    CONFIRM_LINK = "ConfirmLink"
    DELETE_LINK = "DeleteLink"


class ViewName(Enum):
    SPLASH = "Splash"
    EGO = "Ego"
    PHYSICAL = "Physical"
    GLOBAL = "Global"


class AddSource(Enum):
    SUGGESTION = "Suggestion"
    SEARCH = "Search"
    PHYSICAL = "Physical"


@dataclass(frozen=True)
class ActionEvent:
    actor: PersonId
    kind: EventKind
    timestamp: datetime
    view: Optional[ViewName] = None
    source: Optional[AddSource] = None
    target: Optional[str] = None  # person id or link id
    query: Optional[str] = None

    def __post_init__(self):
        validate_event(self)


def validate_event(event: "ActionEvent") -> None:
    """Field-presence rules per kind; raises ValidationError.

    `view` accompanies ViewSwitch and AddLink (system imports excepted, they
    happen outside any view), `source` only AddLink, `query` only Search.
    """
    if event.source is not None and event.kind is not EventKind.ADD_LINK:
        raise ValidationError(f"source not allowed for {event.kind.value}")
    if event.query is not None and event.kind is not EventKind.SEARCH:
        raise ValidationError(f"query not allowed for {event.kind.value}")
    if event.kind is EventKind.SEARCH and event.query is None:
        raise ValidationError("Search events must carry the query")
    needs_view = event.kind is EventKind.VIEW_SWITCH or (
        event.kind is EventKind.ADD_LINK and event.actor != SYSTEM)
    if needs_view and event.view is None:
        raise ValidationError(f"view required for {event.kind.value}")
    if not needs_view and event.view is not None:
        raise ValidationError(f"view not allowed for {event.kind.value}")
    if event.timestamp.tzinfo is None:
        raise ValidationError("timestamps must be timezone-aware")


@dataclass(frozen=True)
class Session:
    actor: PersonId
    start: datetime
    end: datetime
    events: tuple[ActionEvent, ...]

    @property
    def duration(self) -> timedelta:
        return self.end - self.start


def sessionize(events: Iterable[ActionEvent],
               idle_timeout: timedelta = DEFAULT_IDLE_TIMEOUT) -> list[Session]:
    """Split each actor's time-ordered events at gaps >= idle_timeout.

    Partitions the input: every event lands in exactly one session.
    """
    per_actor: dict[PersonId, list[ActionEvent]] = {}
    for event in events:
        per_actor.setdefault(event.actor, []).append(event)
    sessions = []
    for actor in sorted(per_actor):
        run: list[ActionEvent] = []
        for event in per_actor[actor]:
            if run and event.timestamp - run[-1].timestamp >= idle_timeout:
                sessions.append(_close(actor, run))
                run = []
            run.append(event)
        sessions.append(_close(actor, run))
    sessions.sort(key=lambda s: (s.start, s.actor))
    return sessions


def _close(actor: PersonId, run: list[ActionEvent]) -> Session:
    return Session(actor=actor, start=run[0].timestamp,
                   end=run[-1].timestamp, events=tuple(run))


def time_per_view(sessions: Iterable[Session]) -> dict[ViewName, timedelta]:
    """Total time spent per view across sessions.

    The gap between consecutive events counts toward the view active at the
    earlier event; the time after a session's last event counts as nothing.
    Sessions start on the default view until a switch happens.
    """
    totals = {view: timedelta(0) for view in ViewName}
    for session in sessions:
        current = ViewName(DEFAULT_VIEW)
        previous: Optional[datetime] = None
        for event in session.events:
            if previous is not None:
                totals[current] += event.timestamp - previous
            if event.kind is EventKind.VIEW_SWITCH:
                current = event.view
            previous = event.timestamp
    return totals


def add_source_breakdown(events: Iterable[ActionEvent]) -> dict[AddSource, int]:
    """How added people were found: suggestions, search, or the floor map."""
    counts = {source: 0 for source in AddSource}
    for event in events:
        if event.kind is EventKind.ADD_LINK and event.source is not None:
            counts[event.source] += 1
    return counts


def third_party_fraction(graph: GlobalGraph) -> float:
    """Fraction of live links created by someone who is not an endpoint."""
    if not graph.links:
        return 0.0
    third = sum(1 for link in graph.links
                if link.created_by not in (link.a, link.b))
    return third / len(graph.links)


def confirmation_rate(graph: GlobalGraph, registered: frozenset) -> float:
    """Confirmations performed, over endpoint-confirmations that were possible.

    An endpoint could confirm if its person is registered and the endpoint
    started out unconfirmed (i.e. the person did not create the link
    themselves). Returns 0.0 when nothing was confirmable.
    """
    performed = 0
    possible = 0
    for link in graph.links:
        for pid in link.endpoints():
            if pid == link.created_by:
                continue  # auto-confirmed at creation, nothing to do
            if link.confirmed_for(pid):
                performed += 1
            if pid in registered:
                possible += 1
    if possible == 0:
        return 0.0
    return performed / possible

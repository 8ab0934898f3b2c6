"""People, typed links with per-endpoint confirmation, and visibility rules.

The store keeps only live state. A link is visible to people other than its
endpoints only once both endpoints have confirmed it; until then it appears
in the owner's own network (marked transparent) and, optionally, in the
global view. Deleted links vanish from every query surface; the service
layer keeps deletion history in its event log.

Concurrency: the store assumes a single logical writer. Callers serialize
mutations externally (the service funnels them through one lock); query
results are frozen dataclasses, safe to hand across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from enum import Enum
from typing import Callable, Iterable, Optional

from .graphs import Graph

#: Reserved actor id for links created by imports and other non-person actors.
SYSTEM = "SYSTEM"

PersonId = str
LinkId = str


class AtlasError(Exception):
    """Base class for domain errors; carries a wire-format error code."""

    code = "error"


class ValidationError(AtlasError):
    code = "validation_error"


class NotFoundError(AtlasError):
    code = "not_found"


class AuthorizationError(AtlasError):
    code = "forbidden"


class DuplicateLinkError(AtlasError):
    """The unordered pair already has a live link; `existing_id` names it."""

    code = "duplicate_link"

    def __init__(self, message: str, existing_id: LinkId):
        super().__init__(message)
        self.existing_id = existing_id


class LinkStatus(Enum):
    UNCONFIRMED = "Unconfirmed"
    HALF_CONFIRMED = "HalfConfirmed"
    FULLY_CONFIRMED = "FullyConfirmed"


@dataclass(frozen=True)
class OfficeLocation:
    floor_id: str
    x: float
    y: float


@dataclass(frozen=True)
class Person:
    id: PersonId
    display_name: str
    group: str
    avatar_ref: Optional[str] = None
    office: Optional[OfficeLocation] = None
    is_registered: bool = False
    external_id: Optional[str] = None  # roster join key, set by imports


@dataclass(frozen=True)
class Link:
    id: LinkId
    a: PersonId
    b: PersonId
    link_type: str
    created_by: PersonId  # person id or SYSTEM
    created_at: datetime
    a_confirmed: bool
    b_confirmed: bool

    def endpoints(self) -> tuple[PersonId, PersonId]:
        return (self.a, self.b)

    def other(self, pid: PersonId) -> PersonId:
        if pid == self.a:
            return self.b
        if pid == self.b:
            return self.a
        raise ValueError(f"{pid} is not an endpoint of link {self.id}")

    def confirmed_for(self, pid: PersonId) -> bool:
        if pid == self.a:
            return self.a_confirmed
        if pid == self.b:
            return self.b_confirmed
        raise ValueError(f"{pid} is not an endpoint of link {self.id}")


def link_status(link: Link) -> LinkStatus:
    confirmed = int(link.a_confirmed) + int(link.b_confirmed)
    return (LinkStatus.UNCONFIRMED, LinkStatus.HALF_CONFIRMED,
            LinkStatus.FULLY_CONFIRMED)[confirmed]


@dataclass(frozen=True)
class EgoView:
    subject: PersonId
    neighbors: tuple[Person, ...]
    links: tuple[tuple[Link, bool], ...]  # (link, transparent)
    node_count: int
    link_count: int

    @property
    def stats(self) -> tuple[int, int]:
        return (self.node_count, self.link_count)


@dataclass(frozen=True)
class GlobalGraph:
    """Immutable snapshot of people and links for the view/analysis layers."""

    people: tuple[Person, ...]
    links: tuple[Link, ...]

    def person_map(self) -> dict[PersonId, Person]:
        return {p.id: p for p in self.people}

    def adjacency(self) -> dict[PersonId, set[PersonId]]:
        adj: dict[PersonId, set[PersonId]] = {p.id: set() for p in self.people}
        for link in self.links:
            adj[link.a].add(link.b)
            adj[link.b].add(link.a)
        return adj

    def to_graph(self) -> Graph:
        g = Graph(nodes=(p.id for p in self.people))
        for link in self.links:
            g.add_edge(link.a, link.b)
        return g


def _utcnow() -> datetime:
    return datetime.now(timezone.utc).replace(microsecond=0)


class GraphStore:
    """Live people + links with id assignment and visibility queries.

    Not internally synchronized; see the module docstring.
    """

    def __init__(self, clock: Callable[[], datetime] = _utcnow):
        self._clock = clock
        self._people: dict[PersonId, Person] = {}
        self._links: dict[LinkId, Link] = {}
        self._pairs: dict[frozenset, LinkId] = {}  # live unordered pair -> link id
        self._by_external: dict[str, PersonId] = {}
        self._registered: set[PersonId] = set()
        self._next_person = 1
        self._next_link = 1

    # -- mutations ---------------------------------------------------------

    def add_person(self, display_name: str, group: str,
                   avatar_ref: Optional[str] = None,
                   office: Optional[OfficeLocation] = None,
                   external_id: Optional[str] = None) -> Person:
        if not display_name:
            raise ValidationError("display_name must be nonempty")
        pid = f"p{self._next_person}"
        self._next_person += 1
        return self.apply_add_person(Person(
            id=pid, display_name=display_name, group=group,
            avatar_ref=avatar_ref, office=office, external_id=external_id))

    def apply_add_person(self, person: Person) -> Person:
        """Insert a fully-specified person; used by replay with recorded ids."""
        if not person.display_name:
            raise ValidationError("display_name must be nonempty")
        if person.id in self._people:
            raise ValidationError(f"person id {person.id} already exists")
        self._people[person.id] = person
        if person.external_id is not None:
            self._by_external[person.external_id] = person.id
        # keep the counter ahead of replayed ids of the form p<N>
        if person.id.startswith("p") and person.id[1:].isdigit():
            self._next_person = max(self._next_person, int(person.id[1:]) + 1)
        return self._fill_registered(person)

    def create_link(self, actor: PersonId, a: PersonId, b: PersonId,
                    link_type: str = "interaction") -> Link:
        if a == b:
            raise ValidationError("self-loops are not allowed")
        if not link_type:
            raise ValidationError("link_type must be nonempty")
        for pid in (a, b):
            if pid not in self._people:
                raise NotFoundError(f"unknown person {pid}")
        if actor != SYSTEM and actor not in self._people:
            raise NotFoundError(f"unknown actor {actor}")
        pair = frozenset((a, b))
        if pair in self._pairs:
            existing = self._pairs[pair]
            raise DuplicateLinkError(
                f"live link {existing} already connects this pair", existing)
        lid = f"l{self._next_link}"
        self._next_link += 1
        link = Link(
            id=lid, a=a, b=b, link_type=link_type, created_by=actor,
            created_at=self._clock(),
            a_confirmed=(actor == a), b_confirmed=(actor == b))
        return self.apply_add_link(link)

    def apply_add_link(self, link: Link) -> Link:
        if link.a == link.b:
            raise ValidationError("self-loops are not allowed")
        pair = frozenset((link.a, link.b))
        if pair in self._pairs:
            raise DuplicateLinkError(
                f"live link {self._pairs[pair]} already connects this pair",
                self._pairs[pair])
        if link.id in self._links:
            raise ValidationError(f"link id {link.id} already exists")
        self._links[link.id] = link
        self._pairs[pair] = link.id
        if link.id.startswith("l") and link.id[1:].isdigit():
            self._next_link = max(self._next_link, int(link.id[1:]) + 1)
        return link

    def confirm_link(self, actor: PersonId, link_id: LinkId) -> Link:
        link = self._require_link(link_id)
        if actor not in link.endpoints():
            raise AuthorizationError("only an endpoint may confirm a link")
        return self.apply_confirm(link_id, actor)

    def apply_confirm(self, link_id: LinkId, endpoint: PersonId) -> Link:
        link = self._require_link(link_id)
        if endpoint == link.a:
            link = replace(link, a_confirmed=True)
        elif endpoint == link.b:
            link = replace(link, b_confirmed=True)
        else:
            raise AuthorizationError("only an endpoint may confirm a link")
        self._links[link_id] = link
        return link

    def delete_link(self, actor: PersonId, link_id: LinkId) -> Link:
        link = self._require_link(link_id)
        if actor not in link.endpoints() and actor != link.created_by:
            raise AuthorizationError(
                "only an endpoint or the creator may delete a link")
        return self.apply_delete(link_id)

    def apply_delete(self, link_id: LinkId) -> Link:
        link = self._require_link(link_id)
        del self._links[link_id]
        del self._pairs[frozenset((link.a, link.b))]
        return link

    def mark_registered(self, pid: PersonId) -> None:
        if pid in self._people:
            self._registered.add(pid)

    def clear_office(self, pid: PersonId) -> None:
        person = self._people[pid]
        self._people[pid] = replace(person, office=None)

    # -- queries -----------------------------------------------------------

    def person(self, pid: PersonId) -> Person:
        if pid not in self._people:
            raise NotFoundError(f"unknown person {pid}")
        return self._fill_registered(self._people[pid])

    def person_by_external_id(self, external_id: str) -> Optional[Person]:
        pid = self._by_external.get(external_id)
        return self.person(pid) if pid is not None else None

    def link(self, link_id: LinkId) -> Link:
        return self._require_link(link_id)

    def people(self) -> tuple[Person, ...]:
        return tuple(self._fill_registered(self._people[pid])
                     for pid in sorted(self._people))

    def links(self) -> tuple[Link, ...]:
        return tuple(self._links[lid] for lid in sorted(self._links))

    def registered(self) -> frozenset:
        return frozenset(self._registered)

    def search_people(self, query: str, limit: int) -> list[Person]:
        """Case-insensitive name search; prefix matches rank above substring."""
        if limit <= 0:
            raise ValidationError("limit must be positive")
        if not query:
            return []
        q = query.lower()
        ranked = []
        for person in self.people():
            name = person.display_name.lower()
            if name.startswith(q):
                rank = 0
            elif q in name:
                rank = 1
            else:
                continue
            ranked.append((rank, person.display_name, person.id, person))
        ranked.sort(key=lambda r: r[:3])
        return [r[3] for r in ranked[:limit]]

    def ego_network(self, viewer: Optional[PersonId], subject: PersonId) -> EgoView:
        """Subject's network as `viewer` is allowed to see it.

        A viewer other than the subject (including None, an anonymous
        outsider) sees only fully confirmed links.
        """
        self.person(subject)
        if viewer is not None:
            self.person(viewer)
        if viewer == subject:
            incident = [
                (link, not link.confirmed_for(subject))
                for link in self.links() if subject in link.endpoints()
            ]
        else:
            incident = [
                (link, False)
                for link in self.links()
                if subject in link.endpoints()
                and link_status(link) is LinkStatus.FULLY_CONFIRMED
            ]
        neighbor_ids = {link.other(subject) for link, _ in incident}
        among = [
            (link, False)
            for link in self.links()
            if link.a in neighbor_ids and link.b in neighbor_ids
            and link_status(link) is LinkStatus.FULLY_CONFIRMED
        ]
        links = tuple(sorted(incident + among, key=lambda pair: pair[0].id))
        neighbors = tuple(self.person(pid) for pid in sorted(neighbor_ids))
        return EgoView(subject=subject, neighbors=neighbors, links=links,
                       node_count=len(neighbors), link_count=len(links))

    def global_network(self, include_unconfirmed: bool) -> GlobalGraph:
        links = self.links()
        if not include_unconfirmed:
            links = tuple(l for l in links
                          if link_status(l) is LinkStatus.FULLY_CONFIRMED)
        return GlobalGraph(people=self.people(), links=links)

    # -- internals ----------------------------------------------------------

    def _require_link(self, link_id: LinkId) -> Link:
        if link_id not in self._links:
            raise NotFoundError(f"unknown link {link_id}")
        return self._links[link_id]

    def _fill_registered(self, person: Person) -> Person:
        flag = person.id in self._registered
        return person if person.is_registered == flag else replace(
            person, is_registered=flag)

"""Ranked "people you may know" suggestions.

Candidates are scored by how many connections they share with the subject;
people from the subject's research group backfill the list when scored
candidates run out (and make up the whole list for someone with no links
yet). All links count toward the scores regardless of confirmation status:
the goal is mapping throughput, not privacy filtering, which happens at the
view layer.

Pure functions over an immutable snapshot; safe to call in parallel.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .graph_core import GlobalGraph, NotFoundError, PersonId, ValidationError


class SuggestionReason(Enum):
    MUTUAL_CONNECTIONS = "MutualConnections"
    SAME_GROUP = "SameGroup"


@dataclass(frozen=True)
class Suggestion:
    person: PersonId
    score: int
    reason: SuggestionReason


def mutual_count(view: GlobalGraph, subject: PersonId, candidate: PersonId) -> int:
    """Number of people linked to both `subject` and `candidate`."""
    if subject == candidate:
        raise ValidationError("subject and candidate must differ")
    adj = view.adjacency()
    for pid in (subject, candidate):
        if pid not in adj:
            raise NotFoundError(f"unknown person {pid}")
    return len(adj[subject] & adj[candidate])


def suggest(view: GlobalGraph, subject: PersonId, limit: int,
            excluded: frozenset = frozenset()) -> list[Suggestion]:
    """Top-`limit` suggestions for `subject`.

    Never includes the subject, their current neighbors, or `excluded`.
    Scored candidates come first (score descending, then display name, then
    id); zero-score members of the subject's group follow until the limit.
    """
    if limit <= 0:
        raise ValidationError("limit must be positive")
    people = view.person_map()
    if subject not in people:
        raise NotFoundError(f"unknown person {subject}")
    adj = view.adjacency()
    neighbors = adj[subject]
    group = people[subject].group

    def sort_key(pid: PersonId):
        return (people[pid].display_name, pid)

    scored = []
    bootstrap = []
    for pid in people:
        if pid == subject or pid in neighbors or pid in excluded:
            continue
        score = len(adj[subject] & adj[pid])
        if score > 0:
            scored.append((score, pid))
        elif people[pid].group == group:
            bootstrap.append(pid)

    scored.sort(key=lambda s: (-s[0],) + sort_key(s[1]))
    bootstrap.sort(key=sort_key)

    out = [Suggestion(pid, score, SuggestionReason.MUTUAL_CONNECTIONS)
           for score, pid in scored]
    out += [Suggestion(pid, 0, SuggestionReason.SAME_GROUP)
            for pid in bootstrap]
    return out[:limit]

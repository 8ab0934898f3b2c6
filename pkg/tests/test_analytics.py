from datetime import datetime, timedelta, timezone

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atlas.analytics import (DEFAULT_IDLE_TIMEOUT, ActionEvent, AddSource,
                             EventKind, Session, ViewName,
                             add_source_breakdown, confirmation_rate,
                             sessionize, third_party_fraction, time_per_view)
from atlas.graph_core import SYSTEM, GraphStore, ValidationError

T0 = datetime(2026, 2, 2, 10, 0, 0, tzinfo=timezone.utc)


def at(seconds: float) -> datetime:
    return T0 + timedelta(seconds=seconds)


def ev(actor="p1", kind=EventKind.VIEW_SWITCH, t=0.0, view=ViewName.EGO,
       source=None, query=None, target=None) -> ActionEvent:
    return ActionEvent(actor=actor, kind=kind, timestamp=at(t), view=view,
                       source=source, query=query, target=target)


def search(actor, t, query="q"):
    return ActionEvent(actor=actor, kind=EventKind.SEARCH, timestamp=at(t),
                       query=query)


# -- event validation ----------------------------------------------------------


def test_source_only_on_add_link():
    with pytest.raises(ValidationError):
        ActionEvent(actor="p1", kind=EventKind.ADD_NODE, timestamp=at(0),
                    source=AddSource.SEARCH)
    ok = ActionEvent(actor="p1", kind=EventKind.ADD_LINK, timestamp=at(0),
                     view=ViewName.EGO, source=AddSource.SUGGESTION)
    assert ok.source is AddSource.SUGGESTION


def test_query_only_and_required_for_search():
    with pytest.raises(ValidationError):
        ActionEvent(actor="p1", kind=EventKind.SEARCH, timestamp=at(0))
    with pytest.raises(ValidationError):
        ActionEvent(actor="p1", kind=EventKind.VIEW_SWITCH, timestamp=at(0),
                    view=ViewName.EGO, query="x")
    assert search("p1", 0).query == "q"


def test_view_required_for_switch_and_user_add_link():
    with pytest.raises(ValidationError):
        ActionEvent(actor="p1", kind=EventKind.VIEW_SWITCH, timestamp=at(0))
    with pytest.raises(ValidationError):
        ActionEvent(actor="p1", kind=EventKind.ADD_LINK, timestamp=at(0))
    # imports happen outside any view
    system_add = ActionEvent(actor=SYSTEM, kind=EventKind.ADD_LINK,
                             timestamp=at(0))
    assert system_add.view is None
    with pytest.raises(ValidationError):
        ActionEvent(actor="p1", kind=EventKind.CONFIRM_LINK, timestamp=at(0),
                    view=ViewName.EGO)


def test_naive_timestamp_rejected():
    with pytest.raises(ValidationError):
        ActionEvent(actor="p1", kind=EventKind.SEARCH, query="x",
                    timestamp=datetime(2026, 2, 2, 10, 0, 0))


# -- sessionize -------------------------------------------------------------------


def test_single_session_duration_200s():
    events = [search("p1", t) for t in (0, 100, 200)]
    sessions = sessionize(events, timedelta(seconds=1800))
    assert len(sessions) == 1
    assert sessions[0].duration == timedelta(seconds=200)


def test_gap_at_timeout_splits():
    events = [search("p1", 0), search("p1", 4000)]
    sessions = sessionize(events, timedelta(seconds=1800))
    assert len(sessions) == 2
    assert all(s.duration == timedelta(0) for s in sessions)
    # a gap of exactly the timeout also splits
    events = [search("p1", 0), search("p1", 1800)]
    assert len(sessionize(events, timedelta(seconds=1800))) == 2
    events = [search("p1", 0), search("p1", 1799)]
    assert len(sessionize(events, timedelta(seconds=1800))) == 1


def test_empty_log():
    assert sessionize([], DEFAULT_IDLE_TIMEOUT) == []


def test_sessions_split_per_actor():
    events = [search("p1", 0), search("p2", 10), search("p1", 20)]
    sessions = sessionize(events, timedelta(seconds=1800))
    assert [(s.actor, len(s.events)) for s in sessions] == [
        ("p1", 2), ("p2", 1)]


def test_sessionize_partitions_events():
    events = [search("p1", t) for t in (0, 50, 5000, 5100)]
    sessions = sessionize(events, timedelta(seconds=1800))
    flat = [e for s in sessions for e in s.events]
    assert sorted(flat, key=lambda e: e.timestamp) == events
    assert len(flat) == len(events)


# -- time per view -------------------------------------------------------------------


def test_time_attribution_to_earlier_view():
    events = [
        ev("p1", EventKind.VIEW_SWITCH, 0, ViewName.EGO),
        ev("p1", EventKind.VIEW_SWITCH, 60, ViewName.GLOBAL),
        search("p1", 90),
    ]
    totals = time_per_view(sessionize(events))
    assert totals[ViewName.EGO] == timedelta(seconds=60)
    assert totals[ViewName.GLOBAL] == timedelta(seconds=30)
    assert totals[ViewName.PHYSICAL] == timedelta(0)


def test_single_event_session_counts_nothing():
    totals = time_per_view(sessionize([search("p1", 0)]))
    assert all(v == timedelta(0) for v in totals.values())


def test_default_view_is_ego_until_first_switch():
    events = [search("p1", 0), search("p1", 45),
              ev("p1", EventKind.VIEW_SWITCH, 100, ViewName.PHYSICAL),
              search("p1", 130)]
    totals = time_per_view(sessionize(events))
    assert totals[ViewName.EGO] == timedelta(seconds=100)
    assert totals[ViewName.PHYSICAL] == timedelta(seconds=30)


def test_time_per_view_totals_bounded_by_durations():
    events = [search("p1", t) for t in (0, 10, 400)] + [
        ev("p1", EventKind.VIEW_SWITCH, 4000, ViewName.GLOBAL),
        search("p1", 4100)]
    sessions = sessionize(events, timedelta(seconds=1800))
    totals = time_per_view(sessions)
    assert sum(totals.values(), timedelta(0)) == sum(
        (s.duration for s in sessions), timedelta(0))


def test_view_resets_at_session_boundary():
    # the Global switch in session 1 must not leak into session 2
    events = [ev("p1", EventKind.VIEW_SWITCH, 0, ViewName.GLOBAL),
              search("p1", 30),
              search("p1", 10_000), search("p1", 10_040)]
    totals = time_per_view(sessionize(events, timedelta(seconds=1800)))
    assert totals[ViewName.GLOBAL] == timedelta(seconds=30)
    assert totals[ViewName.EGO] == timedelta(seconds=40)


# -- source breakdown -------------------------------------------------------------


def test_add_source_breakdown_counts():
    events = []
    for n, source in ((5, AddSource.SUGGESTION), (3, AddSource.SEARCH),
                      (2, AddSource.PHYSICAL)):
        for i in range(n):
            events.append(ev("p1", EventKind.ADD_LINK, i,
                             view=ViewName.EGO, source=source))
    counts = add_source_breakdown(events)
    assert counts == {AddSource.SUGGESTION: 5, AddSource.SEARCH: 3,
                      AddSource.PHYSICAL: 2}


def test_add_source_breakdown_ignores_other_kinds_and_sourceless():
    events = [search("p1", 0),
              ActionEvent(actor=SYSTEM, kind=EventKind.ADD_LINK,
                          timestamp=at(1))]
    assert all(v == 0 for v in add_source_breakdown(events).values())


# -- graph-derived rates -------------------------------------------------------------


def graph_fixture():
    store = GraphStore()
    ids = [store.add_person(f"P{i}", "g").id for i in range(5)]
    return store, ids


def test_third_party_fraction_two_of_five():
    store, ids = graph_fixture()
    store.create_link(ids[0], ids[0], ids[1])
    store.create_link(ids[1], ids[1], ids[2])
    store.create_link(ids[2], ids[2], ids[3])
    store.create_link(ids[4], ids[0], ids[2])   # third party
    store.create_link(SYSTEM, ids[3], ids[0])   # import counts too
    view = store.global_network(include_unconfirmed=True)
    assert third_party_fraction(view) == pytest.approx(0.4)


def test_third_party_fraction_empty_and_self_created():
    store, ids = graph_fixture()
    view = store.global_network(include_unconfirmed=True)
    assert third_party_fraction(view) == 0.0
    store.create_link(ids[0], ids[0], ids[1])
    view = store.global_network(include_unconfirmed=True)
    assert third_party_fraction(view) == 0.0


def test_confirmation_rate_counts_confirmable_endpoints():
    store, ids = graph_fixture()
    a, b, c, d, e = ids
    l1 = store.create_link(a, a, b)   # b's endpoint confirmable
    l2 = store.create_link(a, a, c)   # c's endpoint confirmable
    store.create_link(SYSTEM, d, e)   # both endpoints confirmable
    for pid in (a, b, c, d):
        store.mark_registered(pid)    # e never registered
    store.confirm_link(b, l1.id)
    view = store.global_network(include_unconfirmed=True)
    # possible: b, c, d (e unregistered); performed: b
    assert confirmation_rate(view, store.registered()) == pytest.approx(1 / 3)


def test_confirmation_rate_empty_cases():
    store, ids = graph_fixture()
    view = store.global_network(include_unconfirmed=True)
    assert confirmation_rate(view, frozenset()) == 0.0
    store.create_link(ids[0], ids[0], ids[1])
    view = store.global_network(include_unconfirmed=True)
    assert confirmation_rate(view, frozenset()) == 0.0


def test_confirmation_rate_all_confirmed():
    store, ids = graph_fixture()
    link = store.create_link(ids[0], ids[0], ids[1])
    store.mark_registered(ids[0])
    store.mark_registered(ids[1])
    store.confirm_link(ids[1], link.id)
    view = store.global_network(include_unconfirmed=True)
    assert confirmation_rate(view, store.registered()) == 1.0


# -- properties -------------------------------------------------------------------


@st.composite
def event_logs(draw):
    n_actors = draw(st.integers(1, 4))
    times = draw(st.lists(st.integers(0, 100_000), min_size=1, max_size=40))
    events = []
    for i, t in enumerate(sorted(times)):
        actor = f"p{(i * 7) % n_actors}"
        events.append(search(actor, t, query=f"q{i}"))
    return events


@given(event_logs(), st.integers(60, 7200))
@settings(max_examples=50, deadline=None)
def test_sessionize_is_a_partition(events, timeout_s):
    sessions = sessionize(events, timedelta(seconds=timeout_s))
    flat = sorted((e for s in sessions for e in s.events),
                  key=lambda e: (e.timestamp, e.actor, e.query))
    assert flat == sorted(events,
                          key=lambda e: (e.timestamp, e.actor, e.query))
    for s in sessions:
        assert s.start == s.events[0].timestamp
        assert s.end == s.events[-1].timestamp
        for earlier, later in zip(s.events, s.events[1:]):
            assert later.timestamp - earlier.timestamp < timedelta(
                seconds=timeout_s)


@given(event_logs(), st.integers(60, 7200))
@settings(max_examples=50, deadline=None)
def test_view_time_never_exceeds_session_time(events, timeout_s):
    sessions = sessionize(events, timedelta(seconds=timeout_s))
    totals = time_per_view(sessions)
    assert sum(totals.values(), timedelta(0)) <= sum(
        (s.duration for s in sessions), timedelta(0))
    assert all(v >= timedelta(0) for v in totals.values())


@given(event_logs())
@settings(max_examples=30, deadline=None)
def test_sessionize_idempotent_on_session_events(events):
    sessions = sessionize(events, DEFAULT_IDLE_TIMEOUT)
    for s in sessions:
        again = sessionize(list(s.events), DEFAULT_IDLE_TIMEOUT)
        assert len(again) == 1
        assert again[0] == Session(actor=s.actor, start=s.start, end=s.end,
                                   events=s.events)

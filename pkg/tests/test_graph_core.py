from datetime import datetime, timezone

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atlas.graph_core import (SYSTEM, AuthorizationError, DuplicateLinkError,
                              GraphStore, LinkStatus, NotFoundError,
                              OfficeLocation, ValidationError, link_status)


def store_with(n: int) -> tuple[GraphStore, list[str]]:
    store = GraphStore()
    people = [store.add_person(f"Person {i}", f"g{i % 2}").id
              for i in range(n)]
    return store, people


# -- people --------------------------------------------------------------


def test_add_person_assigns_sequential_ids():
    store, ids = store_with(3)
    assert ids == ["p1", "p2", "p3"]


def test_add_person_rejects_empty_name():
    store = GraphStore()
    with pytest.raises(ValidationError):
        store.add_person("", "g")


def test_duplicate_names_are_allowed():
    store = GraphStore()
    a = store.add_person("Kim Lee", "g")
    b = store.add_person("Kim Lee", "g")
    assert a.id != b.id


def test_person_lookup_unknown():
    store = GraphStore()
    with pytest.raises(NotFoundError):
        store.person("p99")


def test_external_id_lookup():
    store = GraphStore()
    p = store.add_person("A", "g", external_id="x1")
    assert store.person_by_external_id("x1").id == p.id
    assert store.person_by_external_id("nope") is None


# -- link creation flags ---------------------------------------------------


def test_creator_endpoint_auto_confirms_a():
    store, (a, b, _) = store_with(3)
    link = store.create_link(a, a, b)
    assert (link.a_confirmed, link.b_confirmed) == (True, False)
    assert link_status(link) is LinkStatus.HALF_CONFIRMED


def test_creator_endpoint_auto_confirms_b():
    store, (a, b, _) = store_with(3)
    link = store.create_link(b, a, b)
    assert (link.a_confirmed, link.b_confirmed) == (False, True)


def test_third_party_link_starts_unconfirmed():
    store, (a, b, c) = store_with(3)
    link = store.create_link(c, a, b)
    assert (link.a_confirmed, link.b_confirmed) == (False, False)
    assert link_status(link) is LinkStatus.UNCONFIRMED
    assert link.created_by == c


def test_system_link_starts_unconfirmed():
    store, (a, b, _) = store_with(3)
    link = store.create_link(SYSTEM, a, b, link_type="coauthor")
    assert (link.a_confirmed, link.b_confirmed) == (False, False)


def test_self_link_rejected():
    store, (a, *_) = store_with(1)
    with pytest.raises(ValidationError):
        store.create_link(a, a, a)


def test_link_to_unknown_person_rejected():
    store, (a, *_) = store_with(1)
    with pytest.raises(NotFoundError):
        store.create_link(a, a, "p42")


def test_duplicate_pair_rejected_either_order():
    store, (a, b, _) = store_with(3)
    first = store.create_link(a, a, b)
    with pytest.raises(DuplicateLinkError) as err:
        store.create_link(b, b, a)
    assert err.value.existing_id == first.id


def test_recreate_after_delete_starts_fresh():
    store, (a, b, c) = store_with(3)
    first = store.create_link(a, a, b)
    store.confirm_link(b, first.id)
    store.delete_link(a, first.id)
    second = store.create_link(c, a, b)
    assert second.id != first.id
    assert (second.a_confirmed, second.b_confirmed) == (False, False)


# -- confirm and delete ------------------------------------------------------


def test_confirm_by_each_endpoint():
    store, (a, b, c) = store_with(3)
    link = store.create_link(c, a, b)
    link = store.confirm_link(a, link.id)
    assert link_status(link) is LinkStatus.HALF_CONFIRMED
    link = store.confirm_link(b, link.id)
    assert link_status(link) is LinkStatus.FULLY_CONFIRMED


def test_confirm_is_idempotent():
    store, (a, b, _) = store_with(3)
    link = store.create_link(a, a, b)
    once = store.confirm_link(a, link.id)
    twice = store.confirm_link(a, link.id)
    assert once == twice


def test_confirm_by_non_endpoint_forbidden():
    store, (a, b, c) = store_with(3)
    link = store.create_link(a, a, b)
    with pytest.raises(AuthorizationError):
        store.confirm_link(c, link.id)


def test_delete_by_endpoint_and_by_creator():
    store, (a, b, c) = store_with(3)
    link = store.create_link(c, a, b)
    store.delete_link(b, link.id)  # endpoint
    link = store.create_link(c, a, b)
    store.delete_link(c, link.id)  # third-party creator
    assert store.links() == ()


def test_delete_by_stranger_forbidden():
    store, ids = store_with(4)
    link = store.create_link(ids[0], ids[0], ids[1])
    with pytest.raises(AuthorizationError):
        store.delete_link(ids[3], link.id)
    with pytest.raises(NotFoundError):
        store.delete_link(ids[0], "l99")


def test_deleted_link_gone_from_queries():
    store, (a, b, _) = store_with(3)
    link = store.create_link(a, a, b)
    store.delete_link(a, link.id)
    with pytest.raises(NotFoundError):
        store.link(link.id)
    assert store.ego_network(a, a).node_count == 0


# -- ego views and privacy ----------------------------------------------------


def test_own_ego_shows_unconfirmed_with_transparency():
    store, (a, b, c) = store_with(3)
    lab = store.create_link(c, a, b)  # third party: a's end unconfirmed
    view = store.ego_network(a, a)
    assert [p.id for p in view.neighbors] == [b]
    ((link, transparent),) = view.links
    assert link.id == lab.id
    assert transparent, "unconfirmed own endpoint renders transparent"
    store.confirm_link(a, lab.id)
    ((_, transparent),) = store.ego_network(a, a).links
    assert not transparent


def test_privacy_by_default_for_other_viewers():
    # a HalfConfirmed link never shows in a third party's view of either end
    store, (a, b, c) = store_with(3)
    link = store.create_link(a, a, b)
    assert link_status(store.link(link.id)) is LinkStatus.HALF_CONFIRMED
    for subject in (a, b):
        view = store.ego_network(c, subject)
        assert view.links == ()
        assert view.neighbors == ()
    # the anonymous viewer is treated the same way
    assert store.ego_network(None, a).links == ()


def test_fully_confirmed_link_is_public():
    store, (a, b, c) = store_with(3)
    link = store.create_link(a, a, b)
    store.confirm_link(b, link.id)
    view = store.ego_network(c, a)
    assert [p.id for p in view.neighbors] == [b]
    ((seen, transparent),) = view.links
    assert seen.id == link.id and not transparent


def test_neighbor_neighbor_links_only_when_fully_confirmed():
    store, (a, b, c) = store_with(3)
    for creator, x, y in ((a, a, b), (a, a, c)):
        link = store.create_link(creator, x, y)
        store.confirm_link(y, link.id)
    side = store.create_link(b, b, c)  # half confirmed
    view = store.ego_network(a, a)
    assert view.node_count == 2
    assert view.link_count == 2  # the b-c link is hidden from a
    store.confirm_link(c, side.id)
    assert store.ego_network(a, a).link_count == 3


def test_ego_unknown_subject_or_viewer():
    store, (a, *_) = store_with(1)
    with pytest.raises(NotFoundError):
        store.ego_network(a, "p9")
    with pytest.raises(NotFoundError):
        store.ego_network("p9", a)


# -- search -------------------------------------------------------------------


def test_search_prefix_ranks_above_substring():
    store = GraphStore()
    store.add_person("Rosalind Chen", "g")
    store.add_person("Ambrose Lind", "g")
    store.add_person("Linda Park", "g")
    names = [p.display_name for p in store.search_people("lind", 10)]
    assert names == ["Linda Park", "Ambrose Lind", "Rosalind Chen"]


def test_search_is_case_insensitive_and_limited():
    store = GraphStore()
    for i in range(5):
        store.add_person(f"Sam {i}", "g")
    hits = store.search_people("SAM", 3)
    assert len(hits) == 3
    assert [p.id for p in hits] == ["p1", "p2", "p3"]


def test_search_empty_query_returns_nothing():
    store, _ = store_with(2)
    assert store.search_people("", 10) == []


# -- registration -------------------------------------------------------------


def test_registered_flag_round_trip():
    store, (a, b) = store_with(2)
    assert store.person(a).is_registered is False
    store.mark_registered(a)
    assert store.person(a).is_registered is True
    assert store.registered() == frozenset({a})


def test_office_clear():
    store = GraphStore()
    p = store.add_person("A", "g", office=OfficeLocation("f1", 1.0, 2.0))
    store.clear_office(p.id)
    assert store.person(p.id).office is None


# -- clock ---------------------------------------------------------------------


def test_created_at_uses_injected_clock():
    fixed = datetime(2026, 3, 1, 12, 0, 0, tzinfo=timezone.utc)
    store = GraphStore(clock=lambda: fixed)
    a = store.add_person("A", "g").id
    b = store.add_person("B", "g").id
    assert store.create_link(a, a, b).created_at == fixed


# -- randomized invariants -------------------------------------------------------


@st.composite
def op_sequences(draw):
    n = draw(st.integers(min_value=2, max_value=6))
    ops = draw(st.lists(st.tuples(
        st.sampled_from(["create", "confirm", "delete"]),
        st.integers(0, n - 1), st.integers(0, n - 1),
    ), max_size=40))
    return n, ops


@given(op_sequences())
@settings(max_examples=60)
def test_pair_uniqueness_invariant(seq):
    n, ops = seq
    store, ids = store_with(n)
    live = {}
    for op, i, j in ops:
        a, b = ids[i], ids[j]
        try:
            if op == "create":
                link = store.create_link(a, a, b)
                live[frozenset((a, b))] = link.id
            elif op == "confirm" and live:
                lid = sorted(live.values())[0]
                store.confirm_link(a, lid)
            elif op == "delete" and live:
                key = sorted(live, key=sorted)[0]
                store.delete_link(a, live[key])
                del live[key]
        except (ValidationError, AuthorizationError, NotFoundError,
                DuplicateLinkError):
            pass
        pairs = [frozenset((l.a, l.b)) for l in store.links()]
        assert len(pairs) == len(set(pairs)), "one live link per pair"
        for link in store.links():
            assert link.a != link.b
            if link.created_by == link.a:
                assert link.a_confirmed
            if link.created_by == link.b:
                assert link.b_confirmed

import pytest

from atlas.graph_core import SYSTEM, LinkStatus, link_status
from atlas.importer import (ImportAbort, dump_edges, dump_roster,
                            import_edges, import_floors, import_roster)

ROSTER = """\
external_id,display_name,group,floor_id,x,y,avatar_ref
aa,Ada Alpha,NLP,f1,10,20,
bb,Ben Beta,NLP,f1,30,40,img/ben.png
cc,Cy Gamma,Vision,,,,
"""

EDGES = """\
a_external_id,b_external_id
aa,bb
bb,cc
"""

FLOORS = """\
{"floors": [
 {"floor_id": "f1", "name": "One", "image_ref": "plans/f1.png",
  "width": 100, "height": 80}
]}
"""


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


@pytest.fixture
def seeded(service, tmp_path):
    import_roster(service, write(tmp_path, "roster.csv", ROSTER))
    return service


# -- roster -----------------------------------------------------------------


def test_roster_import_creates_people(service, tmp_path):
    count, warnings = import_roster(
        service, write(tmp_path, "r.csv", ROSTER))
    assert (count, warnings) == (3, [])
    people = service.store.people()
    assert [p.external_id for p in people] == ["aa", "bb", "cc"]
    ada = service.store.person_by_external_id("aa")
    assert ada.office.floor_id == "f1" and ada.office.y == 20.0
    assert service.store.person_by_external_id("cc").office is None
    assert service.store.person_by_external_id("bb").avatar_ref == "img/ben.png"


def test_roster_rows_logged_as_system_events(service, tmp_path):
    import_roster(service, write(tmp_path, "r.csv", ROSTER))
    records = list(service.log.read_all())
    assert len(records) == 3
    assert all(r.event.actor == SYSTEM for r in records)


def test_roster_duplicate_external_id_skipped(service, tmp_path):
    text = ROSTER + "aa,Ada Again,NLP,,,,\n"
    count, warnings = import_roster(service, write(tmp_path, "r.csv", text))
    assert count == 3
    assert len(warnings) == 1
    assert "line 5" in warnings[0] and "aa" in warnings[0]


def test_roster_duplicate_against_existing_store(seeded, tmp_path):
    count, warnings = import_roster(
        seeded, write(tmp_path, "r2.csv", ROSTER))
    assert count == 0
    assert len(warnings) == 3


def test_roster_empty_name_aborts_with_line(service, tmp_path):
    text = ROSTER + "dd,,NLP,,,,\n"
    with pytest.raises(ImportAbort) as err:
        import_roster(service, write(tmp_path, "r.csv", text))
    assert "line 5" in str(err.value)
    assert service.store.people() == ()  # nothing committed


def test_roster_bad_header_aborts(service, tmp_path):
    with pytest.raises(ImportAbort) as err:
        import_roster(service, write(tmp_path, "r.csv",
                                     "id,name\n1,A\n"))
    assert "line 1" in str(err.value)


def test_roster_partial_office_aborts(service, tmp_path):
    text = ROSTER.replace("bb,Ben Beta,NLP,f1,30,40,img/ben.png",
                          "bb,Ben Beta,NLP,f1,,,")
    with pytest.raises(ImportAbort) as err:
        import_roster(service, write(tmp_path, "r.csv", text))
    assert "line 3" in str(err.value)


def test_roster_non_numeric_coords_abort(service, tmp_path):
    text = ROSTER.replace("f1,10,20", "f1,ten,20")
    with pytest.raises(ImportAbort):
        import_roster(service, write(tmp_path, "r.csv", text))


def test_roster_wrong_field_count_aborts(service, tmp_path):
    with pytest.raises(ImportAbort) as err:
        import_roster(service, write(
            tmp_path, "r.csv",
            "external_id,display_name,group,floor_id,x,y,avatar_ref\na,b\n"))
    assert "line 2" in str(err.value)


# -- edges ------------------------------------------------------------------


def test_edges_import_all_unconfirmed(seeded, tmp_path):
    count, warnings = import_edges(
        seeded, write(tmp_path, "e.csv", EDGES))
    assert (count, warnings) == (2, [])
    for link in seeded.store.links():
        assert link.created_by == SYSTEM
        assert link.link_type == "coauthor"
        assert link_status(link) is LinkStatus.UNCONFIRMED


def test_edges_duplicate_pair_skipped_either_order(seeded, tmp_path):
    text = EDGES + "bb,aa\n"
    count, warnings = import_edges(seeded, write(tmp_path, "e.csv", text))
    assert count == 2
    assert len(warnings) == 1 and "line 4" in warnings[0]


def test_edges_existing_live_pair_skipped(seeded, tmp_path):
    import_edges(seeded, write(tmp_path, "e.csv", EDGES))
    count, warnings = import_edges(seeded, write(tmp_path, "e2.csv", EDGES))
    assert count == 0
    assert len(warnings) == 2


def test_edges_unknown_external_id_aborts(seeded, tmp_path):
    text = EDGES + "aa,zz\n"
    with pytest.raises(ImportAbort) as err:
        import_edges(seeded, write(tmp_path, "e.csv", text))
    assert "line 4" in str(err.value) and "zz" in str(err.value)
    assert seeded.store.links() == ()  # atomic: earlier rows not committed


def test_edges_self_pair_aborts(seeded, tmp_path):
    with pytest.raises(ImportAbort) as err:
        import_edges(seeded, write(tmp_path, "e.csv",
                                   "a_external_id,b_external_id\naa,aa\n"))
    assert "line 2" in str(err.value)


# -- floors ------------------------------------------------------------------


def test_floor_import(seeded, tmp_path):
    count, warnings = import_floors(
        seeded, write(tmp_path, "f.json", FLOORS))
    assert (count, warnings) == (1, [])
    assert [f.name for f in seeded.floors()] == ["One"]


def test_floor_import_clears_unknown_references(seeded, tmp_path):
    manifest = FLOORS.replace('"f1"', '"f9"')
    count, warnings = import_floors(
        seeded, write(tmp_path, "f.json", manifest))
    assert count == 1
    assert len(warnings) == 2  # aa and bb referenced f1
    assert seeded.store.person_by_external_id("aa").office is None


def test_floor_import_validation(service, tmp_path):
    bad = FLOORS.replace('"width": 100', '"width": 0')
    with pytest.raises(ImportAbort):
        import_floors(service, write(tmp_path, "f.json", bad))
    with pytest.raises(ImportAbort):
        import_floors(service, write(tmp_path, "f.json", "{not json"))
    with pytest.raises(ImportAbort):
        import_floors(service, write(tmp_path, "f.json", '{"floors": 3}'))


# -- dump round trip ------------------------------------------------------------


def test_dump_round_trips_to_canonical_form(service, tmp_path):
    import_roster(service, write(tmp_path, "r.csv", ROSTER))
    import_edges(service, write(tmp_path, "e.csv", EDGES))
    roster_1 = dump_roster(service)
    edges_1 = dump_edges(service)
    fresh_dir = tmp_path / "fresh"
    from atlas.core import AtlasService, ServiceConfig
    fresh = AtlasService(ServiceConfig(data_dir=fresh_dir))
    import_roster(fresh, write(tmp_path, "r2.csv", roster_1))
    import_edges(fresh, write(tmp_path, "e2.csv", edges_1))
    assert dump_roster(fresh) == roster_1
    assert dump_edges(fresh) == edges_1


def test_dump_is_row_order_insensitive(service, tmp_path):
    shuffled = (
        "external_id,display_name,group,floor_id,x,y,avatar_ref\n"
        "cc,Cy Gamma,Vision,,,,\n"
        "bb,Ben Beta,NLP,f1,30,40,img/ben.png\n"
        "aa,Ada Alpha,NLP,f1,10,20,\n")
    import_roster(service, write(tmp_path, "r.csv", shuffled))
    assert dump_roster(service) == ROSTER


def test_dump_edges_sorted_canonically(seeded, tmp_path):
    import_edges(seeded, write(
        tmp_path, "e.csv", "a_external_id,b_external_id\ncc,bb\nbb,aa\n"))
    assert dump_edges(seeded) == (
        "a_external_id,b_external_id\naa,bb\nbb,cc\n")

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sltopgen.classdata import ClassSpec, ClassTuple, enumerate_shapes
from sltopgen.io import SpecFileError, dump_tuple, load_tuple, parse_tuple

S = ClassSpec.from_blocks


def test_parse_full_document():
    text = json.dumps(
        {
            "n": 2,
            "classes": [
                {"profile": [{"label": "a", "blocks": [1]}, {"label": "b", "blocks": [1]}], "order_mod_center": "involution"},
                {"profile": [{"label": "a", "blocks": [2]}], "order_mod_center": "other", "values": {"a": "1"}},
            ],
        }
    )
    ct = parse_tuple(text)
    assert ct.n == 2 and ct.e == 2
    assert ct.classes[0].order_mod_center == "involution"
    assert ct.classes[1].values_map() == {"a": "1"}


def test_bare_profile_list():
    ct = parse_tuple('{"n": 3, "classes": [[{"label": "a", "blocks": [2, 1]}]]}')
    assert ct.classes[0] == S(a=[2, 1])


def test_seed_metadata_is_ignored():
    ct = ClassTuple((S(a=[2, 1]),))
    assert parse_tuple(dump_tuple(ct, seed=7)) == ct
    assert json.loads(dump_tuple(ct, seed=7))["seed"] == 7


@pytest.mark.parametrize(
    "text, fragment",
    [
        ('{"n": 3, "classes": [', "line 1, column"),
        ('{\n  "n": 3,\n  "classes": [}\n', "line 3"),
        ('{"classes": []}', "n: missing"),
        ('{"n": 3, "classes": []}', "classes"),
        ('{"n": 3, "classes": [{"profile": [{"label": "a", "blocks": [2, 2]}]}]}', "classes[0]"),
        ('{"n": 3, "classes": [{"profile": [{"label": "a", "blocks": "x"}]}]}', "classes[0].profile[0].blocks"),
        ('{"n": 3, "extra": 1, "classes": []}', "unknown keys"),
        ('[1, 2]', "document"),
    ],
)
def test_diagnostics_name_the_location(text, fragment):
    with pytest.raises(SpecFileError) as info:
        parse_tuple(text, source="t.json")
    msg = str(info.value)
    assert msg.startswith("t.json: ")
    assert fragment in msg


def test_load_missing_file(tmp_path):
    with pytest.raises(SpecFileError):
        load_tuple(tmp_path / "missing.json")


def test_dump_is_canonical(tmp_path):
    a = ClassTuple((S(b=[1, 2], a=[1]),))
    b = ClassTuple((S(a=[1], b=[2, 1]),))
    assert dump_tuple(a) == dump_tuple(b)
    path = tmp_path / "t.json"
    path.write_text(dump_tuple(a))
    assert load_tuple(path) == a


shape_lists = st.integers(2, 6).flatmap(
    lambda n: st.lists(st.sampled_from(enumerate_shapes(n)), min_size=1, max_size=4)
)


@settings(max_examples=80)
@given(shape_lists)
def test_round_trip(specs):
    ct = ClassTuple(tuple(specs))
    assert parse_tuple(dump_tuple(ct)) == ct


def test_round_trip_with_annotations():
    ct = ClassTuple((S(a=[1], b=[1], order_mod_center="involution", values={"a": "2", "b": "4"}),) * 2)
    assert parse_tuple(dump_tuple(ct)) == ct

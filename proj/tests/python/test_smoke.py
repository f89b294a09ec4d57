import pytest

import openannotation as oa

GIBRALTAR = "http://dbpedia.org/resource/Gibraltar"
HERCULES = "http://dbpedia.org/resource/Hercules"
MAP = "http://maphub.example.org/maps/1507-waldseemuller.jpg"


def map_tagging():
    return {
        "@context": "http://www.w3.org/ns/oa-context-20130208.json",
        "@type": "Annotation",
        "motivatedBy": "tagging",
        "annotatedBy": {"@id": "http://maphub.example.org/users/cartographer", "name": "Mara"},
        "hasBody": [
            {"@type": "ContentAsText", "chars": "The Pillars of Hercules"},
            {"@id": GIBRALTAR, "@type": "SemanticTag"},
            {"@id": HERCULES, "@type": "SemanticTag"},
        ],
        "hasTarget": [{"@id": MAP}],
    }


def test_validate_and_normalize():
    doc = map_tagging()
    assert oa.validate(doc) == []
    assert oa.normalize(oa.normalize(doc)) == oa.normalize(doc)


def test_missing_target_raises_with_code():
    doc = map_tagging()
    del doc["hasTarget"]
    with pytest.raises(oa.OAError) as err:
        oa.validate(doc)
    assert err.value.args[0] == "MissingTarget"


def test_rdf_forms_agree():
    doc = map_tagging()
    trig = oa.to_trig(doc)
    assert "oa:SemanticTag" in trig
    assert oa.trig_isomorphic(trig, oa.to_trig(oa.normalize(doc)))
    assert oa.trig_isomorphic(trig, oa.to_turtle(doc))


def test_anchoring():
    text = "the cat sat on the mat"
    assert oa.resolve_text_quote(text, "the", prefix="on ") == (15, 18, False)
    assert oa.resolve_text_quote(text, "the") == (0, 3, True)
    with pytest.raises(oa.OAError):
        oa.resolve_text_quote(text, "dog")
    q = oa.derive_quote(text, 15, 18, 3)
    assert q == {"exact": "the", "prefix": "on ", "suffix": " ma"}
    assert oa.resolve_text_quote(text, q["exact"], q["prefix"], q["suffix"])[:2] == (15, 18)
    # Offsets count code points, not bytes.
    assert oa.resolve_text_position("a\U0001D11Eb", 1, 2) == "\U0001D11E"


def test_fragments_and_areas():
    assert oa.parse_fragment("xywh=10,20,30,40") == {"kind": "xywh", "x": 10, "y": 20, "w": 30, "h": 40}
    assert oa.parse_fragment("t=5") == {"kind": "t", "begin": 5, "end": None}
    assert oa.parse_fragment("page=2")["kind"] == "opaque"
    with pytest.raises(oa.OAError):
        oa.parse_fragment("xywh=1,2")
    assert oa.point_in_area("circle", [100, 80, 40], 140, 80)
    assert not oa.point_in_area("circle", [100, 80, 40], 141, 80)
    assert oa.point_in_area("polygon", [0, 0, 4, 0, 4, 4, 0, 4], 2, 2)


def test_annotea_round_trip():
    record = {"annotates": "http://example.org/page.html", "bodyText": "<p>why?</p>",
              "author": "alice", "created": "2002-03-04T05:06:07Z", "type": "Question"}
    doc = oa.annotea_import(record)
    assert doc["motivatedBy"] == "questioning"
    assert oa.annotea_export(doc) == record


def test_store(tmp_path):
    store = oa.Store(tmp_path / "s", "http://py.example", sync=False)
    first = store.put(map_tagging())
    assert first == "http://py.example/annotations/1"
    assert store.get(first)["@id"] == first
    assert store.query(tag=GIBRALTAR)["total"] == 1
    assert store.query(target="http://example.org/other")["total"] == 0
    store.remove(first)
    with pytest.raises(oa.OAError) as err:
        store.get(first)
    assert err.value.args[0] == "Gone"
    del store
    reopened = oa.Store(tmp_path / "s")
    assert reopened.base_uri == "http://py.example"
    assert len(reopened) == 0

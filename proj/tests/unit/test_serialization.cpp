#include "fixtures.hpp"

#include "oa/serialization.hpp"
#include "oa/trig.hpp"

#include <doctest.h>

#include <set>

using namespace oa;
using namespace oa::test;

namespace {

const auto cfg = VocabularyConfig::defaults();

auto error_of(const Document& d) -> Errc {
    try {
        from_document(d, cfg);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return Errc::invalid_value;
}

using Ref = std::tuple<std::string, std::string>;

// (predicate, referenced IRI) pairs for hasTarget, hasBody and hasSource
// where the referenced node is named.
auto doc_refs(const Document& d) -> std::set<Ref> {
    std::set<Ref> out;
    auto visit = [&](const char* key, const Document& node) {
        if (node.contains("@id") && !node["@id"].get<std::string>().starts_with("_:")) {
            out.emplace(key, node["@id"].get<std::string>());
        }
        if (node.contains("hasSource")) out.emplace("hasSource", node["hasSource"].get<std::string>());
    };
    for (const auto& t : d["hasTarget"]) visit("hasTarget", t);
    if (d.contains("hasBody")) {
        for (const auto& b : d["hasBody"]) visit("hasBody", b);
    }
    return out;
}

auto graph_refs(const rdf::GraphSet& gs) -> std::set<Ref> {
    std::set<Ref> out;
    for (const auto& t : gs.front().triples) {
        const auto& p = t.predicate.str();
        const auto* o = std::get_if<Iri>(&t.object);
        if (!o) continue;
        for (const char* local : {"hasTarget", "hasBody", "hasSource"}) {
            if (p == cfg.term(local).str()) out.emplace(local, o->str());
        }
    }
    return out;
}

}  // namespace

TEST_CASE("document shape of the map tagging fixture") {
    const auto d = to_document(map_tagging(), cfg);
    CHECK(d["@context"] == cfg.context_iri.str());
    CHECK(d["@type"] == "Annotation");
    CHECK(d["motivatedBy"] == "tagging");
    REQUIRE(d["hasBody"].size() == 3);
    CHECK(d["hasBody"][0]["@type"] == "ContentAsText");
    CHECK(d["hasBody"][0]["chars"] == map_comment);
    CHECK(d["hasBody"][1] == Document{{"@id", dbpedia_gibraltar}, {"@type", "SemanticTag"}});
    CHECK(d["hasBody"][2] == Document{{"@id", dbpedia_hercules}, {"@type", "SemanticTag"}});
    CHECK(d["hasTarget"][0]["dcType"] == "Image");

    std::vector<std::string> keys;
    for (const auto& [k, v] : d.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"@context", "@type", "motivatedBy", "annotatedBy", "annotatedAt", "hasBody",
                                           "hasTarget"});
}

TEST_CASE("bookmark has no hasBody key; embedded content is inline") {
    const auto bookmark = new_annotation({ExternalResource{iri("http://example.org/p"), {}}}, {},
                                         Motivation::of(Motivation::Kind::bookmarking), {});
    const auto d = to_document(bookmark, cfg);
    CHECK(d.contains("hasTarget"));
    CHECK_FALSE(d.contains("hasBody"));

    const auto nice = new_annotation({ExternalResource{iri("http://example.org/p"), {}}},
                                     {EmbeddedResource{EmbeddedContent{"nice!", std::string("text/plain"), {}}, {}}},
                                     std::nullopt, {});
    const auto body = to_document(nice, cfg)["hasBody"][0];
    CHECK(body["chars"] == "nice!");
    CHECK(body["format"] == "text/plain");
}

TEST_CASE("boxed scenario document") {
    const auto d = to_document(circle_on_jpeg(), cfg);
    const auto& t = d["hasTarget"][0];
    CHECK(t["@type"] == "SpecificResource");
    CHECK(t["hasSource"] == jpeg_image);
    CHECK(t["hasSelector"]["@type"] == "SvgSelector");
    CHECK(t["hasSelector"]["shape"] == "circle");
    CHECK(t["hasState"]["@type"] == "HttpRequestState");
    CHECK(t["hasState"]["headers"] == Document::parse(R"([["Accept","image/jpeg"]])"));
}

TEST_CASE("to_document refuses invalid annotations") {
    Annotation a;
    try {
        to_document(a, cfg);
        FAIL("expected InvalidAnnotation");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::invalid_annotation);
    }
}

TEST_CASE("from_document errors") {
    auto d = to_document(galaxy_video_annotation(), cfg);
    auto missing = d;
    missing.erase("hasTarget");
    CHECK(error_of(missing) == Errc::missing_target);
    auto empty = d;
    empty["hasTarget"] = Document::array();
    CHECK(error_of(empty) == Errc::missing_target);
    auto bad_type = d;
    bad_type["@type"] = "Bookmark";
    CHECK(error_of(bad_type) == Errc::unknown_type);
    auto bad_sel = to_document(circle_on_jpeg(), cfg);
    bad_sel["hasTarget"][0]["hasSelector"]["@type"] = "XPathSelector";
    CHECK(error_of(bad_sel) == Errc::unknown_type);
    auto nested = d;
    nested["hasBody"][0]["colour"] = "red";
    CHECK(error_of(nested) == Errc::malformed_node);
    auto wrong = d;
    wrong["annotatedAt"] = 12;
    CHECK(error_of(wrong) == Errc::malformed_node);
    CHECK(error_of(Document::array()) == Errc::malformed_node);
}

TEST_CASE("unknown annotation keys survive a round trip") {
    auto d = to_document(galaxy_video_annotation(), cfg);
    d["rating"] = Document{{"stars", 4}};
    const auto a = from_document(d, cfg);
    CHECK(a.extensions.at("rating") == R"({"stars":4})");
    CHECK(to_document(a, cfg)["rating"] == Document{{"stars", 4}});
}

TEST_CASE("plain string resources read as external") {
    auto d = to_document(galaxy_video_annotation(), cfg);
    d["hasTarget"] = Document::array({galaxy_image});
    const auto a = from_document(d, cfg);
    CHECK(std::get<ExternalResource>(a.targets[0]).iri.str() == galaxy_image);
}

TEST_CASE("graph form") {
    const auto plain = to_graph(galaxy_video_annotation(), cfg);
    CHECK(plain.size() == 1);

    auto a = galaxy_video_annotation();
    rdf::TripleGraph g;
    g.add(iri("http://example.org/s"), iri("http://example.org/p"), iri("http://example.org/o"));
    g.add(rdf::BlankNode{"q"}, iri("http://example.org/p"), rdf::Literal{"v", std::nullopt, std::nullopt});
    a.bodies = {GraphResource{g}};
    const auto gs = to_graph(a, cfg);
    REQUIRE(gs.size() == 2);
    CHECK(gs[1].triples.size() == 2);
    REQUIRE(gs[1].name.has_value());
    bool referenced = false, typed = false;
    for (const auto& t : gs[0].triples) {
        if (t.predicate == cfg.term("hasBody") && rdf::to_term(*gs[1].name) == t.object) referenced = true;
        if (t.subject == *gs[1].name && t.object == rdf::Term{cfg.graph_type_iri}) typed = true;
    }
    CHECK(referenced);
    CHECK(typed);

    a.bodies = {GraphResource{}};
    CHECK_THROWS_AS(to_graph(a, cfg), Error);
}

TEST_CASE("configured vocabulary is used") {
    VocabularyConfig custom = cfg;
    custom.oa_ns = iri("http://example.org/vocab/");
    custom.graph_type_iri = iri("http://example.org/vocab/NamedGraph");
    custom.context_iri = iri("http://example.org/context.jsonld");
    auto a = galaxy_video_annotation();
    CHECK(to_document(a, custom)["@context"] == "http://example.org/context.jsonld");
    const auto gs = to_graph(a, custom);
    bool found = false;
    for (const auto& t : gs[0].triples) found = found || t.predicate.str() == "http://example.org/vocab/hasTarget";
    CHECK(found);
    const auto table = term_table(custom);
    CHECK(std::find(table.begin(), table.end(),
                    std::pair<std::string, std::string>{"hasBody", "http://example.org/vocab/hasBody"}) != table.end());
}

TEST_CASE("property: from_document inverts to_document and output is deterministic") {
    Gen g(31337);
    for (int i = 0; i < 400; ++i) {
        const auto a = g.annotation();
        const auto d = to_document(a, cfg);
        const auto back = from_document(Document::parse(d.dump()), cfg);
        CHECK(back == a);
        CHECK(to_document(back, cfg).dump() == d.dump());
        CHECK(doc_refs(d) == graph_refs(to_graph(a, cfg)));
    }
}

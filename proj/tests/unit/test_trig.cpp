#include "fixtures.hpp"

#include "oa/serialization.hpp"
#include "oa/trig.hpp"

#include <doctest.h>

#include <algorithm>

using namespace oa;
using namespace oa::test;
using rdf::BlankNode;
using rdf::Literal;

namespace {

const auto cfg = VocabularyConfig::defaults();

auto relabel(const rdf::GraphSet& gs, const std::string& tag) -> rdf::GraphSet {
    auto node = [&](const rdf::Node& n) -> rdf::Node {
        if (const auto* b = std::get_if<BlankNode>(&n)) return BlankNode{tag + b->label};
        return n;
    };
    rdf::GraphSet out;
    for (const auto& g : gs) {
        rdf::TripleGraph h;
        if (g.name) h.name = node(*g.name);
        for (const auto& t : g.triples) {
            rdf::Term o = t.object;
            if (const auto* b = std::get_if<BlankNode>(&t.object)) o = BlankNode{tag + b->label};
            h.add(node(t.subject), t.predicate, o);
        }
        out.push_back(h);
    }
    return out;
}

}  // namespace

TEST_CASE("empty default graph writes only the prefix header") {
    const rdf::GraphSet empty{rdf::TripleGraph{}};
    const auto text = rdf::write_trig(empty, cfg.oa_ns);
    CHECK(text == "@prefix oa: <http://www.w3.org/ns/oa#> .\n");
    CHECK(rdf::graphs_isomorphic(rdf::read_trig(text), empty));
}

TEST_CASE("turtle refuses named graphs") {
    rdf::TripleGraph g;
    g.name = rdf::Node{iri("http://example.org/g")};
    g.add(iri("http://example.org/s"), iri("http://example.org/p"), iri("http://example.org/o"));
    try {
        rdf::write_turtle(g, cfg.oa_ns);
        FAIL("expected NamedGraphInTurtle");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::named_graph_in_turtle);
    }
}

TEST_CASE("map tagging fixture re-parses isomorphic") {
    const auto gs = to_graph(map_tagging(), cfg);
    const auto text = rdf::write_trig(gs, cfg.oa_ns);
    CHECK(rdf::graphs_isomorphic(rdf::read_trig(text), gs));
    CHECK(text.find("oa:SemanticTag") != std::string::npos);
    CHECK(text == rdf::write_trig(to_graph(map_tagging(), cfg), cfg.oa_ns));

    const auto ttl = rdf::write_turtle(gs.front(), cfg.oa_ns);
    const auto back = rdf::read_turtle(ttl);
    CHECK(rdf::graphs_isomorphic({back}, {gs.front()}));
}

TEST_CASE("literal escaping and typed values") {
    rdf::TripleGraph g;
    const auto s = iri("http://example.org/s");
    const auto p = iri("http://example.org/p");
    g.add(s, p, Literal{"line\nbreak \"quoted\" back\\slash\ttab", std::nullopt, std::nullopt});
    g.add(s, p, Literal{"caf\xC3\xA9 \xF0\x9D\x84\x9E", std::nullopt, std::string("fr")});
    g.add(s, p, Literal{"42", iri(rdf::vocab::xsd_integer), std::nullopt});
    g.add(BlankNode{"a"}, p, BlankNode{"b"});
    const auto text = rdf::write_turtle(g, cfg.oa_ns);
    CHECK(rdf::graphs_isomorphic({rdf::read_turtle(text)}, {g}));
}

TEST_CASE("reader accepts the common hand-written subset") {
    const auto text = R"(
        @prefix ex: <http://example.org/> .
        PREFIX oa: <http://www.w3.org/ns/oa#>
        ex:a a oa:Annotation ;
             oa:hasTarget ex:t1 , ex:t2 ;
             oa:hasBody [ ex:chars "xé" ] ;
             ex:n 7 .
        GRAPH ex:g { ex:s ex:p "v"@en-GB }
        _:h { _:b ex:p "w"^^ex:T . }
    )";
    const auto gs = rdf::read_trig(text);
    REQUIRE(gs.size() == 3);
    CHECK(gs[0].triples.size() == 6);
    CHECK(gs[1].triples.size() == 1);
    CHECK(gs[2].triples.size() == 1);
    bool literal_found = false;
    for (const auto& t : gs[0].triples) {
        if (const auto* l = std::get_if<Literal>(&t.object); l && l->lexical == "x\xC3\xA9") literal_found = true;
    }
    CHECK(literal_found);
}

TEST_CASE("reader reports syntax errors with a line") {
    try {
        rdf::read_trig("@prefix ex: <http://example.org/> .\nex:a ex:b \"open .\n");
        FAIL("expected SyntaxError");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::syntax_error);
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
    CHECK_THROWS_AS(rdf::read_trig("nope:a <http://x/p> <http://x/o> ."), Error);
    CHECK_THROWS_AS(rdf::read_turtle("<http://x/g> { <http://x/s> <http://x/p> <http://x/o> }"), Error);
}

TEST_CASE("isomorphism") {
    const auto gs = to_graph(circle_on_jpeg(), cfg);
    CHECK(rdf::graphs_isomorphic(gs, relabel(gs, "renamed")));
    CHECK(rdf::graphs_isomorphic({}, {}));

    auto changed = gs;
    auto triples = changed[0].triples;
    changed[0].triples.clear();
    bool done = false;
    for (auto t : triples) {
        if (!done) {
            if (auto* l = std::get_if<Literal>(&t.object)) {
                l->lexical += "!";
                done = true;
            }
        }
        changed[0].triples.insert(t);
    }
    REQUIRE(done);
    CHECK_FALSE(rdf::graphs_isomorphic(gs, changed));

    // Same shape, different wiring: two blank nodes pointing at each other vs. self loops.
    const auto p = iri("http://example.org/p");
    rdf::TripleGraph cycle, loops;
    cycle.add(BlankNode{"a"}, p, BlankNode{"b"});
    cycle.add(BlankNode{"b"}, p, BlankNode{"a"});
    loops.add(BlankNode{"a"}, p, BlankNode{"a"});
    loops.add(BlankNode{"b"}, p, BlankNode{"b"});
    CHECK_FALSE(rdf::graphs_isomorphic({cycle}, {loops}));
}

TEST_CASE("isomorphism on regular blank structures needs search") {
    // Two 6-cycles vs one 12-cycle: every node has identical local colour.
    const auto p = iri("http://example.org/next");
    rdf::TripleGraph two, one, one_shuffled;
    for (int i = 0; i < 6; ++i) {
        two.add(BlankNode{"a" + std::to_string(i)}, p, BlankNode{"a" + std::to_string((i + 1) % 6)});
        two.add(BlankNode{"b" + std::to_string(i)}, p, BlankNode{"b" + std::to_string((i + 1) % 6)});
    }
    for (int i = 0; i < 12; ++i) {
        one.add(BlankNode{"c" + std::to_string(i)}, p, BlankNode{"c" + std::to_string((i + 1) % 12)});
        one_shuffled.add(BlankNode{"d" + std::to_string((i * 5) % 12)}, p, BlankNode{"d" + std::to_string(((i + 1) * 5) % 12)});
    }
    CHECK_FALSE(rdf::graphs_isomorphic({two}, {one}));
    CHECK(rdf::graphs_isomorphic({one}, {one_shuffled}));
}

TEST_CASE("property: trig round trip over generated annotations") {
    Gen g(4242);
    for (int i = 0; i < 250; ++i) {
        const auto a = g.annotation();
        const auto gs = to_graph(a, cfg);
        const auto text = rdf::write_trig(gs, cfg.oa_ns);
        CHECK(text == rdf::write_trig(relabel(gs, "z"), cfg.oa_ns));
        const auto back = rdf::read_trig(text);
        if (!rdf::graphs_isomorphic(back, gs)) FAIL_CHECK(text);
    }
}

#include "fixtures.hpp"

#include <doctest.h>

#include <algorithm>

using namespace oa;
using namespace oa::test;

namespace {

auto has_path(const ValidationReport& r, const std::string& path) -> bool {
    return std::any_of(r.begin(), r.end(), [&](const Violation& v) { return v.path == path; });
}

}  // namespace

TEST_CASE("figure fixtures construct and validate") {
    CHECK(validate(galaxy_video_annotation()).empty());
    CHECK(validate(map_tagging()).empty());
    CHECK(validate(circle_on_jpeg()).empty());
    const auto a = map_tagging();
    CHECK_FALSE(a.id.has_value());
    REQUIRE(a.bodies.size() == 3);
    CHECK(std::get<SemanticTag>(a.bodies[1]).concept_iri.str() == dbpedia_gibraltar);
    CHECK(std::get<SemanticTag>(a.bodies[2]).concept_iri.str() == dbpedia_hercules);
}

TEST_CASE("bookmark without body is valid") {
    const auto a = new_annotation({ExternalResource{iri("http://example.org/page"), std::nullopt}}, {},
                                  Motivation::of(Motivation::Kind::bookmarking), {});
    CHECK(a.bodies.empty());
    CHECK(validate(a).empty());
}

TEST_CASE("new_annotation errors") {
    CHECK_THROWS_WITH_AS(new_annotation({}, {SemanticTag{iri(dbpedia_gibraltar)}}, std::nullopt, {}),
                         doctest::Contains("target"), Error);
    try {
        new_annotation({}, {}, std::nullopt, {});
        FAIL("expected EmptyTargets");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::empty_targets);
    }

    // Second target is bad: index 1.
    try {
        new_annotation({ExternalResource{iri("http://example.org/a"), std::nullopt},
                        SpecificRef{SpecificResource{iri("http://example.org/b"), TextPosition{5, 2}, {}, {}}, {}}},
                       {}, std::nullopt, {});
        FAIL("expected InvalidResource");
    } catch (const InvalidResourceError& e) {
        CHECK(e.code() == Errc::invalid_resource);
        CHECK(e.index() == 1);
    }

    // Bodies are counted after targets.
    try {
        new_annotation({ExternalResource{iri("http://example.org/a"), std::nullopt}},
                       {EmbeddedResource{EmbeddedContent{"", std::nullopt, std::nullopt}, std::nullopt}}, std::nullopt,
                       {});
        FAIL("expected InvalidResource");
    } catch (const InvalidResourceError& e) {
        CHECK(e.index() == 1);
    }

    CHECK_THROWS_AS(new_annotation({SemanticTag{iri(dbpedia_gibraltar)}}, {}, std::nullopt, {}), InvalidResourceError);
}

TEST_CASE("specific_target") {
    const auto boxed = specific_target(iri(jpeg_image), SvgArea{Circle{100, 80, 40}},
                                       HttpRequestState{{{"Accept", "image/jpeg"}}}, std::nullopt);
    const auto& spec = std::get<SpecificRef>(boxed).spec;
    CHECK(spec.source.str() == jpeg_image);
    CHECK(std::holds_alternative<SvgArea>(*spec.selector));

    const auto video = specific_target(iri("http://example.org/video.mp4"),
                                       FragmentSelector{"t=10,20", iri("http://www.w3.org/TR/media-frags/")},
                                       std::nullopt, std::string("halfspeed"));
    CHECK(validate_resource(video, "t").empty());

    try {
        specific_target(iri("http://example.org/page"), std::nullopt, std::nullopt, std::nullopt);
        FAIL("expected NothingSpecified");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::nothing_specified);
    }
    CHECK_THROWS_AS(specific_target(iri("http://example.org/p"), SvgArea{Circle{0, 0, -1}}, std::nullopt, std::nullopt),
                    Error);
}

TEST_CASE("validate reports each violation with a path") {
    Annotation a;
    a.targets.push_back(SpecificRef{SpecificResource{iri("http://example.org/p"), TextPosition{5, 2}, {}, {}}, {}});
    auto r = validate(a);
    REQUIRE(r.size() == 1);
    CHECK(r[0].path == "targets[0].spec.selector");

    a.targets.push_back(SemanticTag{iri(dbpedia_hercules)});
    r = validate(a);
    CHECK(has_path(r, "targets[1]"));
    CHECK(std::any_of(r.begin(), r.end(), [](const Violation& v) { return v.message == "semantic tag as target"; }));

    Annotation empty;
    CHECK(has_path(validate(empty), "targets"));
}

TEST_CASE("validate covers shape, state, content, provenance and style rules") {
    Annotation a;
    const auto src = iri("http://example.org/img");
    a.targets.push_back(SpecificRef{SpecificResource{src, SvgArea{Circle{1, 1, 0}}, {}, {}}, {}});
    a.targets.push_back(SpecificRef{SpecificResource{src, SvgArea{Rect{0, 0, 0, 4}}, {}, {}}, {}});
    a.targets.push_back(SpecificRef{SpecificResource{src, SvgArea{Polygon{{{0, 0}, {1, 1}}}}, {}, {}}, {}});
    a.targets.push_back(SpecificRef{SpecificResource{src, {}, HttpRequestState{}, {}}, {}});
    a.targets.push_back(SpecificRef{SpecificResource{src, {}, HttpRequestState{{{"Bad Name", "x"}}}, {}}, {}});
    a.targets.push_back(SpecificRef{SpecificResource{src, TextQuote{"", {}, {}}, {}, {}}, {}});
    a.targets.push_back(SpecificRef{SpecificResource{src, FragmentSelector{"", {}}, {}, {}}, {}});
    a.targets.push_back(SpecificRef{SpecificResource{src, {}, {}, {}}, {}});
    a.bodies.push_back(GraphResource{});
    a.bodies.push_back(ExternalResource{src, DcmiType::other("")});
    a.provenance.annotated_by = Agent{};
    a.provenance.annotated_at = ts("2013-01-02T00:00:00Z");
    a.provenance.serialized_at = ts("2013-01-01T00:00:00Z");
    a.motivation = Motivation{Motivation::Kind::tagging, iri("http://example.org/m")};

    const auto r = validate(a);
    for (const char* path :
         {"targets[0].spec.selector", "targets[1].spec.selector", "targets[2].spec.selector", "targets[3].spec.state",
          "targets[4].spec.state.headers[0]", "targets[5].spec.selector.exact", "targets[6].spec.selector.value",
          "targets[7].spec", "bodies[0].graph", "bodies[1].dcmi", "provenance.annotated_by",
          "provenance.serialized_at", "motivation"}) {
        CAPTURE(path);
        CHECK(has_path(r, path));
    }
    CHECK(std::is_sorted(r.begin(), r.end(), [](const Violation& x, const Violation& y) { return x.path < y.path; }));
    CHECK(validate(a) == r);
}

TEST_CASE("style classes must be defined by the style") {
    auto a = galaxy_video_annotation();
    a.targets = {specific_target(iri(galaxy_video), FragmentSelector{"t=10,20", std::nullopt}, std::nullopt,
                                 std::string("halfspeed"))};
    // No style at all: the class stays an unchecked hint.
    CHECK(validate(a).empty());

    a.style = Style{EmbeddedContent{".other { color: red }", std::string("text/css"), std::nullopt}, std::nullopt};
    CHECK(has_path(validate(a), "targets[0].spec.style_class"));

    a.style->styled_by.text = ".halfspeed { playback-rate: 0.5 }";
    CHECK(validate(a).empty());

    a.style = Style{EmbeddedContent{"", std::string("text/css"), std::nullopt}, std::string("halfspeed")};
    CHECK(validate(a).empty());

    const Style s{EmbeddedContent{"p.a, .b-c > .d_e { x: 1.5em } .9 {}", std::nullopt, std::nullopt}, std::string("z")};
    CHECK(style_classes(s) == std::vector<std::string>{"a", "b-c", "d_e", "z"});
}

TEST_CASE("motivation and dcmi names") {
    for (int k = 0; k < 6; ++k) {
        const auto m = Motivation::of(static_cast<Motivation::Kind>(k));
        CHECK(motivation_from_name(motivation_name(m)) == m);
    }
    CHECK(motivation_name(Motivation::ext(iri("http://example.org/m"))) == "http://example.org/m");
    CHECK_FALSE(motivation_from_name("Tagging").has_value());
    CHECK(dcmi_name(DcmiType{DcmiType::Kind::moving_image, {}}) == "MovingImage");
    CHECK(dcmi_from_name("MovingImage").kind == DcmiType::Kind::moving_image);
    CHECK(dcmi_from_name("PhysicalObject") == DcmiType::other("PhysicalObject"));
}

TEST_CASE("property: generated annotations validate and constructors agree with validate") {
    Gen g(17);
    for (int i = 0; i < 400; ++i) {
        const auto a = g.annotation();
        const auto r = validate(a);
        if (!r.empty()) FAIL_CHECK(r.front().path << ": " << r.front().message);
        CHECK(a.targets.size() >= 1);
        const auto built = new_annotation(a.targets, a.bodies, a.motivation, a.provenance);
        CHECK(validate(built).empty());
        CHECK(built.targets == a.targets);
        CHECK(built.bodies == a.bodies);
    }
}

/// @file model.hpp
/// @brief Open Annotation domain types and their construction and validation.
///
/// All types are plain values. Construction helpers enforce per-value
/// invariants; `validate` reports every violated invariant of a whole
/// annotation without throwing.

#pragma once

#include "oa/error.hpp"
#include "oa/iri.hpp"
#include "oa/rdf.hpp"
#include "oa/timestamp.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace oa {

/// Abstract media category from the DCMI Type vocabulary.
struct DcmiType {
    enum class Kind : std::uint8_t { image, sound, text, moving_image, dataset, interactive_resource, other };

    Kind kind = Kind::text;
    std::string label;  ///< Only meaningful (and required) for Kind::other.

    static auto other(std::string label) -> DcmiType { return {Kind::other, std::move(label)}; }
    auto operator<=>(const DcmiType&) const = default;
};

auto dcmi_name(const DcmiType& t) -> std::string;
/// Maps "Image", "MovingImage", ... back to a kind; anything else is Other(name).
auto dcmi_from_name(const std::string& name) -> DcmiType;

struct Motivation {
    enum class Kind : std::uint8_t { commenting, tagging, bookmarking, questioning, replying, describing, extension };

    Kind kind = Kind::commenting;
    std::optional<Iri> extension;  ///< Set iff kind == extension.

    static auto of(Kind k) -> Motivation { return {k, std::nullopt}; }
    static auto ext(Iri iri) -> Motivation { return {Kind::extension, std::move(iri)}; }
    auto operator<=>(const Motivation&) const = default;
};

/// Lowercase name ("commenting", ...); extensions yield their IRI.
auto motivation_name(const Motivation& m) -> std::string;
/// Inverse of motivation_name for the closed set; nullopt for unknown names.
auto motivation_from_name(std::string_view name) -> std::optional<Motivation>;

struct Agent {
    std::optional<Iri> id;
    std::optional<std::string> name;
    auto operator<=>(const Agent&) const = default;
};

struct Provenance {
    std::optional<Agent> annotated_by;
    std::optional<Timestamp> annotated_at;
    std::optional<Agent> serialized_by;
    std::optional<Timestamp> serialized_at;
    auto operator<=>(const Provenance&) const = default;
};

/// Inline character content. A missing media type means the default,
/// "text/plain"; empty text is only allowed with an explicit media type.
struct EmbeddedContent {
    std::string text;
    std::optional<std::string> media_type;
    std::optional<std::string> language;

    [[nodiscard]] auto effective_media_type() const -> std::string { return media_type.value_or("text/plain"); }
    auto operator<=>(const EmbeddedContent&) const = default;
};

// Selectors

struct TextPosition {
    std::uint64_t start = 0;
    std::uint64_t end = 0;
    auto operator<=>(const TextPosition&) const = default;
};

struct TextQuote {
    std::string exact;
    std::optional<std::string> prefix;
    std::optional<std::string> suffix;
    auto operator<=>(const TextQuote&) const = default;
};

struct FragmentSelector {
    std::string value;  ///< Without the leading '#'.
    std::optional<Iri> conforms_to;
    auto operator<=>(const FragmentSelector&) const = default;
};

struct Circle {
    double cx = 0, cy = 0, r = 0;
    auto operator<=>(const Circle&) const = default;
};

struct Rect {
    double x = 0, y = 0, w = 0, h = 0;
    auto operator<=>(const Rect&) const = default;
};

struct Point {
    double x = 0, y = 0;
    auto operator<=>(const Point&) const = default;
};

struct Polygon {
    std::vector<Point> vertices;
    auto operator<=>(const Polygon&) const = default;
};

struct SvgArea {
    std::variant<Circle, Rect, Polygon> shape;
    auto operator<=>(const SvgArea&) const = default;
};

using Selector = std::variant<TextPosition, TextQuote, FragmentSelector, SvgArea>;

// States

struct HttpRequestState {
    std::vector<std::pair<std::string, std::string>> headers;
    auto operator<=>(const HttpRequestState&) const = default;
};

struct TimeState {
    Timestamp source_date;
    auto operator<=>(const TimeState&) const = default;
};

using State = std::variant<HttpRequestState, TimeState>;

struct Style {
    EmbeddedContent styled_by;
    std::optional<std::string> style_class;
    auto operator<=>(const Style&) const = default;
};

struct SpecificResource {
    Iri source;
    std::optional<Selector> selector;
    std::optional<State> state;
    std::optional<std::string> style_class;
    auto operator<=>(const SpecificResource&) const = default;
};

// Bodies and targets

struct ExternalResource {
    Iri iri;
    std::optional<DcmiType> dcmi;
    auto operator<=>(const ExternalResource&) const = default;
};

struct EmbeddedResource {
    EmbeddedContent content;
    std::optional<DcmiType> dcmi;
    auto operator<=>(const EmbeddedResource&) const = default;
};

struct SemanticTag {
    Iri concept_iri;
    auto operator<=>(const SemanticTag&) const = default;
};

struct GraphResource {
    rdf::TripleGraph graph;
    auto operator<=>(const GraphResource&) const = default;
};

struct SpecificRef {
    SpecificResource spec;
    std::optional<DcmiType> dcmi;
    auto operator<=>(const SpecificRef&) const = default;
};

using ResourceRef = std::variant<ExternalResource, EmbeddedResource, SemanticTag, GraphResource, SpecificRef>;

/// Unrecognized annotation-level keys, kept as compact JSON text so they
/// survive a read/write cycle untouched.
using Extensions = std::map<std::string, std::string>;

struct Annotation {
    std::optional<Iri> id;
    std::vector<ResourceRef> bodies;
    std::vector<ResourceRef> targets;
    std::optional<Motivation> motivation;
    Provenance provenance;
    std::optional<Style> style;
    Extensions extensions;
    auto operator<=>(const Annotation&) const = default;
};

struct Violation {
    std::string path;
    std::string message;
    auto operator<=>(const Violation&) const = default;
};

using ValidationReport = std::vector<Violation>;

/// Thrown by new_annotation when one of the given resources is invalid.
class InvalidResourceError : public Error {
public:
    InvalidResourceError(std::size_t index, const std::string& reason)
        : Error(Errc::invalid_resource, "resource " + std::to_string(index) + ": " + reason), index_(index) {}
    [[nodiscard]] auto index() const noexcept -> std::size_t { return index_; }

private:
    std::size_t index_;
};

/// Builds an annotation with no id. Targets are checked first, then bodies;
/// the reported index counts targets then bodies in one sequence.
auto new_annotation(std::vector<ResourceRef> targets, std::vector<ResourceRef> bodies,
                    std::optional<Motivation> motivation, Provenance provenance) -> Annotation;

auto specific_target(Iri source, std::optional<Selector> selector, std::optional<State> state,
                     std::optional<std::string> style_class) -> ResourceRef;

/// Lists every violated invariant, sorted by field path.
auto validate(const Annotation& a) -> ValidationReport;

/// Violations of a single resource, with paths relative to `base`.
auto validate_resource(const ResourceRef& r, const std::string& base) -> ValidationReport;

/// Class names a style makes available: its style_class plus every `.name`
/// class selector appearing in the style text.
auto style_classes(const Style& s) -> std::vector<std::string>;

}  // namespace oa

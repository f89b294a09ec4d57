/// @file selector_engine.hpp
/// @brief Resolving selectors against concrete documents and media.

#pragma once

#include "oa/model.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace oa {

/// Document text, NFC-normalized once at construction and addressed in
/// Unicode code points.
class DocText {
public:
    explicit DocText(std::string_view utf8);

    [[nodiscard]] auto size() const noexcept -> std::size_t { return text_.size(); }
    [[nodiscard]] auto code_points() const noexcept -> const std::u32string& { return text_; }
    /// UTF-8 of the code points in [start, end).
    [[nodiscard]] auto slice(std::size_t start, std::size_t end) const -> std::string;

private:
    std::u32string text_;
};

/// Half-open code-point range [start, end).
struct Span {
    std::size_t start = 0;
    std::size_t end = 0;
    auto operator<=>(const Span&) const = default;
};

struct QuoteMatch {
    Span span;
    bool ambiguous = false;  ///< Two or more occurrences shared the top score.
};

/// Throws Error(out_of_range) when the selector runs past the document.
auto resolve_text_position(const DocText& doc, const TextPosition& sel) -> Span;

/// Picks the occurrence of `exact` whose surroundings best agree with the
/// prefix and suffix. Score is the length of the longest suffix of `prefix`
/// ending right before the occurrence plus the longest prefix of `suffix`
/// starting right after it; the earliest occurrence wins ties.
/// Throws Error(not_found).
auto resolve_text_quote(const DocText& doc, const TextQuote& sel) -> QuoteMatch;

/// Builds a quote for `span` with up to `context_len` code points of context
/// on each side. Throws Error(invalid_span) for empty or out-of-range spans.
auto derive_quote(const DocText& doc, Span span, std::size_t context_len) -> TextQuote;

struct SpatialRegion {
    double x = 0, y = 0, w = 0, h = 0;
    auto operator<=>(const SpatialRegion&) const = default;
};

struct TimeInterval {
    double begin = 0;
    std::optional<double> end;
    auto operator<=>(const TimeInterval&) const = default;
};

struct OpaqueFragment {
    std::string raw;
    auto operator<=>(const OpaqueFragment&) const = default;
};

using FragmentValue = std::variant<SpatialRegion, TimeInterval, OpaqueFragment>;

/// Understands the "xywh" (pixel) and "t" (NPT seconds) media fragment
/// dimensions; every other value is returned as OpaqueFragment.
/// Throws Error(malformed_fragment) when a recognised dimension is ill-formed.
auto parse_fragment(const FragmentSelector& sel) -> FragmentValue;
auto parse_fragment(std::string_view value) -> FragmentValue;

/// Inside-or-on-boundary test. Polygons use the even-odd rule.
auto point_in_area(const SvgArea& area, double x, double y) -> bool;

}  // namespace oa

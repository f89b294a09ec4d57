#include "oa/selector_engine.hpp"

#include "oa/unicode.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <vector>

namespace oa {

DocText::DocText(std::string_view utf8) : text_(unicode::nfc_code_points(utf8)) {}

auto DocText::slice(std::size_t start, std::size_t end) const -> std::string {
    return unicode::to_utf8(std::u32string_view(text_).substr(start, end - start));
}

auto resolve_text_position(const DocText& doc, const TextPosition& sel) -> Span {
    if (sel.start > sel.end) throw Error(Errc::invalid_value, "text position start exceeds end");
    if (sel.end > doc.size()) {
        throw Error(Errc::out_of_range, "end " + std::to_string(sel.end) + " exceeds document length " +
                                            std::to_string(doc.size()));
    }
    return Span{static_cast<std::size_t>(sel.start), static_cast<std::size_t>(sel.end)};
}

auto resolve_text_quote(const DocText& doc, const TextQuote& sel) -> QuoteMatch {
    const std::u32string exact = unicode::nfc_code_points(sel.exact);
    if (exact.empty()) throw Error(Errc::invalid_value, "quote selector has empty exact text");
    const std::u32string prefix = sel.prefix ? unicode::nfc_code_points(*sel.prefix) : std::u32string{};
    const std::u32string suffix = sel.suffix ? unicode::nfc_code_points(*sel.suffix) : std::u32string{};
    const std::u32string& text = doc.code_points();

    std::optional<std::size_t> best;
    std::size_t best_score = 0;
    bool tied = false;

    for (auto it = std::search(text.begin(), text.end(), exact.begin(), exact.end()); it != text.end();
         it = std::search(it + 1, text.end(), exact.begin(), exact.end())) {
        const auto start = static_cast<std::size_t>(it - text.begin());
        const std::size_t end = start + exact.size();

        std::size_t before = 0;
        while (before < prefix.size() && before < start &&
               prefix[prefix.size() - 1 - before] == text[start - 1 - before]) {
            ++before;
        }
        std::size_t after = 0;
        while (after < suffix.size() && end + after < text.size() && suffix[after] == text[end + after]) {
            ++after;
        }

        const std::size_t score = before + after;
        if (!best || score > best_score) {
            best = start;
            best_score = score;
            tied = false;
        } else if (score == best_score) {
            tied = true;
        }
    }
    if (!best) throw Error(Errc::not_found, "quote not found in document");
    return QuoteMatch{Span{*best, *best + exact.size()}, tied};
}

auto derive_quote(const DocText& doc, Span span, std::size_t context_len) -> TextQuote {
    if (span.start >= span.end || span.end > doc.size()) {
        throw Error(Errc::invalid_span, "span [" + std::to_string(span.start) + "," + std::to_string(span.end) +
                                            ") is empty or exceeds document length " + std::to_string(doc.size()));
    }
    const std::size_t pre_start = span.start > context_len ? span.start - context_len : 0;
    const std::size_t post_end = std::min(doc.size(), span.end + context_len);
    return TextQuote{doc.slice(span.start, span.end), doc.slice(pre_start, span.start), doc.slice(span.end, post_end)};
}

namespace {

auto malformed(std::string_view value, std::string_view why) -> Error {
    return Error(Errc::malformed_fragment, "'" + std::string(value) + "': " + std::string(why));
}

auto split(std::string_view s, char sep) -> std::vector<std::string_view> {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        const auto next = s.find(sep, pos);
        parts.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return parts;
}

auto all_digits(std::string_view s) -> bool {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

auto parse_unsigned(std::string_view s) -> std::optional<double> {
    if (!all_digits(s)) return std::nullopt;
    double v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return v;
}

/// 1*DIGIT ["." *DIGIT]
auto parse_decimal(std::string_view s) -> std::optional<double> {
    const auto dot = s.find('.');
    const auto whole = s.substr(0, dot);
    if (!all_digits(whole)) return std::nullopt;
    if (dot != std::string_view::npos) {
        const auto frac = s.substr(dot + 1);
        if (!frac.empty() && !all_digits(frac)) return std::nullopt;
    }
    double v = 0;
    std::from_chars(s.data(), s.data() + s.size(), v);
    return v;
}

/// npt-sec | npt-mmss | npt-hhmmss
auto parse_npt(std::string_view s) -> std::optional<double> {
    const auto parts = split(s, ':');
    if (parts.size() == 1) return parse_decimal(parts[0]);
    auto two_digits = [](std::string_view p) { return p.size() == 2 && all_digits(p); };
    if (parts.size() == 2) {
        const auto sec_whole = parts[1].substr(0, parts[1].find('.'));
        if (!two_digits(parts[0]) || !two_digits(sec_whole)) return std::nullopt;
        const auto mm = parse_unsigned(parts[0]);
        const auto ss = parse_decimal(parts[1]);
        if (!mm || !ss || *mm >= 60 || *ss >= 60) return std::nullopt;
        return *mm * 60 + *ss;
    }
    if (parts.size() == 3) {
        const auto sec_whole = parts[2].substr(0, parts[2].find('.'));
        if (!all_digits(parts[0]) || !two_digits(parts[1]) || !two_digits(sec_whole)) return std::nullopt;
        const auto hh = parse_unsigned(parts[0]);
        const auto mm = parse_unsigned(parts[1]);
        const auto ss = parse_decimal(parts[2]);
        if (!hh || !mm || !ss || *mm >= 60 || *ss >= 60) return std::nullopt;
        return *hh * 3600 + *mm * 60 + *ss;
    }
    return std::nullopt;
}

auto parse_xywh(std::string_view value, std::string_view body) -> FragmentValue {
    if (body.starts_with("percent:")) return OpaqueFragment{std::string(value)};
    if (body.starts_with("pixel:")) body.remove_prefix(6);
    const auto parts = split(body, ',');
    if (parts.size() != 4) throw malformed(value, "xywh needs exactly four values");
    double v[4];
    for (std::size_t i = 0; i < 4; ++i) {
        const auto n = parse_unsigned(parts[i]);
        if (!n) throw malformed(value, "xywh values must be non-negative integers");
        v[i] = *n;
    }
    if (v[2] <= 0 || v[3] <= 0) throw malformed(value, "xywh width and height must be positive");
    return SpatialRegion{v[0], v[1], v[2], v[3]};
}

auto parse_time(std::string_view value, std::string_view body) -> FragmentValue {
    if (body.starts_with("smpte") || body.starts_with("clock:")) return OpaqueFragment{std::string(value)};
    if (body.starts_with("npt:")) body.remove_prefix(4);
    const auto parts = split(body, ',');
    if (parts.size() > 2 || (parts.size() == 1 && parts[0].empty())) throw malformed(value, "bad time range arity");

    TimeInterval out;
    if (!parts[0].empty()) {
        const auto b = parse_npt(parts[0]);
        if (!b) throw malformed(value, "begin is not an NPT time");
        out.begin = *b;
    } else if (parts.size() == 1 || parts[1].empty()) {
        throw malformed(value, "empty time range");
    }
    if (parts.size() == 2) {
        const auto e = parse_npt(parts[1]);
        if (!e) throw malformed(value, "end is not an NPT time");
        if (!(*e > out.begin)) throw malformed(value, "end must be after begin");
        out.end = *e;
    }
    return out;
}

}  // namespace

auto parse_fragment(std::string_view value) -> FragmentValue {
    if (value.starts_with("xywh=")) return parse_xywh(value, value.substr(5));
    if (value.starts_with("t=")) return parse_time(value, value.substr(2));
    return OpaqueFragment{std::string(value)};
}

auto parse_fragment(const FragmentSelector& sel) -> FragmentValue {
    return parse_fragment(std::string_view(sel.value));
}

namespace {

auto on_segment(Point a, Point b, double x, double y) -> bool {
    const double cross = (b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x);
    if (cross != 0.0) return false;
    return x >= std::min(a.x, b.x) && x <= std::max(a.x, b.x) && y >= std::min(a.y, b.y) && y <= std::max(a.y, b.y);
}

auto in_polygon(const Polygon& poly, double x, double y) -> bool {
    const auto& v = poly.vertices;
    const std::size_t n = v.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        if (on_segment(v[j], v[i], x, y)) return true;
    }
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        if ((v[i].y > y) != (v[j].y > y)) {
            const double cross_x = v[j].x + (y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y);
            if (x < cross_x) inside = !inside;
        }
    }
    return inside;
}

}  // namespace

auto point_in_area(const SvgArea& area, double x, double y) -> bool {
    return std::visit(
        [&](const auto& shape) -> bool {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, Circle>) {
                const double dx = x - shape.cx;
                const double dy = y - shape.cy;
                return dx * dx + dy * dy <= shape.r * shape.r;
            } else if constexpr (std::is_same_v<T, Rect>) {
                return x >= shape.x && x <= shape.x + shape.w && y >= shape.y && y <= shape.y + shape.h;
            } else {
                if (shape.vertices.size() < 3) return false;
                return in_polygon(shape, x, y);
            }
        },
        area.shape);
}

}  // namespace oa

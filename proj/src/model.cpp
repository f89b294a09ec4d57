#include "oa/model.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>

namespace oa {
namespace {

constexpr std::array<std::pair<DcmiType::Kind, std::string_view>, 6> dcmi_names{{
    {DcmiType::Kind::image, "Image"},
    {DcmiType::Kind::sound, "Sound"},
    {DcmiType::Kind::text, "Text"},
    {DcmiType::Kind::moving_image, "MovingImage"},
    {DcmiType::Kind::dataset, "Dataset"},
    {DcmiType::Kind::interactive_resource, "InteractiveResource"},
}};

constexpr std::array<std::pair<Motivation::Kind, std::string_view>, 6> motivation_names{{
    {Motivation::Kind::commenting, "commenting"},
    {Motivation::Kind::tagging, "tagging"},
    {Motivation::Kind::bookmarking, "bookmarking"},
    {Motivation::Kind::questioning, "questioning"},
    {Motivation::Kind::replying, "replying"},
    {Motivation::Kind::describing, "describing"},
}};

auto is_ident_char(unsigned char c) -> bool {
    return std::isalnum(c) || c == '-' || c == '_' || c >= 0x80;
}

auto is_style_token(const std::string& s) -> bool {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return is_ident_char(c); });
}

// RFC 7230 tchar.
auto is_header_token(const std::string& s) -> bool {
    static constexpr std::string_view extra = "!#$%&'*+-.^_`|~";
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || extra.find(static_cast<char>(c)) != std::string_view::npos;
    });
}

class Checker {
public:
    void add(std::string path, std::string message) { report_.push_back({std::move(path), std::move(message)}); }

    void dcmi(const std::optional<DcmiType>& t, const std::string& path) {
        if (t && t->kind == DcmiType::Kind::other && t->label.empty()) add(path + ".dcmi", "Other type requires a label");
    }

    void content(const EmbeddedContent& c, const std::string& path) {
        if (c.text.empty() && !c.media_type) add(path + ".text", "empty text requires an explicit media type");
        if (c.media_type && c.media_type->empty()) add(path + ".media_type", "media type is empty");
        if (c.language && c.language->empty()) add(path + ".language", "language tag is empty");
    }

    void selector(const Selector& sel, const std::string& path) {
        std::visit([&](const auto& s) { check_selector(s, path); }, sel);
    }

    void state(const State& st, const std::string& path) {
        if (const auto* http = std::get_if<HttpRequestState>(&st)) {
            if (http->headers.empty()) add(path, "HTTP request state needs at least one header");
            for (std::size_t i = 0; i < http->headers.size(); ++i) {
                if (!is_header_token(http->headers[i].first)) {
                    add(path + ".headers[" + std::to_string(i) + "]", "header name is not a token");
                }
            }
        }
    }

    void specific(const SpecificResource& s, const std::string& path) {
        if (!s.selector && !s.state && !s.style_class) add(path, "specific resource specifies nothing");
        if (s.selector) selector(*s.selector, path + ".selector");
        if (s.state) state(*s.state, path + ".state");
        if (s.style_class && !is_style_token(*s.style_class)) add(path + ".style_class", "style class is not a token");
    }

    void resource(const ResourceRef& r, const std::string& path) {
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, ExternalResource>) {
                    dcmi(v.dcmi, path);
                } else if constexpr (std::is_same_v<T, EmbeddedResource>) {
                    content(v.content, path + ".content");
                    dcmi(v.dcmi, path);
                } else if constexpr (std::is_same_v<T, GraphResource>) {
                    if (v.graph.triples.empty()) add(path + ".graph", "graph body has no triples");
                    for (const auto& t : v.graph.triples) {
                        if (const auto* lit = std::get_if<rdf::Literal>(&t.object); lit && lit->datatype && lit->language) {
                            add(path + ".graph", "literal has both datatype and language");
                            break;
                        }
                    }
                } else if constexpr (std::is_same_v<T, SpecificRef>) {
                    specific(v.spec, path + ".spec");
                    dcmi(v.dcmi, path);
                }
            },
            r);
    }

    auto finish() -> ValidationReport {
        std::stable_sort(report_.begin(), report_.end(),
                         [](const Violation& a, const Violation& b) { return a.path < b.path; });
        return std::move(report_);
    }

private:
    void check_selector(const TextPosition& s, const std::string& path) {
        if (s.start > s.end) add(path, "start exceeds end");
    }
    void check_selector(const TextQuote& s, const std::string& path) {
        if (s.exact.empty()) add(path + ".exact", "exact text is empty");
    }
    void check_selector(const FragmentSelector& s, const std::string& path) {
        if (s.value.empty()) add(path + ".value", "fragment value is empty");
    }
    void check_selector(const SvgArea& s, const std::string& path) {
        std::visit(
            [&](const auto& shape) {
                using T = std::decay_t<decltype(shape)>;
                if constexpr (std::is_same_v<T, Circle>) {
                    if (!std::isfinite(shape.cx) || !std::isfinite(shape.cy) || !std::isfinite(shape.r)) {
                        add(path, "circle has non-finite coordinates");
                    } else if (!(shape.r > 0)) {
                        add(path, "circle radius must be positive");
                    }
                } else if constexpr (std::is_same_v<T, Rect>) {
                    if (!std::isfinite(shape.x) || !std::isfinite(shape.y) || !std::isfinite(shape.w) ||
                        !std::isfinite(shape.h)) {
                        add(path, "rect has non-finite coordinates");
                    } else if (!(shape.w > 0) || !(shape.h > 0)) {
                        add(path, "rect width and height must be positive");
                    }
                } else {
                    if (shape.vertices.size() < 3) add(path, "polygon needs at least 3 vertices");
                    for (const auto& p : shape.vertices) {
                        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
                            add(path, "polygon has non-finite vertex");
                            break;
                        }
                    }
                }
            },
            s.shape);
    }

    ValidationReport report_;
};

void collect_style_refs(const std::vector<ResourceRef>& refs, const std::string& base,
                        std::vector<std::pair<std::string, std::string>>& out) {
    for (std::size_t i = 0; i < refs.size(); ++i) {
        if (const auto* s = std::get_if<SpecificRef>(&refs[i]); s && s->spec.style_class) {
            out.emplace_back(base + "[" + std::to_string(i) + "].spec.style_class", *s->spec.style_class);
        }
    }
}

}  // namespace

auto dcmi_name(const DcmiType& t) -> std::string {
    for (const auto& [kind, name] : dcmi_names) {
        if (kind == t.kind) return std::string(name);
    }
    return t.label;
}

auto dcmi_from_name(const std::string& name) -> DcmiType {
    for (const auto& [kind, n] : dcmi_names) {
        if (n == name) return DcmiType{kind, {}};
    }
    return DcmiType::other(name);
}

auto motivation_name(const Motivation& m) -> std::string {
    if (m.kind == Motivation::Kind::extension) return m.extension ? m.extension->str() : std::string{};
    for (const auto& [kind, name] : motivation_names) {
        if (kind == m.kind) return std::string(name);
    }
    return {};
}

auto motivation_from_name(std::string_view name) -> std::optional<Motivation> {
    for (const auto& [kind, n] : motivation_names) {
        if (n == name) return Motivation::of(kind);
    }
    return std::nullopt;
}

auto style_classes(const Style& s) -> std::vector<std::string> {
    std::vector<std::string> out;
    if (s.style_class) out.push_back(*s.style_class);
    const std::string& css = s.styled_by.text;
    for (std::size_t i = 0; i + 1 < css.size(); ++i) {
        if (css[i] != '.') continue;
        if (i > 0 && std::isdigit(static_cast<unsigned char>(css[i - 1]))) continue;
        const auto first = static_cast<unsigned char>(css[i + 1]);
        if (std::isdigit(first) || !is_ident_char(first)) continue;
        std::size_t j = i + 1;
        while (j < css.size() && is_ident_char(static_cast<unsigned char>(css[j]))) ++j;
        out.push_back(css.substr(i + 1, j - i - 1));
        i = j - 1;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

auto validate_resource(const ResourceRef& r, const std::string& base) -> ValidationReport {
    Checker c;
    c.resource(r, base);
    return c.finish();
}

auto validate(const Annotation& a) -> ValidationReport {
    Checker c;
    if (a.targets.empty()) c.add("targets", "annotation has no target");
    for (std::size_t i = 0; i < a.targets.size(); ++i) {
        const std::string path = "targets[" + std::to_string(i) + "]";
        if (std::holds_alternative<SemanticTag>(a.targets[i])) c.add(path, "semantic tag as target");
        c.resource(a.targets[i], path);
    }
    for (std::size_t i = 0; i < a.bodies.size(); ++i) {
        c.resource(a.bodies[i], "bodies[" + std::to_string(i) + "]");
    }

    if (a.motivation) {
        const bool is_ext = a.motivation->kind == Motivation::Kind::extension;
        if (is_ext != a.motivation->extension.has_value()) {
            c.add("motivation", "extension IRI must be present exactly for extension motivations");
        }
    }

    const auto& p = a.provenance;
    auto check_agent = [&](const std::optional<Agent>& agent, const std::string& path) {
        if (agent && !agent->id && !agent->name) c.add(path, "agent has neither id nor name");
    };
    check_agent(p.annotated_by, "provenance.annotated_by");
    check_agent(p.serialized_by, "provenance.serialized_by");
    if (p.annotated_at && p.serialized_at && *p.annotated_at > *p.serialized_at) {
        c.add("provenance.serialized_at", "serialized before annotated");
    }

    if (a.style) {
        c.content(a.style->styled_by, "style.styled_by");
        if (a.style->style_class && !is_style_token(*a.style->style_class)) {
            c.add("style.style_class", "style class is not a token");
        }
        std::vector<std::pair<std::string, std::string>> refs;
        collect_style_refs(a.targets, "targets", refs);
        collect_style_refs(a.bodies, "bodies", refs);
        const auto known = style_classes(*a.style);
        for (const auto& [path, cls] : refs) {
            if (!std::binary_search(known.begin(), known.end(), cls)) {
                c.add(path, "style class '" + cls + "' is not defined by the style");
            }
        }
    }
    return c.finish();
}

auto new_annotation(std::vector<ResourceRef> targets, std::vector<ResourceRef> bodies,
                    std::optional<Motivation> motivation, Provenance provenance) -> Annotation {
    if (targets.empty()) throw Error(Errc::empty_targets, "an annotation needs at least one target");
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (std::holds_alternative<SemanticTag>(targets[i])) {
            throw InvalidResourceError(i, "semantic tag as target");
        }
        if (auto r = validate_resource(targets[i], "targets[" + std::to_string(i) + "]"); !r.empty()) {
            throw InvalidResourceError(i, r.front().path + ": " + r.front().message);
        }
    }
    for (std::size_t i = 0; i < bodies.size(); ++i) {
        if (auto r = validate_resource(bodies[i], "bodies[" + std::to_string(i) + "]"); !r.empty()) {
            throw InvalidResourceError(targets.size() + i, r.front().path + ": " + r.front().message);
        }
    }
    Annotation a;
    a.targets = std::move(targets);
    a.bodies = std::move(bodies);
    a.motivation = std::move(motivation);
    a.provenance = std::move(provenance);
    if (auto r = validate(a); !r.empty()) {
        throw Error(Errc::invalid_value, r.front().path + ": " + r.front().message);
    }
    return a;
}

auto specific_target(Iri source, std::optional<Selector> selector, std::optional<State> state,
                     std::optional<std::string> style_class) -> ResourceRef {
    if (!selector && !state && !style_class) {
        throw Error(Errc::nothing_specified, "specific resource needs a selector, state or style class");
    }
    ResourceRef ref = SpecificRef{SpecificResource{std::move(source), std::move(selector), std::move(state),
                                                   std::move(style_class)},
                                  std::nullopt};
    if (auto r = validate_resource(ref, "spec"); !r.empty()) {
        throw Error(Errc::invalid_value, r.front().path + ": " + r.front().message);
    }
    return ref;
}

}  // namespace oa

#include "oa/serialization.hpp"

#include <charconv>
#include <map>

namespace oa {
namespace {

using rdf::BlankNode;
using rdf::Literal;
using rdf::Node;
using rdf::Term;
using namespace rdf::vocab;

auto format_number(double v) -> std::string {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

auto svg_markup(const SvgArea& area) -> std::string {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Circle>) {
                return "<circle cx=\"" + format_number(s.cx) + "\" cy=\"" + format_number(s.cy) + "\" r=\"" +
                       format_number(s.r) + "\"/>";
            } else if constexpr (std::is_same_v<T, Rect>) {
                return "<rect x=\"" + format_number(s.x) + "\" y=\"" + format_number(s.y) + "\" width=\"" +
                       format_number(s.w) + "\" height=\"" + format_number(s.h) + "\"/>";
            } else {
                std::string pts;
                for (const auto& p : s.vertices) {
                    if (!pts.empty()) pts += ' ';
                    pts += format_number(p.x) + "," + format_number(p.y);
                }
                return "<polygon points=\"" + pts + "\"/>";
            }
        },
        area.shape);
}

class GraphBuilder {
public:
    explicit GraphBuilder(const VocabularyConfig& cfg) : cfg_(cfg) {}

    auto build(const Annotation& a) -> rdf::GraphSet {
        const Node ann = a.id ? Node{*a.id} : fresh();
        type(ann, cfg_.term("Annotation"));
        if (a.motivation) {
            const Iri m = a.motivation->kind == Motivation::Kind::extension ? *a.motivation->extension
                                                                            : cfg_.term(motivation_name(*a.motivation));
            add(ann, cfg_.term("motivatedBy"), m);
        }
        const auto& p = a.provenance;
        if (p.annotated_by) add(ann, cfg_.term("annotatedBy"), rdf::to_term(agent(*p.annotated_by)));
        if (p.annotated_at) add(ann, cfg_.term("annotatedAt"), datetime(*p.annotated_at));
        if (p.serialized_by) add(ann, cfg_.term("serializedBy"), rdf::to_term(agent(*p.serialized_by)));
        if (p.serialized_at) add(ann, cfg_.term("serializedAt"), datetime(*p.serialized_at));
        for (const auto& b : a.bodies) add(ann, cfg_.term("hasBody"), rdf::to_term(resource(b)));
        for (const auto& t : a.targets) add(ann, cfg_.term("hasTarget"), rdf::to_term(resource(t)));
        if (a.style) {
            const Node s = fresh();
            add(ann, cfg_.term("styledBy"), rdf::to_term(s));
            type(s, cfg_.term("CssStyle"));
            content(s, a.style->styled_by);
            if (a.style->style_class) add(s, cfg_.term("styleClass"), plain(*a.style->style_class));
        }
        for (const auto& [key, json] : a.extensions) {
            auto pred = Iri::try_parse(key);
            if (!pred) pred = Iri::try_parse(cfg_.oa_ns.str() + percent_encode(key));
            add(ann, *pred, Literal{json, Iri::parse("http://www.w3.org/1999/02/22-rdf-syntax-ns#JSON"), std::nullopt});
        }

        rdf::GraphSet out;
        out.push_back(std::move(default_graph_));
        for (auto& g : named_) out.push_back(std::move(g));
        return out;
    }

private:
    auto fresh() -> Node { return BlankNode{"b" + std::to_string(counter_++)}; }

    void add(const Node& s, const Iri& p, Term o) { default_graph_.add(s, p, std::move(o)); }
    void type(const Node& s, const Iri& t) { add(s, Iri::parse(rdf_type), t); }

    static auto plain(std::string s) -> Term { return Literal{std::move(s), std::nullopt, std::nullopt}; }
    static auto typed(std::string s, const char* dt) -> Term { return Literal{std::move(s), Iri::parse(dt), std::nullopt}; }
    static auto datetime(Timestamp t) -> Term { return typed(format_timestamp(t), xsd_datetime); }

    auto agent(const Agent& a) -> Node {
        const Node n = a.id ? Node{*a.id} : fresh();
        type(n, Iri::parse(foaf_agent));
        if (a.name) add(n, Iri::parse(foaf_name), plain(*a.name));
        return n;
    }

    void content(const Node& n, const EmbeddedContent& c) {
        add(n, Iri::parse(cnt_chars), plain(c.text));
        if (c.media_type) add(n, Iri::parse(dc_format), plain(*c.media_type));
        if (c.language) add(n, Iri::parse(dc_language), plain(*c.language));
    }

    void dcmi(const Node& n, const std::optional<DcmiType>& t) {
        if (t) type(n, Iri::parse(std::string(dctypes_ns) + percent_encode(dcmi_name(*t))));
    }

    auto selector(const Selector& sel) -> Node {
        const Node n = fresh();
        std::visit(
            [&](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, TextPosition>) {
                    type(n, cfg_.term("TextPositionSelector"));
                    add(n, cfg_.term("start"), typed(std::to_string(s.start), xsd_integer));
                    add(n, cfg_.term("end"), typed(std::to_string(s.end), xsd_integer));
                } else if constexpr (std::is_same_v<T, TextQuote>) {
                    type(n, cfg_.term("TextQuoteSelector"));
                    add(n, cfg_.term("exact"), plain(s.exact));
                    if (s.prefix) add(n, cfg_.term("prefix"), plain(*s.prefix));
                    if (s.suffix) add(n, cfg_.term("suffix"), plain(*s.suffix));
                } else if constexpr (std::is_same_v<T, FragmentSelector>) {
                    type(n, cfg_.term("FragmentSelector"));
                    add(n, Iri::parse(rdf_value), plain(s.value));
                    if (s.conforms_to) add(n, Iri::parse(dcterms_conforms_to), *s.conforms_to);
                } else {
                    type(n, cfg_.term("SvgSelector"));
                    add(n, Iri::parse(cnt_chars), plain(svg_markup(s)));
                    add(n, Iri::parse(dc_format), plain("image/svg+xml"));
                }
            },
            sel);
        return n;
    }

    auto state(const State& st) -> Node {
        const Node n = fresh();
        if (const auto* http = std::get_if<HttpRequestState>(&st)) {
            type(n, cfg_.term("HttpRequestState"));
            std::string raw;
            for (const auto& [name, value] : http->headers) raw += name + ": " + value + "\r\n";
            add(n, Iri::parse(rdf_value), plain(raw));
        } else {
            type(n, cfg_.term("TimeState"));
            add(n, cfg_.term("when"), datetime(std::get<TimeState>(st).source_date));
        }
        return n;
    }

    auto graph_body(const rdf::TripleGraph& g) -> Node {
        std::map<std::string, Node> relabel;
        auto map_node = [&](const Node& n) -> Node {
            const auto* b = std::get_if<BlankNode>(&n);
            if (!b) return n;
            auto it = relabel.find(b->label);
            if (it == relabel.end()) it = relabel.emplace(b->label, fresh()).first;
            return it->second;
        };
        const Node name = g.name ? map_node(*g.name) : fresh();
        type(name, cfg_.graph_type_iri);
        rdf::TripleGraph out;
        out.name = name;
        for (const auto& t : g.triples) {
            Term object = t.object;
            if (const auto* b = std::get_if<BlankNode>(&t.object)) object = rdf::to_term(map_node(*b));
            out.add(map_node(t.subject), t.predicate, std::move(object));
        }
        named_.push_back(std::move(out));
        return name;
    }

    auto resource(const ResourceRef& r) -> Node {
        return std::visit(
            [&](const auto& v) -> Node {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, ExternalResource>) {
                    dcmi(v.iri, v.dcmi);
                    return v.iri;
                } else if constexpr (std::is_same_v<T, EmbeddedResource>) {
                    const Node n = fresh();
                    type(n, Iri::parse(cnt_content_as_text));
                    content(n, v.content);
                    dcmi(n, v.dcmi);
                    return n;
                } else if constexpr (std::is_same_v<T, SemanticTag>) {
                    type(v.concept_iri, cfg_.term("SemanticTag"));
                    return v.concept_iri;
                } else if constexpr (std::is_same_v<T, GraphResource>) {
                    return graph_body(v.graph);
                } else {
                    const Node n = fresh();
                    type(n, cfg_.term("SpecificResource"));
                    add(n, cfg_.term("hasSource"), v.spec.source);
                    if (v.spec.selector) add(n, cfg_.term("hasSelector"), rdf::to_term(selector(*v.spec.selector)));
                    if (v.spec.state) add(n, cfg_.term("hasState"), rdf::to_term(state(*v.spec.state)));
                    if (v.spec.style_class) add(n, cfg_.term("styleClass"), plain(*v.spec.style_class));
                    dcmi(n, v.dcmi);
                    return n;
                }
            },
            r);
    }

    const VocabularyConfig& cfg_;
    std::size_t counter_ = 0;
    rdf::TripleGraph default_graph_;
    std::vector<rdf::TripleGraph> named_;
};

}  // namespace

auto to_graph(const Annotation& a, const VocabularyConfig& cfg) -> rdf::GraphSet {
    if (auto report = validate(a); !report.empty()) {
        throw Error(Errc::invalid_annotation, report.front().path + ": " + report.front().message);
    }
    return GraphBuilder(cfg).build(a);
}

}  // namespace oa

#include "oa/serialization.hpp"

#include <algorithm>
#include <array>

namespace oa {
namespace {

using Json = Document;

constexpr std::array<std::string_view, 11> annotation_keys{
    "@context",    "@id",        "@type",        "motivatedBy", "annotatedBy", "annotatedAt",
    "serializedBy", "serializedAt", "hasBody",    "hasTarget",   "styledBy",
};

auto invalid(const std::string& path, const std::string& why) -> Error {
    return Error(Errc::malformed_node, path + ": " + why);
}

// ---- writing ----

void put_dcmi(Json& node, const std::optional<DcmiType>& t) {
    if (!t) return;
    if (t->kind == DcmiType::Kind::other) {
        node["dcType"] = "Other";
        node["dcTypeLabel"] = t->label;
    } else {
        node["dcType"] = dcmi_name(*t);
    }
}

auto agent_json(const Agent& a) -> Json {
    Json j = Json::object();
    if (a.id) j["@id"] = a.id->str();
    if (a.name) j["name"] = *a.name;
    return j;
}

void put_content(Json& node, const EmbeddedContent& c) {
    node["chars"] = c.text;
    if (c.media_type) node["format"] = *c.media_type;
    if (c.language) node["language"] = *c.language;
}

auto selector_json(const Selector& sel) -> Json {
    Json j = Json::object();
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, TextPosition>) {
                j["@type"] = "TextPositionSelector";
                j["start"] = s.start;
                j["end"] = s.end;
            } else if constexpr (std::is_same_v<T, TextQuote>) {
                j["@type"] = "TextQuoteSelector";
                j["exact"] = s.exact;
                if (s.prefix) j["prefix"] = *s.prefix;
                if (s.suffix) j["suffix"] = *s.suffix;
            } else if constexpr (std::is_same_v<T, FragmentSelector>) {
                j["@type"] = "FragmentSelector";
                j["value"] = s.value;
                if (s.conforms_to) j["conformsTo"] = s.conforms_to->str();
            } else {
                j["@type"] = "SvgSelector";
                std::visit(
                    [&](const auto& shape) {
                        using S = std::decay_t<decltype(shape)>;
                        if constexpr (std::is_same_v<S, Circle>) {
                            j["shape"] = "circle";
                            j["cx"] = shape.cx;
                            j["cy"] = shape.cy;
                            j["r"] = shape.r;
                        } else if constexpr (std::is_same_v<S, Rect>) {
                            j["shape"] = "rect";
                            j["x"] = shape.x;
                            j["y"] = shape.y;
                            j["w"] = shape.w;
                            j["h"] = shape.h;
                        } else {
                            j["shape"] = "polygon";
                            Json pts = Json::array();
                            for (const auto& p : shape.vertices) pts.push_back(Json::array({p.x, p.y}));
                            j["points"] = std::move(pts);
                        }
                    },
                    s.shape);
            }
        },
        sel);
    return j;
}

auto state_json(const State& st) -> Json {
    Json j = Json::object();
    if (const auto* http = std::get_if<HttpRequestState>(&st)) {
        j["@type"] = "HttpRequestState";
        Json headers = Json::array();
        for (const auto& [name, value] : http->headers) headers.push_back(Json::array({name, value}));
        j["headers"] = std::move(headers);
    } else {
        j["@type"] = "TimeState";
        j["sourceDate"] = format_timestamp(std::get<TimeState>(st).source_date);
    }
    return j;
}

auto resource_json(const ResourceRef& r) -> Json {
    Json j = Json::object();
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ExternalResource>) {
                j["@id"] = v.iri.str();
                put_dcmi(j, v.dcmi);
            } else if constexpr (std::is_same_v<T, EmbeddedResource>) {
                j["@type"] = "ContentAsText";
                put_content(j, v.content);
                put_dcmi(j, v.dcmi);
            } else if constexpr (std::is_same_v<T, SemanticTag>) {
                j["@id"] = v.concept_iri.str();
                j["@type"] = "SemanticTag";
            } else if constexpr (std::is_same_v<T, GraphResource>) {
                j = graph_to_json(v.graph);
            } else {
                j["@type"] = "SpecificResource";
                j["hasSource"] = v.spec.source.str();
                if (v.spec.selector) j["hasSelector"] = selector_json(*v.spec.selector);
                if (v.spec.state) j["hasState"] = state_json(*v.spec.state);
                if (v.spec.style_class) j["styleClass"] = *v.spec.style_class;
                put_dcmi(j, v.dcmi);
            }
        },
        r);
    return j;
}

auto node_string(const rdf::Node& n) -> std::string {
    if (const auto* b = std::get_if<rdf::BlankNode>(&n)) return "_:" + b->label;
    return std::get<Iri>(n).str();
}

// ---- reading ----

/// Tracks which keys of an object node were consumed.
class NodeReader {
public:
    NodeReader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw invalid(path_, "expected an object");
    }

    [[nodiscard]] auto path() const -> const std::string& { return path_; }
    [[nodiscard]] auto sub(std::string_view key) const -> std::string { return path_ + "." + std::string(key); }

    auto has(std::string_view key) -> bool {
        const bool present = j_.contains(std::string(key));
        if (present) seen_.emplace_back(key);
        return present;
    }

    auto raw(std::string_view key) -> const Json& {
        if (!has(key)) throw invalid(path_, "missing key '" + std::string(key) + "'");
        return j_.at(std::string(key));
    }

    auto str(std::string_view key) -> std::string {
        const auto& v = raw(key);
        if (!v.is_string()) throw invalid(sub(key), "expected a string");
        return v.get<std::string>();
    }

    auto opt_str(std::string_view key) -> std::optional<std::string> {
        if (!has(key)) return std::nullopt;
        const auto& v = j_.at(std::string(key));
        if (!v.is_string()) throw invalid(sub(key), "expected a string");
        return v.get<std::string>();
    }

    auto iri(std::string_view key) -> Iri {
        const auto s = str(key);
        auto parsed = Iri::try_parse(s);
        if (!parsed) throw invalid(sub(key), "not an absolute IRI");
        return *parsed;
    }

    auto opt_iri(std::string_view key) -> std::optional<Iri> {
        if (!j_.contains(std::string(key))) return std::nullopt;
        return iri(key);
    }

    auto number(std::string_view key) -> double {
        const auto& v = raw(key);
        if (!v.is_number()) throw invalid(sub(key), "expected a number");
        return v.get<double>();
    }

    auto unsigned_int(std::string_view key) -> std::uint64_t {
        const auto& v = raw(key);
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
            throw invalid(sub(key), "expected a non-negative integer");
        }
        return v.get<std::uint64_t>();
    }

    auto timestamp(std::string_view key) -> std::optional<Timestamp> {
        auto s = opt_str(key);
        if (!s) return std::nullopt;
        auto t = try_parse_timestamp(*s);
        if (!t) throw invalid(sub(key), "not an RFC 3339 date-time");
        return t;
    }

    /// Any key not consumed so far is an error.
    void finish() const {
        for (const auto& [key, value] : j_.items()) {
            if (std::find(seen_.begin(), seen_.end(), key) == seen_.end()) {
                throw invalid(sub(key), "unrecognized key");
            }
        }
    }

private:
    const Json& j_;
    std::string path_;
    std::vector<std::string> seen_;
};

auto read_dcmi(NodeReader& r) -> std::optional<DcmiType> {
    auto name = r.opt_str("dcType");
    auto label = r.opt_str("dcTypeLabel");
    if (!name) {
        if (label) throw invalid(r.sub("dcTypeLabel"), "label without dcType");
        return std::nullopt;
    }
    if (*name == "Other") return DcmiType::other(label.value_or(""));
    if (label) throw invalid(r.sub("dcTypeLabel"), "label only allowed with dcType Other");
    const auto t = dcmi_from_name(*name);
    if (t.kind == DcmiType::Kind::other) throw invalid(r.sub("dcType"), "unknown DCMI type '" + *name + "'");
    return t;
}

auto read_content(NodeReader& r) -> EmbeddedContent {
    EmbeddedContent c;
    c.text = r.str("chars");
    c.media_type = r.opt_str("format");
    c.language = r.opt_str("language");
    return c;
}

auto read_selector(const Json& j, const std::string& path) -> Selector {
    NodeReader r(j, path);
    const auto type = r.str("@type");
    Selector out;
    if (type == "TextPositionSelector") {
        out = TextPosition{r.unsigned_int("start"), r.unsigned_int("end")};
    } else if (type == "TextQuoteSelector") {
        TextQuote q;
        q.exact = r.str("exact");
        q.prefix = r.opt_str("prefix");
        q.suffix = r.opt_str("suffix");
        out = std::move(q);
    } else if (type == "FragmentSelector") {
        FragmentSelector f;
        f.value = r.str("value");
        f.conforms_to = r.opt_iri("conformsTo");
        out = std::move(f);
    } else if (type == "SvgSelector") {
        const auto shape = r.str("shape");
        if (shape == "circle") {
            out = SvgArea{Circle{r.number("cx"), r.number("cy"), r.number("r")}};
        } else if (shape == "rect") {
            out = SvgArea{Rect{r.number("x"), r.number("y"), r.number("w"), r.number("h")}};
        } else if (shape == "polygon") {
            const auto& pts = r.raw("points");
            if (!pts.is_array()) throw invalid(r.sub("points"), "expected an array");
            Polygon poly;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const auto& p = pts[i];
                if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
                    throw invalid(r.sub("points") + "[" + std::to_string(i) + "]", "expected [x, y]");
                }
                poly.vertices.push_back(Point{p[0].get<double>(), p[1].get<double>()});
            }
            out = SvgArea{std::move(poly)};
        } else {
            throw Error(Errc::unknown_type, r.sub("shape") + ": unknown shape '" + shape + "'");
        }
    } else {
        throw Error(Errc::unknown_type, r.sub("@type") + ": unknown selector type '" + type + "'");
    }
    r.finish();
    return out;
}

auto read_state(const Json& j, const std::string& path) -> State {
    NodeReader r(j, path);
    const auto type = r.str("@type");
    State out;
    if (type == "HttpRequestState") {
        const auto& hs = r.raw("headers");
        if (!hs.is_array()) throw invalid(r.sub("headers"), "expected an array");
        HttpRequestState http;
        for (std::size_t i = 0; i < hs.size(); ++i) {
            const auto& h = hs[i];
            if (!h.is_array() || h.size() != 2 || !h[0].is_string() || !h[1].is_string()) {
                throw invalid(r.sub("headers") + "[" + std::to_string(i) + "]", "expected [name, value]");
            }
            http.headers.emplace_back(h[0].get<std::string>(), h[1].get<std::string>());
        }
        out = std::move(http);
    } else if (type == "TimeState") {
        const auto when = r.timestamp("sourceDate");
        if (!when) throw invalid(path, "missing key 'sourceDate'");
        out = TimeState{*when};
    } else {
        throw Error(Errc::unknown_type, r.sub("@type") + ": unknown state type '" + type + "'");
    }
    r.finish();
    return out;
}

auto read_resource(const Json& j, const std::string& path) -> ResourceRef {
    if (j.is_string()) {
        auto iri = Iri::try_parse(j.get<std::string>());
        if (!iri) throw invalid(path, "not an absolute IRI");
        return ExternalResource{*iri, std::nullopt};
    }
    NodeReader r(j, path);
    const auto type = r.opt_str("@type");
    std::optional<ResourceRef> out;
    if (!type) {
        auto iri = r.iri("@id");
        out = ExternalResource{std::move(iri), read_dcmi(r)};
    } else if (*type == "SemanticTag") {
        out = SemanticTag{r.iri("@id")};
    } else if (*type == "ContentAsText") {
        auto content = read_content(r);
        out = EmbeddedResource{std::move(content), read_dcmi(r)};
    } else if (*type == "Graph") {
        return GraphResource{graph_from_json(j, path)};
    } else if (*type == "SpecificResource") {
        SpecificResource spec{r.iri("hasSource"), std::nullopt, std::nullopt, std::nullopt};
        if (r.has("hasSelector")) spec.selector = read_selector(j.at("hasSelector"), r.sub("hasSelector"));
        if (r.has("hasState")) spec.state = read_state(j.at("hasState"), r.sub("hasState"));
        spec.style_class = r.opt_str("styleClass");
        out = SpecificRef{std::move(spec), read_dcmi(r)};
    } else {
        throw Error(Errc::unknown_type, r.sub("@type") + ": unknown resource type '" + *type + "'");
    }
    r.finish();
    return std::move(*out);
}

auto read_resources(const Json& j, const std::string& path) -> std::vector<ResourceRef> {
    std::vector<ResourceRef> out;
    if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_resource(j[i], path + "[" + std::to_string(i) + "]"));
    } else {
        out.push_back(read_resource(j, path));
    }
    return out;
}

auto read_agent(const Json& j, const std::string& path) -> Agent {
    NodeReader r(j, path);
    Agent a{r.opt_iri("@id"), r.opt_str("name")};
    r.finish();
    return a;
}

auto parse_node(const std::string& s, const std::string& path) -> rdf::Node {
    if (s.starts_with("_:")) {
        if (s.size() == 2) throw invalid(path, "empty blank node label");
        return rdf::BlankNode{s.substr(2)};
    }
    auto iri = Iri::try_parse(s);
    if (!iri) throw invalid(path, "not an IRI or blank node");
    return *iri;
}

}  // namespace

auto VocabularyConfig::defaults() -> VocabularyConfig {
    return VocabularyConfig{
        Iri::parse("http://www.w3.org/ns/oa#"),
        Iri::parse("http://www.w3.org/2004/03/trix/rdfg-1/Graph"),
        Iri::parse("http://www.w3.org/ns/oa-context-20130208.json"),
    };
}

auto term_table(const VocabularyConfig& cfg) -> std::vector<std::pair<std::string, std::string>> {
    const std::string& oa = cfg.oa_ns.str();
    return {
        {"@type", rdf::vocab::rdf_type},
        {"Annotation", oa + "Annotation"},
        {"motivatedBy", oa + "motivatedBy"},
        {"annotatedBy", oa + "annotatedBy"},
        {"annotatedAt", oa + "annotatedAt"},
        {"serializedBy", oa + "serializedBy"},
        {"serializedAt", oa + "serializedAt"},
        {"name", rdf::vocab::foaf_name},
        {"hasBody", oa + "hasBody"},
        {"hasTarget", oa + "hasTarget"},
        {"hasSource", oa + "hasSource"},
        {"hasSelector", oa + "hasSelector"},
        {"hasState", oa + "hasState"},
        {"styleClass", oa + "styleClass"},
        {"styledBy", oa + "styledBy"},
        {"SemanticTag", oa + "SemanticTag"},
        {"SpecificResource", oa + "SpecificResource"},
        {"ContentAsText", rdf::vocab::cnt_content_as_text},
        {"chars", rdf::vocab::cnt_chars},
        {"format", rdf::vocab::dc_format},
        {"language", rdf::vocab::dc_language},
        {"dcType", rdf::vocab::rdf_type},
        {"Graph", cfg.graph_type_iri.str()},
        {"TextPositionSelector", oa + "TextPositionSelector"},
        {"start", oa + "start"},
        {"end", oa + "end"},
        {"TextQuoteSelector", oa + "TextQuoteSelector"},
        {"exact", oa + "exact"},
        {"prefix", oa + "prefix"},
        {"suffix", oa + "suffix"},
        {"FragmentSelector", oa + "FragmentSelector"},
        {"value", rdf::vocab::rdf_value},
        {"conformsTo", rdf::vocab::dcterms_conforms_to},
        {"SvgSelector", oa + "SvgSelector"},
        {"HttpRequestState", oa + "HttpRequestState"},
        {"headers", rdf::vocab::rdf_value},
        {"TimeState", oa + "TimeState"},
        {"sourceDate", oa + "when"},
        {"CssStyle", oa + "CssStyle"},
    };
}

auto graph_to_json(const rdf::TripleGraph& g) -> Document {
    Json j = Json::object();
    if (g.name) j["@id"] = node_string(*g.name);
    j["@type"] = "Graph";
    Json triples = Json::array();
    for (const auto& t : g.triples) {
        Json tj = Json::object();
        tj["subject"] = node_string(t.subject);
        tj["predicate"] = t.predicate.str();
        Json obj = Json::object();
        if (const auto* lit = std::get_if<rdf::Literal>(&t.object)) {
            obj["@value"] = lit->lexical;
            if (lit->datatype) obj["@type"] = lit->datatype->str();
            if (lit->language) obj["@language"] = *lit->language;
        } else if (const auto* b = std::get_if<rdf::BlankNode>(&t.object)) {
            obj["@id"] = "_:" + b->label;
        } else {
            obj["@id"] = std::get<Iri>(t.object).str();
        }
        tj["object"] = std::move(obj);
        triples.push_back(std::move(tj));
    }
    j["triples"] = std::move(triples);
    return j;
}

auto graph_from_json(const Document& j, const std::string& path) -> rdf::TripleGraph {
    NodeReader r(j, path);
    rdf::TripleGraph g;
    if (auto id = r.opt_str("@id")) g.name = parse_node(*id, r.sub("@id"));
    if (r.str("@type") != "Graph") throw Error(Errc::unknown_type, r.sub("@type") + ": expected Graph");
    const auto& ts = r.raw("triples");
    if (!ts.is_array()) throw invalid(r.sub("triples"), "expected an array");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const std::string tp = r.sub("triples") + "[" + std::to_string(i) + "]";
        NodeReader tr(ts[i], tp);
        auto subject = parse_node(tr.str("subject"), tr.sub("subject"));
        auto predicate = tr.iri("predicate");
        NodeReader orr(tr.raw("object"), tr.sub("object"));
        rdf::Term object = rdf::BlankNode{};
        if (orr.has("@value")) {
            rdf::Literal lit;
            lit.lexical = orr.str("@value");
            lit.datatype = orr.opt_iri("@type");
            lit.language = orr.opt_str("@language");
            if (lit.datatype && lit.language) throw invalid(orr.path(), "literal has both @type and @language");
            object = std::move(lit);
        } else {
            object = rdf::to_term(parse_node(orr.str("@id"), orr.sub("@id")));
        }
        orr.finish();
        tr.finish();
        g.add(std::move(subject), std::move(predicate), std::move(object));
    }
    r.finish();
    return g;
}

auto to_document(const Annotation& a, const VocabularyConfig& cfg) -> Document {
    if (auto report = validate(a); !report.empty()) {
        throw Error(Errc::invalid_annotation, report.front().path + ": " + report.front().message);
    }
    Json doc = Json::object();
    doc["@context"] = cfg.context_iri.str();
    if (a.id) doc["@id"] = a.id->str();
    doc["@type"] = "Annotation";
    if (a.motivation) doc["motivatedBy"] = motivation_name(*a.motivation);
    const auto& p = a.provenance;
    if (p.annotated_by) doc["annotatedBy"] = agent_json(*p.annotated_by);
    if (p.annotated_at) doc["annotatedAt"] = format_timestamp(*p.annotated_at);
    if (p.serialized_by) doc["serializedBy"] = agent_json(*p.serialized_by);
    if (p.serialized_at) doc["serializedAt"] = format_timestamp(*p.serialized_at);
    if (!a.bodies.empty()) {
        Json bodies = Json::array();
        for (const auto& b : a.bodies) bodies.push_back(resource_json(b));
        doc["hasBody"] = std::move(bodies);
    }
    Json targets = Json::array();
    for (const auto& t : a.targets) targets.push_back(resource_json(t));
    doc["hasTarget"] = std::move(targets);
    if (a.style) {
        Json style = Json::object();
        style["@type"] = "CssStyle";
        put_content(style, a.style->styled_by);
        if (a.style->style_class) style["styleClass"] = *a.style->style_class;
        doc["styledBy"] = std::move(style);
    }
    for (const auto& [key, text] : a.extensions) doc[key] = Json::parse(text);
    return doc;
}

auto from_document(const Document& doc, const VocabularyConfig& cfg) -> Annotation {
    (void)cfg;
    if (!doc.is_object()) throw invalid("$", "expected an object");
    if (!doc.contains("hasTarget")) throw Error(Errc::missing_target, "$: no hasTarget");
    NodeReader r(doc, "$");
    if (r.has("@context") && !doc.at("@context").is_string() && !doc.at("@context").is_object() &&
        !doc.at("@context").is_array()) {
        throw invalid("$.@context", "unexpected @context value");
    }
    const auto type = r.str("@type");
    if (type != "Annotation") throw Error(Errc::unknown_type, "$.@type: expected Annotation, got '" + type + "'");

    Annotation a;
    a.id = r.opt_iri("@id");
    if (auto m = r.opt_str("motivatedBy")) {
        if (auto closed = motivation_from_name(*m)) {
            a.motivation = *closed;
        } else if (auto iri = Iri::try_parse(*m)) {
            a.motivation = Motivation::ext(*iri);
        } else {
            throw invalid("$.motivatedBy", "unknown motivation '" + *m + "'");
        }
    }
    if (r.has("annotatedBy")) a.provenance.annotated_by = read_agent(doc.at("annotatedBy"), "$.annotatedBy");
    a.provenance.annotated_at = r.timestamp("annotatedAt");
    if (r.has("serializedBy")) a.provenance.serialized_by = read_agent(doc.at("serializedBy"), "$.serializedBy");
    a.provenance.serialized_at = r.timestamp("serializedAt");
    if (r.has("hasBody")) a.bodies = read_resources(doc.at("hasBody"), "$.hasBody");
    a.targets = read_resources(r.raw("hasTarget"), "$.hasTarget");
    if (a.targets.empty()) throw Error(Errc::missing_target, "$.hasTarget: empty");
    if (r.has("styledBy")) {
        NodeReader sr(doc.at("styledBy"), "$.styledBy");
        if (sr.opt_str("@type").value_or("CssStyle") != "CssStyle") {
            throw Error(Errc::unknown_type, "$.styledBy.@type: expected CssStyle");
        }
        Style style{read_content(sr), sr.opt_str("styleClass")};
        sr.finish();
        a.style = std::move(style);
    }

    for (const auto& [key, value] : doc.items()) {
        if (std::find(annotation_keys.begin(), annotation_keys.end(), key) == annotation_keys.end()) {
            a.extensions[key] = value.dump();
        }
    }
    return a;
}

}  // namespace oa

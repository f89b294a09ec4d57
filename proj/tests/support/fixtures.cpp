#include "fixtures.hpp"

#include "oa/unicode.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace oa::test {

auto iri(const std::string& s) -> Iri { return Iri::parse(s); }
auto ts(const std::string& s) -> Timestamp { return parse_timestamp(s); }

auto map_tagging() -> Annotation {
    Provenance prov;
    prov.annotated_by = Agent{iri("http://maphub.example.org/users/cartographer"), std::string("Mara")};
    prov.annotated_at = ts("2012-10-19T12:00:00Z");
    return new_annotation({ExternalResource{iri(map_image), DcmiType{DcmiType::Kind::image, {}}}},
                          {EmbeddedResource{EmbeddedContent{map_comment, std::nullopt, std::string("en")}, std::nullopt},
                           SemanticTag{iri(dbpedia_gibraltar)}, SemanticTag{iri(dbpedia_hercules)}},
                          Motivation::of(Motivation::Kind::tagging), prov);
}

auto galaxy_video_annotation() -> Annotation {
    return new_annotation({ExternalResource{iri(galaxy_image), DcmiType{DcmiType::Kind::image, {}}}},
                          {ExternalResource{iri(galaxy_video), DcmiType{DcmiType::Kind::moving_image, {}}}},
                          Motivation::of(Motivation::Kind::describing), {});
}

auto circle_on_jpeg() -> Annotation {
    auto target = specific_target(iri(jpeg_image), SvgArea{Circle{100, 80, 40}},
                                  HttpRequestState{{{"Accept", "image/jpeg"}}}, std::nullopt);
    Provenance prov;
    prov.annotated_at = ts("2013-02-08T09:30:00Z");
    return new_annotation({std::move(target)},
                          {EmbeddedResource{EmbeddedContent{"The face in the crowd", std::nullopt, std::nullopt},
                                            std::nullopt}},
                          Motivation::of(Motivation::Kind::commenting), prov);
}

// Gen

auto Gen::uniform(std::size_t lo, std::size_t hi) -> std::size_t {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
}

auto Gen::coin(double p) -> bool { return std::bernoulli_distribution(p)(rng_); }

auto Gen::real(double lo, double hi) -> double { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

auto Gen::word(std::size_t min_len, std::size_t max_len) -> std::string {
    std::string out;
    const auto n = uniform(min_len, max_len);
    for (std::size_t i = 0; i < n; ++i) out += static_cast<char>('a' + uniform(0, 25));
    return out;
}

auto Gen::unicode_text(std::size_t min_len, std::size_t max_len) -> std::string {
    // Small alphabet so quotes repeat. "e" + U+0301 composes to U+00E9 under
    // NFC; "q" + U+0301 has no precomposed form and stays two code points.
    static const std::vector<std::string> pieces = {
        "a", "b", "a", "b", "c", " ", "\xC3\xA9", "\xC3\x9F", "\xE4\xB8\xAD", "\xE6\x96\x87",
        "\xF0\x9F\x98\x80", "\xF0\x9D\x84\x9E", "e\xCC\x81", "q\xCC\x81"};
    std::string out;
    const auto n = uniform(min_len, max_len);
    for (std::size_t i = 0; i < n; ++i) out += pieces[uniform(0, pieces.size() - 1)];
    return out;
}

auto Gen::iri() -> Iri {
    static const std::vector<std::string> hosts = {"example.org", "data.example.com", "media.example.net:8443"};
    std::string s = coin(0.8) ? "http://" : "https://";
    s += hosts[uniform(0, hosts.size() - 1)] + "/" + word(1, 6);
    if (coin(0.3)) s += "/" + word(1, 4);
    if (coin(0.2)) s += "#" + word(1, 4);
    return Iri::parse(s);
}

auto Gen::timestamp() -> Timestamp {
    const auto base = parse_timestamp("2000-01-01T00:00:00Z");
    const auto ms = static_cast<std::int64_t>(uniform(0, 20ULL * 365 * 24 * 3600 * 1000));
    auto t = base + std::chrono::milliseconds(ms);
    if (coin(0.5)) t = std::chrono::floor<std::chrono::seconds>(t);
    return t;
}

auto Gen::dcmi() -> std::optional<DcmiType> {
    switch (uniform(0, 8)) {
        case 0: return std::nullopt;
        case 1: return DcmiType{DcmiType::Kind::image, {}};
        case 2: return DcmiType{DcmiType::Kind::sound, {}};
        case 3: return DcmiType{DcmiType::Kind::text, {}};
        case 4: return DcmiType{DcmiType::Kind::moving_image, {}};
        case 5: return DcmiType{DcmiType::Kind::dataset, {}};
        case 6: return DcmiType{DcmiType::Kind::interactive_resource, {}};
        case 7: return DcmiType::other("Physical" + word(1, 3));
        default: return std::nullopt;
    }
}

auto Gen::selector() -> Selector {
    switch (uniform(0, 5)) {
        case 0: {
            const auto a = uniform(0, 500);
            return TextPosition{a, a + uniform(0, 50)};
        }
        case 1: {
            TextQuote q{unicode_text(1, 6), std::nullopt, std::nullopt};
            if (coin()) q.prefix = unicode_text(0, 5);
            if (coin()) q.suffix = unicode_text(0, 5);
            return q;
        }
        case 2: {
            static const std::vector<std::string> values = {"xywh=10,20,30,40", "t=10,20", "t=5", "section-2",
                                                            "xpointer(/html/body/p[3])", "page=4"};
            FragmentSelector f{values[uniform(0, values.size() - 1)], std::nullopt};
            if (coin()) f.conforms_to = Iri::parse("http://www.w3.org/TR/media-frags/");
            return f;
        }
        case 3: return SvgArea{Circle{real(-100, 100), real(-100, 100), real(0.5, 50)}};
        case 4: return SvgArea{Rect{double(uniform(0, 200)), double(uniform(0, 200)), real(1, 80), double(uniform(1, 80))}};
        default: {
            Polygon p;
            const auto n = uniform(3, 6);
            for (std::size_t i = 0; i < n; ++i) p.vertices.push_back({real(-50, 50), double(uniform(0, 40)) / 4});
            return SvgArea{p};
        }
    }
}

auto Gen::state() -> State {
    if (coin()) {
        static const std::vector<std::pair<std::string, std::string>> headers = {
            {"Accept", "image/jpeg"}, {"Accept-Language", "en-GB"}, {"User-Agent", "viewer/2.1"}, {"X-Token", "abc"}};
        HttpRequestState h;
        const auto n = uniform(1, 3);
        for (std::size_t i = 0; i < n; ++i) h.headers.push_back(headers[uniform(0, headers.size() - 1)]);
        return h;
    }
    return TimeState{timestamp()};
}

auto Gen::motivation() -> Motivation {
    const auto k = uniform(0, 6);
    if (k == 6) return Motivation::ext(Iri::parse("http://vocab.example.org/motivation#" + word()));
    return Motivation::of(static_cast<Motivation::Kind>(k));
}

auto Gen::agent() -> Agent {
    Agent a;
    const auto k = uniform(0, 2);
    if (k != 1) a.id = Iri::parse("http://people.example.org/" + word());
    if (k != 0) a.name = word(3, 8) + (coin() ? " " + word(3, 8) : "");
    return a;
}

auto Gen::graph() -> rdf::TripleGraph {
    rdf::TripleGraph g;
    if (coin(0.3)) g.name = rdf::Node{Iri::parse("http://graphs.example.org/" + word())};
    const auto n = uniform(1, 4);
    const std::vector<std::string> blanks = {"x", "y", "z"};
    for (std::size_t i = 0; i < n; ++i) {
        rdf::Node s = coin(0.4) ? rdf::Node{rdf::BlankNode{blanks[uniform(0, 2)]}} : rdf::Node{iri()};
        const auto p = Iri::parse("http://schema.example.org/" + word(2, 5));
        auto object = [&]() -> rdf::Term {
            switch (uniform(0, 4)) {
                case 0: return iri();
                case 1: return rdf::BlankNode{blanks[uniform(0, 2)]};
                case 2: return rdf::Literal{word(), std::nullopt, std::nullopt};
                case 3:
                    return rdf::Literal{std::to_string(uniform(0, 999)), Iri::parse(rdf::vocab::xsd_integer), std::nullopt};
                default: return rdf::Literal{unicode_text(1, 5), std::nullopt, std::string(coin() ? "en" : "de-CH")};
            }
        };
        const rdf::Term o = object();
        g.add(s, p, o);
    }
    return g;
}

auto Gen::content() -> EmbeddedContent {
    EmbeddedContent c{unicode_text(1, 12), std::nullopt, std::nullopt};
    if (coin(0.4)) c.media_type = coin() ? "text/html" : "text/plain";
    if (coin(0.3)) c.language = coin() ? "en" : "fr";
    if (coin(0.05)) {
        c.text.clear();
        c.media_type = "text/html";
    }
    return c;
}

auto Gen::resource(bool as_target, const std::optional<std::string>& style_class) -> ResourceRef {
    const auto k = uniform(0, as_target ? 3 : 4);
    switch (k) {
        case 0: return ExternalResource{iri(), dcmi()};
        case 1: return EmbeddedResource{content(), dcmi()};
        case 2: {
            SpecificResource s{iri(), std::nullopt, std::nullopt, std::nullopt};
            if (coin(0.8)) s.selector = selector();
            if (coin(0.4)) s.state = state();
            if (style_class && coin(0.5)) s.style_class = style_class;
            if (!s.selector && !s.state && !s.style_class) s.selector = selector();
            return SpecificRef{std::move(s), dcmi()};
        }
        case 3: return GraphResource{graph()};
        default: return SemanticTag{iri()};
    }
}

auto Gen::annotation() -> Annotation {
    Annotation a;
    if (coin(0.5)) a.id = Iri::parse("http://store.example.org/annotations/" + std::to_string(uniform(1, 99999)));
    std::optional<std::string> cls;
    if (coin(0.3)) {
        cls = word(3, 8);
        Style st{EmbeddedContent{"." + *cls + " { color: red; }", std::string("text/css"), std::nullopt}, std::nullopt};
        if (coin(0.4)) st.style_class = word(3, 6);
        a.style = st;
    }
    const auto nt = uniform(1, 3);
    for (std::size_t i = 0; i < nt; ++i) a.targets.push_back(resource(true, cls));
    const auto nb = uniform(0, 3);
    for (std::size_t i = 0; i < nb; ++i) a.bodies.push_back(resource(false, cls));
    if (coin(0.7)) a.motivation = motivation();
    if (coin(0.5)) a.provenance.annotated_by = agent();
    if (coin(0.5)) a.provenance.serialized_by = agent();
    if (coin(0.6)) a.provenance.annotated_at = timestamp();
    if (coin(0.5)) {
        auto t = timestamp();
        if (a.provenance.annotated_at && t < *a.provenance.annotated_at) t = *a.provenance.annotated_at;
        a.provenance.serialized_at = t;
    }
    if (coin(0.2)) {
        nlohmann::ordered_json v;
        v["note"] = word();
        v["n"] = uniform(0, 100);
        a.extensions["x-" + word(2, 5)] = v.dump();
    }
    if (coin(0.1)) a.extensions["http://ext.example.org/rating"] = nlohmann::ordered_json(uniform(1, 5)).dump();
    return a;
}

auto Gen::store_annotation(const std::vector<Iri>& targets, const std::vector<Iri>& tags,
                           const std::vector<std::string>& authors) -> Annotation {
    Annotation a;
    const auto nt = uniform(1, 2);
    for (std::size_t i = 0; i < nt; ++i) {
        const auto& src = targets[uniform(0, targets.size() - 1)];
        if (coin()) {
            a.targets.push_back(ExternalResource{src, std::nullopt});
        } else {
            a.targets.push_back(SpecificRef{SpecificResource{src, selector(), std::nullopt, std::nullopt}, std::nullopt});
        }
    }
    const auto nb = uniform(0, 3);
    for (std::size_t i = 0; i < nb; ++i) {
        if (coin(0.7)) {
            a.bodies.push_back(SemanticTag{tags[uniform(0, tags.size() - 1)]});
        } else {
            a.bodies.push_back(EmbeddedResource{content(), std::nullopt});
        }
    }
    if (coin(0.7)) a.motivation = Motivation::of(static_cast<Motivation::Kind>(uniform(0, 3)));
    if (coin(0.8)) {
        const auto& who = authors[uniform(0, authors.size() - 1)];
        Agent ag;
        if (auto id = Iri::try_parse(who)) {
            ag.id = id;
        } else {
            ag.name = who;
        }
        a.provenance.annotated_by = ag;
    }
    if (coin(0.8)) {
        a.provenance.annotated_at =
            parse_timestamp("2013-01-01T00:00:00Z") + std::chrono::hours(static_cast<long>(uniform(0, 24 * 60)));
    }
    return a;
}

auto Gen::annotea_record() -> annotea::Record {
    annotea::Record r;
    r.annotates = iri();
    if (coin()) {
        r.body = iri();
    } else {
        annotea::InlineBody b{"<p>" + unicode_text(0, 10) + "</p>", "application/xhtml+xml"};
        if (coin(0.2)) b.media_type = "text/html";
        r.body = b;
    }
    if (coin(0.6)) r.context = "xpointer(/html/body/p[" + std::to_string(uniform(1, 40)) + "])";
    if (coin(0.8)) r.author = word(3, 7);
    if (coin(0.8)) r.created = timestamp();
    if (coin(0.6)) {
        auto m = timestamp();
        if (r.created && m < *r.created) m = *r.created;
        r.modified = m;
    }
    switch (uniform(0, 4)) {
        case 0: r.subclass = "Question"; break;
        case 1: r.subclass = "Comment"; break;
        case 2: r.subclass = "Example"; break;
        case 3: r.subclass = "SeeAlso"; break;
        default: break;
    }
    return r;
}

// Oracles

auto oracle_quote(const std::u32string& doc, const std::u32string& exact, const std::u32string& prefix,
                  const std::u32string& suffix) -> OracleMatch {
    OracleMatch out;
    long best = -1;
    int at_best = 0;
    if (exact.empty() || exact.size() > doc.size()) return out;
    for (std::size_t i = 0; i + exact.size() <= doc.size(); ++i) {
        if (doc.substr(i, exact.size()) != exact) continue;
        const std::size_t end = i + exact.size();
        std::size_t before = 0;
        for (std::size_t k = std::min(prefix.size(), i); k > 0; --k) {
            if (prefix.substr(prefix.size() - k) == doc.substr(i - k, k)) {
                before = k;
                break;
            }
        }
        std::size_t after = 0;
        for (std::size_t k = std::min(suffix.size(), doc.size() - end); k > 0; --k) {
            if (suffix.substr(0, k) == doc.substr(end, k)) {
                after = k;
                break;
            }
        }
        const long score = static_cast<long>(before + after);
        if (score > best) {
            best = score;
            at_best = 1;
            out.start = i;
            out.end = end;
        } else if (score == best) {
            ++at_best;
        }
    }
    out.found = best >= 0;
    out.ambiguous = at_best >= 2;
    return out;
}

auto oracle_query(const std::vector<std::pair<std::uint64_t, Annotation>>& live, const QueryFilter& f)
    -> std::pair<std::vector<std::uint64_t>, std::size_t> {
    std::vector<std::uint64_t> hits;
    for (const auto& [seq, a] : live) {
        bool ok = true;
        if (f.target_source) {
            bool any = false;
            for (const auto& t : a.targets) {
                if (const auto* e = std::get_if<ExternalResource>(&t); e && e->iri == *f.target_source) any = true;
                if (const auto* s = std::get_if<SpecificRef>(&t); s && s->spec.source == *f.target_source) any = true;
            }
            ok = ok && any;
        }
        if (f.tag_concept) {
            bool any = false;
            for (const auto& b : a.bodies) {
                if (const auto* t = std::get_if<SemanticTag>(&b); t && t->concept_iri == *f.tag_concept) any = true;
            }
            ok = ok && any;
        }
        if (f.author) {
            const auto& ag = a.provenance.annotated_by;
            ok = ok && ag && ((ag->name && *ag->name == *f.author) || (ag->id && ag->id->str() == *f.author));
        }
        if (f.since) ok = ok && a.provenance.annotated_at && *a.provenance.annotated_at >= *f.since;
        if (f.motivation) ok = ok && a.motivation == f.motivation;
        if (ok) hits.push_back(seq);
    }
    std::sort(hits.begin(), hits.end());
    const auto total = hits.size();
    std::vector<std::uint64_t> page;
    for (std::size_t i = f.offset; i < hits.size() && page.size() < f.limit; ++i) page.push_back(hits[i]);
    return {page, total};
}

TempDir::TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "oa-test-XXXXXX").string();
    if (::mkdtemp(tmpl.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
    path_ = tmpl;
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

}  // namespace oa::test

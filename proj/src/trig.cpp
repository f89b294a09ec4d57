#include "oa/trig.hpp"

#include "oa/error.hpp"
#include "oa/unicode.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>

namespace oa::rdf {
namespace {

// ---- writing ----

auto escape_literal(std::string_view s) -> std::string {
    std::string out;
    for (unsigned char c : s) {
        switch (c) {
            case '"':  out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20 || c == 0x7f) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04X", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    return out;
}

auto escape_iri(std::string_view s) -> std::string {
    static constexpr std::string_view forbidden = "{}|^`\\";
    std::string out;
    for (unsigned char c : s) {
        if (forbidden.find(static_cast<char>(c)) != std::string_view::npos) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04X", c);
            out += buf;
        } else {
            out += static_cast<char>(c);
        }
    }
    return out;
}

auto is_simple_local(std::string_view s) -> bool {
    return !s.empty() && std::isalpha(static_cast<unsigned char>(s[0])) &&
           std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_' || c == '-'; });
}

class Writer {
public:
    explicit Writer(const std::optional<Iri>& ns) : ns_(ns) {}

    auto iri(const Iri& i) const -> std::string {
        if (ns_ && i.str().starts_with(ns_->str())) {
            const auto local = std::string_view(i.str()).substr(ns_->str().size());
            if (is_simple_local(local)) return "oa:" + std::string(local);
        }
        return "<" + escape_iri(i.str()) + ">";
    }

    auto term(const Term& t, const std::map<std::string, std::string>* labels) const -> std::string {
        if (const auto* i = std::get_if<Iri>(&t)) return iri(*i);
        if (const auto* b = std::get_if<BlankNode>(&t)) {
            if (!labels) return "_:";
            return "_:" + labels->at(b->label);
        }
        const auto& l = std::get<Literal>(t);
        std::string out = "\"" + escape_literal(l.lexical) + "\"";
        if (l.language) out += "@" + *l.language;
        if (l.datatype) out += "^^" + iri(*l.datatype);
        return out;
    }

    auto header() const -> std::string {
        return ns_ ? "@prefix oa: <" + escape_iri(ns_->str()) + "> .\n" : std::string{};
    }

private:
    std::optional<Iri> ns_;
};

struct Row {
    std::optional<Node> graph;
    Triple triple;
};

/// Orders statements with blank labels masked, then names blank nodes in
/// order of first appearance so output does not depend on input labels.
auto canonical_labels(const Writer& w, std::vector<Row>& rows) -> std::map<std::string, std::string> {
    auto masked = [&](const Row& r) {
        return std::make_tuple(r.graph ? w.term(to_term(*r.graph), nullptr) : std::string{},
                               w.term(to_term(r.triple.subject), nullptr), w.iri(r.triple.predicate),
                               w.term(r.triple.object, nullptr));
    };
    std::stable_sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) { return masked(a) < masked(b); });

    std::map<std::string, std::string> labels;
    auto visit = [&](const Term& t) {
        if (const auto* b = std::get_if<BlankNode>(&t); b && !labels.count(b->label)) {
            labels.emplace(b->label, "b" + std::to_string(labels.size()));
        }
    };
    for (const auto& r : rows) {
        if (r.graph) visit(to_term(*r.graph));
        visit(to_term(r.triple.subject));
        visit(r.triple.object);
    }
    return labels;
}

auto write_graphs(const GraphSet& graphs, const std::optional<Iri>& ns) -> std::string {
    Writer w(ns);
    std::vector<Row> rows;
    for (const auto& g : graphs) {
        for (const auto& t : g.triples) rows.push_back(Row{g.name, t});
    }
    const auto labels = canonical_labels(w, rows);

    // graph key -> sorted statement lines
    std::map<std::string, std::vector<std::string>> blocks;
    for (const auto& r : rows) {
        const std::string key = r.graph ? w.term(to_term(*r.graph), &labels) : std::string{};
        blocks[key].push_back(w.term(to_term(r.triple.subject), &labels) + " " + w.iri(r.triple.predicate) + " " +
                              w.term(r.triple.object, &labels) + " .");
    }
    // Named graphs without triples still deserve a block.
    for (const auto& g : graphs) {
        if (g.name && g.triples.empty()) {
            const auto* b = std::get_if<BlankNode>(&*g.name);
            if (!b || labels.count(b->label)) blocks[w.term(to_term(*g.name), &labels)];
        }
    }

    std::string out = w.header();
    if (auto it = blocks.find(std::string{}); it != blocks.end()) {
        std::sort(it->second.begin(), it->second.end());
        out += "\n";
        for (const auto& line : it->second) out += line + "\n";
    }
    for (auto& [key, lines] : blocks) {
        if (key.empty()) continue;
        std::sort(lines.begin(), lines.end());
        out += "\n" + key + " {\n";
        for (const auto& line : lines) out += "  " + line + "\n";
        out += "}\n";
    }
    return out;
}

// ---- reading ----

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    auto parse() -> GraphSet {
        while (true) {
            skip_ws();
            if (eof()) break;
            statement();
        }
        GraphSet out;
        out.push_back(std::move(default_graph_));
        for (auto& [name, g] : named_) out.push_back(std::move(g));
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        const auto line = 1 + std::count(s_.begin(), s_.begin() + static_cast<std::ptrdiff_t>(std::min(pos_, s_.size())), '\n');
        throw Error(Errc::syntax_error, "line " + std::to_string(line) + ": " + why);
    }

    auto eof() const -> bool { return pos_ >= s_.size(); }
    auto peek() const -> char { return eof() ? '\0' : s_[pos_]; }

    void skip_ws() {
        while (!eof()) {
            const char c = s_[pos_];
            if (c == '#') {
                while (!eof() && s_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    auto keyword(std::string_view kw, bool case_insensitive) -> bool {
        if (s_.size() - pos_ < kw.size()) return false;
        for (std::size_t i = 0; i < kw.size(); ++i) {
            char a = s_[pos_ + i];
            char b = kw[i];
            if (case_insensitive) {
                a = static_cast<char>(std::tolower(static_cast<unsigned char>(a)));
                b = static_cast<char>(std::tolower(static_cast<unsigned char>(b)));
            }
            if (a != b) return false;
        }
        const std::size_t after = pos_ + kw.size();
        if (after < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[after])) || s_[after] == ':')) return false;
        pos_ = after;
        return true;
    }

    void statement() {
        if (peek() == '@') {
            ++pos_;
            if (!keyword("prefix", false)) fail("only @prefix directives are supported");
            prefix_decl(true);
            return;
        }
        if (keyword("PREFIX", true)) {
            prefix_decl(false);
            return;
        }
        if (keyword("GRAPH", true)) {
            skip_ws();
            const Node name = node();
            block(name);
            return;
        }
        if (peek() == '{') {
            block(std::nullopt);
            return;
        }
        const Node subject = node();
        skip_ws();
        if (peek() == '{') {
            block(subject);
            return;
        }
        predicate_objects(subject, default_graph_);
        expect('.');
    }

    void prefix_decl(bool dotted) {
        skip_ws();
        const auto start = pos_;
        while (!eof() && s_[pos_] != ':') {
            if (std::isspace(static_cast<unsigned char>(s_[pos_]))) fail("bad prefix name");
            ++pos_;
        }
        if (eof()) fail("unterminated prefix");
        const std::string name(s_.substr(start, pos_ - start));
        ++pos_;
        skip_ws();
        prefixes_.insert_or_assign(name, iriref());
        if (dotted) expect('.');
    }

    void block(const std::optional<Node>& name) {
        expect('{');
        TripleGraph* g = &default_graph_;
        if (name) {
            const std::string key = name_key(*name);
            auto it = named_.find(key);
            if (it == named_.end()) {
                it = named_.emplace(key, TripleGraph{}).first;
                it->second.name = *name;
            }
            g = &it->second;
        }
        while (true) {
            skip_ws();
            if (peek() == '}') {
                ++pos_;
                return;
            }
            if (eof()) fail("unterminated graph block");
            const Node subject = node();
            predicate_objects(subject, *g);
            skip_ws();
            if (peek() == '.') {
                ++pos_;
            } else if (peek() != '}') {
                fail("expected '.' or '}'");
            }
        }
    }

    static auto name_key(const Node& n) -> std::string {
        if (const auto* b = std::get_if<BlankNode>(&n)) return "_:" + b->label;
        return "<" + std::get<Iri>(n).str();
    }

    void predicate_objects(const Node& subject, TripleGraph& g) {
        while (true) {
            skip_ws();
            Iri predicate = keyword("a", false) ? Iri::parse(vocab::rdf_type) : iri();
            while (true) {
                skip_ws();
                g.add(subject, predicate, object(g));
                skip_ws();
                if (peek() != ',') break;
                ++pos_;
            }
            skip_ws();
            if (peek() != ';') return;
            while (peek() == ';') {
                ++pos_;
                skip_ws();
            }
            if (peek() == '.' || peek() == '}' || peek() == ']') return;
        }
    }

    auto node() -> Node {
        skip_ws();
        if (peek() == '_') return blank();
        return iri();
    }

    auto blank() -> BlankNode {
        if (s_.substr(pos_, 2) != "_:") fail("expected blank node");
        pos_ += 2;
        const auto start = pos_;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '-' ||
                          static_cast<unsigned char>(s_[pos_]) >= 0x80)) {
            ++pos_;
        }
        if (pos_ == start) fail("empty blank node label");
        return BlankNode{std::string(s_.substr(start, pos_ - start))};
    }

    auto iri() -> Iri {
        skip_ws();
        if (peek() == '<') return iriref();
        const auto start = pos_;
        while (!eof() && s_[pos_] != ':' && !std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (eof() || s_[pos_] != ':') fail("expected IRI");
        const std::string prefix(s_.substr(start, pos_ - start));
        ++pos_;
        const auto local_start = pos_;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '-')) {
            ++pos_;
        }
        const auto it = prefixes_.find(prefix);
        if (it == prefixes_.end()) fail("undeclared prefix '" + prefix + "'");
        auto out = Iri::try_parse(it->second.str() + std::string(s_.substr(local_start, pos_ - local_start)));
        if (!out) fail("prefixed name does not expand to an IRI");
        return *out;
    }

    auto iriref() -> Iri {
        if (peek() != '<') fail("expected '<'");
        ++pos_;
        std::string raw;
        while (true) {
            if (eof()) fail("unterminated IRI");
            const char c = s_[pos_++];
            if (c == '>') break;
            if (c == '\\') {
                raw += unescape_unicode();
            } else {
                raw += c;
            }
        }
        auto out = Iri::try_parse(raw);
        if (!out) fail("invalid IRI <" + raw + ">");
        return *out;
    }

    auto unescape_unicode() -> std::string {
        if (eof()) fail("dangling escape");
        const char kind = s_[pos_++];
        const std::size_t digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
        if (digits == 0 || pos_ + digits > s_.size()) fail("bad unicode escape");
        char32_t cp = 0;
        for (std::size_t i = 0; i < digits; ++i) {
            const char h = s_[pos_++];
            cp <<= 4;
            if (h >= '0' && h <= '9') cp |= static_cast<char32_t>(h - '0');
            else if (h >= 'a' && h <= 'f') cp |= static_cast<char32_t>(h - 'a' + 10);
            else if (h >= 'A' && h <= 'F') cp |= static_cast<char32_t>(h - 'A' + 10);
            else fail("bad hex digit in escape");
        }
        return unicode::to_utf8(std::u32string(1, cp));
    }

    auto object(TripleGraph& g) -> Term {
        skip_ws();
        const char c = peek();
        if (c == '"') return literal();
        if (c == '_') return blank();
        if (c == '[') return anonymous(g);
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') {
            const auto start = pos_;
            ++pos_;
            while (!eof() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return Literal{std::string(s_.substr(start, pos_ - start)), Iri::parse(vocab::xsd_integer), std::nullopt};
        }
        return iri();
    }

    // "[ p o ; ... ]". The label contains '.', which no written label can.
    auto anonymous(TripleGraph& g) -> BlankNode {
        ++pos_;
        BlankNode b{"anon." + std::to_string(++anonymous_)};
        skip_ws();
        if (peek() != ']') predicate_objects(b, g);
        expect(']');
        return b;
    }

    auto literal() -> Literal {
        ++pos_;
        Literal lit;
        while (true) {
            if (eof()) fail("unterminated literal");
            const char c = s_[pos_++];
            if (c == '"') break;
            if (c == '\n') fail("newline in literal");
            if (c != '\\') {
                lit.lexical += c;
                continue;
            }
            if (eof()) fail("dangling escape");
            const char e = s_[pos_];
            switch (e) {
                case 't':  lit.lexical += '\t'; ++pos_; break;
                case 'n':  lit.lexical += '\n'; ++pos_; break;
                case 'r':  lit.lexical += '\r'; ++pos_; break;
                case 'b':  lit.lexical += '\b'; ++pos_; break;
                case 'f':  lit.lexical += '\f'; ++pos_; break;
                case '"':  lit.lexical += '"'; ++pos_; break;
                case '\'': lit.lexical += '\''; ++pos_; break;
                case '\\': lit.lexical += '\\'; ++pos_; break;
                default:   lit.lexical += unescape_unicode();
            }
        }
        if (peek() == '@') {
            ++pos_;
            const auto start = pos_;
            while (!eof() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-')) ++pos_;
            if (pos_ == start) fail("empty language tag");
            lit.language = std::string(s_.substr(start, pos_ - start));
        } else if (s_.substr(pos_, 2) == "^^") {
            pos_ += 2;
            lit.datatype = iri();
        }
        return lit;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    std::map<std::string, Iri> prefixes_;
    TripleGraph default_graph_;
    std::map<std::string, TripleGraph> named_;
    std::size_t anonymous_ = 0;
};

}  // namespace

auto write_trig(const GraphSet& graphs, const std::optional<Iri>& oa_ns) -> std::string {
    return write_graphs(graphs, oa_ns);
}

auto write_turtle(const TripleGraph& g, const std::optional<Iri>& oa_ns) -> std::string {
    if (g.name) throw Error(Errc::named_graph_in_turtle, "Turtle cannot carry a named graph");
    return write_graphs(GraphSet{g}, oa_ns);
}

auto read_trig(std::string_view text) -> GraphSet {
    return Parser(text).parse();
}

auto read_turtle(std::string_view text) -> TripleGraph {
    auto graphs = Parser(text).parse();
    if (graphs.size() > 1) throw Error(Errc::syntax_error, "graph block in Turtle input");
    return std::move(graphs.front());
}

}  // namespace oa::rdf

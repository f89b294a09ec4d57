#include "oa/rdf.hpp"

#include "oa/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

namespace oa::rdf {

auto to_term(const Node& n) -> Term {
    return std::visit([](const auto& v) -> Term { return v; }, n);
}

void check_literal(const Literal& lit) {
    if (lit.datatype && lit.language) {
        throw Error(Errc::invalid_value, "literal has both datatype and language");
    }
}

namespace {

struct Quad {
    std::optional<Node> graph;
    Node subject;
    Iri predicate;
    Term object;
    auto operator<=>(const Quad&) const = default;
};

auto flatten(const GraphSet& gs) -> std::set<Quad> {
    std::set<Quad> out;
    for (const auto& g : gs) {
        for (const auto& t : g.triples) out.insert(Quad{g.name, t.subject, t.predicate, t.object});
    }
    return out;
}

template <class V>
auto blank_of(const V& v) -> const BlankNode* {
    return std::get_if<BlankNode>(&v);
}

auto blanks_in(const Quad& q) -> std::vector<std::string> {
    std::vector<std::string> out;
    if (q.graph) {
        if (const auto* b = blank_of(*q.graph)) out.push_back(b->label);
    }
    if (const auto* b = blank_of(q.subject)) out.push_back(b->label);
    if (const auto* b = blank_of(q.object)) out.push_back(b->label);
    return out;
}

auto render(const Term& t) -> std::string {
    if (const auto* i = std::get_if<Iri>(&t)) return "<" + i->str() + ">";
    if (std::holds_alternative<BlankNode>(t)) return "_";
    const auto& l = std::get<Literal>(t);
    return "\"" + l.lexical + "\"^" + (l.datatype ? l.datatype->str() : "") + "@" + l.language.value_or("");
}

/// Per-side state for colour refinement.
struct Side {
    std::vector<Quad> quads;
    std::map<std::string, std::vector<std::size_t>> occurrences;  // blank label -> quad indices
    std::map<std::string, std::size_t> colour;

    explicit Side(const std::set<Quad>& qs) : quads(qs.begin(), qs.end()) {
        for (std::size_t i = 0; i < quads.size(); ++i) {
            for (const auto& label : blanks_in(quads[i])) {
                auto& occ = occurrences[label];
                if (occ.empty() || occ.back() != i) occ.push_back(i);
            }
        }
        for (const auto& [label, occ] : occurrences) colour[label] = 0;
    }

    auto slot(const std::optional<Node>& n, const std::string& self) const -> std::string {
        if (!n) return "D";
        return slot(to_term(*n), self);
    }
    auto slot(const Node& n, const std::string& self) const -> std::string { return slot(to_term(n), self); }
    auto slot(const Term& t, const std::string& self) const -> std::string {
        if (const auto* b = std::get_if<BlankNode>(&t)) {
            if (b->label == self) return "SELF";
            return "B" + std::to_string(colour.at(b->label));
        }
        return render(t);
    }

    void refine() {
        std::map<std::string, std::size_t> next;
        std::hash<std::string> hasher;
        for (const auto& [label, occ] : occurrences) {
            std::vector<std::string> sigs;
            for (auto i : occ) {
                const auto& q = quads[i];
                sigs.push_back(slot(q.graph, label) + "|" + slot(q.subject, label) + "|" + q.predicate.str() +
                               "|" + slot(q.object, label));
            }
            std::sort(sigs.begin(), sigs.end());
            std::string joined = std::to_string(colour.at(label));
            for (const auto& s : sigs) joined += "\n" + s;
            next[label] = hasher(joined);
        }
        colour = std::move(next);
    }

    auto histogram() const -> std::map<std::size_t, std::size_t> {
        std::map<std::size_t, std::size_t> h;
        for (const auto& [label, c] : colour) ++h[c];
        return h;
    }
};

auto map_node(const Node& n, const std::map<std::string, std::string>& m) -> Node {
    if (const auto* b = blank_of(n)) return BlankNode{m.at(b->label)};
    return n;
}

auto map_quad(const Quad& q, const std::map<std::string, std::string>& m) -> Quad {
    Quad out = q;
    if (q.graph) out.graph = map_node(*q.graph, m);
    out.subject = map_node(q.subject, m);
    if (const auto* b = blank_of(q.object)) out.object = BlankNode{m.at(b->label)};
    return out;
}

class Matcher {
public:
    Matcher(const Side& a, const Side& b, const std::set<Quad>& target)
        : a_(a), b_(b), target_(target) {
        for (const auto& [label, c] : a_.colour) order_.push_back(label);
        std::unordered_map<std::size_t, std::size_t> class_size;
        for (const auto& [label, c] : a_.colour) ++class_size[c];
        std::stable_sort(order_.begin(), order_.end(), [&](const auto& x, const auto& y) {
            return class_size[a_.colour.at(x)] < class_size[a_.colour.at(y)];
        });
        for (const auto& [label, c] : b_.colour) candidates_[c].push_back(label);
    }

    auto run() -> bool { return assign(0); }

private:
    auto consistent(const std::string& label) const -> bool {
        for (auto i : a_.occurrences.at(label)) {
            const auto& q = a_.quads[i];
            const auto bl = blanks_in(q);
            if (!std::all_of(bl.begin(), bl.end(), [&](const auto& l) { return mapping_.count(l) != 0; })) {
                continue;
            }
            if (target_.count(map_quad(q, mapping_)) == 0) return false;
        }
        return true;
    }

    auto assign(std::size_t depth) -> bool {
        if (depth == order_.size()) return true;
        const auto& label = order_[depth];
        for (const auto& cand : candidates_[a_.colour.at(label)]) {
            if (used_.count(cand) != 0) continue;
            mapping_[label] = cand;
            used_.insert(cand);
            if (consistent(label) && assign(depth + 1)) return true;
            used_.erase(cand);
            mapping_.erase(label);
        }
        return false;
    }

    const Side& a_;
    const Side& b_;
    const std::set<Quad>& target_;
    std::vector<std::string> order_;
    std::map<std::size_t, std::vector<std::string>> candidates_;
    std::map<std::string, std::string> mapping_;
    std::set<std::string> used_;
};

}  // namespace

auto graphs_isomorphic(const GraphSet& a, const GraphSet& b) -> bool {
    const auto qa = flatten(a);
    const auto qb = flatten(b);
    if (qa.size() != qb.size()) return false;

    Side sa(qa);
    Side sb(qb);
    if (sa.colour.size() != sb.colour.size()) return false;
    if (sa.colour.empty()) return qa == qb;

    for (std::size_t round = 0; round <= sa.colour.size(); ++round) {
        sa.refine();
        sb.refine();
        if (sa.histogram() != sb.histogram()) return false;
    }
    return Matcher(sa, sb, qb).run();
}

}  // namespace oa::rdf

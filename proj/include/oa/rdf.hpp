#pragma once

#include "oa/iri.hpp"

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace oa::rdf {

struct BlankNode {
    std::string label;
    auto operator<=>(const BlankNode&) const = default;
};

/// A literal carries at most one of datatype and language.
struct Literal {
    std::string lexical;
    std::optional<Iri> datatype;
    std::optional<std::string> language;
    auto operator<=>(const Literal&) const = default;
};

using Node = std::variant<Iri, BlankNode>;
using Term = std::variant<Iri, BlankNode, Literal>;

struct Triple {
    Node subject;
    Iri predicate;
    Term object;
    auto operator<=>(const Triple&) const = default;
};

/// A set of triples, optionally named. An unnamed graph is the default graph.
struct TripleGraph {
    std::optional<Node> name;
    std::set<Triple> triples;

    void add(Node s, Iri p, Term o) { triples.insert(Triple{std::move(s), std::move(p), std::move(o)}); }
    auto operator<=>(const TripleGraph&) const = default;
};

using GraphSet = std::vector<TripleGraph>;

auto to_term(const Node& n) -> Term;

/// Throws Error(invalid_value) when a literal carries both datatype and language.
void check_literal(const Literal& lit);

/// True iff the two sets are equal up to a consistent renaming of blank
/// nodes, graph names included. Graphs with identical names are merged first.
/// Backtracking search; intended for up to a few dozen blank nodes.
auto graphs_isomorphic(const GraphSet& a, const GraphSet& b) -> bool;

/// Well-known vocabulary IRIs outside the annotation namespace.
namespace vocab {
inline constexpr const char* rdf_type = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr const char* rdf_value = "http://www.w3.org/1999/02/22-rdf-syntax-ns#value";
inline constexpr const char* xsd_integer = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr const char* xsd_double = "http://www.w3.org/2001/XMLSchema#double";
inline constexpr const char* xsd_datetime = "http://www.w3.org/2001/XMLSchema#dateTime";
inline constexpr const char* xsd_string = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr const char* cnt_chars = "http://www.w3.org/2011/content#chars";
inline constexpr const char* cnt_content_as_text = "http://www.w3.org/2011/content#ContentAsText";
inline constexpr const char* dc_format = "http://purl.org/dc/elements/1.1/format";
inline constexpr const char* dc_language = "http://purl.org/dc/elements/1.1/language";
inline constexpr const char* dcterms_conforms_to = "http://purl.org/dc/terms/conformsTo";
inline constexpr const char* dctypes_ns = "http://purl.org/dc/dcmitype/";
inline constexpr const char* foaf_name = "http://xmlns.com/foaf/0.1/name";
inline constexpr const char* foaf_agent = "http://xmlns.com/foaf/0.1/Agent";
inline constexpr const char* http_request_headers = "http://www.w3.org/2011/http#headers";
}  // namespace vocab

}  // namespace oa::rdf

/// @file serialization.hpp
/// @brief JSON-LD document form and triple-graph form of annotations.

#pragma once

#include "oa/model.hpp"
#include "oa/rdf.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace oa {

/// Document form. Key order is significant for byte-stable output.
using Document = nlohmann::ordered_json;

/// Namespace and typing IRIs used when writing. Immutable once built.
struct VocabularyConfig {
    Iri oa_ns;           ///< Base for annotation terms, e.g. http://www.w3.org/ns/oa#
    Iri graph_type_iri;  ///< rdf:type given to embedded graph bodies.
    Iri context_iri;     ///< Emitted verbatim as the document @context.

    static auto defaults() -> VocabularyConfig;
    [[nodiscard]] auto term(std::string_view local) const -> Iri { return Iri::parse(oa_ns.str() + std::string(local)); }
};

/// Document key -> IRI, for consumers that need to expand the compact keys.
auto term_table(const VocabularyConfig& cfg) -> std::vector<std::pair<std::string, std::string>>;

/// Throws Error(invalid_annotation) when validate(a) is not empty.
auto to_document(const Annotation& a, const VocabularyConfig& cfg) -> Document;

/// Throws Error(missing_target | unknown_type | malformed_node). Paths in the
/// error detail use "$.key[index]" notation. Unrecognized keys on the
/// annotation node land in Annotation::extensions; anywhere else they are
/// a malformed node.
auto from_document(const Document& doc, const VocabularyConfig& cfg) -> Annotation;

/// Default graph first, then one named graph per graph body in body order.
/// Blank nodes are labelled b0, b1, ... in field order.
auto to_graph(const Annotation& a, const VocabularyConfig& cfg) -> rdf::GraphSet;

/// Wire form of an embedded graph body, shared with the document writer.
auto graph_to_json(const rdf::TripleGraph& g) -> Document;
auto graph_from_json(const Document& j, const std::string& path) -> rdf::TripleGraph;

}  // namespace oa

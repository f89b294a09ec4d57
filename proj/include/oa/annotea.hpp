/// @file annotea.hpp
/// @brief Bridge between legacy Annotea records and Open Annotation values.

#pragma once

#include "oa/model.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <variant>

namespace oa::annotea {

/// Inline body text, XHTML unless stated otherwise.
struct InlineBody {
    std::string text;
    std::string media_type = "application/xhtml+xml";
    auto operator<=>(const InlineBody&) const = default;
};

struct Record {
    std::optional<Iri> annotates;
    std::optional<std::variant<Iri, InlineBody>> body;
    std::optional<std::string> context;  ///< XPointer expression, carried verbatim.
    std::optional<std::string> author;
    std::optional<Timestamp> created;
    std::optional<Timestamp> modified;
    std::optional<std::string> subclass;  ///< Question, Comment, Example or any other label.
    auto operator<=>(const Record&) const = default;
};

inline constexpr const char* xpointer_scheme = "http://www.w3.org/TR/xptr/";
/// Annotea's annotation type namespace; subclass labels are minted under it.
inline constexpr const char* annotation_type_ns = "http://www.w3.org/2000/10/annotationType#";

/// Question -> questioning, Comment -> commenting, anything else ->
/// extension IRI under annotation_type_ns (so Example -> ...#Example).
auto motivation_for(const std::string& subclass) -> Motivation;
/// Inverse of motivation_for; nullopt when the motivation has no label.
auto subclass_for(const Motivation& m) -> std::optional<std::string>;

/// Throws Error(missing_annotates | missing_body).
auto import_record(const Record& r) -> Annotation;

/// Throws Error(not_representable) when `a` falls outside what a record can hold.
auto export_record(const Annotation& a) -> Record;

/// Flat JSON keys: annotates, body (IRI), bodyText, bodyMediaType, context,
/// author, created, modified, type.
auto record_to_json(const Record& r) -> nlohmann::ordered_json;
/// Throws Error(malformed_node) on wrong key types or unknown keys.
auto record_from_json(const nlohmann::ordered_json& j) -> Record;

}  // namespace oa::annotea

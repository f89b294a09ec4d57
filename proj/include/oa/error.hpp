#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace oa {

/// Every failure the library reports carries one of these codes.
enum class Errc : std::uint8_t {
    invalid_iri,
    invalid_timestamp,
    empty_targets,
    invalid_resource,
    nothing_specified,
    invalid_value,
    out_of_range,
    not_found,
    invalid_span,
    malformed_fragment,
    invalid_annotation,
    missing_target,
    unknown_type,
    malformed_node,
    named_graph_in_turtle,
    syntax_error,
    gone,
    storage_failure,
    id_already_assigned,
    missing_annotates,
    missing_body,
    not_representable,
    invalid_config,
};

constexpr auto to_string_view(Errc code) noexcept -> std::string_view {
    switch (code) {
        case Errc::invalid_iri:           return "InvalidIri";
        case Errc::invalid_timestamp:     return "InvalidTimestamp";
        case Errc::empty_targets:         return "EmptyTargets";
        case Errc::invalid_resource:      return "InvalidResource";
        case Errc::nothing_specified:     return "NothingSpecified";
        case Errc::invalid_value:         return "InvalidValue";
        case Errc::out_of_range:          return "OutOfRange";
        case Errc::not_found:             return "NotFound";
        case Errc::invalid_span:          return "InvalidSpan";
        case Errc::malformed_fragment:    return "Malformed";
        case Errc::invalid_annotation:    return "InvalidAnnotation";
        case Errc::missing_target:        return "MissingTarget";
        case Errc::unknown_type:          return "UnknownType";
        case Errc::malformed_node:        return "MalformedNode";
        case Errc::named_graph_in_turtle: return "NamedGraphInTurtle";
        case Errc::syntax_error:          return "SyntaxError";
        case Errc::gone:                  return "Gone";
        case Errc::storage_failure:       return "StorageFailure";
        case Errc::id_already_assigned:   return "IdAlreadyAssigned";
        case Errc::missing_annotates:     return "MissingAnnotates";
        case Errc::missing_body:          return "MissingBody";
        case Errc::not_representable:     return "NotRepresentable";
        case Errc::invalid_config:        return "InvalidConfig";
    }
    return "Unknown";
}

/// Exception type thrown by all library operations.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(std::string(to_string_view(code)) + ": " + detail),
          code_(code), detail_(detail) {}

    [[nodiscard]] auto code() const noexcept -> Errc { return code_; }
    [[nodiscard]] auto name() const noexcept -> std::string_view { return to_string_view(code_); }
    [[nodiscard]] auto detail() const noexcept -> const std::string& { return detail_; }

private:
    Errc code_;
    std::string detail_;
};

}  // namespace oa

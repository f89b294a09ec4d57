#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace oa {

/// An absolute IRI held in syntax-normalized form.
///
/// Construction lowercases the scheme and the host, and drops the port when
/// it is the scheme's default. Two Iri values are equal iff their normalized
/// strings are equal. No dereferencing ever happens.
class Iri {
public:
    /// Throws Error(invalid_iri) when `text` is not an absolute IRI.
    static auto parse(std::string_view text) -> Iri;
    static auto try_parse(std::string_view text) -> std::optional<Iri>;

    [[nodiscard]] auto str() const noexcept -> const std::string& { return value_; }
    [[nodiscard]] auto scheme() const -> std::string_view;

    auto operator<=>(const Iri&) const = default;

private:
    explicit Iri(std::string value) : value_(std::move(value)) {}
    std::string value_;
};

/// Returns the normalized form, or nullopt with no exception.
auto normalize_iri(std::string_view text) -> std::optional<std::string>;

/// Percent-encodes everything outside the RFC 3986 unreserved set.
auto percent_encode(std::string_view text) -> std::string;
auto percent_decode(std::string_view text) -> std::string;

}  // namespace oa

#include "oa/iri.hpp"

#include "oa/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

namespace oa {
namespace {

auto lower(std::string_view s) -> std::string {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

auto default_port(std::string_view scheme) -> std::string_view {
    static constexpr std::array<std::pair<std::string_view, std::string_view>, 5> ports{{
        {"http", "80"}, {"https", "443"}, {"ftp", "21"}, {"ws", "80"}, {"wss", "443"},
    }};
    for (const auto& [s, p] : ports) {
        if (s == scheme) return p;
    }
    return {};
}

auto is_scheme_char(unsigned char c) -> bool {
    return std::isalnum(c) || c == '+' || c == '-' || c == '.';
}

}  // namespace

auto normalize_iri(std::string_view text) -> std::optional<std::string> {
    if (text.empty()) return std::nullopt;
    for (unsigned char c : text) {
        if (std::isspace(c) || c < 0x20 || c == 0x7f || c == '<' || c == '>' || c == '"') {
            return std::nullopt;
        }
    }
    const auto colon = text.find(':');
    if (colon == std::string_view::npos || colon == 0) return std::nullopt;
    if (!std::isalpha(static_cast<unsigned char>(text[0]))) return std::nullopt;
    for (std::size_t i = 1; i < colon; ++i) {
        if (!is_scheme_char(static_cast<unsigned char>(text[i]))) return std::nullopt;
    }

    const std::string scheme = lower(text.substr(0, colon));
    std::string_view rest = text.substr(colon + 1);
    std::string out = scheme + ":";

    if (rest.starts_with("//")) {
        rest.remove_prefix(2);
        const auto auth_end = rest.find_first_of("/?#");
        std::string_view authority = rest.substr(0, auth_end);
        std::string_view tail = auth_end == std::string_view::npos ? std::string_view{} : rest.substr(auth_end);

        std::string_view userinfo;
        if (const auto at = authority.rfind('@'); at != std::string_view::npos) {
            userinfo = authority.substr(0, at + 1);
            authority.remove_prefix(at + 1);
        }
        std::string_view host = authority;
        std::string_view port;
        // IPv6 literals keep their colons inside brackets.
        const auto bracket = authority.rfind(']');
        const auto port_colon = authority.rfind(':');
        if (port_colon != std::string_view::npos &&
            (bracket == std::string_view::npos || port_colon > bracket)) {
            host = authority.substr(0, port_colon);
            port = authority.substr(port_colon + 1);
            if (!std::all_of(port.begin(), port.end(), [](unsigned char c) { return std::isdigit(c); })) {
                return std::nullopt;
            }
        }
        out += "//";
        out += userinfo;
        out += lower(host);
        if (!port.empty() && port != default_port(scheme)) {
            out += ':';
            out += port;
        }
        out += tail;
    } else {
        out += rest;
    }
    return out;
}

auto Iri::parse(std::string_view text) -> Iri {
    auto normalized = normalize_iri(text);
    if (!normalized) throw Error(Errc::invalid_iri, "not an absolute IRI: '" + std::string(text) + "'");
    return Iri(std::move(*normalized));
}

auto Iri::try_parse(std::string_view text) -> std::optional<Iri> {
    auto normalized = normalize_iri(text);
    if (!normalized) return std::nullopt;
    return Iri(std::move(*normalized));
}

auto Iri::scheme() const -> std::string_view {
    return std::string_view(value_).substr(0, value_.find(':'));
}

auto percent_encode(std::string_view text) -> std::string {
    static constexpr char hex[] = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : text) {
        if (std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~') {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 0xf];
        }
    }
    return out;
}

auto percent_decode(std::string_view text) -> std::string {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    std::string out;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '%' && i + 2 < text.size()) {
            const int hi = nibble(text[i + 1]);
            const int lo = nibble(text[i + 2]);
            if (hi >= 0 && lo >= 0) {
                out += static_cast<char>(hi * 16 + lo);
                i += 2;
                continue;
            }
        }
        out += text[i];
    }
    return out;
}

}  // namespace oa

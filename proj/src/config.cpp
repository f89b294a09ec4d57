#include "oa/service.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

extern char** environ;

namespace oa {
namespace {

auto trim(std::string_view s) -> std::string {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

auto config_iri(const std::string& key, const std::string& value) -> Iri {
    auto iri = Iri::try_parse(value);
    if (!iri) throw Error(Errc::invalid_config, key + ": not an absolute IRI: '" + value + "'");
    return *iri;
}

auto config_uint(const std::string& key, const std::string& value) -> std::uint64_t {
    std::uint64_t out = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
        throw Error(Errc::invalid_config, key + ": expected a non-negative integer, got '" + value + "'");
    }
    return out;
}

}  // namespace

void ServiceConfig::set(const std::string& raw_key, const std::string& value) {
    std::string key = raw_key;
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) {
        return c == '-' ? '_' : static_cast<char>(std::tolower(c));
    });
    if (key == "bind") {
        const auto colon = value.rfind(':');
        if (colon == std::string::npos) throw Error(Errc::invalid_config, "bind: expected host:port");
        const auto port_num = config_uint("bind", value.substr(colon + 1));
        if (port_num > 65535) throw Error(Errc::invalid_config, "bind: port out of range");
        host = value.substr(0, colon);
        port = static_cast<int>(port_num);
    } else if (key == "base_uri") {
        base_uri = config_iri(key, value);
        if (base_uri.str().ends_with('/')) throw Error(Errc::invalid_config, "base_uri must not end with '/'");
    } else if (key == "store") {
        store_path = value;
    } else if (key == "max_body_bytes") {
        max_body_bytes = config_uint(key, value);
        if (max_body_bytes == 0) throw Error(Errc::invalid_config, "max_body_bytes must be positive");
    } else if (key == "oa_ns") {
        vocabulary.oa_ns = config_iri(key, value);
    } else if (key == "graph_type_iri") {
        vocabulary.graph_type_iri = config_iri(key, value);
    } else if (key == "context_iri") {
        vocabulary.context_iri = config_iri(key, value);
    } else {
        throw Error(Errc::invalid_config, "unknown setting '" + raw_key + "'");
    }
}

auto ServiceConfig::parse_text(const std::string& text) -> std::vector<std::pair<std::string, std::string>> {
    std::vector<std::pair<std::string, std::string>> out;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw Error(Errc::invalid_config, std::string("bad JSON config: ") + e.what());
        }
        for (const auto& [key, value] : j.items()) {
            if (value.is_string()) {
                out.emplace_back(key, value.get<std::string>());
            } else if (value.is_number_unsigned() || value.is_number_integer()) {
                out.emplace_back(key, std::to_string(value.get<std::int64_t>()));
            } else {
                throw Error(Errc::invalid_config, key + ": expected a string or integer");
            }
        }
        return out;
    }
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw Error(Errc::invalid_config, "line " + std::to_string(line_no) + ": expected key=value");
        }
        out.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return out;
}

void ServiceConfig::load_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw Error(Errc::invalid_config, "cannot read config file " + file.string());
    std::stringstream ss;
    ss << in.rdbuf();
    for (const auto& [k, v] : parse_text(ss.str())) set(k, v);
}

void ServiceConfig::apply_env(const std::map<std::string, std::string>& env) {
    static constexpr std::string_view prefix = "OASTORE_";
    for (const auto& [name, value] : env) {
        if (!name.starts_with(prefix)) continue;
        set(name.substr(prefix.size()), value);
    }
}

auto ServiceConfig::process_env() -> std::map<std::string, std::string> {
    std::map<std::string, std::string> out;
    for (char** e = environ; e && *e; ++e) {
        const std::string_view entry(*e);
        const auto eq = entry.find('=');
        if (eq == std::string_view::npos) continue;
        out.emplace(std::string(entry.substr(0, eq)), std::string(entry.substr(eq + 1)));
    }
    return out;
}

}  // namespace oa

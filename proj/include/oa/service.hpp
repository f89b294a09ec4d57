/// @file service.hpp
/// @brief HTTP publication and discovery of annotations.
///
/// Endpoints:
///   POST   /annotations            publish (application/ld+json)
///   GET    /annotations/{n}        fetch, negotiated: ld+json, turtle, trig
///   GET    /annotations?target=&tag=&author=&since=&motivation=&limit=&offset=
///   DELETE /annotations/{n}        tombstone
/// Every error body is JSON: {"error": ..., "detail": ...}.

#pragma once

#include "oa/serialization.hpp"
#include "oa/store.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace httplib {
class Server;
}

namespace oa {

struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    Iri base_uri = Iri::parse("http://localhost:8080");
    std::filesystem::path store_path = "oastore-data";
    VocabularyConfig vocabulary = VocabularyConfig::defaults();
    std::size_t max_body_bytes = 1024 * 1024;

    /// Applies one setting. Keys: bind (host:port), base_uri, store,
    /// max_body_bytes, oa_ns, graph_type_iri, context_iri.
    /// Throws Error(invalid_config).
    void set(const std::string& key, const std::string& value);

    /// Reads a JSON object or key=value lines (# comments allowed).
    static auto parse_text(const std::string& text) -> std::vector<std::pair<std::string, std::string>>;
    void load_file(const std::filesystem::path& file);
    /// Applies OASTORE_<KEY> variables, e.g. OASTORE_BASE_URI.
    void apply_env(const std::map<std::string, std::string>& env);
    static auto process_env() -> std::map<std::string, std::string>;
};

struct HttpRequest {
    std::string method;
    std::string path;
    std::vector<std::pair<std::string, std::string>> query;  ///< Already URL-decoded.
    std::map<std::string, std::string> headers;              ///< Lowercase names.
    std::string body;

    [[nodiscard]] auto header(const std::string& lower_name) const -> std::optional<std::string>;
};

struct HttpResponse {
    int status = 200;
    std::string content_type;
    std::vector<std::pair<std::string, std::string>> headers;
    std::string body;
};

namespace media {
inline constexpr const char* jsonld = "application/ld+json";
inline constexpr const char* turtle = "text/turtle";
inline constexpr const char* trig = "application/trig";
inline constexpr const char* json = "application/json";
}  // namespace media

/// Chooses among `offered` (server preference order) using an Accept
/// header. Returns nullopt when nothing is acceptable.
auto negotiate(const std::optional<std::string>& accept, const std::vector<std::string>& offered)
    -> std::optional<std::string>;

class AnnotationService {
public:
    AnnotationService(std::shared_ptr<AnnotationStore> store, std::size_t max_body_bytes = 1024 * 1024);
    ~AnnotationService();

    AnnotationService(const AnnotationService&) = delete;
    auto operator=(const AnnotationService&) -> AnnotationService& = delete;

    /// Transport-independent request handling; the HTTP server routes here.
    [[nodiscard]] auto handle(const HttpRequest& req) const -> HttpResponse;

    /// Binds; port 0 picks a free port. Returns the bound port or throws.
    auto bind(const std::string& host, int port) -> int;
    /// Serves until stop(). Call after bind().
    void serve();
    /// Stops accepting and lets in-flight requests finish.
    void stop();
    void wait_until_ready() const;

    [[nodiscard]] auto store() const -> AnnotationStore& { return *store_; }

private:
    [[nodiscard]] auto post(const HttpRequest& req) const -> HttpResponse;
    [[nodiscard]] auto get_one(const HttpRequest& req, const Iri& id) const -> HttpResponse;
    [[nodiscard]] auto list(const HttpRequest& req) const -> HttpResponse;
    [[nodiscard]] auto remove(const Iri& id) const -> HttpResponse;

    std::shared_ptr<AnnotationStore> store_;
    std::size_t max_body_bytes_;
    std::unique_ptr<httplib::Server> server_;
};

auto error_response(int status, const std::string& error, const std::string& detail) -> HttpResponse;

/// Maps query parameters onto a filter. Throws Error(invalid_value).
auto filter_from_params(const std::vector<std::pair<std::string, std::string>>& params) -> QueryFilter;

}  // namespace oa

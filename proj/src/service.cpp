#include "oa/service.hpp"

#include "oa/trig.hpp"

#include <httplib.h>

#include <algorithm>
#include <cctype>
#include <charconv>

namespace oa {
namespace {

auto lower(std::string s) -> std::string {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

auto trim(std::string_view s) -> std::string_view {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

auto split(std::string_view s, char sep) -> std::vector<std::string_view> {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const auto next = s.find(sep, pos);
        out.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

auto media_type_of(const std::string& content_type) -> std::string {
    return lower(std::string(trim(std::string_view(content_type).substr(0, content_type.find(';')))));
}

auto json_response(int status, const Document& body, const char* type = media::jsonld) -> HttpResponse {
    HttpResponse r;
    r.status = status;
    r.content_type = type;
    r.body = body.dump(2);
    return r;
}

auto parse_count(const std::string& key, const std::string& value) -> std::size_t {
    std::size_t out = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (value.empty() || res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
        throw Error(Errc::invalid_value, key + " must be a non-negative integer");
    }
    return out;
}

struct AcceptRange {
    std::string type;
    std::string subtype;
    double q = 1.0;
    std::size_t position = 0;
};

auto parse_accept(const std::string& header) -> std::vector<AcceptRange> {
    std::vector<AcceptRange> out;
    std::size_t position = 0;
    for (auto item : split(header, ',')) {
        auto parts = split(item, ';');
        const auto range = lower(std::string(trim(parts[0])));
        if (range.empty()) continue;
        const auto slash = range.find('/');
        AcceptRange r;
        r.type = range.substr(0, slash);
        r.subtype = slash == std::string::npos ? "*" : range.substr(slash + 1);
        r.position = position++;
        for (std::size_t i = 1; i < parts.size(); ++i) {
            const auto p = trim(parts[i]);
            if (p.starts_with("q=") || p.starts_with("Q=")) {
                double q = 0;
                const auto v = p.substr(2);
                const auto res = std::from_chars(v.data(), v.data() + v.size(), q);
                r.q = res.ec == std::errc{} ? std::clamp(q, 0.0, 1.0) : 0.0;
            }
        }
        out.push_back(r);
    }
    return out;
}

}  // namespace

auto HttpRequest::header(const std::string& lower_name) const -> std::optional<std::string> {
    const auto it = headers.find(lower_name);
    if (it == headers.end()) return std::nullopt;
    return it->second;
}

auto negotiate(const std::optional<std::string>& accept, const std::vector<std::string>& offered)
    -> std::optional<std::string> {
    if (offered.empty()) return std::nullopt;
    if (!accept || trim(*accept).empty()) return offered.front();
    const auto ranges = parse_accept(*accept);

    std::optional<std::string> best;
    double best_q = 0;
    std::size_t best_pos = 0;
    for (const auto& candidate : offered) {
        const auto slash = candidate.find('/');
        const auto type = candidate.substr(0, slash);
        const auto subtype = candidate.substr(slash + 1);
        // The most specific matching range decides the quality.
        int specificity = -1;
        double q = 0;
        std::size_t pos = 0;
        for (const auto& r : ranges) {
            int s = -1;
            if (r.type == type && r.subtype == subtype) s = 2;
            else if (r.type == type && r.subtype == "*") s = 1;
            else if (r.type == "*" && r.subtype == "*") s = 0;
            if (s > specificity) {
                specificity = s;
                q = r.q;
                pos = r.position;
            }
        }
        if (specificity < 0 || q <= 0) continue;
        if (!best || q > best_q || (q == best_q && pos < best_pos)) {
            best = candidate;
            best_q = q;
            best_pos = pos;
        }
    }
    return best;
}

auto error_response(int status, const std::string& error, const std::string& detail) -> HttpResponse {
    Document body = Document::object();
    body["error"] = error;
    body["detail"] = detail;
    return json_response(status, body, media::json);
}

auto filter_from_params(const std::vector<std::pair<std::string, std::string>>& params) -> QueryFilter {
    QueryFilter f;
    for (const auto& [key, value] : params) {
        if (key == "target") {
            f.target_source = Iri::try_parse(value);
            if (!f.target_source) throw Error(Errc::invalid_value, "target is not an absolute IRI");
        } else if (key == "tag") {
            f.tag_concept = Iri::try_parse(value);
            if (!f.tag_concept) throw Error(Errc::invalid_value, "tag is not an absolute IRI");
        } else if (key == "author") {
            if (value.empty()) throw Error(Errc::invalid_value, "author is empty");
            f.author = value;
        } else if (key == "since") {
            f.since = try_parse_timestamp(value);
            if (!f.since) throw Error(Errc::invalid_value, "since is not an RFC 3339 date-time");
        } else if (key == "motivation") {
            if (auto m = motivation_from_name(value)) {
                f.motivation = *m;
            } else if (auto iri = Iri::try_parse(value)) {
                f.motivation = Motivation::ext(*iri);
            } else {
                throw Error(Errc::invalid_value, "unknown motivation '" + value + "'");
            }
        } else if (key == "limit") {
            f.limit = parse_count(key, value);
        } else if (key == "offset") {
            f.offset = parse_count(key, value);
        }
    }
    f.check();
    return f;
}

AnnotationService::AnnotationService(std::shared_ptr<AnnotationStore> store, std::size_t max_body_bytes)
    : store_(std::move(store)), max_body_bytes_(max_body_bytes), server_(std::make_unique<httplib::Server>()) {
    auto route = [this](const httplib::Request& in, httplib::Response& out) {
        HttpRequest req;
        req.method = in.method;
        req.path = in.path;
        for (const auto& [k, v] : in.params) req.query.emplace_back(k, v);
        for (const auto& [k, v] : in.headers) req.headers.emplace(lower(k), v);
        req.body = in.body;
        const HttpResponse res = handle(req);
        out.status = res.status;
        for (const auto& [k, v] : res.headers) out.set_header(k, v);
        if (!res.body.empty() || !res.content_type.empty()) out.set_content(res.body, res.content_type);
    };
    server_->Get(".*", route);
    server_->Post(".*", route);
    server_->Delete(".*", route);
    server_->Put(".*", route);
    server_->Patch(".*", route);
    server_->Options(".*", route);
    server_->set_payload_max_length(max_body_bytes_);
    server_->set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (!res.body.empty()) return;
        const auto r = error_response(res.status, res.status == 413 ? "PayloadTooLarge" : "HttpError",
                                      httplib::status_message(res.status));
        res.set_content(r.body, r.content_type);
    });
}

AnnotationService::~AnnotationService() {
    stop();
}

auto AnnotationService::bind(const std::string& host, int port) -> int {
    const int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
    if (bound < 0) throw Error(Errc::invalid_config, "cannot bind " + host + ":" + std::to_string(port));
    return bound;
}

void AnnotationService::serve() {
    server_->listen_after_bind();
}

void AnnotationService::stop() {
    if (server_) server_->stop();
}

void AnnotationService::wait_until_ready() const {
    server_->wait_until_ready();
}

auto AnnotationService::handle(const HttpRequest& req) const -> HttpResponse {
    HttpResponse res;
    try {
        static constexpr std::string_view collection = "/annotations";
        std::string_view path = req.path;
        if (path.size() > 1 && path.back() == '/') path.remove_suffix(1);

        if (req.method == "OPTIONS") {
            res.status = 204;
            res.headers.emplace_back("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
            res.headers.emplace_back("Access-Control-Allow-Headers", "Content-Type, Accept");
        } else if (path == collection) {
            if (req.method == "POST") res = post(req);
            else if (req.method == "GET") res = list(req);
            else res = error_response(405, "MethodNotAllowed", req.method + " not supported on " + std::string(path));
        } else if (path.starts_with("/annotations/")) {
            const auto tail = path.substr(collection.size() + 1);
            const bool numeric = !tail.empty() && std::all_of(tail.begin(), tail.end(),
                                                              [](unsigned char c) { return std::isdigit(c); });
            if (!numeric) {
                res = error_response(404, "NotFound", "no resource at " + std::string(path));
            } else {
                const Iri id = Iri::parse(store_->base_uri().str() + "/annotations/" + std::string(tail));
                if (req.method == "GET") res = get_one(req, id);
                else if (req.method == "DELETE") res = remove(id);
                else res = error_response(405, "MethodNotAllowed", req.method + " not supported on " + std::string(path));
            }
        } else {
            res = error_response(404, "NotFound", "no resource at " + std::string(path));
        }
    } catch (const Error& e) {
        switch (e.code()) {
            case Errc::not_found: res = error_response(404, "NotFound", e.detail()); break;
            case Errc::gone:      res = error_response(410, "Gone", e.detail()); break;
            case Errc::storage_failure: res = error_response(500, "StorageFailure", e.detail()); break;
            default:              res = error_response(400, std::string(e.name()), e.detail());
        }
    } catch (const std::exception& e) {
        res = error_response(500, "InternalError", e.what());
    }
    res.headers.emplace_back("Access-Control-Allow-Origin", "*");
    return res;
}

auto AnnotationService::post(const HttpRequest& req) const -> HttpResponse {
    const auto type = media_type_of(req.header("content-type").value_or(""));
    if (type != media::jsonld && type != media::json) {
        return error_response(415, "UnsupportedMediaType", "expected application/ld+json, got '" + type + "'");
    }
    if (req.body.size() > max_body_bytes_) {
        return error_response(413, "PayloadTooLarge", "body exceeds " + std::to_string(max_body_bytes_) + " bytes");
    }
    Document doc;
    try {
        doc = Document::parse(req.body);
    } catch (const nlohmann::json::exception& e) {
        return error_response(400, "MalformedJson", e.what());
    }

    auto bad_request = [](const std::string& error, const std::string& detail, Document violations) {
        auto res = error_response(400, error, detail);
        auto body = Document::parse(res.body);
        body["violations"] = std::move(violations);
        res.body = body.dump(2);
        return res;
    };

    const auto& vocab = store_->vocabulary();
    Annotation a;
    try {
        a = from_document(doc, vocab);
    } catch (const Error& e) {
        Document v = Document::array();
        v.push_back({{"path", e.detail().substr(0, e.detail().find(':'))}, {"code", e.name()}, {"message", e.detail()}});
        return bad_request(std::string(e.name()), e.detail(), std::move(v));
    }
    if (a.id) {
        return bad_request("IdAlreadyAssigned", "published annotations must not carry an @id",
                           Document::array({{{"path", "$.@id"}, {"code", "IdAlreadyAssigned"}, {"message", a.id->str()}}}));
    }
    if (const auto report = validate(a); !report.empty()) {
        Document v = Document::array();
        for (const auto& viol : report) v.push_back({{"path", viol.path}, {"code", "InvalidAnnotation"}, {"message", viol.message}});
        return bad_request("InvalidAnnotation", report.front().path + ": " + report.front().message, std::move(v));
    }

    const Iri id = store_->put(std::move(a));
    auto res = json_response(201, to_document(store_->get(id), vocab));
    res.headers.emplace_back("Location", id.str());
    return res;
}

auto AnnotationService::get_one(const HttpRequest& req, const Iri& id) const -> HttpResponse {
    const Annotation a = store_->get(id);
    const auto& vocab = store_->vocabulary();

    std::vector<std::string> offered{media::jsonld, media::turtle, media::trig, media::json};
    rdf::GraphSet graphs;
    const bool has_named = std::any_of(a.bodies.begin(), a.bodies.end(),
                                       [](const ResourceRef& r) { return std::holds_alternative<GraphResource>(r); });
    if (has_named) offered.erase(std::find(offered.begin(), offered.end(), media::turtle));

    const auto chosen = negotiate(req.header("accept"), offered);
    HttpResponse res;
    if (!chosen) {
        res = error_response(406, "NotAcceptable",
                             "available: application/ld+json, " + std::string(has_named ? "" : "text/turtle, ") +
                                 "application/trig");
    } else if (*chosen == media::jsonld || *chosen == media::json) {
        res = json_response(200, to_document(a, vocab), chosen->c_str());
    } else if (*chosen == media::turtle) {
        res.content_type = media::turtle;
        res.body = rdf::write_turtle(to_graph(a, vocab).front(), vocab.oa_ns);
    } else {
        res.content_type = media::trig;
        res.body = rdf::write_trig(to_graph(a, vocab), vocab.oa_ns);
    }
    res.headers.emplace_back("Vary", "Accept");
    return res;
}

auto AnnotationService::list(const HttpRequest& req) const -> HttpResponse {
    const QueryFilter f = filter_from_params(req.query);
    const auto page = store_->query(f);
    Document body = Document::object();
    body["total"] = page.total;
    Document items = Document::array();
    for (const auto& rec : page.items) items.push_back(to_document(rec.annotation, store_->vocabulary()));
    body["items"] = std::move(items);
    return json_response(200, body);
}

auto AnnotationService::remove(const Iri& id) const -> HttpResponse {
    store_->remove(id);
    HttpResponse res;
    res.status = 204;
    return res;
}

}  // namespace oa

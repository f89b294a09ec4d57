// annotate: command-line front end for the annotation library.
//
// Exit codes: 0 ok, 2 usage or validation, 3 not found, 4 out of range,
// 5 partial conversion, 6 network or server error.
// Only data goes to stdout; diagnostics go to stderr.

#include "oa/annotea.hpp"
#include "oa/selector_engine.hpp"
#include "oa/serialization.hpp"
#include "oa/service.hpp"
#include "oa/unicode.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

enum Exit : int { ok = 0, usage = 2, not_found = 3, range = 4, partial = 5, network = 6 };

struct Failure {
    int code;
    std::string message;
};

[[noreturn]] void fail(int code, std::string message) { throw Failure{code, std::move(message)}; }

auto parse_iri(const std::string& flag, const std::string& text) -> oa::Iri {
    auto iri = oa::Iri::try_parse(text);
    if (!iri) fail(usage, flag + ": not an absolute IRI: '" + text + "'");
    return *iri;
}

auto read_input(const std::string& path) -> std::string {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(usage, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Accepts one JSON array, or any number of whitespace-separated JSON values
// (which covers JSONL).
auto read_json_values(const std::string& text) -> std::vector<nlohmann::ordered_json> {
    std::vector<nlohmann::ordered_json> out;
    std::istringstream in(text);
    while (true) {
        in >> std::ws;
        if (in.peek() == std::char_traits<char>::eof()) break;
        nlohmann::ordered_json value;
        try {
            in >> value;
        } catch (const nlohmann::json::exception& e) {
            fail(usage, std::string("input is not JSON: ") + e.what());
        }
        out.push_back(std::move(value));
    }
    if (out.size() == 1 && out.front().is_array()) {
        std::vector<nlohmann::ordered_json> items(out.front().begin(), out.front().end());
        return items;
    }
    return out;
}

// create

struct CreateArgs {
    std::vector<std::string> targets;
    std::vector<std::string> body_texts;
    std::vector<std::string> body_iris;
    std::vector<std::string> tags;
    std::string motivation;
    std::string motivation_iri;
    std::string author;
};

auto run_create(const CreateArgs& args) -> int {
    if (args.targets.empty()) fail(usage, "at least one --target is required");
    std::vector<oa::ResourceRef> targets;
    for (const auto& t : args.targets) targets.emplace_back(oa::ExternalResource{parse_iri("--target", t), std::nullopt});

    std::vector<oa::ResourceRef> bodies;
    for (const auto& text : args.body_texts) {
        bodies.emplace_back(oa::EmbeddedResource{oa::EmbeddedContent{text, std::nullopt, std::nullopt}, std::nullopt});
    }
    for (const auto& b : args.body_iris) bodies.emplace_back(oa::ExternalResource{parse_iri("--body-iri", b), std::nullopt});
    for (const auto& t : args.tags) bodies.emplace_back(oa::SemanticTag{parse_iri("--tag", t)});

    std::optional<oa::Motivation> motivation;
    if (!args.motivation.empty() && !args.motivation_iri.empty()) {
        fail(usage, "--motivation and --motivation-iri are mutually exclusive");
    }
    if (!args.motivation.empty()) {
        motivation = oa::motivation_from_name(args.motivation);
        if (!motivation) fail(usage, "unknown motivation '" + args.motivation + "' (use --motivation-iri for extensions)");
    }
    if (!args.motivation_iri.empty()) motivation = oa::Motivation::ext(parse_iri("--motivation-iri", args.motivation_iri));

    oa::Provenance prov;
    if (!args.author.empty()) prov.annotated_by = oa::Agent{oa::Iri::try_parse(args.author), std::nullopt};
    if (prov.annotated_by && !prov.annotated_by->id) prov.annotated_by->name = args.author;

    const auto a = oa::new_annotation(std::move(targets), std::move(bodies), motivation, prov);
    std::cout << oa::to_document(a, oa::VocabularyConfig::defaults()).dump(2) << '\n';
    return ok;
}

// anchor

struct AnchorArgs {
    std::string doc;
    std::optional<std::string> quote, prefix, suffix;
    std::optional<std::uint64_t> start, end;
};

auto run_anchor(const AnchorArgs& args) -> int {
    const bool by_quote = args.quote.has_value();
    const bool by_position = args.start || args.end;
    if (by_quote == by_position) fail(usage, "give either --quote or --start/--end");
    if (by_position && !(args.start && args.end)) fail(usage, "--start and --end go together");
    if (!by_quote && (args.prefix || args.suffix)) fail(usage, "--prefix/--suffix need --quote");

    const auto bytes = read_input(args.doc);
    if (!oa::unicode::is_valid_utf8(bytes)) fail(usage, args.doc + " is not valid UTF-8");
    const oa::DocText doc(bytes);

    oa::Span span;
    bool ambiguous = false;
    if (by_quote) {
        if (args.quote->empty()) fail(usage, "--quote must not be empty");
        const auto m = oa::resolve_text_quote(doc, oa::TextQuote{*args.quote, args.prefix, args.suffix});
        span = m.span;
        ambiguous = m.ambiguous;
    } else {
        if (*args.start > *args.end) fail(usage, "--start is after --end");
        span = oa::resolve_text_position(doc, oa::TextPosition{*args.start, *args.end});
    }
    nlohmann::ordered_json out;
    out["start"] = span.start;
    out["end"] = span.end;
    out["excerpt"] = doc.slice(span.start, span.end);
    out["ambiguous"] = ambiguous;
    std::cout << out.dump() << '\n';
    return ok;
}

// validate

auto run_validate(const std::string& in) -> int {
    const auto values = read_json_values(read_input(in));
    int rc = ok;
    for (const auto& v : values) {
        nlohmann::ordered_json report;
        report["valid"] = true;
        report["violations"] = nlohmann::ordered_json::array();
        try {
            const auto a = oa::from_document(v, oa::VocabularyConfig::defaults());
            for (const auto& viol : oa::validate(a)) {
                report["violations"].push_back({{"path", viol.path}, {"message", viol.message}});
            }
        } catch (const oa::Error& e) {
            report["violations"].push_back({{"path", "$"}, {"message", std::string(e.name()) + ": " + e.detail()}});
        }
        if (!report["violations"].empty()) {
            report["valid"] = false;
            rc = usage;
        }
        std::cout << report.dump() << '\n';
    }
    return rc;
}

// convert

auto run_convert(const std::string& from, const std::string& to, const std::string& in) -> int {
    if (from == to) fail(usage, "--from and --to must differ");
    const auto values = read_json_values(read_input(in));
    const auto cfg = oa::VocabularyConfig::defaults();
    std::size_t failed = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        try {
            if (from == "annotea") {
                const auto record = oa::annotea::record_from_json(values[i]);
                std::cout << oa::to_document(oa::annotea::import_record(record), cfg).dump() << '\n';
            } else {
                const auto a = oa::from_document(values[i], cfg);
                std::cout << oa::annotea::record_to_json(oa::annotea::export_record(a)).dump() << '\n';
            }
        } catch (const oa::Error& e) {
            ++failed;
            std::cerr << "record " << i + 1 << ": " << e.name() << ": " << e.detail() << '\n';
        }
    }
    std::cout.flush();
    return failed == 0 ? ok : partial;
}

// serve

struct ServeArgs {
    std::string config, bind, base_uri, store;
    std::optional<std::size_t> max_body_bytes;
};

auto run_serve(const ServeArgs& args) -> int {
    oa::ServiceConfig cfg;
    try {
        if (!args.config.empty()) cfg.load_file(args.config);
        cfg.apply_env(oa::ServiceConfig::process_env());
        if (!args.bind.empty()) cfg.set("bind", args.bind);
        if (!args.base_uri.empty()) cfg.set("base_uri", args.base_uri);
        if (!args.store.empty()) cfg.set("store", args.store);
        if (args.max_body_bytes) cfg.set("max_body_bytes", std::to_string(*args.max_body_bytes));
    } catch (const oa::Error& e) {
        fail(usage, e.what());
    }

    // Block the stop signals before any thread starts so only sigwait sees them.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    oa::StoreOptions opts;
    opts.vocabulary = cfg.vocabulary;
    std::shared_ptr<oa::AnnotationStore> store = oa::AnnotationStore::open(cfg.store_path, cfg.base_uri, opts);
    oa::AnnotationService service(store, cfg.max_body_bytes);
    const int port = service.bind(cfg.host, cfg.port);
    std::cerr << "listening on " << cfg.host << ':' << port << " base " << cfg.base_uri.str() << std::endl;

    std::thread worker([&service] { service.serve(); });
    int sig = 0;
    sigwait(&signals, &sig);
    std::cerr << "signal " << sig << ", shutting down" << std::endl;
    service.stop();
    worker.join();
    return ok;
}

// query

struct QueryArgs {
    std::string server;
    std::string target, tag, author, since, motivation;
    std::optional<std::size_t> limit, offset;
};

auto run_query(const QueryArgs& args) -> int {
    std::string base = args.server;
    while (base.ends_with('/')) base.pop_back();
    const auto scheme_end = base.find("://");
    if (scheme_end == std::string::npos) fail(usage, "--server must look like http://host:port");
    const auto path_start = base.find('/', scheme_end + 3);
    const std::string origin = base.substr(0, path_start);
    const std::string prefix = path_start == std::string::npos ? "" : base.substr(path_start);

    std::string query;
    auto param = [&query](const char* key, const std::string& value) {
        if (value.empty()) return;
        query += query.empty() ? '?' : '&';
        query += std::string(key) + "=" + oa::percent_encode(value);
    };
    param("target", args.target);
    param("tag", args.tag);
    param("author", args.author);
    param("since", args.since);
    param("motivation", args.motivation);
    if (args.limit) param("limit", std::to_string(*args.limit));
    if (args.offset) param("offset", std::to_string(*args.offset));

    httplib::Client client(origin);
    if (!client.is_valid()) fail(usage, "unsupported server URL " + args.server);
    client.set_connection_timeout(5);
    const auto res = client.Get(prefix + "/annotations" + query, {{"Accept", oa::media::jsonld}});
    if (!res) fail(network, "cannot reach " + origin + ": " + httplib::to_string(res.error()));
    if (res->status != 200) fail(network, "server answered " + std::to_string(res->status) + ": " + res->body);
    std::cout << res->body;
    if (!res->body.ends_with('\n')) std::cout << '\n';
    return ok;
}

auto exit_for(const oa::Error& e) -> int {
    switch (e.code()) {
        case oa::Errc::not_found: return not_found;
        case oa::Errc::out_of_range: return range;
        default: return usage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Create, anchor, validate, convert, serve and query annotations."};
    app.require_subcommand(1);

    CreateArgs create;
    auto* c = app.add_subcommand("create", "Build an annotation and print its JSON-LD document");
    c->add_option("--target", create.targets, "Target IRI (repeatable)");
    c->add_option("--body-text", create.body_texts, "Plain text body (repeatable)");
    c->add_option("--body-iri", create.body_iris, "External body IRI (repeatable)");
    c->add_option("--tag", create.tags, "Semantic tag concept IRI (repeatable)");
    c->add_option("--motivation", create.motivation, "commenting, tagging, bookmarking, questioning, replying, describing");
    c->add_option("--motivation-iri", create.motivation_iri, "Extension motivation IRI");
    c->add_option("--author", create.author, "Author name, or an IRI for the agent id");

    AnchorArgs anchor;
    auto* a = app.add_subcommand("anchor", "Resolve a text selector against a document");
    a->add_option("--doc", anchor.doc, "UTF-8 text file ('-' for stdin)")->required();
    a->add_option("--quote", anchor.quote);
    a->add_option("--prefix", anchor.prefix);
    a->add_option("--suffix", anchor.suffix);
    a->add_option("--start", anchor.start);
    a->add_option("--end", anchor.end);

    std::string validate_in = "-";
    auto* v = app.add_subcommand("validate", "Validate JSON-LD annotation documents");
    v->add_option("--in", validate_in, "Input file ('-' for stdin)");

    std::string from, to, convert_in = "-";
    auto* cv = app.add_subcommand("convert", "Convert between Annotea records and annotation documents");
    cv->add_option("--from", from)->required()->check(CLI::IsMember({"annotea", "oa"}));
    cv->add_option("--to", to)->required()->check(CLI::IsMember({"annotea", "oa"}));
    cv->add_option("--in", convert_in, "Input file ('-' for stdin)");

    ServeArgs serve;
    auto* s = app.add_subcommand("serve", "Run the annotation HTTP service");
    s->add_option("--config", serve.config, "JSON or key=value config file");
    s->add_option("--bind", serve.bind, "host:port");
    s->add_option("--base-uri", serve.base_uri);
    s->add_option("--store", serve.store, "Store directory");
    s->add_option("--max-body-bytes", serve.max_body_bytes);

    QueryArgs query;
    auto* q = app.add_subcommand("query", "Run a discovery query against a server");
    q->add_option("--server", query.server, "http://host:port")->required();
    q->add_option("--target", query.target);
    q->add_option("--tag", query.tag);
    q->add_option("--author", query.author);
    q->add_option("--since", query.since);
    q->add_option("--motivation", query.motivation);
    q->add_option("--limit", query.limit);
    q->add_option("--offset", query.offset);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }

    try {
        if (c->parsed()) return run_create(create);
        if (a->parsed()) return run_anchor(anchor);
        if (v->parsed()) return run_validate(validate_in);
        if (cv->parsed()) return run_convert(from, to, convert_in);
        if (s->parsed()) return run_serve(serve);
        if (q->parsed()) return run_query(query);
    } catch (const Failure& f) {
        std::cerr << "annotate: " << f.message << '\n';
        return f.code;
    } catch (const oa::Error& e) {
        std::cerr << "annotate: " << e.name() << ": " << e.detail() << '\n';
        return exit_for(e);
    } catch (const std::exception& e) {
        std::cerr << "annotate: " << e.what() << '\n';
        return usage;
    }
    return usage;
}

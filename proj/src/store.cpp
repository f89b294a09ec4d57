#include "oa/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <mutex>
#include <sstream>

namespace oa {
namespace fs = std::filesystem;

namespace {

constexpr const char* log_name = "log.jsonl";
constexpr const char* meta_name = "meta.json";

auto storage_error(const std::string& what) -> Error {
    return Error(Errc::storage_failure, what + (errno != 0 ? std::string(": ") + std::strerror(errno) : ""));
}

void write_all(int fd, const std::string& data) {
    std::size_t done = 0;
    while (done < data.size()) {
        const auto n = ::write(fd, data.data() + done, data.size() - done);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw storage_error("write failed");
        }
        done += static_cast<std::size_t>(n);
    }
}

void sync_dir(const fs::path& dir) {
    const int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY);
    if (fd >= 0) {
        ::fsync(fd);
        ::close(fd);
    }
}

auto read_meta(const fs::path& dir) -> std::optional<nlohmann::json> {
    std::ifstream in(dir / meta_name);
    if (!in) return std::nullopt;
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::storage_failure, std::string("corrupt meta.json: ") + e.what());
    }
}

}  // namespace

void QueryFilter::check() const {
    if (limit == 0 || limit > max_limit) {
        throw Error(Errc::invalid_value, "limit must be between 1 and " + std::to_string(max_limit));
    }
}

auto target_sources(const Annotation& a) -> std::vector<Iri> {
    std::vector<Iri> out;
    for (const auto& t : a.targets) {
        if (const auto* e = std::get_if<ExternalResource>(&t)) out.push_back(e->iri);
        if (const auto* s = std::get_if<SpecificRef>(&t)) out.push_back(s->spec.source);
    }
    return out;
}

auto tag_concepts(const Annotation& a) -> std::vector<Iri> {
    std::vector<Iri> out;
    for (const auto& b : a.bodies) {
        if (const auto* t = std::get_if<SemanticTag>(&b)) out.push_back(t->concept_iri);
    }
    return out;
}

namespace {

auto author_keys(const Annotation& a) -> std::vector<std::string> {
    std::vector<std::string> out;
    if (const auto& agent = a.provenance.annotated_by) {
        if (agent->name) out.push_back(*agent->name);
        if (agent->id) out.push_back(agent->id->str());
    }
    return out;
}

auto author_matches(const std::string& wanted, const Annotation& a) -> bool {
    const auto keys = author_keys(a);
    if (std::find(keys.begin(), keys.end(), wanted) != keys.end()) return true;
    if (auto iri = Iri::try_parse(wanted)) return std::find(keys.begin(), keys.end(), iri->str()) != keys.end();
    return false;
}

}  // namespace

auto QueryFilter::matches(const Annotation& a) const -> bool {
    if (target_source) {
        const auto srcs = target_sources(a);
        if (std::find(srcs.begin(), srcs.end(), *target_source) == srcs.end()) return false;
    }
    if (tag_concept) {
        const auto tags = tag_concepts(a);
        if (std::find(tags.begin(), tags.end(), *tag_concept) == tags.end()) return false;
    }
    if (author && !author_matches(*author, a)) return false;
    if (since && (!a.provenance.annotated_at || *a.provenance.annotated_at < *since)) return false;
    if (motivation && a.motivation != motivation) return false;
    return true;
}

AnnotationStore::AnnotationStore(fs::path dir, Iri base_uri, StoreOptions options)
    : dir_(std::move(dir)), base_uri_(std::move(base_uri)), options_(std::move(options)) {}

AnnotationStore::~AnnotationStore() {
    if (log_fd_ >= 0) ::close(log_fd_);
}

auto AnnotationStore::open(const fs::path& dir, const Iri& base_uri, StoreOptions options)
    -> std::unique_ptr<AnnotationStore> {
    if (base_uri.str().ends_with('/')) throw Error(Errc::invalid_config, "base URI must not end with '/'");
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(Errc::storage_failure, "cannot create " + dir.string() + ": " + ec.message());

    std::unique_ptr<AnnotationStore> store(new AnnotationStore(dir, base_uri, std::move(options)));
    if (auto meta = read_meta(dir)) {
        const auto stored = meta->value("base_uri", std::string{});
        if (Iri::try_parse(stored) != base_uri) {
            throw Error(Errc::invalid_config, "store was created with base URI '" + stored + "'");
        }
        store->next_seq_ = meta->value("next_sequence", std::uint64_t{1});
    }
    store->replay();
    store->log_fd_ = ::open((dir / log_name).c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
    if (store->log_fd_ < 0) throw storage_error("cannot open log");
    store->write_meta();
    return store;
}

auto AnnotationStore::open_existing(const fs::path& dir, StoreOptions options) -> std::unique_ptr<AnnotationStore> {
    const auto meta = read_meta(dir);
    if (!meta) throw Error(Errc::storage_failure, "no store at " + dir.string());
    return open(dir, Iri::parse(meta->value("base_uri", std::string{})), std::move(options));
}

void AnnotationStore::replay() {
    const fs::path path = dir_ / log_name;
    std::ifstream in(path, std::ios::binary);
    if (!in) return;
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();

    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < content.size()) {
        const auto nl = content.find('\n', pos);
        if (nl == std::string::npos) {
            // A torn final append from a crash; drop it.
            fs::resize_file(path, pos);
            break;
        }
        ++line_no;
        const std::string_view line(content.data() + pos, nl - pos);
        pos = nl + 1;
        if (line.empty()) continue;
        try {
            const auto rec = Document::parse(line);
            const auto op = rec.at("op").get<std::string>();
            const auto seq = rec.at("seq").get<std::uint64_t>();
            if (op == "put") {
                StoredAnnotation s{id_for(seq), seq, from_document(rec.at("annotation"), options_.vocabulary),
                                   parse_timestamp(rec.at("storedAt").get<std::string>()), false};
                by_id_[s.id.str()] = seq;
                index(s);
                records_.insert_or_assign(seq, std::move(s));
                next_seq_ = std::max(next_seq_, seq + 1);
            } else if (op == "delete") {
                auto it = records_.find(seq);
                if (it == records_.end()) throw Error(Errc::storage_failure, "delete of unknown record");
                unindex(it->second);
                it->second.deleted = true;
            } else {
                throw Error(Errc::storage_failure, "unknown op '" + op + "'");
            }
        } catch (const Error& e) {
            throw Error(Errc::storage_failure, "log line " + std::to_string(line_no) + ": " + e.what());
        } catch (const std::exception& e) {
            throw Error(Errc::storage_failure, "log line " + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void AnnotationStore::append_line(const std::string& line) {
    errno = 0;
    write_all(log_fd_, line + "\n");
    if (options_.sync && ::fdatasync(log_fd_) != 0) throw storage_error("fsync failed");
}

void AnnotationStore::write_meta() {
    nlohmann::ordered_json meta;
    meta["base_uri"] = base_uri_.str();
    meta["next_sequence"] = next_seq_;
    const fs::path tmp = dir_ / "meta.json.tmp";
    errno = 0;
    const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
    if (fd < 0) throw storage_error("cannot write meta.json");
    try {
        write_all(fd, meta.dump(2) + "\n");
        if (options_.sync) ::fsync(fd);
    } catch (...) {
        ::close(fd);
        throw;
    }
    ::close(fd);
    std::error_code ec;
    fs::rename(tmp, dir_ / meta_name, ec);
    if (ec) throw Error(Errc::storage_failure, "cannot replace meta.json: " + ec.message());
    if (options_.sync) sync_dir(dir_);
}

auto AnnotationStore::id_for(std::uint64_t seq) const -> Iri {
    return Iri::parse(base_uri_.str() + "/annotations/" + std::to_string(seq));
}

void AnnotationStore::index(const StoredAnnotation& rec) {
    for (const auto& t : target_sources(rec.annotation)) by_target_[t.str()].insert(rec.sequence);
    for (const auto& t : tag_concepts(rec.annotation)) by_tag_[t.str()].insert(rec.sequence);
    for (const auto& k : author_keys(rec.annotation)) by_author_[k].insert(rec.sequence);
}

void AnnotationStore::unindex(const StoredAnnotation& rec) {
    auto drop = [&](auto& idx, const std::string& key) {
        auto it = idx.find(key);
        if (it == idx.end()) return;
        it->second.erase(rec.sequence);
        if (it->second.empty()) idx.erase(it);
    };
    for (const auto& t : target_sources(rec.annotation)) drop(by_target_, t.str());
    for (const auto& t : tag_concepts(rec.annotation)) drop(by_tag_, t.str());
    for (const auto& k : author_keys(rec.annotation)) drop(by_author_, k);
}

auto AnnotationStore::put(Annotation a) -> Iri {
    if (a.id) throw Error(Errc::id_already_assigned, "annotation already has id " + a.id->str());
    if (auto report = validate(a); !report.empty()) {
        throw Error(Errc::invalid_annotation, report.front().path + ": " + report.front().message);
    }

    std::unique_lock lock(mutex_);
    const std::uint64_t seq = next_seq_;
    const Timestamp now = options_.clock();
    a.id = id_for(seq);
    if (!a.provenance.serialized_at) {
        a.provenance.serialized_at = a.provenance.annotated_at ? std::max(now, *a.provenance.annotated_at) : now;
    }

    nlohmann::ordered_json rec;
    rec["op"] = "put";
    rec["seq"] = seq;
    rec["storedAt"] = format_timestamp(now);
    rec["annotation"] = to_document(a, options_.vocabulary);
    append_line(rec.dump());
    ++next_seq_;
    write_meta();

    StoredAnnotation stored{*a.id, seq, std::move(a), now, false};
    by_id_[stored.id.str()] = seq;
    index(stored);
    const Iri id = stored.id;
    records_.emplace(seq, std::move(stored));
    return id;
}

auto AnnotationStore::lookup(const Iri& id) const -> const StoredAnnotation& {
    const auto it = by_id_.find(id.str());
    if (it == by_id_.end()) throw Error(Errc::not_found, "no annotation " + id.str());
    const auto& rec = records_.at(it->second);
    if (rec.deleted) throw Error(Errc::gone, "annotation " + id.str() + " was deleted");
    return rec;
}

auto AnnotationStore::get(const Iri& id) const -> Annotation {
    std::shared_lock lock(mutex_);
    return lookup(id).annotation;
}

auto AnnotationStore::get_record(const Iri& id) const -> StoredAnnotation {
    std::shared_lock lock(mutex_);
    const auto it = by_id_.find(id.str());
    if (it == by_id_.end()) throw Error(Errc::not_found, "no annotation " + id.str());
    return records_.at(it->second);
}

auto AnnotationStore::query(const QueryFilter& f) const -> QueryPage {
    f.check();
    std::shared_lock lock(mutex_);

    std::optional<std::set<std::uint64_t>> candidates;
    auto narrow = [&](const std::map<std::string, std::set<std::uint64_t>>& idx, const std::string& key) {
        const auto it = idx.find(key);
        const std::set<std::uint64_t> empty;
        const auto& hits = it == idx.end() ? empty : it->second;
        if (!candidates) {
            candidates = hits;
            return;
        }
        std::set<std::uint64_t> both;
        std::set_intersection(candidates->begin(), candidates->end(), hits.begin(), hits.end(),
                              std::inserter(both, both.end()));
        candidates = std::move(both);
    };
    if (f.target_source) narrow(by_target_, f.target_source->str());
    if (f.tag_concept) narrow(by_tag_, f.tag_concept->str());

    QueryPage page;
    auto consider = [&](const StoredAnnotation& rec) {
        if (rec.deleted || !f.matches(rec.annotation)) return;
        if (page.total >= f.offset && page.items.size() < f.limit) page.items.push_back(rec);
        ++page.total;
    };
    if (candidates) {
        for (auto seq : *candidates) consider(records_.at(seq));
    } else {
        for (const auto& [seq, rec] : records_) consider(rec);
    }
    return page;
}

void AnnotationStore::remove(const Iri& id) {
    std::unique_lock lock(mutex_);
    const auto& rec = lookup(id);
    nlohmann::ordered_json line;
    line["op"] = "delete";
    line["seq"] = rec.sequence;
    line["at"] = format_timestamp(options_.clock());
    append_line(line.dump());
    auto& mutable_rec = records_.at(rec.sequence);
    unindex(mutable_rec);
    mutable_rec.deleted = true;
}

auto AnnotationStore::size() const -> std::size_t {
    std::shared_lock lock(mutex_);
    return static_cast<std::size_t>(std::count_if(records_.begin(), records_.end(),
                                                  [](const auto& kv) { return !kv.second.deleted; }));
}

}  // namespace oa

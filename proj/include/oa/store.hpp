/// @file store.hpp
/// @brief Durable annotation store with discovery indexes.
///
/// On disk a store is a directory holding `log.jsonl` (one JSON record per
/// line, appended and fsynced before a write returns) and `meta.json`
/// (base URI and next sequence number). Indexes live in memory and are
/// rebuilt from the log on open.

#pragma once

#include "oa/model.hpp"
#include "oa/serialization.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

namespace oa {

struct StoredAnnotation {
    Iri id;
    std::uint64_t sequence = 0;
    Annotation annotation;
    Timestamp stored_at;
    bool deleted = false;
};

struct QueryFilter {
    static constexpr std::size_t max_limit = 1000;

    std::optional<Iri> target_source;
    std::optional<Iri> tag_concept;
    std::optional<std::string> author;  ///< Matches the annotating agent's name or id.
    std::optional<Timestamp> since;     ///< Inclusive lower bound on annotated_at.
    std::optional<Motivation> motivation;
    std::size_t limit = 100;
    std::size_t offset = 0;

    /// Throws Error(invalid_value) unless 1 <= limit <= max_limit.
    void check() const;
    /// The full match predicate, ignoring limit and offset.
    [[nodiscard]] auto matches(const Annotation& a) const -> bool;
};

struct QueryPage {
    std::vector<StoredAnnotation> items;
    std::size_t total = 0;
};

struct StoreOptions {
    VocabularyConfig vocabulary = VocabularyConfig::defaults();
    /// Clock used for stored_at and defaulted serialized_at.
    std::function<Timestamp()> clock = now_utc;
    /// fsync after every append. Tests may turn it off for speed.
    bool sync = true;
};

/// Reader/writer lock that lets a waiting writer in ahead of new readers.
/// The default shared_mutex on glibc can starve writers under steady reads.
class WriterFirstMutex {
public:
    void lock() {
        gate_.lock();
        rw_.lock();
    }
    void unlock() {
        rw_.unlock();
        gate_.unlock();
    }
    void lock_shared() {
        std::lock_guard g(gate_);
        rw_.lock_shared();
    }
    void unlock_shared() { rw_.unlock_shared(); }

private:
    std::mutex gate_;
    std::shared_mutex rw_;
};

/// Thread-safe: queries run concurrently, writes are serialized.
class AnnotationStore {
public:
    /// Opens an existing store directory or creates a new one. `base_uri`
    /// must match the stored one when the directory already exists.
    static auto open(const std::filesystem::path& dir, const Iri& base_uri, StoreOptions options = {})
        -> std::unique_ptr<AnnotationStore>;
    /// Opens an existing store, taking the base URI from meta.json.
    static auto open_existing(const std::filesystem::path& dir, StoreOptions options = {})
        -> std::unique_ptr<AnnotationStore>;

    AnnotationStore(const AnnotationStore&) = delete;
    auto operator=(const AnnotationStore&) -> AnnotationStore& = delete;
    ~AnnotationStore();

    /// Throws Error(invalid_annotation | id_already_assigned | storage_failure).
    auto put(Annotation a) -> Iri;
    /// Throws Error(not_found | gone).
    [[nodiscard]] auto get(const Iri& id) const -> Annotation;
    /// Also returns tombstoned records. Throws Error(not_found).
    [[nodiscard]] auto get_record(const Iri& id) const -> StoredAnnotation;
    [[nodiscard]] auto query(const QueryFilter& f) const -> QueryPage;
    /// Throws Error(not_found | gone | storage_failure).
    void remove(const Iri& id);

    [[nodiscard]] auto base_uri() const -> const Iri& { return base_uri_; }
    [[nodiscard]] auto vocabulary() const -> const VocabularyConfig& { return options_.vocabulary; }
    [[nodiscard]] auto size() const -> std::size_t;

private:
    AnnotationStore(std::filesystem::path dir, Iri base_uri, StoreOptions options);

    void replay();
    void append_line(const std::string& line);
    void write_meta();
    void index(const StoredAnnotation& rec);
    void unindex(const StoredAnnotation& rec);
    [[nodiscard]] auto id_for(std::uint64_t seq) const -> Iri;
    [[nodiscard]] auto lookup(const Iri& id) const -> const StoredAnnotation&;

    std::filesystem::path dir_;
    Iri base_uri_;
    StoreOptions options_;
    std::uint64_t next_seq_ = 1;
    int log_fd_ = -1;

    mutable WriterFirstMutex mutex_;
    std::map<std::uint64_t, StoredAnnotation> records_;
    std::map<std::string, std::uint64_t> by_id_;
    std::map<std::string, std::set<std::uint64_t>> by_target_;
    std::map<std::string, std::set<std::uint64_t>> by_tag_;
    std::map<std::string, std::set<std::uint64_t>> by_author_;
};

/// Target sources, tag concepts and author keys an annotation is indexed under.
auto target_sources(const Annotation& a) -> std::vector<Iri>;
auto tag_concepts(const Annotation& a) -> std::vector<Iri>;

}  // namespace oa

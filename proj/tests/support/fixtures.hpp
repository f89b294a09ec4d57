#pragma once

#include "oa/annotea.hpp"
#include "oa/model.hpp"
#include "oa/selector_engine.hpp"
#include "oa/store.hpp"

#include <random>
#include <string>
#include <vector>

namespace oa::test {

inline const char* const map_image = "http://maphub.example.org/maps/1507-waldseemuller.jpg";
inline const char* const dbpedia_gibraltar = "http://dbpedia.org/resource/Gibraltar";
inline const char* const dbpedia_hercules = "http://dbpedia.org/resource/Hercules";
inline const char* const galaxy_image = "http://hubble.example.org/images/deep-field-galaxies.jpg";
inline const char* const galaxy_video = "http://video.example.org/about-deep-field.mp4";
inline const char* const jpeg_image = "http://images.example.org/photo";
inline const char* const map_comment =
    "In antiquity, the Strait of Gibraltar (which connects the Atlantic Ocean with the Mediterranean Sea) was also "
    "known by the name \"The Pillars of Hercules\" . This is the reason for this inscription!";

/// Map image tagged with two DBpedia concepts, plus the comment text.
auto map_tagging() -> Annotation;
/// Image of galaxies as target, a video about it as body.
auto galaxy_video_annotation() -> Annotation;
/// Circular selection of a JPEG image obtained through content negotiation.
auto circle_on_jpeg() -> Annotation;

auto iri(const std::string& s) -> Iri;
auto ts(const std::string& s) -> Timestamp;

/// Random value generators. Everything they produce validates.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    auto uniform(std::size_t lo, std::size_t hi) -> std::size_t;
    auto coin(double p = 0.5) -> bool;
    auto real(double lo, double hi) -> double;
    auto word(std::size_t min_len = 1, std::size_t max_len = 8) -> std::string;
    /// Text mixing ASCII, Latin-1, CJK, emoji and combining marks.
    auto unicode_text(std::size_t min_len, std::size_t max_len) -> std::string;
    auto iri() -> Iri;
    auto timestamp() -> Timestamp;
    auto dcmi() -> std::optional<DcmiType>;
    auto selector() -> Selector;
    auto state() -> State;
    auto motivation() -> Motivation;
    auto agent() -> Agent;
    auto graph() -> rdf::TripleGraph;
    auto content() -> EmbeddedContent;
    /// `style_class` is used for specific resources when set.
    auto resource(bool as_target, const std::optional<std::string>& style_class) -> ResourceRef;
    auto annotation() -> Annotation;

    /// Annotation drawn from small pools of targets, tags and authors so
    /// that random queries have matches.
    auto store_annotation(const std::vector<Iri>& targets, const std::vector<Iri>& tags,
                          const std::vector<std::string>& authors) -> Annotation;

    /// Record whose import is exportable again.
    auto annotea_record() -> annotea::Record;

    auto engine() -> std::mt19937_64& { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Brute-force anchoring oracle: every occurrence is found by direct
/// comparison at each offset and scored character by character.
struct OracleMatch {
    bool found = false;
    std::size_t start = 0, end = 0;
    bool ambiguous = false;
};
auto oracle_quote(const std::u32string& doc, const std::u32string& exact, const std::u32string& prefix,
                  const std::u32string& suffix) -> OracleMatch;

/// Linear-scan query oracle over (sequence, annotation) pairs of live records.
auto oracle_query(const std::vector<std::pair<std::uint64_t, Annotation>>& live, const QueryFilter& f)
    -> std::pair<std::vector<std::uint64_t>, std::size_t>;

/// Scratch directory removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    auto operator=(const TempDir&) -> TempDir& = delete;
    [[nodiscard]] auto path() const -> const std::filesystem::path& { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace oa::test

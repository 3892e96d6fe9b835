#pragma once

#include "textedit/geometry.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace textedit {

enum class Language { en, zh, mixed };

std::string_view to_string(Language lang);
std::optional<Language> parse_language(std::string_view s);

/// One benchmark instance.
struct Sample {
    std::string id;
    std::string category_id;
    std::string source_image;
    std::string gt_image;      // empty when not supplied
    std::string edited_image;  // empty when not supplied
    std::string raw_text;      // text to remove
    std::string target_text;   // text to add, empty for pure erasure
    Polygon target_region;
    std::string gt_caption;
    Language language = Language::en;

    bool operator==(const Sample&) const = default;
};

enum class Major { Virtual, Real };

std::string_view to_string(Major m);

struct TaxonomyNode {
    Major major = Major::Virtual;
    std::string mid_id;
    std::string mid_name;
    std::string sub_id;    // empty for two-level (Real) leaves
    std::string sub_name;
    std::int64_t count = 0;

    /// The id samples carry: sub_id when present, else mid_id.
    const std::string& leaf_id() const { return sub_id.empty() ? mid_id : sub_id; }
};

class TaxonomyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Leaf categories of the benchmark, in table order.
class Taxonomy {
public:
    Taxonomy() = default;
    explicit Taxonomy(std::vector<TaxonomyNode> leaves);

    /// The 18-leaf, 2148-sample table shipped with the toolkit.
    static const Taxonomy& builtin();

    /// Reads a JSON list of {id, major, mid_name, sub_name, count}.
    static Taxonomy load(std::istream& in);

    const TaxonomyNode& classify(std::string_view category_id) const;
    const TaxonomyNode* find(std::string_view category_id) const;

    const std::vector<TaxonomyNode>& leaves() const { return leaves_; }
    std::int64_t total() const;

private:
    std::vector<TaxonomyNode> leaves_;
};

/// Shorthand for Taxonomy::builtin().classify(id).
const TaxonomyNode& classify_category(std::string_view category_id);

class ManifestError : public std::runtime_error {
public:
    ManifestError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// One JSON object per line. Blank lines are skipped. Categories are
/// resolved against `taxonomy`; ids must be unique.
std::vector<Sample> parse_manifest(std::istream& in, const Taxonomy& taxonomy = Taxonomy::builtin());
void emit_manifest(std::ostream& out, std::span<const Sample> samples);
std::string sample_to_json_line(const Sample& s);

struct RealVirtualSplit {
    std::vector<Sample> real;
    std::vector<Sample> virtual_;
};

RealVirtualSplit split_real_virtual(std::span<const Sample> samples,
                                    const Taxonomy& taxonomy = Taxonomy::builtin());

enum class QuotaMode { proportional, uniform };

class SamplingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Per-category quotas for a stratified subset of `total`. Keys are leaf ids.
std::map<std::string, std::size_t> miniset_quotas(const std::map<std::string, std::size_t>& populations,
                                                  std::size_t total, QuotaMode mode);

/// Stratified subset: quotas from `miniset_quotas`, uniform selection without
/// replacement inside each category. The result keeps corpus order.
std::vector<Sample> sample_miniset(std::span<const Sample> samples, std::size_t total, std::uint64_t seed,
                                   QuotaMode mode = QuotaMode::proportional);

// OCR detections --------------------------------------------------------------

enum class ImageRole { source, edited };

std::string_view to_string(ImageRole r);
std::string ocr_key(std::string_view sample_id, ImageRole role);

struct OcrEntry {
    std::vector<OcrDetection> detections;
    std::optional<std::string> roi_text;
};

class OcrError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Detections per "sample_id/source" and "sample_id/edited" key.
class OcrFile {
public:
    const OcrEntry* find(std::string_view sample_id, ImageRole role) const;
    const std::map<std::string, OcrEntry, std::less<>>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    void insert(std::string key, OcrEntry entry);
    /// Fails on duplicate keys.
    void merge(OcrFile other);

private:
    std::map<std::string, OcrEntry, std::less<>> entries_;
};

/// Parses a detection file. Each key maps either to a detection list or to
/// {"detections": [...], "roi_text": "..."}. When `samples` is non-empty,
/// keys must reference one of them.
OcrFile load_ocr_detections(std::istream& in, std::span<const Sample> samples = {});
std::string dump_ocr_detections(const OcrFile& file);

} // namespace textedit

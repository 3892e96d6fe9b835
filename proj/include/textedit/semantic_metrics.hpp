#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace textedit {

struct Embedding {
    std::vector<double> values;
    std::string source_key;

    std::size_t dim() const { return values.size(); }
    bool operator==(const Embedding&) const = default;
};

class EmbeddingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmbeddingNotFound : public EmbeddingError {
public:
    explicit EmbeddingNotFound(const std::string& key)
        : EmbeddingError("no embedding for key '" + key + "'"), key_(key) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

/// Raw cosine similarity. Throws on dimension mismatch or a zero vector.
double clip_score(const Embedding& image, const Embedding& text);

struct AestheticHead {
    std::vector<double> weights;
    double bias = 0.0;
};

/// dot(weights, v) + bias, unclamped.
double aesthetic_score(const Embedding& image, const AestheticHead& head);

enum class EmbeddingKind { edited_image, caption };

std::string embedding_key(std::string_view sample_id, EmbeddingKind kind);

/// Source of image/caption embeddings. Implementations must return the same
/// vector for a key for the lifetime of the object and tolerate concurrent
/// fetches.
class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual Embedding fetch(const std::string& key) = 0;
    virtual const std::string& provider_id() const = 0;
};

/// Embeddings read once from a JSON file:
///   {"dim": N, "provider_id": "...", "embeddings": {key: [N reals]}}
class FileEmbeddingProvider : public EmbeddingProvider {
public:
    static FileEmbeddingProvider load(std::istream& in);
    static FileEmbeddingProvider load(const std::filesystem::path& path);

    FileEmbeddingProvider(std::string provider_id, std::size_t dim,
                          std::unordered_map<std::string, std::vector<double>> table);

    Embedding fetch(const std::string& key) override;
    const std::string& provider_id() const override { return provider_id_; }
    std::size_t dim() const { return dim_; }

private:
    std::string provider_id_;
    std::size_t dim_;
    std::unordered_map<std::string, std::vector<double>> table_;
};

struct HttpProviderConfig {
    std::string endpoint;             // e.g. http://host:port/embed
    std::string provider_id = "http";
    std::string token_env;            // name of the environment variable holding a bearer token
    std::chrono::milliseconds timeout{10000};
    int max_retries = 3;
    std::chrono::milliseconds backoff{200};
    std::filesystem::path cache_dir;  // empty disables the disk cache
};

/// POSTs {"keys": [key]} and expects {key: [reals]}. Results are memoized in
/// memory and, when configured, on disk keyed by (key, provider id).
class HttpEmbeddingProvider : public EmbeddingProvider {
public:
    explicit HttpEmbeddingProvider(HttpProviderConfig cfg);

    Embedding fetch(const std::string& key) override;
    const std::string& provider_id() const override { return cfg_.provider_id; }

    /// Number of HTTP requests actually sent, retries included.
    std::size_t request_count() const { return requests_.load(); }

private:
    std::optional<std::vector<double>> read_disk_cache(const std::string& key) const;
    void write_disk_cache(const std::string& key, const std::vector<double>& v) const;
    std::vector<double> request(const std::string& key);
    void check_dim(const std::string& key, std::size_t dim);

    HttpProviderConfig cfg_;
    std::mutex mutex_;
    std::unordered_map<std::string, std::vector<double>> memo_;
    std::optional<std::size_t> dim_;
    std::atomic<std::size_t> requests_{0};
};

/// Aesthetic scoring either through a linear head over the image embedding or
/// from scores computed upstream, keyed like embeddings.
class AestheticSource {
public:
    using Precomputed = std::map<std::string, double, std::less<>>;

    explicit AestheticSource(AestheticHead head) : impl_(std::move(head)) {}
    explicit AestheticSource(Precomputed scores) : impl_(std::move(scores)) {}

    /// Reads {dim, weights[], bias} or {"scores": {key: value}}.
    static AestheticSource load(std::istream& in);
    static AestheticSource load(const std::filesystem::path& path);

    bool needs_embedding() const { return std::holds_alternative<AestheticHead>(impl_); }
    double score(const std::string& key, const Embedding* image) const;

private:
    std::variant<AestheticHead, Precomputed> impl_;
};

} // namespace textedit

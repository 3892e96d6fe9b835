#include "textedit/semantic_metrics.hpp"

#include "textedit/hash.hpp"
#include "textedit/http.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numeric>

namespace textedit {

using nlohmann::json;

double clip_score(const Embedding& image, const Embedding& text)
{
    if (image.dim() != text.dim())
        throw EmbeddingError("embedding dimensions differ: " + std::to_string(image.dim()) + " vs " +
                             std::to_string(text.dim()));
    double dot = 0.0;
    double nn_img = 0.0;
    double nn_txt = 0.0;
    for (std::size_t i = 0; i < image.dim(); ++i) {
        dot += image.values[i] * text.values[i];
        nn_img += image.values[i] * image.values[i];
        nn_txt += text.values[i] * text.values[i];
    }
    if (nn_img == 0.0 || nn_txt == 0.0)
        throw EmbeddingError("cosine similarity of a zero vector");
    return dot / (std::sqrt(nn_img) * std::sqrt(nn_txt));
}

double aesthetic_score(const Embedding& image, const AestheticHead& head)
{
    if (image.dim() != head.weights.size())
        throw EmbeddingError("aesthetic head expects dimension " + std::to_string(head.weights.size()) +
                             ", embedding has " + std::to_string(image.dim()));
    return std::inner_product(head.weights.begin(), head.weights.end(), image.values.begin(), 0.0) + head.bias;
}

std::string embedding_key(std::string_view sample_id, EmbeddingKind kind)
{
    std::string key(sample_id);
    key += kind == EmbeddingKind::edited_image ? "/edited_image" : "/caption";
    return key;
}

namespace {

std::vector<double> vector_from_json(const json& j, const std::string& key)
{
    if (!j.is_array())
        throw EmbeddingError("embedding for '" + key + "' is not a list");
    std::vector<double> v;
    v.reserve(j.size());
    for (const auto& x : j) {
        if (!x.is_number())
            throw EmbeddingError("embedding for '" + key + "' has a non-numeric component");
        v.push_back(x.get<double>());
    }
    return v;
}

json parse_json_stream(std::istream& in, const char* what)
{
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw EmbeddingError(std::string(what) + " is not valid JSON: " + e.what());
    }
}

} // namespace

// File-backed ------------------------------------------------------------------

FileEmbeddingProvider::FileEmbeddingProvider(std::string provider_id, std::size_t dim,
                                             std::unordered_map<std::string, std::vector<double>> table)
    : provider_id_(std::move(provider_id))
    , dim_(dim)
    , table_(std::move(table))
{
    if (dim_ == 0)
        throw EmbeddingError("embedding dimension must be positive");
    for (const auto& [key, v] : table_) {
        if (v.size() != dim_)
            throw EmbeddingError("embedding for '" + key + "' has dimension " + std::to_string(v.size()) +
                                 ", header says " + std::to_string(dim_));
    }
}

FileEmbeddingProvider FileEmbeddingProvider::load(std::istream& in)
{
    const json doc = parse_json_stream(in, "embedding file");
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("embeddings"))
        throw EmbeddingError("embedding file needs 'dim' and 'embeddings'");
    if (!doc["dim"].is_number_unsigned())
        throw EmbeddingError("embedding file 'dim' must be a positive integer");
    std::unordered_map<std::string, std::vector<double>> table;
    for (const auto& [key, value] : doc["embeddings"].items())
        table.emplace(key, vector_from_json(value, key));
    return FileEmbeddingProvider(doc.value("provider_id", "file"), doc["dim"].get<std::size_t>(),
                                 std::move(table));
}

FileEmbeddingProvider FileEmbeddingProvider::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw EmbeddingError("cannot open embedding file " + path.string());
    return load(in);
}

Embedding FileEmbeddingProvider::fetch(const std::string& key)
{
    auto it = table_.find(key);
    if (it == table_.end())
        throw EmbeddingNotFound(key);
    return {it->second, key};
}

// HTTP-backed ------------------------------------------------------------------

HttpEmbeddingProvider::HttpEmbeddingProvider(HttpProviderConfig cfg)
    : cfg_(std::move(cfg))
{
    parse_endpoint(cfg_.endpoint);
    if (!cfg_.cache_dir.empty())
        std::filesystem::create_directories(cfg_.cache_dir);
}

std::optional<std::vector<double>> HttpEmbeddingProvider::read_disk_cache(const std::string& key) const
{
    if (cfg_.cache_dir.empty())
        return std::nullopt;
    const auto path = cfg_.cache_dir / (sha256_hex(cfg_.provider_id + '\n' + key) + ".json");
    std::ifstream in(path);
    if (!in)
        return std::nullopt;
    try {
        const json doc = json::parse(in);
        if (doc.at("key") != key || doc.at("provider_id") != cfg_.provider_id)
            return std::nullopt;
        return vector_from_json(doc.at("values"), key);
    } catch (const std::exception&) {
        return std::nullopt;  // unreadable cache entries are refetched
    }
}

void HttpEmbeddingProvider::write_disk_cache(const std::string& key, const std::vector<double>& v) const
{
    if (cfg_.cache_dir.empty())
        return;
    const std::string stem = sha256_hex(cfg_.provider_id + '\n' + key);
    const auto final_path = cfg_.cache_dir / (stem + ".json");
    auto tmp = final_path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << json{{"key", key}, {"provider_id", cfg_.provider_id}, {"values", v}}.dump();
    }
    std::filesystem::rename(tmp, final_path);
}

std::vector<double> HttpEmbeddingProvider::request(const std::string& key)
{
    HttpRetryPolicy policy{cfg_.timeout, cfg_.max_retries, cfg_.backoff};
    std::size_t sent = 0;
    std::string body;
    try {
        body = post_json(parse_endpoint(cfg_.endpoint), json{{"keys", {key}}}.dump(), token_from_env(cfg_.token_env),
                         policy, &sent);
    } catch (const TransportError& e) {
        requests_ += sent;
        throw EmbeddingError(std::string("embedding fetch for '") + key + "': " + e.what());
    }
    requests_ += sent;
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::exception& e) {
        throw EmbeddingError("embedding endpoint returned invalid JSON: " + std::string(e.what()));
    }
    if (!doc.is_object() || !doc.contains(key))
        throw EmbeddingNotFound(key);
    return vector_from_json(doc[key], key);
}

void HttpEmbeddingProvider::check_dim(const std::string& key, std::size_t dim)
{
    if (dim == 0)
        throw EmbeddingError("embedding for '" + key + "' is empty");
    if (!dim_)
        dim_ = dim;
    else if (*dim_ != dim)
        throw EmbeddingError("embedding for '" + key + "' has dimension " + std::to_string(dim) +
                             ", earlier embeddings have " + std::to_string(*dim_));
}

Embedding HttpEmbeddingProvider::fetch(const std::string& key)
{
    // one lock around the whole lookup keeps a key to a single writer
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end())
        return {it->second, key};

    std::vector<double> v;
    if (auto cached = read_disk_cache(key)) {
        v = std::move(*cached);
        check_dim(key, v.size());
    } else {
        v = request(key);
        check_dim(key, v.size());
        write_disk_cache(key, v);
    }
    memo_.emplace(key, v);
    return {std::move(v), key};
}

// Aesthetic --------------------------------------------------------------------

AestheticSource AestheticSource::load(std::istream& in)
{
    const json doc = parse_json_stream(in, "aesthetic file");
    if (!doc.is_object())
        throw EmbeddingError("aesthetic file must be a JSON object");
    if (doc.contains("scores")) {
        Precomputed scores;
        for (const auto& [key, value] : doc["scores"].items()) {
            if (!value.is_number())
                throw EmbeddingError("aesthetic score for '" + key + "' is not a number");
            scores.emplace(key, value.get<double>());
        }
        return AestheticSource(std::move(scores));
    }
    if (!doc.contains("weights"))
        throw EmbeddingError("aesthetic file needs either 'scores' or 'weights'");
    AestheticHead head;
    head.weights = vector_from_json(doc["weights"], "weights");
    head.bias = doc.value("bias", 0.0);
    if (doc.contains("dim") && doc["dim"].get<std::size_t>() != head.weights.size())
        throw EmbeddingError("aesthetic head 'dim' does not match its weight count");
    return AestheticSource(std::move(head));
}

AestheticSource AestheticSource::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw EmbeddingError("cannot open aesthetic file " + path.string());
    return load(in);
}

double AestheticSource::score(const std::string& key, const Embedding* image) const
{
    if (const auto* scores = std::get_if<Precomputed>(&impl_)) {
        auto it = scores->find(key);
        if (it == scores->end())
            throw EmbeddingNotFound(key);
        return it->second;
    }
    if (!image)
        throw EmbeddingError("aesthetic head needs the image embedding for '" + key + "'");
    return aesthetic_score(*image, std::get<AestheticHead>(impl_));
}

} // namespace textedit

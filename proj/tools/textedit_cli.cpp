// textedit: command-line driver for the text-editing evaluation toolkit.

#include "textedit/classic_metrics.hpp"
#include "textedit/corpus.hpp"
#include "textedit/evaluator.hpp"
#include "textedit/hash.hpp"
#include "textedit/judge.hpp"
#include "textedit/report.hpp"
#include "textedit/semantic_metrics.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#ifndef TEXTEDIT_VERSION
#define TEXTEDIT_VERSION "dev"
#endif

namespace fs = std::filesystem;
using namespace textedit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

/// Bad inputs or configuration; maps to exit status 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string manifest;
    std::string taxonomy;
    std::vector<std::string> ocr;
    std::string embeddings;
    std::string embed_endpoint;
    std::string embed_token_env = "TEXTEDIT_EMBED_TOKEN";
    std::string embed_cache;
    std::string aesthetic;
    std::string judge_endpoint;
    std::string judge_replay;
    std::string judge_cache;
    std::string judge_model = "judge";
    std::string judge_token_env = "TEXTEDIT_JUDGE_TOKEN";
    std::string weights;
    std::string thresholds;
    std::optional<double> fail_penalty;
    std::optional<double> residual_threshold;
    std::optional<double> presence_threshold;
    std::optional<double> iou_threshold;
    std::optional<double> min_confidence;
    bool dimension_cutoff = false;
    std::string out;
    std::uint64_t seed = 0;
    int parallelism = 1;
    std::string subset = "full";
    bool strict = false;
    std::string format = "human";
    int timeout_ms = 30000;
    int retries = 3;

    // sample-miniset
    std::size_t total = 500;
    std::string quota_mode = "proportional";

    // cache-import
    std::string responses;
};

std::ifstream open_input(const std::string& path, const char* what)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error(std::string("cannot open ") + what + " '" + path + "'");
    return in;
}

std::string read_file(const std::string& path, const char* what)
{
    auto in = open_input(path, what);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Taxonomy load_taxonomy(const Options& o)
{
    if (o.taxonomy.empty())
        return Taxonomy::builtin();
    auto in = open_input(o.taxonomy, "taxonomy file");
    try {
        return Taxonomy::load(in);
    } catch (const TaxonomyError& e) {
        throw ConfigError(e.what());
    }
}

std::vector<Sample> load_manifest(const Options& o, const Taxonomy& taxonomy)
{
    if (o.manifest.empty())
        throw ConfigError("--manifest is required");
    auto in = open_input(o.manifest, "manifest");
    try {
        return parse_manifest(in, taxonomy);
    } catch (const ManifestError& e) {
        throw ConfigError(o.manifest + ": " + e.what());
    }
}

OcrFile load_ocr(const Options& o, const std::vector<Sample>& samples)
{
    OcrFile all;
    for (const auto& path : o.ocr) {
        auto in = open_input(path, "OCR file");
        try {
            all.merge(load_ocr_detections(in, samples));
        } catch (const OcrError& e) {
            throw ConfigError(path + ": " + e.what());
        }
    }
    return all;
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

/// full | miniset:TOTAL[:SEED] | ids:a,b,c | ids:@file
std::vector<Sample> select_subset(const std::vector<Sample>& samples, const Options& o)
{
    const std::string& sel = o.subset;
    if (sel.empty() || sel == "full")
        return samples;
    if (sel.rfind("miniset:", 0) == 0) {
        const auto parts = split(sel.substr(8), ':');
        try {
            const std::size_t total = std::stoul(parts.at(0));
            const std::uint64_t seed = parts.size() > 1 ? std::stoull(parts[1]) : o.seed;
            return sample_miniset(samples, total, seed);
        } catch (const SamplingError& e) {
            throw ConfigError(e.what());
        } catch (const std::logic_error&) {
            throw ConfigError("malformed --subset '" + sel + "'");
        }
    }
    if (sel.rfind("ids:", 0) == 0) {
        std::vector<std::string> ids;
        std::string rest = sel.substr(4);
        if (!rest.empty() && rest[0] == '@') {
            std::istringstream in(read_file(rest.substr(1), "id list"));
            for (std::string line; std::getline(in, line);) {
                if (!line.empty())
                    ids.push_back(line);
            }
        } else {
            ids = split(rest, ',');
        }
        std::unordered_map<std::string, const Sample*> by_id;
        for (const auto& s : samples)
            by_id.emplace(s.id, &s);
        std::vector<Sample> out;
        for (const auto& id : ids) {
            auto it = by_id.find(id);
            if (it == by_id.end())
                throw ConfigError("--subset names unknown sample '" + id + "'");
            out.push_back(*it->second);
        }
        return out;
    }
    throw ConfigError("unknown --subset '" + sel + "' (expected full, miniset:N[:SEED] or ids:...)");
}

PenaltyConfig penalty_config(const Options& o)
{
    PenaltyConfig cfg;
    try {
        if (!o.thresholds.empty() && o.thresholds.front() == '{') {
            std::istringstream in(o.thresholds);
            cfg = PenaltyConfig::from_json(in);
        } else if (!o.thresholds.empty()) {
            auto in = open_input(o.thresholds, "thresholds file");
            cfg = PenaltyConfig::from_json(in);
        }
        if (o.fail_penalty) cfg.fail_penalty = *o.fail_penalty;
        if (o.residual_threshold) cfg.residual_sim_threshold = *o.residual_threshold;
        if (o.presence_threshold) cfg.target_presence_threshold = *o.presence_threshold;
        if (o.iou_threshold) cfg.iou_threshold = *o.iou_threshold;
        if (o.min_confidence) cfg.min_confidence = *o.min_confidence;
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

JudgeWeights judge_weights(const Options& o)
{
    if (o.weights.empty())
        return {};
    try {
        return JudgeWeights::parse(o.weights);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

ReportMetadata metadata(const Options& o, const std::string& command, const PenaltyConfig& cfg,
                        const JudgeWeights& w, const std::string& embed_id)
{
    nlohmann::ordered_json c;
    c["command"] = command;
    c["subset"] = o.subset;
    c["seed"] = o.seed;
    c["thresholds"] = {cfg.fail_penalty, cfg.residual_sim_threshold, cfg.target_presence_threshold,
                       cfg.iou_threshold, cfg.min_confidence};
    c["weights"] = w.w;
    c["dimension_cutoff"] = o.dimension_cutoff;
    c["judge_model"] = command == "eval-classic" ? "" : o.judge_model;
    c["embedding_provider"] = embed_id;

    ReportMetadata md;
    md.toolkit_version = TEXTEDIT_VERSION;
    md.config_hash = sha256_hex(c.dump());
    md.weights = w;
    md.thresholds = cfg;
    md.dimension_cutoff = o.dimension_cutoff;
    return md;
}

void write_file(const fs::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << content;
}

ReportFormat output_format(const Options& o)
{
    auto f = parse_report_format(o.format);
    if (!f)
        throw ConfigError("unknown --format '" + o.format + "' (structured, tabular, human)");
    return *f;
}

int finish_run(const Options& o, const Taxonomy& taxonomy, const std::vector<SampleResult>& results,
               ReportMetadata md)
{
    const ReportFormat fmt = output_format(o);
    AggregateReport report = aggregate(results, taxonomy, AggregateOptions{o.dimension_cutoff});
    report.metadata = std::move(md);

    if (!o.out.empty()) {
        const fs::path dir(o.out);
        fs::create_directories(dir);
        write_file(dir / "results.json", emit_report(report, ReportFormat::structured));
        write_file(dir / "summary.csv", emit_report(report, ReportFormat::tabular));
        write_file(dir / "summary.txt", emit_report(report, ReportFormat::human));
        write_file(dir / "samples.jsonl", emit_sample_details(results));
    }
    std::cout << emit_report(report, fmt);

    const GroupStats* overall = report.group("overall");
    if (overall && overall->failed() > 0) {
        std::cerr << overall->failed() << " of " << overall->count << " samples failed:";
        for (std::size_t s = 1; s < kStatusCount; ++s) {
            if (overall->by_status[s])
                std::cerr << ' ' << to_string(static_cast<SampleStatus>(s)) << '=' << overall->by_status[s];
        }
        std::cerr << '\n';
        for (const auto& r : results) {
            if (r.status != SampleStatus::ok)
                std::cerr << "  " << r.id << ": " << r.error << '\n';
        }
        if (o.strict)
            return kExitValidation;
    }
    return kExitOk;
}

struct SemanticSetup {
    std::unique_ptr<EmbeddingProvider> provider;
    std::optional<AestheticSource> aesthetic;
};

SemanticSetup semantic_setup(const Options& o)
{
    if (!o.embeddings.empty() && !o.embed_endpoint.empty())
        throw ConfigError("--embeddings and --embed-endpoint are mutually exclusive");
    SemanticSetup s;
    try {
        if (!o.embeddings.empty()) {
            auto in = open_input(o.embeddings, "embedding file");
            s.provider = std::make_unique<FileEmbeddingProvider>(FileEmbeddingProvider::load(in));
        } else if (!o.embed_endpoint.empty()) {
            HttpProviderConfig cfg;
            cfg.endpoint = o.embed_endpoint;
            cfg.token_env = o.embed_token_env;
            cfg.timeout = std::chrono::milliseconds(o.timeout_ms);
            cfg.max_retries = o.retries;
            cfg.cache_dir = o.embed_cache;
            s.provider = std::make_unique<HttpEmbeddingProvider>(cfg);
        }
        if (!o.aesthetic.empty()) {
            auto in = open_input(o.aesthetic, "aesthetic file");
            s.aesthetic = AestheticSource::load(in);
            if (s.aesthetic->needs_embedding() && !s.provider)
                throw ConfigError("an aesthetic head needs --embeddings or --embed-endpoint");
        }
    } catch (const EmbeddingError& e) {
        throw ConfigError(e.what());
    } catch (const TransportError& e) {
        throw ConfigError(e.what());
    }
    return s;
}

struct JudgeSetup {
    std::unique_ptr<JudgeClient> client;
    std::unique_ptr<ResponseCache> cache;
    JudgeContext ctx;
};

JudgeSetup judge_setup(const Options& o)
{
    JudgeSetup s;
    if (!o.judge_endpoint.empty() && !o.judge_replay.empty())
        throw ConfigError("--judge-endpoint and --judge-replay are mutually exclusive");
    try {
        if (!o.judge_replay.empty()) {
            s.cache = std::make_unique<ResponseCache>(o.judge_replay, false);
        } else if (!o.judge_endpoint.empty()) {
            HttpJudgeConfig cfg;
            cfg.endpoint = o.judge_endpoint;
            cfg.model_id = o.judge_model;
            cfg.token_env = o.judge_token_env;
            cfg.retry.timeout = std::chrono::milliseconds(o.timeout_ms);
            cfg.retry.max_retries = o.retries;
            s.client = std::make_unique<HttpJudgeClient>(cfg);
            if (!o.judge_cache.empty())
                s.cache = std::make_unique<ResponseCache>(o.judge_cache, true);
        } else {
            throw ConfigError("judge evaluation needs --judge-endpoint or --judge-replay");
        }
    } catch (const JudgeError& e) {
        throw ConfigError(e.what());
    } catch (const TransportError& e) {
        throw ConfigError(e.what());
    }
    s.ctx.client = s.client.get();
    s.ctx.cache = s.cache.get();
    s.ctx.model_id = o.judge_model;
    s.ctx.weights = judge_weights(o);
    return s;
}

// Subcommands -------------------------------------------------------------------

int cmd_validate(const Options& o)
{
    const Taxonomy taxonomy = load_taxonomy(o);
    const auto samples = load_manifest(o, taxonomy);
    const OcrFile ocr = load_ocr(o, samples);

    std::map<std::string, std::size_t> per_leaf;
    std::size_t real = 0;
    for (const auto& s : samples) {
        ++per_leaf[s.category_id];
        if (taxonomy.classify(s.category_id).major == Major::Real)
            ++real;
    }
    std::size_t missing_ocr = 0;
    if (!o.ocr.empty()) {
        for (const auto& s : samples) {
            for (auto role : {ImageRole::source, ImageRole::edited}) {
                if (!ocr.find(s.id, role)) {
                    ++missing_ocr;
                    std::cerr << "warning: no OCR entry '" << ocr_key(s.id, role) << "'\n";
                }
            }
        }
    }

    std::cout << samples.size() << " samples OK (Virtual " << samples.size() - real << ", Real " << real << "; "
              << per_leaf.size() << "/" << taxonomy.leaves().size() << " categories populated)\n";
    for (const auto& leaf : taxonomy.leaves()) {
        auto it = per_leaf.find(leaf.leaf_id());
        const std::size_t n = it == per_leaf.end() ? 0 : it->second;
        std::cout << "  " << leaf.leaf_id() << "  " << n;
        if (static_cast<std::int64_t>(n) != leaf.count)
            std::cout << "  (taxonomy lists " << leaf.count << ")";
        std::cout << '\n';
    }
    if (!o.ocr.empty())
        std::cout << ocr.size() << " OCR entries, " << missing_ocr << " missing\n";
    return kExitOk;
}

int cmd_eval_classic(const Options& o)
{
    const Taxonomy taxonomy = load_taxonomy(o);
    const auto all = load_manifest(o, taxonomy);
    const auto samples = select_subset(all, o);
    if (o.ocr.empty())
        throw ConfigError("eval-classic needs at least one --ocr file");
    const OcrFile ocr = load_ocr(o, all);
    const PenaltyConfig cfg = penalty_config(o);
    SemanticSetup sem = semantic_setup(o);
    const SemanticSources sources{sem.provider.get(), sem.aesthetic ? &*sem.aesthetic : nullptr};

    const auto results = evaluate_classic_batch(samples, ocr, sources, cfg, o.parallelism);
    return finish_run(o, taxonomy, results,
                      metadata(o, "eval-classic", cfg, judge_weights(o), sem.provider ? sem.provider->provider_id() : ""));
}

int cmd_eval_judge(const Options& o)
{
    const Taxonomy taxonomy = load_taxonomy(o);
    const auto all = load_manifest(o, taxonomy);
    const auto samples = select_subset(all, o);
    JudgeSetup judge = judge_setup(o);

    const auto results = evaluate_judge_batch(samples, judge.ctx, o.parallelism);
    return finish_run(o, taxonomy, results, metadata(o, "eval-judge", PenaltyConfig{}, judge.ctx.weights, ""));
}

int cmd_eval(const Options& o)
{
    const Taxonomy taxonomy = load_taxonomy(o);
    const auto all = load_manifest(o, taxonomy);
    const auto samples = select_subset(all, o);
    if (o.ocr.empty())
        throw ConfigError("eval needs at least one --ocr file");
    const OcrFile ocr = load_ocr(o, all);
    const PenaltyConfig cfg = penalty_config(o);
    SemanticSetup sem = semantic_setup(o);
    JudgeSetup judge = judge_setup(o);
    const SemanticSources sources{sem.provider.get(), sem.aesthetic ? &*sem.aesthetic : nullptr};

    const auto classic = evaluate_classic_batch(samples, ocr, sources, cfg, o.parallelism);
    const auto judged = evaluate_judge_batch(samples, judge.ctx, o.parallelism);
    return finish_run(o, taxonomy, merge_results(classic, judged),
                      metadata(o, "eval", cfg, judge.ctx.weights, sem.provider ? sem.provider->provider_id() : ""));
}

int cmd_sample_miniset(const Options& o)
{
    const Taxonomy taxonomy = load_taxonomy(o);
    const auto samples = load_manifest(o, taxonomy);
    QuotaMode mode = QuotaMode::proportional;
    if (o.quota_mode == "uniform")
        mode = QuotaMode::uniform;
    else if (o.quota_mode != "proportional")
        throw ConfigError("--mode must be proportional or uniform");

    std::vector<Sample> subset;
    try {
        subset = sample_miniset(samples, o.total, o.seed, mode);
    } catch (const SamplingError& e) {
        throw ConfigError(e.what());
    }
    std::ostringstream text;
    emit_manifest(text, subset);
    if (o.out.empty() || o.out == "-") {
        std::cout << text.str();
    } else {
        write_file(o.out, text.str());
        std::set<std::string> cats;
        for (const auto& s : subset)
            cats.insert(s.category_id);
        std::cerr << "wrote " << subset.size() << " samples from " << cats.size() << " categories to " << o.out
                  << '\n';
    }
    return kExitOk;
}

/// Stores judge outputs obtained elsewhere ({"id", "response"} per line) as
/// cache entries for --judge-replay.
int cmd_cache_import(const Options& o)
{
    const Taxonomy taxonomy = load_taxonomy(o);
    const auto samples = load_manifest(o, taxonomy);
    if (o.judge_cache.empty() || o.responses.empty())
        throw ConfigError("cache-import needs --responses and --judge-cache");
    std::unordered_map<std::string, const Sample*> by_id;
    for (const auto& s : samples)
        by_id.emplace(s.id, &s);

    const ResponseCache cache(o.judge_cache, true);
    std::istringstream in(read_file(o.responses, "responses file"));
    std::size_t lineno = 0;
    std::size_t stored = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        const auto rec = nlohmann::json::parse(line, nullptr, false);
        if (rec.is_discarded() || !rec.is_object() || !rec.contains("id") || !rec.contains("response"))
            throw ConfigError(o.responses + ": line " + std::to_string(lineno) + ": expected {\"id\", \"response\"}");
        const auto id = rec["id"].get<std::string>();
        auto it = by_id.find(id);
        if (it == by_id.end())
            throw ConfigError(o.responses + ": line " + std::to_string(lineno) + ": unknown sample '" + id + "'");
        const std::string response =
            rec["response"].is_string() ? rec["response"].get<std::string>() : rec["response"].dump();
        try {
            cache.put(id, o.judge_model, prompt_hash(build_judge_prompt(*it->second)), response);
        } catch (const JudgeError& e) {
            throw ConfigError(e.what());
        }
        ++stored;
    }
    std::cerr << "stored " << stored << " responses for model '" << o.judge_model << "' in " << o.judge_cache << '\n';
    return kExitOk;
}

void add_common(CLI::App* cmd, Options& o)
{
    cmd->add_option("--manifest", o.manifest, "Line-delimited JSON manifest")->required();
    cmd->add_option("--taxonomy", o.taxonomy, "Taxonomy JSON overriding the built-in table");
}

void add_eval_shared(CLI::App* cmd, Options& o)
{
    cmd->add_option("--out", o.out, "Output directory for report files");
    cmd->add_option("--seed", o.seed, "Seed for subset selection");
    cmd->add_option("--parallelism", o.parallelism, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--subset", o.subset, "full | miniset:N[:SEED] | ids:a,b,... | ids:@file");
    cmd->add_flag("--strict", o.strict, "Exit non-zero when any sample fails");
    cmd->add_option("--format", o.format, "Summary printed to stdout: structured, tabular, human");
    cmd->add_option("--timeout-ms", o.timeout_ms, "Per-request timeout for remote providers");
    cmd->add_option("--retries", o.retries, "Retries for remote providers");
}

void add_classic_flags(CLI::App* cmd, Options& o)
{
    cmd->add_option("--ocr", o.ocr, "OCR detection file (repeatable)");
    cmd->add_option("--embeddings", o.embeddings, "Embedding file");
    cmd->add_option("--embed-endpoint", o.embed_endpoint, "Embedding service URL");
    cmd->add_option("--embed-token-env", o.embed_token_env, "Environment variable with the embedding service token");
    cmd->add_option("--embed-cache", o.embed_cache, "Disk cache directory for remote embeddings");
    cmd->add_option("--aesthetic", o.aesthetic, "Aesthetic head or precomputed score file");
    cmd->add_option("--thresholds", o.thresholds, "Penalty thresholds: JSON file or inline JSON object");
    cmd->add_option("--fail-penalty", o.fail_penalty, "Failed-edit multiplier");
    cmd->add_option("--residual-threshold", o.residual_threshold, "Similarity to the source counted as residue");
    cmd->add_option("--presence-threshold", o.presence_threshold, "Similarity to the target counted as present");
    cmd->add_option("--iou-threshold", o.iou_threshold, "IoU above which a detection is in the target region");
    cmd->add_option("--min-confidence", o.min_confidence, "Drop detections below this confidence");
}

void add_judge_flags(CLI::App* cmd, Options& o)
{
    cmd->add_option("--judge-endpoint", o.judge_endpoint, "Judge service URL");
    cmd->add_option("--judge-replay", o.judge_replay, "Evaluate from this response cache only, no network");
    cmd->add_option("--judge-cache", o.judge_cache, "Response cache directory used with --judge-endpoint");
    cmd->add_option("--judge-model", o.judge_model, "Judge model id");
    cmd->add_option("--judge-token-env", o.judge_token_env, "Environment variable with the judge token");
    cmd->add_option("--weights", o.weights, "Five comma-separated judge weights");
    cmd->add_flag("--dimension-cutoff", o.dimension_cutoff, "Apply the TA < 4 cutoff to per-dimension means too");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Evaluation toolkit for text-centric image editing"};
    app.set_version_flag("--version", TEXTEDIT_VERSION);
    app.require_subcommand(1);
    Options o;

    auto* validate = app.add_subcommand("validate", "Check manifest, taxonomy coverage and OCR references");
    add_common(validate, o);
    validate->add_option("--ocr", o.ocr, "OCR detection file (repeatable)");

    auto* classic = app.add_subcommand("eval-classic", "OCR and embedding metrics");
    add_common(classic, o);
    add_eval_shared(classic, o);
    add_classic_flags(classic, o);

    auto* judge = app.add_subcommand("eval-judge", "Judge-model metrics");
    add_common(judge, o);
    add_eval_shared(judge, o);
    add_judge_flags(judge, o);

    auto* both = app.add_subcommand("eval", "Classic and judge metrics in one report");
    add_common(both, o);
    add_eval_shared(both, o);
    add_classic_flags(both, o);
    add_judge_flags(both, o);

    auto* miniset = app.add_subcommand("sample-miniset", "Write a stratified subset manifest");
    add_common(miniset, o);
    miniset->add_option("--total", o.total, "Subset size")->check(CLI::PositiveNumber);
    miniset->add_option("--seed", o.seed, "Sampling seed");
    miniset->add_option("--mode", o.quota_mode, "proportional | uniform");
    miniset->add_option("--out", o.out, "Output manifest path, '-' for stdout");

    auto* import = app.add_subcommand("cache-import", "Store externally obtained judge responses for replay");
    add_common(import, o);
    import->add_option("--responses", o.responses, "Line-delimited {id, response} records")->required();
    import->add_option("--judge-cache", o.judge_cache, "Cache directory to fill")->required();
    import->add_option("--judge-model", o.judge_model, "Judge model id");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*validate) return cmd_validate(o);
        if (*classic) return cmd_eval_classic(o);
        if (*judge) return cmd_eval_judge(o);
        if (*both) return cmd_eval(o);
        if (*miniset) return cmd_sample_miniset(o);
        if (*import) return cmd_cache_import(o);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "fatal: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitRuntime;
}

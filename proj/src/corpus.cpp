#include "textedit/corpus.hpp"

#include "textedit/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

namespace textedit {

using nlohmann::json;

std::string_view to_string(Language lang)
{
    switch (lang) {
    case Language::en: return "en";
    case Language::zh: return "zh";
    case Language::mixed: return "mixed";
    }
    return "en";
}

std::optional<Language> parse_language(std::string_view s)
{
    if (s == "en") return Language::en;
    if (s == "zh") return Language::zh;
    if (s == "mixed") return Language::mixed;
    return std::nullopt;
}

std::string_view to_string(Major m)
{
    return m == Major::Virtual ? "Virtual" : "Real";
}

// Taxonomy -------------------------------------------------------------------

namespace {

int dotted_levels(std::string_view id)
{
    if (id.empty() || id.front() == '.' || id.back() == '.')
        return 0;
    int levels = 1;
    bool prev_dot = false;
    for (char c : id) {
        if (c == '.') {
            if (prev_dot)
                return 0;
            ++levels;
            prev_dot = true;
        } else if (c < '0' || c > '9') {
            return 0;
        } else {
            prev_dot = false;
        }
    }
    return levels;
}

void check_leaf(const TaxonomyNode& n)
{
    const std::string& id = n.leaf_id();
    const int levels = dotted_levels(id);
    if (n.major == Major::Virtual && (levels != 3 || id.rfind("1.", 0) != 0))
        throw TaxonomyError("virtual category '" + id + "' must have the form 1.x.y");
    if (n.major == Major::Real && (levels != 2 || id.rfind("2.", 0) != 0))
        throw TaxonomyError("real category '" + id + "' must have the form 2.x");
    if (n.count < 0)
        throw TaxonomyError("category '" + id + "' has a negative count");
}

TaxonomyNode virtual_leaf(std::string mid, std::string mid_name, std::string sub, std::string sub_name,
                          std::int64_t count)
{
    return {Major::Virtual, std::move(mid), std::move(mid_name), std::move(sub), std::move(sub_name), count};
}

TaxonomyNode real_leaf(std::string mid, std::string mid_name, std::string examples, std::int64_t count)
{
    return {Major::Real, std::move(mid), std::move(mid_name), "", std::move(examples), count};
}

} // namespace

Taxonomy::Taxonomy(std::vector<TaxonomyNode> leaves)
    : leaves_(std::move(leaves))
{
    std::set<std::string> seen;
    for (const auto& n : leaves_) {
        check_leaf(n);
        if (!seen.insert(n.leaf_id()).second)
            throw TaxonomyError("duplicate category '" + n.leaf_id() + "'");
    }
}

const Taxonomy& Taxonomy::builtin()
{
    static const Taxonomy table(std::vector<TaxonomyNode>{
        virtual_leaf("1.1", "Poster Scenes", "1.1.1", "Activities & Promotions Posters", 57),
        virtual_leaf("1.1", "Poster Scenes", "1.1.2", "Product & Advertising Posters", 74),
        virtual_leaf("1.1", "Poster Scenes", "1.1.3", "Movie & Art Posters", 107),
        virtual_leaf("1.2", "Comic Scenes", "1.2.1", "Dialogue & Narration", 65),
        virtual_leaf("1.2", "Comic Scenes", "1.2.2", "Onomatopoeia & Special-effects Text", 26),
        virtual_leaf("1.3", "Slide / Presentation", "1.3.1", "Titles & Subtitles", 71),
        virtual_leaf("1.3", "Slide / Presentation", "1.3.2", "Charts & Explanatory Text", 73),
        virtual_leaf("1.4", "GUI Scenes", "1.4.1", "Game Interfaces", 138),
        virtual_leaf("1.4", "GUI Scenes", "1.4.2", "Browser Interfaces", 44),
        virtual_leaf("1.4", "GUI Scenes", "1.4.3", "App Interfaces (Mobile/TV)", 45),
        virtual_leaf("1.4", "GUI Scenes", "1.4.4", "Operating-System Desktops", 61),
        real_leaf("2.1", "Objects Surface", "e.g., Packages, Bottles, Boxes, Coins", 168),
        real_leaf("2.2", "Signage Surface", "e.g., Building Signs, Storefronts, Billboards", 339),
        real_leaf("2.3", "Board-like Media Surface", "e.g., Blackboards, Whiteboards", 235),
        real_leaf("2.4", "Personal Accessories Surface", "e.g., Clothing Prints, Badges", 192),
        real_leaf("2.5", "Transport Surface", "e.g., Cars, Buses, Trains, Ships", 257),
        real_leaf("2.6", "Watermarks", "e.g., Photo watermarks, Brand Marks, Corner Stamps", 69),
        real_leaf("2.7", "Paper Media Surface", "e.g., Papers, Books, Newspapers, Menus", 127),
    });
    return table;
}

Taxonomy Taxonomy::load(std::istream& in)
{
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw TaxonomyError(std::string("taxonomy file is not valid JSON: ") + e.what());
    }
    if (!doc.is_array())
        throw TaxonomyError("taxonomy file must be a JSON list");

    std::vector<TaxonomyNode> leaves;
    for (const auto& row : doc) {
        try {
            const auto id = row.at("id").get<std::string>();
            const auto major = row.at("major").get<std::string>();
            TaxonomyNode n;
            if (major == "Virtual") {
                n.major = Major::Virtual;
            } else if (major == "Real") {
                n.major = Major::Real;
            } else {
                throw TaxonomyError("category '" + id + "' has unknown major '" + major + "'");
            }
            n.mid_name = row.value("mid_name", "");
            n.count = row.value("count", std::int64_t{0});
            if (n.major == Major::Virtual) {
                n.sub_id = id;
                n.mid_id = id.substr(0, id.rfind('.'));
                n.sub_name = row.value("sub_name", "");
            } else {
                n.mid_id = id;
                n.sub_name = row.value("sub_name", "");
            }
            leaves.push_back(std::move(n));
        } catch (const json::exception& e) {
            throw TaxonomyError(std::string("malformed taxonomy row: ") + e.what());
        }
    }
    return Taxonomy(std::move(leaves));
}

const TaxonomyNode* Taxonomy::find(std::string_view category_id) const
{
    for (const auto& n : leaves_) {
        if (n.leaf_id() == category_id)
            return &n;
    }
    return nullptr;
}

const TaxonomyNode& Taxonomy::classify(std::string_view category_id) const
{
    if (const auto* n = find(category_id))
        return *n;
    throw TaxonomyError("unknown category '" + std::string(category_id) + "'");
}

std::int64_t Taxonomy::total() const
{
    std::int64_t sum = 0;
    for (const auto& n : leaves_)
        sum += n.count;
    return sum;
}

const TaxonomyNode& classify_category(std::string_view category_id)
{
    return Taxonomy::builtin().classify(category_id);
}

// Manifest -------------------------------------------------------------------

ManifestError::ManifestError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what)
    , line_(line)
{
}

namespace {

Polygon parse_polygon(const json& j, std::string_view field)
{
    if (!j.is_array())
        throw std::invalid_argument("field '" + std::string(field) + "' must be a list of [x, y] pairs");
    std::vector<Point> pts;
    pts.reserve(j.size());
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw std::invalid_argument("field '" + std::string(field) + "' must be a list of [x, y] pairs");
        pts.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    try {
        return Polygon(std::move(pts));
    } catch (const GeometryError& e) {
        throw std::invalid_argument("field '" + std::string(field) + "': " + e.what());
    }
}

json polygon_to_json(const Polygon& p)
{
    json arr = json::array();
    for (const auto& v : p.vertices())
        arr.push_back({v.x, v.y});
    return arr;
}

std::string required_string(const json& rec, const char* field)
{
    auto it = rec.find(field);
    if (it == rec.end() || it->is_null())
        throw std::invalid_argument(std::string("missing required field '") + field + "'");
    if (!it->is_string())
        throw std::invalid_argument(std::string("field '") + field + "' must be a string");
    return it->get<std::string>();
}

std::string optional_string(const json& rec, const char* field)
{
    auto it = rec.find(field);
    if (it == rec.end() || it->is_null())
        return {};
    if (!it->is_string())
        throw std::invalid_argument(std::string("field '") + field + "' must be a string");
    return it->get<std::string>();
}

Sample sample_from_json(const json& rec, const Taxonomy& taxonomy)
{
    if (!rec.is_object())
        throw std::invalid_argument("record is not a JSON object");
    Sample s;
    s.id = required_string(rec, "id");
    if (s.id.empty())
        throw std::invalid_argument("field 'id' is empty");
    s.category_id = required_string(rec, "category_id");
    if (!taxonomy.find(s.category_id))
        throw std::invalid_argument("unknown category '" + s.category_id + "'");
    s.source_image = required_string(rec, "source_image");
    s.gt_image = optional_string(rec, "gt_image");
    s.edited_image = optional_string(rec, "edited_image");
    s.raw_text = required_string(rec, "raw_text");
    if (s.raw_text.empty())
        throw std::invalid_argument("field 'raw_text' is empty");
    s.target_text = required_string(rec, "target_text");

    auto region = rec.find("target_region");
    if (region == rec.end() || region->is_null())
        throw std::invalid_argument("missing required field 'target_region'");
    s.target_region = parse_polygon(*region, "target_region");
    for (const auto& v : s.target_region.vertices()) {
        if (v.x < 0.0 || v.y < 0.0)
            throw std::invalid_argument("field 'target_region' has a negative coordinate");
    }

    s.gt_caption = optional_string(rec, "gt_caption");
    const std::string lang = optional_string(rec, "language");
    if (!lang.empty()) {
        auto parsed = parse_language(lang);
        if (!parsed)
            throw std::invalid_argument("field 'language' must be one of en, zh, mixed");
        s.language = *parsed;
    }
    return s;
}

} // namespace

std::vector<Sample> parse_manifest(std::istream& in, const Taxonomy& taxonomy)
{
    std::vector<Sample> out;
    std::unordered_set<std::string> ids;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos)
            continue;
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::exception& e) {
            throw ManifestError(lineno, std::string("malformed record: ") + e.what());
        }
        Sample s;
        try {
            s = sample_from_json(rec, taxonomy);
        } catch (const std::invalid_argument& e) {
            throw ManifestError(lineno, e.what());
        }
        if (!ids.insert(s.id).second)
            throw ManifestError(lineno, "duplicate id '" + s.id + "'");
        out.push_back(std::move(s));
    }
    return out;
}

std::string sample_to_json_line(const Sample& s)
{
    json rec = json::object();
    rec["id"] = s.id;
    rec["category_id"] = s.category_id;
    rec["source_image"] = s.source_image;
    rec["gt_image"] = s.gt_image.empty() ? json(nullptr) : json(s.gt_image);
    rec["edited_image"] = s.edited_image.empty() ? json(nullptr) : json(s.edited_image);
    rec["raw_text"] = s.raw_text;
    rec["target_text"] = s.target_text;
    rec["target_region"] = polygon_to_json(s.target_region);
    rec["gt_caption"] = s.gt_caption;
    rec["language"] = std::string(to_string(s.language));
    return rec.dump();
}

void emit_manifest(std::ostream& out, std::span<const Sample> samples)
{
    for (const auto& s : samples)
        out << sample_to_json_line(s) << '\n';
}

RealVirtualSplit split_real_virtual(std::span<const Sample> samples, const Taxonomy& taxonomy)
{
    RealVirtualSplit out;
    for (const auto& s : samples) {
        if (taxonomy.classify(s.category_id).major == Major::Real)
            out.real.push_back(s);
        else
            out.virtual_.push_back(s);
    }
    return out;
}

// MiniSet --------------------------------------------------------------------

std::map<std::string, std::size_t> miniset_quotas(const std::map<std::string, std::size_t>& populations,
                                                  std::size_t total, QuotaMode mode)
{
    struct Class {
        std::string id;
        std::size_t population;
        std::size_t quota = 0;
        std::size_t remainder = 0;  // numerator of the fractional part, over the corpus size
    };
    std::vector<Class> classes;
    std::size_t corpus = 0;
    for (const auto& [id, n] : populations) {
        if (n == 0)
            continue;
        classes.push_back({id, n});
        corpus += n;
    }
    if (total > corpus)
        throw SamplingError("requested " + std::to_string(total) + " samples from a corpus of " +
                            std::to_string(corpus));

    std::map<std::string, std::size_t> out;
    if (classes.empty())
        return out;

    // classes receiving leftover seats first: bigger fraction, then bigger class, then id
    auto seat_order = [](const Class& a, const Class& b) {
        if (a.remainder != b.remainder)
            return a.remainder > b.remainder;
        if (a.population != b.population)
            return a.population > b.population;
        return a.id < b.id;
    };

    std::size_t assigned = 0;
    if (mode == QuotaMode::proportional) {
        for (auto& c : classes) {
            c.quota = total * c.population / corpus;
            c.remainder = total * c.population % corpus;
            assigned += c.quota;
        }
    } else {
        for (auto& c : classes) {
            c.quota = total / classes.size();
            c.remainder = 0;
            assigned += c.quota;
        }
    }
    std::vector<std::size_t> order(classes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return seat_order(classes[a], classes[b]); });
    for (std::size_t k = 0; assigned < total; ++k, ++assigned)
        ++classes[order[k % order.size()]].quota;

    // floor of one per populated class, paid for by the currently largest quota
    if (total >= classes.size()) {
        for (auto& c : classes) {
            if (c.quota != 0)
                continue;
            auto donor = std::max_element(classes.begin(), classes.end(), [](const Class& a, const Class& b) {
                return a.quota < b.quota;
            });
            --donor->quota;
            c.quota = 1;
        }
    }

    // quotas above the population spill into the largest classes with room left
    std::size_t overflow = 0;
    for (auto& c : classes) {
        if (c.quota > c.population) {
            overflow += c.quota - c.population;
            c.quota = c.population;
        }
    }
    while (overflow > 0) {
        Class* best = nullptr;
        for (auto& c : classes) {
            if (c.quota < c.population && (!best || c.population > best->population))
                best = &c;
        }
        if (!best)
            throw SamplingError("stratified quotas are infeasible");
        const std::size_t take = std::min(overflow, best->population - best->quota);
        best->quota += take;
        overflow -= take;
    }

    for (const auto& c : classes)
        out[c.id] = c.quota;
    return out;
}

std::vector<Sample> sample_miniset(std::span<const Sample> samples, std::size_t total, std::uint64_t seed,
                                   QuotaMode mode)
{
    std::map<std::string, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < samples.size(); ++i)
        members[samples[i].category_id].push_back(i);

    std::map<std::string, std::size_t> populations;
    for (const auto& [id, idx] : members)
        populations[id] = idx.size();
    const auto quotas = miniset_quotas(populations, total, mode);

    SeededRng rng(seed);
    std::vector<std::size_t> chosen;
    chosen.reserve(total);
    for (auto& [id, idx] : members) {
        const std::size_t quota = quotas.at(id);
        // partial Fisher-Yates: the first `quota` slots become the selection
        for (std::size_t k = 0; k < quota; ++k) {
            const std::size_t j = k + static_cast<std::size_t>(rng.below(idx.size() - k));
            std::swap(idx[k], idx[j]);
            chosen.push_back(idx[k]);
        }
    }
    std::sort(chosen.begin(), chosen.end());

    std::vector<Sample> out;
    out.reserve(chosen.size());
    for (std::size_t i : chosen)
        out.push_back(samples[i]);
    return out;
}

// OCR ------------------------------------------------------------------------

std::string_view to_string(ImageRole r)
{
    return r == ImageRole::source ? "source" : "edited";
}

std::string ocr_key(std::string_view sample_id, ImageRole role)
{
    std::string key(sample_id);
    key += '/';
    key += to_string(role);
    return key;
}

const OcrEntry* OcrFile::find(std::string_view sample_id, ImageRole role) const
{
    auto it = entries_.find(ocr_key(sample_id, role));
    return it == entries_.end() ? nullptr : &it->second;
}

void OcrFile::insert(std::string key, OcrEntry entry)
{
    if (!entries_.emplace(key, std::move(entry)).second)
        throw OcrError("duplicate OCR key '" + key + "'");
}

void OcrFile::merge(OcrFile other)
{
    for (auto& [key, entry] : other.entries_)
        insert(key, std::move(entry));
}

namespace {

OcrDetection detection_from_json(const json& j, const std::string& key)
{
    if (!j.is_object())
        throw OcrError("detection under '" + key + "' is not an object");
    OcrDetection d;
    auto text = j.find("text");
    if (text == j.end() || !text->is_string())
        throw OcrError("detection under '" + key + "' is missing a string 'text'");
    d.text = text->get<std::string>();

    auto conf = j.find("confidence");
    if (conf != j.end()) {
        if (!conf->is_number())
            throw OcrError("detection under '" + key + "' has a non-numeric confidence");
        d.confidence = conf->get<double>();
        if (!(d.confidence >= 0.0 && d.confidence <= 1.0))
            throw OcrError("confidence " + conf->dump() + " under '" + key + "' is outside [0, 1]");
    }

    auto poly = j.find("polygon");
    if (poly == j.end())
        throw OcrError("detection under '" + key + "' is missing 'polygon'");
    try {
        d.polygon = parse_polygon(*poly, "polygon");
    } catch (const std::invalid_argument& e) {
        throw OcrError("detection under '" + key + "': " + e.what());
    }
    return d;
}

} // namespace

OcrFile load_ocr_detections(std::istream& in, std::span<const Sample> samples)
{
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw OcrError(std::string("OCR file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw OcrError("OCR file must be a JSON object keyed by 'sample_id/role'");

    std::unordered_set<std::string_view> known;
    for (const auto& s : samples)
        known.insert(s.id);

    OcrFile out;
    for (const auto& [key, value] : doc.items()) {
        const auto slash = key.rfind('/');
        if (slash == std::string::npos || slash == 0)
            throw OcrError("OCR key '" + key + "' is not of the form sample_id/role");
        const std::string_view role(key.data() + slash + 1, key.size() - slash - 1);
        if (role != "source" && role != "edited")
            throw OcrError("OCR key '" + key + "' has unknown role '" + std::string(role) + "'");
        const std::string_view id(key.data(), slash);
        if (!samples.empty() && !known.contains(id))
            throw OcrError("OCR key '" + key + "' references unknown sample '" + std::string(id) + "'");

        OcrEntry entry;
        const json* list = &value;
        if (value.is_object()) {
            auto dets = value.find("detections");
            if (dets == value.end())
                throw OcrError("OCR entry '" + key + "' has no 'detections' list");
            list = &*dets;
            auto roi = value.find("roi_text");
            if (roi != value.end() && !roi->is_null()) {
                if (!roi->is_string())
                    throw OcrError("OCR entry '" + key + "' has a non-string roi_text");
                entry.roi_text = roi->get<std::string>();
            }
        }
        if (!list->is_array())
            throw OcrError("OCR entry '" + key + "' must be a list of detections");
        for (const auto& d : *list)
            entry.detections.push_back(detection_from_json(d, key));
        out.insert(key, std::move(entry));
    }
    return out;
}

std::string dump_ocr_detections(const OcrFile& file)
{
    json doc = json::object();
    for (const auto& [key, entry] : file.entries()) {
        json dets = json::array();
        for (const auto& d : entry.detections)
            dets.push_back({{"text", d.text}, {"confidence", d.confidence}, {"polygon", polygon_to_json(d.polygon)}});
        if (entry.roi_text)
            doc[key] = {{"detections", std::move(dets)}, {"roi_text", *entry.roi_text}};
        else
            doc[key] = std::move(dets);
    }
    return doc.dump();
}

} // namespace textedit

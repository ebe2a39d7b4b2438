#include "store.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "digest.hpp"
#include "fsutil.hpp"
#include "httplib_compat.hpp"

namespace logicscan {

using nlohmann::json;

std::vector<float> l2_normalize(std::vector<float> v) {
    double sq = 0.0;
    for (float x : v) sq += static_cast<double>(x) * x;
    if (sq <= 0.0) throw EmbedderError("cannot normalize a zero vector");
    double inv = 1.0 / std::sqrt(sq);
    for (float& x : v) x = static_cast<float>(x * inv);
    return v;
}

double cosine_similarity(const std::vector<float>& a, const std::vector<float>& b) {
    if (a.size() != b.size()) throw EmbedderError("dimension mismatch in cosine");
    double dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dot += static_cast<double>(a[i]) * b[i];
    return dot;
}

std::vector<float> HashedTokenEmbedder::embed(std::string_view text) {
    std::vector<float> v(dim_, 0.0f);
    std::string token;
    bool any = false;
    auto flush = [&] {
        if (token.empty()) return;
        v[fnv1a64(token) % dim_] += 1.0f;
        any = true;
        token.clear();
    };
    for (char c : text) {
        if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_') {
            token += c;
        } else if (c >= 'A' && c <= 'Z') {
            token += static_cast<char>(c - 'A' + 'a');
        } else {
            flush();
        }
    }
    flush();
    if (!any) throw EmbedderError("cannot embed empty text");
    return l2_normalize(std::move(v));
}

std::vector<float> RemoteEmbedder::embed(std::string_view text) {
    if (text.empty()) throw EmbedderError("cannot embed empty text");
    auto scheme_end = endpoint_.find("://");
    if (scheme_end == std::string::npos)
        throw EmbedderError("embedder endpoint must be an http(s) URL: " + endpoint_);
    auto path_start = endpoint_.find('/', scheme_end + 3);
    std::string host = path_start == std::string::npos ? endpoint_ : endpoint_.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : endpoint_.substr(path_start);

    json body{{"input", std::string(text)}};
    httplib::Client client(host);
    client.set_read_timeout(120, 0);
    httplib::Headers headers;
    if (const char* key = std::getenv("LOGICSCAN_API_KEY"); key && *key)
        headers.emplace("Authorization", std::string("Bearer ") + key);
    auto res = client.Post(path, headers, body.dump(), "application/json");
    if (!res || res->status != 200)
        throw EmbedderError("embedding endpoint failed: " +
                            (res ? "http " + std::to_string(res->status)
                                 : httplib::to_string(res.error())));
    json reply = json::parse(res->body, nullptr, false);
    if (reply.is_discarded() || !reply.contains("embedding") || !reply["embedding"].is_array())
        throw EmbedderError("embedding endpoint returned no 'embedding' array");
    std::vector<float> v;
    v.reserve(reply["embedding"].size());
    for (const auto& x : reply["embedding"]) v.push_back(x.get<float>());
    if (v.size() != dim_)
        throw EmbedderError("embedding dimension " + std::to_string(v.size()) + ", expected " +
                            std::to_string(dim_));
    return l2_normalize(std::move(v));
}

std::string function_record_id(std::string_view address, std::string_view function_name) {
    std::string key(address);
    key += ":";
    key += function_name;
    return digest_hex(key);
}

json FunctionRecord::to_json() const {
    json j;
    j["id"] = id;
    j["contract"] = {{"address", contract.address},
                     {"name", contract.name},
                     {"deployed_days", contract.deployed_days},
                     {"tx_count", contract.tx_count},
                     {"source_path", contract.source_path},
                     {"category", contract.category}};
    if (contract.solidity_major) j["contract"]["solidity_major"] = *contract.solidity_major;
    j["function"] = {{"name", expanded.entry.name},
                     {"visibility", std::string(to_string(expanded.entry.visibility))},
                     {"contract_name", expanded.entry.contract_name},
                     {"span", {expanded.entry.source_span.begin, expanded.entry.source_span.end}},
                     {"modifiers", expanded.entry.modifiers}};
    j["expanded_source"] = expanded.expanded_source;
    j["reached_names"] = expanded.reached_names;
    j["functional_desc"] = functional_desc;
    j["logical_desc"] = logical_desc;
    j["bsl"] = print_bsl(bsl);
    j["category"] = category;
    j["solidity_major"] = solidity_major;
    return j;
}

FunctionRecord FunctionRecord::from_json(const json& j, const std::string& origin) {
    FunctionRecord r;
    try {
        r.id = j.at("id").get<std::string>();
        const auto& c = j.at("contract");
        r.contract.address = c.value("address", "");
        r.contract.name = c.value("name", "");
        r.contract.deployed_days = c.value("deployed_days", 0ll);
        r.contract.tx_count = c.value("tx_count", 0ll);
        r.contract.source_path = c.value("source_path", "");
        r.contract.category = c.value("category", "");
        if (c.contains("solidity_major")) r.contract.solidity_major = c["solidity_major"].get<int>();
        const auto& f = j.at("function");
        r.expanded.entry.name = f.value("name", "");
        std::string vis = f.value("visibility", "public");
        r.expanded.entry.visibility = vis == "external"   ? Visibility::kExternal
                                      : vis == "internal" ? Visibility::kInternal
                                      : vis == "private"  ? Visibility::kPrivate
                                                          : Visibility::kPublic;
        r.expanded.entry.contract_name = f.value("contract_name", "");
        if (f.contains("span") && f["span"].is_array() && f["span"].size() == 2) {
            r.expanded.entry.source_span.begin = f["span"][0].get<std::size_t>();
            r.expanded.entry.source_span.end = f["span"][1].get<std::size_t>();
        }
        for (const auto& m : f.value("modifiers", json::array()))
            r.expanded.entry.modifiers.push_back(m.get<std::string>());
        r.expanded.expanded_source = j.at("expanded_source").get<std::string>();
        for (const auto& n : j.value("reached_names", json::array()))
            r.expanded.reached_names.insert(n.get<std::string>());
        r.functional_desc = j.at("functional_desc").get<std::string>();
        r.logical_desc = j.value("logical_desc", "");
        auto parsed = parse_bsl(j.at("bsl").get<std::string>());
        if (auto* err = std::get_if<BslSyntaxError>(&parsed))
            throw StoreError(origin + ": stored BSL invalid: " + err->message());
        r.bsl = std::get<BslSpec>(parsed);
        r.category = j.value("category", "");
        r.solidity_major = j.value("solidity_major", -1);
    } catch (const json::exception& e) {
        throw StoreError(origin + ": malformed record: " + e.what());
    }
    return r;
}

LogicStore::LogicStore(std::filesystem::path dir, std::shared_ptr<Embedder> embedder)
    : dir_(std::move(dir)), embedder_(std::move(embedder)) {
    if (!embedder_) throw StoreError("store needs an embedder");
    if (std::filesystem::exists(dir_ / "manifest.json")) load();
}

void LogicStore::validate(FunctionRecord& rec) const {
    if (rec.id.empty()) throw ValidationFailure("record id must not be empty");
    if (rec.functional_desc.empty())
        throw ValidationFailure(rec.id + ": functional description must not be empty");

    // Defense in depth: the miner validated these once, but records also
    // arrive from files and future pipeline stages assume they hold.
    auto round_trip = parse_bsl(print_bsl(rec.bsl));
    if (std::holds_alternative<BslSyntaxError>(round_trip))
        throw ValidationFailure(rec.id + ": BSL does not round-trip");
    std::size_t source_checks = find_explicit_checks(rec.expanded.expanded_source).size();
    if (check_count(rec.bsl) != source_checks)
        throw ValidationFailure(rec.id + ": BSL names " + std::to_string(check_count(rec.bsl)) +
                                " checks but the expanded source has " +
                                std::to_string(source_checks));

    if (rec.embedding.empty()) rec.embedding = embedder_->embed(rec.functional_desc);
    if (rec.embedding.size() != embedder_->dimension())
        throw ValidationFailure(rec.id + ": embedding dimension mismatch");
    double norm = 0.0;
    for (float x : rec.embedding) norm += static_cast<double>(x) * x;
    if (std::abs(std::sqrt(norm) - 1.0) > 1e-6)
        throw ValidationFailure(rec.id + ": embedding is not unit length");
}

std::string LogicStore::insert(FunctionRecord rec) {
    validate(rec);
    json record_json = rec.to_json();
    std::string id = rec.id;
    {
        std::unique_lock lock(mu_);
        records_[id] = std::move(rec);
    }
    atomic_write_file(dir_ / "records" / (id + ".json"), record_json.dump(2) + "\n");
    return id;
}

std::optional<FunctionRecord> LogicStore::lookup(const std::string& id) const {
    std::shared_lock lock(mu_);
    auto it = records_.find(id);
    if (it == records_.end()) return std::nullopt;
    return it->second;
}

std::vector<Candidate> LogicStore::query(std::string_view functional_desc, int solidity_major,
                                         std::string_view category, std::size_t k,
                                         double min_sim) const {
    std::vector<float> probe = embedder_->embed(functional_desc);
    std::shared_lock lock(mu_);
    std::vector<Candidate> hits;
    for (const auto& [id, rec] : records_) {
        // Version-unknown records never participate, even for a version-
        // unknown probe.
        if (rec.solidity_major < 0 || rec.solidity_major != solidity_major) continue;
        if (!category.empty() && rec.category != category) continue;
        double sim = cosine_similarity(probe, rec.embedding);
        if (sim < min_sim) continue;
        hits.push_back({rec, sim});
    }
    std::sort(hits.begin(), hits.end(), [](const Candidate& a, const Candidate& b) {
        if (a.similarity != b.similarity) return a.similarity > b.similarity;
        return a.record.id < b.record.id;
    });
    if (hits.size() > k) hits.resize(k);
    return hits;
}

void LogicStore::save() const {
    std::shared_lock lock(mu_);
    json ids = json::array();
    for (const auto& [id, rec] : records_) ids.push_back(id);
    json manifest{{"dimension", embedder_->dimension()},
                  {"count", records_.size()},
                  {"ids", ids}};

    std::string vectors;
    vectors.reserve(records_.size() * embedder_->dimension() * sizeof(float));
    for (const auto& [id, rec] : records_) {
        const char* raw = reinterpret_cast<const char*>(rec.embedding.data());
        vectors.append(raw, rec.embedding.size() * sizeof(float));
    }
    // vectors.bin before manifest.json: a manifest never references vectors
    // that are not yet on disk.
    atomic_write_file(dir_ / "vectors.bin", vectors);
    atomic_write_file(dir_ / "manifest.json", manifest.dump(2) + "\n");
}

void LogicStore::load() {
    json manifest = json::parse(read_file(dir_ / "manifest.json"), nullptr, false);
    if (manifest.is_discarded()) throw StoreError(dir_.string() + ": manifest is not valid JSON");
    std::size_t dim = manifest.value("dimension", std::size_t{0});
    if (dim != embedder_->dimension())
        throw StoreError(dir_.string() + ": manifest dimension " + std::to_string(dim) +
                         " does not match embedder dimension " +
                         std::to_string(embedder_->dimension()));

    std::string vectors = read_file(dir_ / "vectors.bin");
    const auto& ids = manifest.at("ids");
    if (vectors.size() != ids.size() * dim * sizeof(float))
        throw StoreError(dir_.string() + ": vectors.bin size does not match manifest");

    std::unique_lock lock(mu_);
    records_.clear();
    std::size_t idx = 0;
    for (const auto& id_json : ids) {
        std::string id = id_json.get<std::string>();
        auto path = dir_ / "records" / (id + ".json");
        json doc = json::parse(read_file(path), nullptr, false);
        if (doc.is_discarded()) throw StoreError(path.string() + ": record is not valid JSON");
        FunctionRecord rec = FunctionRecord::from_json(doc, path.string());
        rec.embedding.resize(dim);
        std::memcpy(rec.embedding.data(), vectors.data() + idx * dim * sizeof(float),
                    dim * sizeof(float));
        records_[id] = std::move(rec);
        ++idx;
    }
}

std::size_t LogicStore::size() const {
    std::shared_lock lock(mu_);
    return records_.size();
}

std::vector<BslSpec> LogicStore::all_specs() const {
    std::shared_lock lock(mu_);
    std::vector<BslSpec> out;
    out.reserve(records_.size());
    for (const auto& [id, rec] : records_) out.push_back(rec.bsl);
    return out;
}

json LogicStore::stats() const {
    std::shared_lock lock(mu_);
    std::map<std::string, std::size_t> by_category;
    std::map<std::string, std::size_t> by_major;
    for (const auto& [id, rec] : records_) {
        ++by_category[rec.category.empty() ? "(none)" : rec.category];
        ++by_major[rec.solidity_major < 0 ? "unknown" : "0." + std::to_string(rec.solidity_major)];
    }
    return json{{"records", records_.size()},
                {"dimension", embedder_->dimension()},
                {"categories", by_category},
                {"solidity_versions", by_major}};
}

}  // namespace logicscan

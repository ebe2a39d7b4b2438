#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bsl.hpp"
#include "corpus.hpp"
#include "solidity.hpp"

namespace logicscan {

struct EmbedderError : std::runtime_error {
    explicit EmbedderError(const std::string& what) : std::runtime_error(what) {}
};

class Embedder {
 public:
    virtual ~Embedder() = default;
    virtual std::size_t dimension() const = 0;
    // Unit L2 norm within 1e-6; throws EmbedderError on empty text.
    virtual std::vector<float> embed(std::string_view text) = 0;
};

// Hashed token-frequency vectors over lowercase word tokens. Texts sharing
// no tokens map to orthogonal vectors (modulo hash-bucket collisions), which
// is what makes retrieval tests reproducible offline.
class HashedTokenEmbedder : public Embedder {
 public:
    explicit HashedTokenEmbedder(std::size_t dim = 256) : dim_(dim) {}
    std::size_t dimension() const override { return dim_; }
    std::vector<float> embed(std::string_view text) override;

 private:
    std::size_t dim_;
};

// POST {"input": text} -> {"embedding": [floats]}; the result is normalized
// on arrival so the store only ever holds unit vectors.
class RemoteEmbedder : public Embedder {
 public:
    RemoteEmbedder(std::string endpoint_url, std::size_t dim = 4096)
        : endpoint_(std::move(endpoint_url)), dim_(dim) {}
    std::size_t dimension() const override { return dim_; }
    std::vector<float> embed(std::string_view text) override;

 private:
    std::string endpoint_;
    std::size_t dim_;
};

std::vector<float> l2_normalize(std::vector<float> v);
double cosine_similarity(const std::vector<float>& a, const std::vector<float>& b);

// The six-aspect unit of reference knowledge, one mined public function.
struct FunctionRecord {
    std::string id;  // digest of address + function name
    ContractMeta contract;
    ExpandedFunction expanded;
    std::string functional_desc;
    std::string logical_desc;
    BslSpec bsl;
    std::string category;
    int solidity_major = -1;  // -1 = version unknown, excluded from retrieval
    std::vector<float> embedding;  // filled at insert time when empty

    nlohmann::json to_json() const;
    static FunctionRecord from_json(const nlohmann::json& j, const std::string& origin);
};

std::string function_record_id(std::string_view address, std::string_view function_name);

struct Candidate {
    FunctionRecord record;
    double similarity;
};

struct ValidationFailure : std::runtime_error {
    explicit ValidationFailure(const std::string& what) : std::runtime_error(what) {}
};
struct StoreError : std::runtime_error {
    explicit StoreError(const std::string& what) : std::runtime_error(what) {}
};

// Exact flat cosine index over the mined records. Deliberately not an ANN
// structure: corpora in the tens of thousands scan in milliseconds and an
// exact index keeps retrieval reproducible.
//
// Layout on disk: <dir>/manifest.json, <dir>/records/<id>.json,
// <dir>/vectors.bin (float32, manifest order). Manifest order is id-sorted,
// so store bytes do not depend on insertion order. Writes are atomic.
class LogicStore {
 public:
    LogicStore(std::filesystem::path dir, std::shared_ptr<Embedder> embedder);

    // Re-validates the record (BSL round-trip, check-count match against the
    // expanded source, embedding norm), embeds when needed, and replaces any
    // existing record with the same id. Returns the id.
    std::string insert(FunctionRecord rec);

    std::optional<FunctionRecord> lookup(const std::string& id) const;

    // Version- and category-filtered top-k by cosine, min_sim applied before
    // truncation, ties broken by id ascending. An empty category matches any
    // record category.
    std::vector<Candidate> query(std::string_view functional_desc, int solidity_major,
                                 std::string_view category, std::size_t k = 5,
                                 double min_sim = 0.80) const;

    void save() const;

    std::size_t size() const;
    std::vector<BslSpec> all_specs() const;
    nlohmann::json stats() const;
    const std::filesystem::path& dir() const { return dir_; }

 private:
    void load();
    void validate(FunctionRecord& rec) const;

    std::filesystem::path dir_;
    std::shared_ptr<Embedder> embedder_;
    mutable std::shared_mutex mu_;
    std::map<std::string, FunctionRecord> records_;  // id-sorted
};

}  // namespace logicscan

#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "corpus.hpp"

namespace logicscan {

// Flat key = value text, '#' comments. Every key can be overridden by an
// environment variable LOGICSCAN_<KEY_UPPERCASED>. Credentials are never
// read from this file; the remote backends take LOGICSCAN_API_KEY from the
// environment directly.
struct Config {
    std::filesystem::path store_dir = "store";
    std::filesystem::path category_map;  // empty = built-in seed
    std::filesystem::path dictionary;    // empty = built-in seed

    std::size_t retrieval_k = 5;
    double min_similarity = 0.80;
    std::size_t parallelism = 1;
    double temperature = 0.0;

    // Ablation toggles for the audit pipeline.
    bool include_writers = true;      // false drops writer context from prompts
    bool aggregate_templates = true;  // false skips majority voting (raw union)

    // "scripted" | "remote_http" | "sentinel"
    std::string miner_backend = "sentinel";
    std::filesystem::path miner_script;
    std::string miner_endpoint;
    std::string miner_model;

    std::string checker_backend = "sentinel";
    std::filesystem::path checker_script;
    std::string checker_endpoint;
    std::string checker_model;

    // "deterministic_test" | "remote_http"
    std::string embedder = "deterministic_test";
    std::size_t embedder_dim = 256;
    std::string embedder_endpoint;

    static Config load(const std::filesystem::path& path);
    static Config from_text(std::string_view text, const std::string& origin);
    // Parse + range checks; throws ConfigError with the offending key.
    void validate(const std::string& origin) const;
};

std::map<std::string, std::string> parse_flat_config(std::string_view text,
                                                     const std::string& origin);

}  // namespace logicscan

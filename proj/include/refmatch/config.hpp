#pragma once

#include <cstdint>
#include <string>

#include "refmatch/blocking.hpp"
#include "refmatch/classify.hpp"
#include "refmatch/features.hpp"

namespace refmatch::config {

struct Paths {
    std::string records;
    std::string references;
    std::string gold;
    std::string index;
    std::string model;
    std::string out_dir = ".";
};

struct EvalConfig {
    int folds = 10;
    std::uint64_t seed = 7;
    int max_cutoff = 15;
};

struct PipelineConfig {
    Paths paths;
    blocking::BlockingConfig blocking;
    features::GroupSet feature_groups;
    classify::TrainOptions classifier;
    EvalConfig eval;
    unsigned workers = 0;  // 0 = hardware concurrency
};

// Load config JSON; unknown keys are rejected (typo protection). Throws
// ConfigError on structural problems.
PipelineConfig load_config(const std::string& path);
PipelineConfig parse_config(const std::string& json_text);
std::string to_json(const PipelineConfig& config);

// FNV-1a over the canonical serialized form; embedded in output artifacts.
std::string fingerprint(const PipelineConfig& config);

}  // namespace refmatch::config

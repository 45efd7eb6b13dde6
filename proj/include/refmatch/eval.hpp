#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "refmatch/blocking.hpp"
#include "refmatch/classify.hpp"
#include "refmatch/index.hpp"
#include "refmatch/model.hpp"

namespace refmatch::eval {

struct FoldMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    // True when precision had an empty denominator and was reported as 0.
    bool degenerate = false;
};

struct EvalReport {
    double precision = 0.0;  // macro averages over folds
    double recall = 0.0;
    double f1 = 0.0;
    std::vector<FoldMetrics> per_fold;
    std::string config_fingerprint;
};

struct BlockingCurvePoint {
    int cutoff = 0;
    double precision = 0.0;
    double recall = 0.0;
    bool recall_defined = true;
};

struct BlockingCurve {
    std::string strategy;
    std::vector<BlockingCurvePoint> points;  // cutoffs ascending
};

struct BlockingStats {
    std::size_t pair_count = 0;
    std::size_t positive_pairs = 0;
    std::size_t references_with_candidates = 0;
    std::size_t references_with_correct = 0;   // >= 1 gold candidate survived
    std::size_t matchable_references = 0;      // >= 1 gold match exists
    std::size_t blocking_missed = 0;           // matchable but no correct candidate
    std::size_t min_candidates = 0;
    std::size_t max_candidates = 0;
    double mean_candidates = 0.0;
    double sd_candidates = 0.0;
};

// Precision/recall of the blocked candidate sets per cutoff 1..max_cutoff.
// One retrieval pass at max_cutoff; smaller cutoffs reuse ranked prefixes.
BlockingCurve blocking_curve(const std::vector<SegmentedReference>& references,
                             const GoldStandard& gold, const index::Index& idx,
                             const blocking::BlockingConfig& config, int max_cutoff,
                             unsigned workers = 0);

// Candidate-set statistics at the config's own cutoff (only references with at
// least one candidate count toward the min/mean/sd/max).
BlockingStats blocking_stats(const std::vector<SegmentedReference>& references,
                             const GoldStandard& gold, const index::Index& idx,
                             const blocking::BlockingConfig& config, unsigned workers = 0);

// Partition of reference ids into k folds, sizes within 1, seeded shuffle.
std::vector<std::vector<std::string>> grouped_kfold(const std::vector<std::string>& reference_ids,
                                                    int k, std::uint64_t seed);

// Pairs must carry features and gold labels. Per fold: train on the other
// folds, test on the fold, pair-level metrics; macro average.
EvalReport cross_validate(const std::vector<CandidatePair>& pairs,
                          const std::vector<std::vector<std::string>>& folds,
                          const classify::TrainOptions& options, unsigned workers = 0);

struct Top1Report {
    EvalReport post_blocking;
    EvalReport pipeline;  // recall denominators include blocking-missed references
};

// Reference-level evaluation of the top-1 decision rule under the same CV
// folds. blocking_missed are matchable references without any correct
// candidate; they join fold recall denominators round-robin by sorted id.
Top1Report evaluate_top1(const std::vector<CandidatePair>& pairs,
                         const std::vector<std::vector<std::string>>& folds,
                         const classify::TrainOptions& options,
                         const std::vector<std::string>& blocking_missed, unsigned workers = 0);

// Histogram over the number of gold matches per reference (zero bucket kept).
std::map<std::size_t, std::size_t> match_count_histogram(const GoldStandard& gold);

}  // namespace refmatch::eval

#include "refmatch/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "refmatch/error.hpp"
#include "refmatch/parallel.hpp"
#include "refmatch/rng.hpp"

namespace refmatch::eval {

namespace {

double f1_of(double precision, double recall) {
    return precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

void finish_macro(EvalReport& report) {
    for (const FoldMetrics& fold : report.per_fold) {
        report.precision += fold.precision;
        report.recall += fold.recall;
        report.f1 += fold.f1;
    }
    const double k = static_cast<double>(report.per_fold.size());
    if (k > 0) {
        report.precision /= k;
        report.recall /= k;
        report.f1 /= k;
    }
}

}  // namespace

BlockingCurve blocking_curve(const std::vector<SegmentedReference>& references,
                             const GoldStandard& gold, const index::Index& idx,
                             const blocking::BlockingConfig& config, int max_cutoff,
                             unsigned workers) {
    BlockingCurve curve;
    curve.strategy = blocking::strategy_name(config.strategy);
    if (max_cutoff < 1) return curve;

    blocking::BlockingConfig wide = config;
    wide.cutoff = max_cutoff;
    std::vector<std::vector<std::vector<std::string>>> blocks(references.size());
    parallel_for(references.size(), worker_count(workers), [&](std::size_t i) {
        blocks[i] = blocking::ranked_blocks(references[i], idx, wide);
    });

    std::size_t matchable = 0;
    for (const SegmentedReference& ref : references) {
        const auto it = gold.entries.find(ref.id);
        if (it != gold.entries.end() && !it->second.empty()) ++matchable;
    }

    for (int cutoff = 1; cutoff <= max_cutoff; ++cutoff) {
        std::size_t pair_total = 0, pair_correct = 0, refs_with_correct = 0;
        for (std::size_t i = 0; i < references.size(); ++i) {
            const auto it = gold.entries.find(references[i].id);
            const std::set<std::string>* golden =
                it != gold.entries.end() ? &it->second : nullptr;
            std::set<std::string> candidates;
            for (const std::vector<std::string>& block : blocks[i]) {
                const std::size_t take = std::min<std::size_t>(block.size(),
                                                               static_cast<std::size_t>(cutoff));
                candidates.insert(block.begin(), block.begin() + static_cast<long>(take));
            }
            pair_total += candidates.size();
            if (golden && !golden->empty()) {
                std::size_t correct = 0;
                for (const std::string& id : candidates) correct += golden->count(id);
                pair_correct += correct;
                if (correct > 0) ++refs_with_correct;
            }
        }
        BlockingCurvePoint point;
        point.cutoff = cutoff;
        point.precision = pair_total > 0
                              ? static_cast<double>(pair_correct) / static_cast<double>(pair_total)
                              : 0.0;
        point.recall_defined = matchable > 0;
        point.recall = point.recall_defined ? static_cast<double>(refs_with_correct) /
                                                  static_cast<double>(matchable)
                                            : 0.0;
        curve.points.push_back(point);
    }
    return curve;
}

BlockingStats blocking_stats(const std::vector<SegmentedReference>& references,
                             const GoldStandard& gold, const index::Index& idx,
                             const blocking::BlockingConfig& config, unsigned workers) {
    BlockingStats stats;
    std::vector<std::set<std::string>> candidate_sets(references.size());
    parallel_for(references.size(), worker_count(workers), [&](std::size_t i) {
        candidate_sets[i] = blocking::retrieve_candidates(references[i], idx, config);
    });

    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < references.size(); ++i) {
        const std::set<std::string>& candidates = candidate_sets[i];
        const auto it = gold.entries.find(references[i].id);
        const bool has_gold = it != gold.entries.end() && !it->second.empty();
        if (has_gold) ++stats.matchable_references;
        stats.pair_count += candidates.size();
        if (!candidates.empty()) {
            ++stats.references_with_candidates;
            sizes.push_back(candidates.size());
        }
        std::size_t correct = 0;
        if (has_gold) {
            for (const std::string& id : candidates) correct += it->second.count(id);
        }
        stats.positive_pairs += correct;
        if (correct > 0) {
            ++stats.references_with_correct;
        } else if (has_gold) {
            ++stats.blocking_missed;
        }
    }
    if (!sizes.empty()) {
        stats.min_candidates = *std::min_element(sizes.begin(), sizes.end());
        stats.max_candidates = *std::max_element(sizes.begin(), sizes.end());
        const double mean = static_cast<double>(stats.pair_count) /
                            static_cast<double>(sizes.size());
        stats.mean_candidates = mean;
        double var = 0.0;
        for (const std::size_t s : sizes) {
            var += (static_cast<double>(s) - mean) * (static_cast<double>(s) - mean);
        }
        stats.sd_candidates = std::sqrt(var / static_cast<double>(sizes.size()));
    }
    return stats;
}

std::vector<std::vector<std::string>> grouped_kfold(const std::vector<std::string>& reference_ids,
                                                    int k, std::uint64_t seed) {
    if (k < 2) throw ConfigError("fold count must be >= 2");
    if (static_cast<std::size_t>(k) > reference_ids.size()) {
        throw ConfigError("fold count exceeds reference count");
    }
    std::vector<std::string> ids = reference_ids;
    std::sort(ids.begin(), ids.end());  // seed-only determinism, input order irrelevant
    Rng rng(seed);
    rng.shuffle(ids);
    std::vector<std::vector<std::string>> folds(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < ids.size(); ++i) {
        folds[i % static_cast<std::size_t>(k)].push_back(std::move(ids[i]));
    }
    return folds;
}

namespace {

struct FoldData {
    std::vector<std::vector<double>> train_x;
    std::vector<int> train_y;
    std::vector<std::string> train_ids;
    std::vector<const CandidatePair*> test;
};

std::vector<FoldData> split_pairs(const std::vector<CandidatePair>& pairs,
                                  const std::vector<std::vector<std::string>>& folds) {
    std::unordered_map<std::string, std::size_t> fold_of;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        for (const std::string& id : folds[f]) fold_of[id] = f;
    }
    std::vector<FoldData> data(folds.size());
    for (const CandidatePair& pair : pairs) {
        if (!pair.gold_label) {
            throw InputError("cross-validation needs gold labels (pair " + pair.reference_id +
                             ", " + pair.record_id + ")");
        }
        if (pair.features.empty()) {
            throw InputError("cross-validation needs features (pair " + pair.reference_id + ", " +
                             pair.record_id + ")");
        }
        const auto it = fold_of.find(pair.reference_id);
        if (it == fold_of.end()) {
            throw InputError("pair references id outside the folds: " + pair.reference_id);
        }
        for (std::size_t f = 0; f < folds.size(); ++f) {
            if (f == it->second) {
                data[f].test.push_back(&pair);
            } else {
                data[f].train_x.push_back(pair.features);
                data[f].train_y.push_back(*pair.gold_label ? 1 : 0);
                data[f].train_ids.push_back(pair.reference_id + "/" + pair.record_id);
            }
        }
    }
    return data;
}

classify::Model train_fold(const FoldData& fold, const classify::TrainOptions& options,
                           std::size_t fold_index) {
    bool has_pos = false, has_neg = false;
    for (const int y : fold.train_y) (y > 0 ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg) {
        throw InputError("fold " + std::to_string(fold_index) +
                         ": training split contains a single class");
    }
    return classify::Model::train(fold.train_x, fold.train_y, options, &fold.train_ids);
}

}  // namespace

EvalReport cross_validate(const std::vector<CandidatePair>& pairs,
                          const std::vector<std::vector<std::string>>& folds,
                          const classify::TrainOptions& options, unsigned workers) {
    const std::vector<FoldData> data = split_pairs(pairs, folds);
    EvalReport report;
    report.per_fold.resize(folds.size());
    parallel_for(folds.size(), worker_count(workers), [&](std::size_t f) {
        const classify::Model model = train_fold(data[f], options, f);
        std::size_t tp = 0, fp = 0, fn = 0;
        for (const CandidatePair* pair : data[f].test) {
            const bool predicted = model.predict(pair->features) > 0.5;
            const bool actual = *pair->gold_label;
            if (predicted && actual) ++tp;
            if (predicted && !actual) ++fp;
            if (!predicted && actual) ++fn;
        }
        FoldMetrics& m = report.per_fold[f];
        m.degenerate = tp + fp == 0;
        m.precision = m.degenerate ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
        m.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
        m.f1 = f1_of(m.precision, m.recall);
    });
    finish_macro(report);
    return report;
}

Top1Report evaluate_top1(const std::vector<CandidatePair>& pairs,
                         const std::vector<std::vector<std::string>>& folds,
                         const classify::TrainOptions& options,
                         const std::vector<std::string>& blocking_missed, unsigned workers) {
    const std::vector<FoldData> data = split_pairs(pairs, folds);

    // Gold view reconstructed from pair labels: a reference counts as matchable
    // here when at least one of its candidate pairs is labeled positive.
    std::unordered_map<std::string, std::set<std::string>> gold_by_ref;
    for (const CandidatePair& pair : pairs) {
        if (*pair.gold_label) gold_by_ref[pair.reference_id].insert(pair.record_id);
    }

    std::vector<std::string> missed_sorted = blocking_missed;
    std::sort(missed_sorted.begin(), missed_sorted.end());

    Top1Report report;
    report.post_blocking.per_fold.resize(folds.size());
    report.pipeline.per_fold.resize(folds.size());

    std::vector<std::size_t> missed_per_fold(folds.size(), 0);
    for (std::size_t i = 0; i < missed_sorted.size(); ++i) {
        ++missed_per_fold[i % folds.size()];
    }

    parallel_for(folds.size(), worker_count(workers), [&](std::size_t f) {
        const classify::Model model = train_fold(data[f], options, f);
        std::unordered_map<std::string, std::vector<CandidatePair>> by_reference;
        for (const CandidatePair* pair : data[f].test) {
            CandidatePair scored = *pair;
            scored.predicted_probability = model.predict(pair->features);
            by_reference[pair->reference_id].push_back(std::move(scored));
        }
        std::size_t selections = 0, correct = 0, matchable = 0;
        for (const std::string& reference_id : folds[f]) {
            const auto it = by_reference.find(reference_id);
            if (it == by_reference.end()) continue;
            const auto gold_it = gold_by_ref.find(reference_id);
            const bool has_gold = gold_it != gold_by_ref.end();
            if (has_gold) ++matchable;
            const auto selected = classify::select_top1(it->second);
            if (selected) {
                ++selections;
                if (has_gold && gold_it->second.count(*selected)) ++correct;
            }
        }
        FoldMetrics& post = report.post_blocking.per_fold[f];
        post.degenerate = selections == 0;
        post.precision =
            post.degenerate ? 0.0 : static_cast<double>(correct) / static_cast<double>(selections);
        post.recall =
            matchable == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(matchable);
        post.f1 = f1_of(post.precision, post.recall);

        FoldMetrics& pipe = report.pipeline.per_fold[f];
        const std::size_t denom = matchable + missed_per_fold[f];
        pipe.degenerate = post.degenerate;
        pipe.precision = post.precision;
        pipe.recall = denom == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(denom);
        pipe.f1 = f1_of(pipe.precision, pipe.recall);
    });
    finish_macro(report.post_blocking);
    finish_macro(report.pipeline);
    return report;
}

std::map<std::size_t, std::size_t> match_count_histogram(const GoldStandard& gold) {
    std::map<std::size_t, std::size_t> histogram;
    for (const auto& [reference_id, record_ids] : gold.entries) {
        ++histogram[record_ids.size()];
    }
    return histogram;
}

}  // namespace refmatch::eval

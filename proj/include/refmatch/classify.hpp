#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "refmatch/model.hpp"

namespace refmatch::classify {

enum class ClassifierKind { LargeMarginLinear, TreeEnsemble };

const char* classifier_kind_name(ClassifierKind kind);
std::optional<ClassifierKind> classifier_kind_from_name(const std::string& name);

struct LinearParams {
    double l2_strength = 1.0;  // lambda in 0.5*lambda*|w|^2 + sum hinge
    int max_epochs = 1000;
    double tolerance = 1e-4;
    bool class_weight = false;  // balance classes by inverse frequency
};

struct ForestParams {
    int tree_count = 100;
    int max_depth = 0;          // 0 = unlimited
    int features_per_split = 0;  // 0 = floor(sqrt(feature count)), min 1
};

struct TrainOptions {
    ClassifierKind kind = ClassifierKind::LargeMarginLinear;
    std::uint64_t seed = 42;
    LinearParams linear;
    ForestParams forest;
    std::string schema_version;
};

// Trained binary match classifier. Immutable; predictions are thread-safe.
class Model {
public:
    // labels: 1 = match, 0 = non-match. Throws InputError on a single-class
    // sample or a non-finite feature (naming the offending pair when ids are
    // given). Deterministic for a fixed seed.
    static Model train(const std::vector<std::vector<double>>& features,
                       const std::vector<int>& labels, const TrainOptions& options,
                       const std::vector<std::string>* pair_ids = nullptr);

    // P(match) in [0,1]; the decision label is probability > 0.5.
    double predict(const std::vector<double>& features) const;

    ClassifierKind kind() const { return kind_; }
    const std::string& schema_version() const { return schema_version_; }
    void require_schema(const std::string& version) const;

    std::string to_json() const;
    static Model from_json(const std::string& text);
    void save(const std::string& path) const;
    static Model load(const std::string& path);

    struct TreeNode {
        int feature = -1;  // -1 = leaf
        double threshold = 0.0;
        std::int32_t left = -1;
        std::int32_t right = -1;
        int label = 0;  // leaves
    };

private:
    ClassifierKind kind_ = ClassifierKind::LargeMarginLinear;
    std::string schema_version_;

    // linear
    std::vector<double> means_;
    std::vector<double> scales_;
    std::vector<double> weights_;  // includes trailing bias weight
    double platt_a_ = 0.0;
    double platt_b_ = 0.0;

    // forest
    std::vector<std::vector<TreeNode>> trees_;

    double decision_value(const std::vector<double>& features) const;
};

// Among pairs with probability > 0.5 pick the highest; ties break toward the
// smaller record id. All pairs must share reference_id and carry predictions.
std::optional<std::string> select_top1(const std::vector<CandidatePair>& pairs_of_one_reference);

}  // namespace refmatch::classify

#pragma once

#include <string>
#include <vector>

#include "refmatch/model.hpp"

namespace refmatch::features {

// Feature groups: A = segment vs record comparisons, P = segmentation
// probabilities (direct and as weights), B = raw-string vs record only.
struct GroupSet {
    bool a = true;
    bool p = true;
    bool b = true;

    bool operator==(const GroupSet&) const = default;

    static GroupSet parse(const std::vector<std::string>& names);  // {"A","P","B"}
    std::vector<std::string> names() const;
};

struct FeatureDef {
    std::string name;
    char group;  // 'A', 'P' or 'B'
};

inline constexpr double kMissing = -1.0;

// The full fixed-order schema (group A block, then P, then B).
const std::vector<FeatureDef>& full_schema();

// Schema restricted to the enabled groups, preserving order.
std::vector<FeatureDef> schema_for(GroupSet groups);

// Version string bound into models and featurized files, e.g. "fv1:APB".
std::string schema_version(GroupSet groups);

// Feature vector for one candidate pair. The reference must be preprocessed
// (merged number segment, extracted year). Values are similarity scores in
// [0,1], 0/1 indicators, probabilities, or kMissing when an input is absent.
std::vector<double> extract_features(const SegmentedReference& reference,
                                     const BibRecord& record, GroupSet groups = {});

}  // namespace refmatch::features

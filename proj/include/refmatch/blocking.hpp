#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "refmatch/index.hpp"
#include "refmatch/model.hpp"
#include "refmatch/textnorm.hpp"

namespace refmatch::blocking {

// Non-empty subset of the six segment kinds, as a bitmask. 63 in total.
struct SegmentCombination {
    std::uint8_t bits = 0;

    bool contains(SegmentKind kind) const { return bits & (1u << static_cast<int>(kind)); }
    std::size_t size() const { return static_cast<std::size_t>(__builtin_popcount(bits)); }
    std::vector<SegmentKind> kinds() const;
    std::string name() const;  // "author+year"

    auto operator<=>(const SegmentCombination&) const = default;

    static SegmentCombination of(std::initializer_list<SegmentKind> kinds);
    static std::optional<SegmentCombination> parse(const std::vector<std::string>& kind_names);
    static const std::vector<SegmentCombination>& all();  // the 63, ascending bitmask
};

enum class Strategy { SegmentsOnly, StringsOnly, Combined };

const char* strategy_name(Strategy strategy);
std::optional<Strategy> strategy_from_name(const std::string& name);

struct BlockingConfig {
    Strategy strategy = Strategy::Combined;
    int cutoff = 5;
    // Combinations eligible for query generation. Empty = all 63.
    std::set<SegmentCombination> enabled_combinations;
    double combination_threshold = 0.6;
    // Open question in the source method: precision@1 (false) vs precision over
    // all retrieved items (true) in the combination filter.
    bool precision_over_all = false;
    textnorm::YearWindow year_window;
    std::vector<std::string> stopwords;  // empty = built-in list
};

// Surname heuristics over the Author segment: normalized tokens of length >= 2
// codepoints (single letters are initials). Probabilities carry over from the
// originating segment token.
struct WeightedToken {
    std::string text;
    double probability;
};
std::vector<WeightedToken> surname_tokens(const SegmentedReference& reference);

// First plausible 4-digit year from the Year segment tokens.
std::optional<std::string> year_from_segment(const SegmentedReference& reference,
                                             const textnorm::YearWindow& window = {});

bool combination_applicable(const SegmentedReference& reference, SegmentCombination combo,
                            const textnorm::YearWindow& window = {});

// One query per enabled combination whose every kind is present on the
// reference. Author: one surname must match exactly; Year: exact; Title and
// Source: fuzzy term per token, all required; Number: at least one digit run
// in volume or issue; Page: exact start page.
std::vector<index::Clause> segment_queries(const SegmentedReference& reference,
                                           const std::set<SegmentCombination>& combos,
                                           const textnorm::YearWindow& window = {});
std::optional<index::Clause> combination_query(const SegmentedReference& reference,
                                               SegmentCombination combo,
                                               const textnorm::YearWindow& window = {});

// Query 1: OR over title phrases for every bigram of the stop-word-filtered
// raw string; query 2 (only when a year was extracted): year AND query 1.
std::vector<index::Clause> string_queries(const SegmentedReference& reference,
                                          const BlockingConfig& config);

std::vector<index::Clause> queries_for(const SegmentedReference& reference,
                                       const BlockingConfig& config);

// Algorithm: run every query, keep the top-cutoff hits each, union the ids.
std::set<std::string> retrieve_candidates(const SegmentedReference& reference,
                                          const index::Index& idx, const BlockingConfig& config);

// Per-query ranked id lists (cutoff applied); lets evaluation derive candidate
// sets for every smaller cutoff from one retrieval pass.
std::vector<std::vector<std::string>> ranked_blocks(const SegmentedReference& reference,
                                                    const index::Index& idx,
                                                    const BlockingConfig& config);

struct CombinationStats {
    SegmentCombination combo;
    std::size_t applicable = 0;  // references with every kind present
    std::size_t evaluated = 0;   // of those, queries returning >= 1 hit
    double precision = 0.0;
    bool retained = false;
};

struct CombinationFilterResult {
    std::set<SegmentCombination> retained;
    std::vector<CombinationStats> stats;  // all 63, ascending bitmask
};

// Precision filter over the 63 combinations, measured on references that have
// at least one gold match. precision@1 by default (see config switch).
CombinationFilterResult filter_combinations(const std::vector<SegmentedReference>& references,
                                            const GoldStandard& gold, const index::Index& idx,
                                            const BlockingConfig& config);

}  // namespace refmatch::blocking

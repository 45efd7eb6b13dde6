#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace refmatch::strsim {

// item -> weight in [0,1] (weight = segmentation probability of that item).
struct WeightedSet {
    std::map<std::string, double> items;
};

// Codepoint-level edit distance (insert/delete/substitute, unit costs).
std::size_t levenshtein(const std::string& a, const std::string& b);
std::size_t levenshtein(const std::u32string& a, const std::u32string& b);

// 1 - lev/max(|a|,|b|); 1.0 when both operands are empty.
double levenshtein_similarity(const std::string& a, const std::string& b);

// Edit distance over token sequences (one token = one symbol), same normalization.
double token_levenshtein_similarity(const std::vector<std::string>& a_tokens,
                                    const std::vector<std::string>& b_tokens);

// |a∩b| / |a∪b|; 1.0 when both empty.
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

// (sum of a-weights whose key is in b) / |keys(a) ∪ b|; 1.0 when both empty.
double weighted_jaccard(const WeightedSet& a, const std::set<std::string>& b);

// Length (in codepoints) of the longest contiguous substring present in both,
// compared case-folded. Consumers normalize by the length they care about.
std::size_t longest_common_substring(const std::string& a, const std::string& b);

// Adjacent token pairs, in order; empty for fewer than two tokens.
std::vector<std::pair<std::string, std::string>> bigrams(const std::vector<std::string>& tokens);

}  // namespace refmatch::strsim

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "refmatch/model.hpp"

namespace refmatch::textnorm {

struct NormalizedText {
    std::vector<std::string> tokens;  // lowercase, punctuation stripped, non-empty
    std::string original;
};

// Digit code produced by the Cologne phonetics table. Never contains adjacent
// equal digits; '0' appears only as a leading digit.
struct PhoneticCode {
    std::string code;

    bool operator==(const PhoneticCode&) const = default;
};

struct NormalizeOptions {
    bool remove_stopwords = false;
    const std::vector<std::string>* stopwords = nullptr;  // nullptr = built-in list
};

// Lowercases (ASCII + German umlauts), replaces the strip set
// .,;:!?()[]{}"'/\- with spaces and splits on whitespace. Stop words are
// removed only when requested (blocking bigram queries); feature metrics use
// the plain form.
NormalizedText normalize(const std::string& text, const NormalizeOptions& options = {});

const std::vector<std::string>& default_stopwords();

// Kölner Phonetik (Postel 1969). ä/ö/ü/ß fold to a/o/u/ss before coding;
// non-letters are ignored, so purely non-alphabetic input yields an empty code.
PhoneticCode cologne_encode(const std::string& word);

struct YearWindow {
    int min_year = 1400;
    int max_year = 2099;
};

// First standalone 4-digit substring inside the window, skipping page ranges
// (digit'-'NNNN or NNNN'-'digit). A trailing letter suffix (1989b) is allowed.
std::optional<std::string> extract_year(const std::string& raw, const YearWindow& window = {});

// Folds the segmenter's native volume/issue labels into the Number segment,
// volume tokens first, probabilities untouched.
SegmentedReference merge_number_segment(const SegmentedReference& reference);

// merge_number_segment + extract_year over the raw string.
SegmentedReference preprocess(const SegmentedReference& reference, const YearWindow& window = {});

// Maximal runs of ASCII digits, in order: "12(3)" -> ["12", "3"].
std::vector<std::string> digit_runs(const std::string& text);

}  // namespace refmatch::textnorm

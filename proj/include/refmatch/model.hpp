#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace refmatch {

// One token of a labeled reference segment, with the segmenter's certainty
// that the label is correct. Probabilities are per token; a segment-level
// probability is the arithmetic mean over its tokens.
struct SegmentToken {
    std::string text;        // non-empty, no leading/trailing whitespace
    double probability = 1.0;  // in [0, 1]

    bool operator==(const SegmentToken&) const = default;
};

// The six canonical segment kinds. Number is the merged volume/issue segment.
enum class SegmentKind : std::uint8_t { Author, Title, Year, Page, Number, Source };

inline constexpr std::array<SegmentKind, 6> kAllSegmentKinds = {
    SegmentKind::Author, SegmentKind::Title, SegmentKind::Year,
    SegmentKind::Page,   SegmentKind::Number, SegmentKind::Source,
};

const char* segment_kind_name(SegmentKind kind);
std::optional<SegmentKind> segment_kind_from_name(const std::string& name);

struct SegmentedReference {
    std::string id;
    std::string raw;  // full reference string, non-empty
    std::map<SegmentKind, std::vector<SegmentToken>> segments;
    // Native segmenter labels not yet folded into Number; consumed by
    // textnorm::merge_number_segment.
    std::vector<SegmentToken> volume_tokens;
    std::vector<SegmentToken> issue_tokens;
    std::optional<std::string> extracted_year;  // 4 digits, set by textnorm

    const std::vector<SegmentToken>* segment(SegmentKind kind) const {
        auto it = segments.find(kind);
        return it == segments.end() ? nullptr : &it->second;
    }

    bool operator==(const SegmentedReference&) const = default;
};

struct Author {
    std::string surname;
    std::optional<std::string> given;

    bool operator==(const Author&) const = default;
};

struct PageRange {
    std::string start;
    std::optional<std::string> end;

    bool operator==(const PageRange&) const = default;
};

struct BibRecord {
    std::string id;
    std::vector<Author> authors;
    std::string title;
    std::string source;  // journal / book title
    std::optional<std::string> source_abbrev;
    std::optional<std::string> year;  // 4 digits when present
    std::optional<std::string> volume;
    std::optional<std::string> issue;
    std::optional<PageRange> pages;

    bool operator==(const BibRecord&) const = default;
};

struct CandidatePair {
    std::string reference_id;
    std::string record_id;
    std::vector<double> features;  // empty = not yet featurized
    std::optional<bool> gold_label;
    std::optional<double> predicted_probability;  // in [0, 1]
};

// reference_id -> all correct record ids (duplicates included; may be empty,
// meaning "verified: no match exists").
struct GoldStandard {
    std::map<std::string, std::set<std::string>> entries;

    bool is_match(const std::string& reference_id, const std::string& record_id) const {
        auto it = entries.find(reference_id);
        return it != entries.end() && it->second.count(record_id) > 0;
    }
};

struct ValidationReport {
    std::size_t reference_count = 0;
    std::size_t record_count = 0;
    std::size_t gold_entry_count = 0;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

// Reports duplicate ids, malformed tokens/probabilities, bad year patterns and
// dangling gold ids. Never throws; all problems end up in the report.
ValidationReport validate_corpus(const std::vector<SegmentedReference>& references,
                                 const std::vector<BibRecord>& records,
                                 const GoldStandard& gold);

}  // namespace refmatch
